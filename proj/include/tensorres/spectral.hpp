#pragma once

#include "tensorres/contraction.hpp"
#include "tensorres/rational.hpp"
#include "tensorres/tensor.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace tensorres {

enum class Backend { contraction, wick };

// alpha_0..alpha_K. In floating mode the values are the exact binary
// expansions of double results, so one container serves both modes.
struct MomentSequence {
  std::vector<Rational> values;
  Mode mode = Mode::exact;
  int order = 0;      // p
  int dimension = 0;  // ambient N used in the normalization
  std::optional<int> construction_parameter;
  std::string source;

  int max_order() const { return static_cast<int>(values.size()) - 1; }
};

// alpha_k = M_k^conn(T) / (N p^{k-1} (k-1)!), alpha_0 = 1.
MomentSequence normalized_coefficients(const SymmetricTensor& t, int max_k, Backend backend = Backend::contraction,
                                       Mode mode = Mode::exact);

// Just the normalization, given kappa_1..kappa_K.
std::vector<Rational> normalize_cumulants(const std::vector<Rational>& cumulants, int order, int dimension);

struct RecoveryRow {
  int k = 0;
  Rational alpha;     // from the tensor route
  Rational expected;  // Tr(X^k) / N
};

struct RecoveryReport {
  bool passed = false;
  std::vector<RecoveryRow> rows;
  std::vector<int> mismatched_orders;
};

// Compares alpha_k(X) against Tr(X^k)/N for 1 <= k <= K. Order 2 only.
RecoveryReport matrix_recovery_check(const SymmetricTensor& x, int max_k);

enum class Verdict { moment_sequence_possible, not_a_moment_sequence };

enum class CertificateKind { none, negative_even_entry, hankel_not_psd };

struct Certificate {
  CertificateKind kind = CertificateKind::none;
  int index = -1;                 // negative_even_entry: the k with alpha_k < 0
  Rational value;                 // that alpha_k
  int hankel_order = -1;          // hankel_not_psd: m, for H_m = [alpha_{i+j}]_{0<=i,j<=m}
  std::vector<int> minor_rows;    // 0-based rows/cols of the principal minor
  bool leading_minor = false;     // minor_rows == {0..r}
  Rational determinant;           // of that principal minor, < 0
};

struct MomentProblemReport {
  Verdict verdict = Verdict::moment_sequence_possible;
  Certificate certificate;
  int hankel_orders_checked = 0;
  std::string description;
};

// Hamburger necessary conditions on a finite truncation: even entries
// non-negative and every Hankel matrix H_m with 2m <= K positive
// semidefinite. A pass is not a proof that a representing measure exists.
// Throws std::domain_error for an empty sequence or alpha_0 <= 0.
MomentProblemReport check_moment_sequence(const std::vector<Rational>& values);
MomentProblemReport check_moment_sequence(const MomentSequence& seq);

// Exact determinant by Gaussian elimination; row-major square matrix.
Rational determinant(std::vector<Rational> matrix, std::size_t n);

// H_m as a row-major (m+1) x (m+1) matrix.
std::vector<Rational> hankel_matrix(const std::vector<Rational>& values, int m);

// z^{-1} + sum_{k=1}^K alpha_k z^{-k-1}.
class ResolventSeries {
 public:
  explicit ResolventSeries(std::vector<double> alphas) : alphas_(std::move(alphas)) {}
  // Throws std::domain_error for real z.
  std::complex<double> operator()(std::complex<double> z) const;
  const std::vector<double>& alphas() const { return alphas_; }

 private:
  std::vector<double> alphas_;  // alpha_0..alpha_K
};

ResolventSeries truncated_resolvent_series(const SymmetricTensor& t, int max_k);

// (1/N) Tr((zI - X)^{-1}) by complex Gauss-Jordan elimination.
std::complex<double> matrix_resolvent_trace(const SymmetricTensor& x, std::complex<double> z);

std::string to_string(Verdict v);
std::string to_string(CertificateKind k);

}  // namespace tensorres
