#pragma once

#include "tensorres/tensor.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tensorres {

// Standard normal stream: std::mt19937_64 (fully specified by the standard)
// feeding a hand-written Box-Muller transform, so a seed reproduces the same
// stream on every platform. std::normal_distribution is implementation-defined
// and is not used.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
  double next();
  void fill(std::vector<double>& g);

 private:
  // 53-bit uniform in (0, 1].
  double uniform_open_closed();

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Fast floating-point evaluation of s(g) = <T, g^{(x)p}>.
class TensorForm {
 public:
  explicit TensorForm(const SymmetricTensor& t);
  double operator()(const std::vector<double>& g) const;
  int order() const { return order_; }
  int dimension() const { return dimension_; }

 private:
  struct Term {
    double coefficient;
    std::vector<int> variables;  // 0-based, repeated by multiplicity
  };
  int order_;
  int dimension_;
  std::vector<Term> terms_;
};

// Monte Carlo summand of Z_T at z = iy: exp(s / (p i y)), modulus one.
std::complex<double> z_summand(double s, int order, double y);

struct SamplingOptions {
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  int lanes = 1;  // lane l draws from seed + l; results depend on the lane count
};

struct ResolventEstimate {
  std::string quantity;  // "Z" or "R"
  double y = 0;          // z = iy
  std::complex<double> value;
  double standard_error = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  int lanes = 1;
  std::vector<std::string> warnings;
};

// E exp(<T, g^{(x)p}> / (p z)) at z = iy. Throws std::domain_error for y = 0
// or fewer than two samples.
ResolventEstimate estimate_Z(const SymmetricTensor& t, double y, const SamplingOptions& options);

// (1 / (z Z)) E (|g|^2 / N) exp(...), sharing samples with the Z estimate.
// The numerator uses E|g|^2/N = 1: E[w e] = E[(w - 1)(e - 1)] + E[e].
// A warning is attached when |Z| falls below small_z_threshold.
ResolventEstimate estimate_R(const SymmetricTensor& t, double y, const SamplingOptions& options,
                             double small_z_threshold = 1e-3);

// Raised when log Z cannot be continued along the finite-difference stencil.
class BranchTrackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IdentityReport {
  double y = 0;
  double step = 0;
  std::complex<double> direct;    // R estimated from its definition
  std::complex<double> identity;  // 1/z - (p/N) F'(z), F' by central difference
  double discrepancy = 0;
  double direct_standard_error = 0;
  double identity_standard_error = 0;
  double truncation_allowance = 0;  // Richardson estimate of the O(h^2) bias
  double combined_uncertainty = 0;
  bool consistent = false;
  std::vector<std::string> warnings;
};

inline constexpr double kIdentityCoverage = 4.0;

// Checks R_T(z) = 1/z - (p/N) F_T'(z) at z = iy. step <= 0 selects y/1000.
IdentityReport verify_RT_FT_identity(const SymmetricTensor& t, double y, const SamplingOptions& options,
                                     double step = 0.0);

struct ScalarEstimate {
  double value = 0;
  double standard_error = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
};

// Sample mean of <T, g^{(x)p}>^k.
ScalarEstimate estimate_scalar_moment(const SymmetricTensor& t, int k, const SamplingOptions& options);

// Lane count from TENSORRES_LANES, else 1.
int default_lane_count();

}  // namespace tensorres
