#include "tensorres/spectral.hpp"

#include "tensorres/gaussian_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tensorres {

std::vector<Rational> normalize_cumulants(const std::vector<Rational>& cumulants, int order, int dimension) {
  std::vector<Rational> alpha;
  alpha.reserve(cumulants.size() + 1);
  alpha.emplace_back(1);
  for (std::size_t i = 0; i < cumulants.size(); ++i) {
    const long k = static_cast<long>(i) + 1;
    Rational scale = Rational(dimension) * pow(Rational(order), static_cast<unsigned>(k - 1)) * Rational(factorial(k - 1));
    alpha.push_back(cumulants[i] / scale);
  }
  return alpha;
}

MomentSequence normalized_coefficients(const SymmetricTensor& t, int max_k, Backend backend, Mode mode) {
  if (max_k < 1) throw std::domain_error("need at least one coefficient");
  std::vector<Rational> cumulants;
  if (backend == Backend::wick) {
    cumulants = poly_cumulants(tensor_to_polynomial(t), max_k);
    if (mode == Mode::floating)
      for (auto& c : cumulants) c = Rational(c.get_d());
  } else {
    for (int k = 1; k <= max_k; ++k) {
      if (mode == Mode::exact)
        cumulants.push_back(invariant_M_k_conn<Rational>(t, k));
      else
        cumulants.emplace_back(invariant_M_k_conn<double>(t, k));
    }
  }
  MomentSequence seq;
  seq.values = normalize_cumulants(cumulants, t.order(), t.dimension());
  if (mode == Mode::floating)
    for (auto& v : seq.values) v = Rational(v.get_d());
  seq.mode = mode;
  seq.order = t.order();
  seq.dimension = t.dimension();
  seq.source = backend == Backend::wick ? "wick" : "contraction";
  return seq;
}

RecoveryReport matrix_recovery_check(const SymmetricTensor& x, int max_k) {
  if (x.order() != 2) throw std::domain_error("matrix recovery needs an order-2 tensor");
  RecoveryReport report;
  const MomentSequence seq = normalized_coefficients(x, max_k);
  for (int k = 1; k <= max_k; ++k) {
    RecoveryRow row{k, seq.values[static_cast<std::size_t>(k)], matrix_power_trace(x, k) / x.dimension()};
    if (row.alpha != row.expected) report.mismatched_orders.push_back(k);
    report.rows.push_back(std::move(row));
  }
  report.passed = report.mismatched_orders.empty();
  return report;
}

std::vector<Rational> hankel_matrix(const std::vector<Rational>& values, int m) {
  if (2 * m >= static_cast<int>(values.size())) throw std::domain_error("sequence too short for Hankel order");
  const auto n = static_cast<std::size_t>(m + 1);
  std::vector<Rational> h(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i * n + j] = values[i + j];
  return h;
}

Rational determinant(std::vector<Rational> a, std::size_t n) {
  if (a.size() != n * n) throw std::domain_error("matrix is not square");
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      det = -det;
    }
    const Rational p = a[col * n + col];
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r * n + col] == 0) continue;
      const Rational f = a[r * n + col] / p;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
    }
  }
  return det;
}

namespace {

std::vector<Rational> principal_submatrix(const std::vector<Rational>& h, std::size_t n, const std::vector<int>& rows) {
  std::vector<Rational> sub;
  sub.reserve(rows.size() * rows.size());
  for (int i : rows)
    for (int j : rows) sub.push_back(h[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)]);
  return sub;
}

// Index set of a principal minor with negative determinant, if H is not PSD.
std::optional<std::vector<int>> find_negative_minor(const std::vector<Rational>& h, std::size_t n, bool& leading) {
  // Sylvester: leading pivots of an unpivoted LDL^T. All positive means H is
  // positive definite; the first negative one exposes a negative leading minor.
  {
    std::vector<Rational> a = h;
    for (std::size_t c = 0; c < n; ++c) {
      const Rational piv = a[c * n + c];
      if (piv < 0) {
        leading = true;
        std::vector<int> rows(c + 1);
        std::iota(rows.begin(), rows.end(), 0);
        return rows;
      }
      if (piv == 0) break;
      for (std::size_t r = c + 1; r < n; ++r) {
        const Rational f = a[r * n + c] / piv;
        for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
      }
      if (c + 1 == n) return std::nullopt;
    }
  }
  // A leading minor vanished: symmetric elimination with diagonal pivoting.
  leading = false;
  std::vector<Rational> a = h;
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> pivots;
  while (!remaining.empty()) {
    for (int i : remaining)
      if (a[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(i)] < 0) {
        pivots.push_back(i);
        std::sort(pivots.begin(), pivots.end());
        return pivots;
      }
    auto pos = std::find_if(remaining.begin(), remaining.end(),
                            [&](int i) { return a[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(i)] > 0; });
    if (pos == remaining.end()) {
      // Zero diagonal: any non-zero off-diagonal gives a 2x2 minor -a_ij^2 < 0.
      for (int i : remaining)
        for (int j : remaining)
          if (i < j && a[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] != 0) {
            pivots.push_back(i);
            pivots.push_back(j);
            std::sort(pivots.begin(), pivots.end());
            return pivots;
          }
      return std::nullopt;
    }
    const auto pr = static_cast<std::size_t>(*pos);
    remaining.erase(pos);
    const Rational piv = a[pr * n + pr];
    for (int ri : remaining) {
      const auto r = static_cast<std::size_t>(ri);
      const Rational f = a[r * n + pr] / piv;
      if (f == 0) continue;
      for (int cj : remaining) {
        const auto c = static_cast<std::size_t>(cj);
        a[r * n + c] -= f * a[pr * n + c];
      }
    }
    pivots.push_back(static_cast<int>(pr));
  }
  return std::nullopt;
}

}  // namespace

MomentProblemReport check_moment_sequence(const std::vector<Rational>& values) {
  if (values.empty()) throw std::domain_error("empty moment sequence");
  if (values[0] <= 0) throw std::domain_error("alpha_0 must be positive");
  MomentProblemReport report;
  for (std::size_t k = 2; k < values.size(); k += 2) {
    if (values[k] < 0) {
      report.verdict = Verdict::not_a_moment_sequence;
      report.certificate.kind = CertificateKind::negative_even_entry;
      report.certificate.index = static_cast<int>(k);
      report.certificate.value = values[k];
      report.description = "even-order entry alpha_" + std::to_string(k) + " = " + to_string(values[k]) + " is negative";
      return report;
    }
  }
  const int max_m = (static_cast<int>(values.size()) - 1) / 2;
  for (int m = 1; m <= max_m; ++m) {
    ++report.hankel_orders_checked;
    const auto n = static_cast<std::size_t>(m + 1);
    const std::vector<Rational> h = hankel_matrix(values, m);
    bool leading = false;
    if (auto rows = find_negative_minor(h, n, leading)) {
      Certificate& cert = report.certificate;
      cert.kind = CertificateKind::hankel_not_psd;
      cert.hankel_order = m;
      cert.minor_rows = *rows;
      cert.leading_minor = leading;
      cert.determinant = determinant(principal_submatrix(h, n, *rows), rows->size());
      if (cert.determinant >= 0) throw std::logic_error("PSD certificate has non-negative determinant");
      report.verdict = Verdict::not_a_moment_sequence;
      std::ostringstream os;
      os << "Hankel matrix H_" << m << " is not positive semidefinite: " << (leading ? "leading " : "")
         << "principal minor on rows {";
      for (std::size_t i = 0; i < rows->size(); ++i) os << (i ? "," : "") << (*rows)[i];
      os << "} has determinant " << to_string(cert.determinant);
      report.description = os.str();
      return report;
    }
  }
  report.description = "necessary conditions hold: even entries non-negative, Hankel matrices up to order " +
                       std::to_string(max_m) + " positive semidefinite";
  return report;
}

MomentProblemReport check_moment_sequence(const MomentSequence& seq) { return check_moment_sequence(seq.values); }

std::complex<double> ResolventSeries::operator()(std::complex<double> z) const {
  if (z.imag() == 0) throw std::domain_error("resolvent series is evaluated off the real axis only");
  const std::complex<double> w = 1.0 / z;
  std::complex<double> sum = 0;
  // Horner in w: sum_k alpha_k w^{k+1}.
  for (auto it = alphas_.rbegin(); it != alphas_.rend(); ++it) sum = (sum + *it) * w;
  return sum;
}

ResolventSeries truncated_resolvent_series(const SymmetricTensor& t, int max_k) {
  const MomentSequence seq = normalized_coefficients(t, max_k);
  std::vector<double> alphas;
  for (const auto& v : seq.values) alphas.push_back(v.get_d());
  return ResolventSeries(std::move(alphas));
}

std::complex<double> matrix_resolvent_trace(const SymmetricTensor& x, std::complex<double> z) {
  if (x.order() != 2) throw std::domain_error("matrix resolvent needs an order-2 tensor");
  const auto n = static_cast<std::size_t>(x.dimension());
  using C = std::complex<double>;
  std::vector<C> a(n * n), inv(n * n, 0.0);
  const std::vector<Rational> dense = dense_matrix(x);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = -dense[i * n + j].get_d();
    a[i * n + i] += z;
    inv[i * n + i] = 1.0;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (std::abs(a[piv * n + c]) == 0) throw std::domain_error("zI - X is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a[piv * n + j], a[c * n + j]);
      std::swap(inv[piv * n + j], inv[c * n + j]);
    }
    const C d = a[c * n + c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c * n + j] /= d;
      inv[c * n + j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const C f = a[r * n + c];
      if (f == C(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[c * n + j];
        inv[r * n + j] -= f * inv[c * n + j];
      }
    }
  }
  C trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += inv[i * n + i];
  return trace / static_cast<double>(n);
}

std::string to_string(Verdict v) {
  return v == Verdict::not_a_moment_sequence ? "not-a-moment-sequence" : "moment-sequence-possible";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::negative_even_entry:
      return "negative-even-entry";
    case CertificateKind::hankel_not_psd:
      return "hankel-not-psd";
    default:
      return "none";
  }
}

}  // namespace tensorres
