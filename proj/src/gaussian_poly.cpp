#include "tensorres/gaussian_poly.hpp"

#include "tensorres/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tensorres {

GaussianPolynomial::GaussianPolynomial(int variable_count) : variable_count_(variable_count) {
  if (variable_count < 0) throw std::domain_error("negative variable count");
}

GaussianPolynomial GaussianPolynomial::constant(int variable_count, const Rational& c) {
  GaussianPolynomial q(variable_count);
  q.add_term(Exponents(static_cast<std::size_t>(variable_count), 0), c);
  return q;
}

GaussianPolynomial GaussianPolynomial::monomial(int variable_count, int variable, int exponent, const Rational& c) {
  if (variable < 1 || variable > variable_count) throw std::domain_error("variable index out of range");
  if (exponent < 0) throw std::domain_error("negative exponent");
  GaussianPolynomial q(variable_count);
  Exponents e(static_cast<std::size_t>(variable_count), 0);
  e[static_cast<std::size_t>(variable - 1)] = exponent;
  q.add_term(e, c);
  return q;
}

void GaussianPolynomial::add_term(const Exponents& exponents, const Rational& c) {
  if (static_cast<int>(exponents.size()) != variable_count_)
    throw std::domain_error("exponent vector length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GaussianPolynomial& GaussianPolynomial::operator+=(const GaussianPolynomial& other) {
  if (other.variable_count_ != variable_count_) throw std::domain_error("variable count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

GaussianPolynomial& GaussianPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

GaussianPolynomial operator-(GaussianPolynomial a, const GaussianPolynomial& b) {
  return a += b * Rational(-1);
}

GaussianPolynomial GaussianPolynomial::multiply(const GaussianPolynomial& other, std::size_t term_cap) const {
  if (other.variable_count_ != variable_count_) throw std::domain_error("variable count mismatch");
  GaussianPolynomial out(variable_count_);
  Exponents e(static_cast<std::size_t>(variable_count_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
    if (out.terms_.size() > term_cap)
      throw ResourceError("polynomial expansion exceeds " + std::to_string(term_cap) + " terms");
  }
  return out;
}

GaussianPolynomial operator*(const GaussianPolynomial& a, const GaussianPolynomial& b) {
  return a.multiply(b, kDefaultTermCap);
}

int GaussianPolynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

double GaussianPolynomial::evaluate(const std::vector<double>& g) const {
  if (static_cast<int>(g.size()) != variable_count_) throw std::domain_error("point has wrong dimension");
  double total = 0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int j = 0; j < e[i]; ++j) term *= g[i];
    total += term;
  }
  return total;
}

GaussianPolynomial tensor_to_polynomial(const SymmetricTensor& t) {
  GaussianPolynomial q(t.dimension());
  Exponents e(static_cast<std::size_t>(t.dimension()));
  for (const auto& [idx, v] : t.entries()) {
    std::fill(e.begin(), e.end(), 0);
    for (int i : idx) ++e[static_cast<std::size_t>(i - 1)];
    q.add_term(e, v * static_cast<unsigned long>(permutation_count(idx)));
  }
  return q;
}

Rational gaussian_monomial_moment(const Exponents& exponents) {
  BigInt r = 1;
  for (int e : exponents) {
    if (e < 0) throw std::domain_error("negative exponent");
    if (e % 2 != 0) return 0;
    r *= double_factorial(e - 1);
  }
  return Rational(r);
}

Rational expectation(const GaussianPolynomial& q) {
  Rational total = 0;
  for (const auto& [e, c] : q.terms()) total += c * gaussian_monomial_moment(e);
  return total;
}

std::vector<Rational> poly_moments(const GaussianPolynomial& q, int max_k, std::size_t term_cap) {
  if (max_k < 0) throw std::domain_error("negative moment order");
  std::vector<Rational> m;
  m.reserve(static_cast<std::size_t>(max_k));
  GaussianPolynomial power = GaussianPolynomial::constant(q.variable_count(), 1);
  for (int k = 1; k <= max_k; ++k) {
    power = power.multiply(q, term_cap);
    m.push_back(expectation(power));
  }
  return m;
}

Rational poly_moment(const GaussianPolynomial& q, int k, std::size_t term_cap) {
  if (k == 0) return 1;
  return poly_moments(q, k, term_cap).back();
}

std::vector<Rational> poly_cumulants(const GaussianPolynomial& q, int max_k, std::size_t term_cap) {
  if (max_k < 1) throw std::domain_error("cumulants start at order 1");
  return moments_to_cumulants(poly_moments(q, max_k, term_cap));
}

Rational poly_cumulant(const GaussianPolynomial& q, int k, std::size_t term_cap) {
  return poly_cumulants(q, k, term_cap).back();
}

std::vector<SetPartition> enumerate_set_partitions(int k) {
  if (k < 1) throw std::domain_error("set partitions need k >= 1");
  std::vector<SetPartition> out;
  // Restricted growth strings a_1 = 0, a_i <= 1 + max(a_1..a_{i-1}).
  std::vector<int> rgs(static_cast<std::size_t>(k), 0);
  auto emit = [&] {
    int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    SetPartition part(static_cast<std::size_t>(blocks));
    for (int i = 0; i < k; ++i) part[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i + 1);
    out.push_back(std::move(part));
  };
  while (true) {
    emit();
    int i = k - 1;
    while (i > 0) {
      int prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[static_cast<std::size_t>(i)] <= prefix_max) break;
      --i;
    }
    if (i == 0) return out;
    ++rgs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) rgs[static_cast<std::size_t>(j)] = 0;
  }
}

std::vector<Rational> moments_to_cumulants(const std::vector<Rational>& moments) {
  if (moments.empty()) throw std::domain_error("empty moment sequence");
  const long K = static_cast<long>(moments.size());
  auto m = [&](long n) { return n == 0 ? Rational(1) : moments[static_cast<std::size_t>(n - 1)]; };
  std::vector<Rational> kappa(moments.size());
  for (long n = 1; n <= K; ++n) {
    Rational s = m(n);
    for (long j = 1; j < n; ++j) s -= Rational(binomial(n - 1, j - 1)) * kappa[static_cast<std::size_t>(j - 1)] * m(n - j);
    kappa[static_cast<std::size_t>(n - 1)] = s;
  }
  return kappa;
}

std::vector<Rational> cumulants_to_moments(const std::vector<Rational>& cumulants) {
  if (cumulants.empty()) throw std::domain_error("empty cumulant sequence");
  const long K = static_cast<long>(cumulants.size());
  std::vector<Rational> m(cumulants.size());
  auto prev = [&](long n) { return n == 0 ? Rational(1) : m[static_cast<std::size_t>(n - 1)]; };
  for (long n = 1; n <= K; ++n) {
    Rational s = 0;
    for (long j = 1; j <= n; ++j) s += Rational(binomial(n - 1, j - 1)) * cumulants[static_cast<std::size_t>(j - 1)] * prev(n - j);
    m[static_cast<std::size_t>(n - 1)] = s;
  }
  return m;
}

}  // namespace tensorres
