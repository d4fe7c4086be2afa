#pragma once

#include "tensorres/rational.hpp"
#include "tensorres/tensor.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace tensorres {

using Exponents = std::vector<int>;

// Polynomial in n i.i.d. standard Gaussian variables g_1..g_n with exact
// coefficients. Variables are 1-based in the public helpers.
class GaussianPolynomial {
 public:
  using Terms = std::map<Exponents, Rational>;

  explicit GaussianPolynomial(int variable_count);

  static GaussianPolynomial constant(int variable_count, const Rational& c);
  // c * g_i^e
  static GaussianPolynomial monomial(int variable_count, int variable, int exponent, const Rational& c = 1);

  int variable_count() const { return variable_count_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Adds c * prod g_i^{e_i}; drops the term if the sum cancels.
  void add_term(const Exponents& exponents, const Rational& c);

  GaussianPolynomial& operator+=(const GaussianPolynomial& other);
  GaussianPolynomial& operator*=(const Rational& c);
  friend GaussianPolynomial operator+(GaussianPolynomial a, const GaussianPolynomial& b) { return a += b; }
  friend GaussianPolynomial operator-(GaussianPolynomial a, const GaussianPolynomial& b);
  friend GaussianPolynomial operator*(GaussianPolynomial a, const Rational& c) { return a *= c; }
  friend GaussianPolynomial operator*(const Rational& c, GaussianPolynomial a) { return a *= c; }

  // Product; throws ResourceError if the result has more than term_cap terms.
  GaussianPolynomial multiply(const GaussianPolynomial& other, std::size_t term_cap) const;
  friend GaussianPolynomial operator*(const GaussianPolynomial& a, const GaussianPolynomial& b);

  // Highest total degree; -1 for the zero polynomial.
  int degree() const;

  double evaluate(const std::vector<double>& g) const;

  friend bool operator==(const GaussianPolynomial&, const GaussianPolynomial&) = default;

 private:
  int variable_count_;
  Terms terms_;
};

inline constexpr std::size_t kDefaultTermCap = 1'000'000;

// <T, g^{(x)p}> as a polynomial in N variables.
GaussianPolynomial tensor_to_polynomial(const SymmetricTensor& t);

// E prod g_i^{e_i} = prod (e_i - 1)!! when all e_i are even, else 0.
Rational gaussian_monomial_moment(const Exponents& exponents);

Rational expectation(const GaussianPolynomial& q);

// E q(g)^k by sparse expansion of q^k.
Rational poly_moment(const GaussianPolynomial& q, int k, std::size_t term_cap = kDefaultTermCap);

// m_1..m_K in one pass.
std::vector<Rational> poly_moments(const GaussianPolynomial& q, int max_k, std::size_t term_cap = kDefaultTermCap);

// kappa_k of q(g), via moments m_1..m_k.
Rational poly_cumulant(const GaussianPolynomial& q, int k, std::size_t term_cap = kDefaultTermCap);

// kappa_1..kappa_K.
std::vector<Rational> poly_cumulants(const GaussianPolynomial& q, int max_k, std::size_t term_cap = kDefaultTermCap);

// Blocks of 1-based elements; each block ascending, blocks ordered by first element.
using SetPartition = std::vector<std::vector<int>>;

// All Bell(k) set partitions of [k], in restricted-growth-string order.
std::vector<SetPartition> enumerate_set_partitions(int k);

// Inputs and outputs are indexed from order 1: element 0 holds m_1 / kappa_1.
std::vector<Rational> moments_to_cumulants(const std::vector<Rational>& moments);
std::vector<Rational> cumulants_to_moments(const std::vector<Rational>& cumulants);

}  // namespace tensorres
