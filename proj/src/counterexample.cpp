#include "tensorres/counterexample.hpp"

#include "tensorres/contraction.hpp"
#include "tensorres/gaussian_poly.hpp"

#include <stdexcept>
#include <string>

namespace tensorres {

Rational CounterexampleSpec::coupling() const { return Rational(1, 3 * static_cast<unsigned long>(parameter)); }

SymmetricTensor build_counterexample_tensor(int parameter) {
  if (parameter < 1) throw std::domain_error("counterexample parameter must be >= 1");
  const CounterexampleSpec spec{parameter};
  SymmetricTensor t(3, spec.ambient_dimension());
  t.set({1, 1, 1}, CounterexampleSpec::cubic_coefficient());
  for (int i = 2; i <= spec.ambient_dimension(); ++i) t.set({1, i, i}, spec.coupling());
  return t;
}

Rational f_closed_form(int parameter) {
  if (parameter < 1) throw std::domain_error("f is defined for n >= 1");
  const Rational n(parameter);
  return Rational(-87, 250) + 6 / n + 72 / (n * n) + 144 / (n * n * n);
}

Rational kappa4_of_counterexample(int parameter, Backend backend, bool allow_large) {
  const SymmetricTensor t = build_counterexample_tensor(parameter);
  if (backend == Backend::wick) return poly_cumulant(tensor_to_polynomial(t), 4);
  if (parameter > kContractionParameterCap && !allow_large)
    throw std::domain_error("contraction backend is capped at parameter " + std::to_string(kContractionParameterCap) +
                            "; pass allow_large to override");
  return invariant_M_k_conn<Rational>(t, 4);
}

MinimalNegativeResult minimal_negative_N(int search_bound) {
  if (search_bound < 1) throw std::domain_error("search bound must be >= 1");
  MinimalNegativeResult result;
  for (int n = 1; n <= search_bound; ++n) {
    if (f_closed_form(n) < 0) {
      result.parameter = n;
      break;
    }
  }
  if (result.parameter) {
    result.negative_through_bound = true;
    for (int n = *result.parameter; n <= search_bound; ++n)
      if (f_closed_form(n) >= 0) result.negative_through_bound = false;
  }
  return result;
}

Rational kappa4_quadratic_family(const Rational& a, const Rational& b, const Rational& c) {
  GaussianPolynomial q = GaussianPolynomial::monomial(1, 1, 2, a) + GaussianPolynomial::monomial(1, 1, 1, b) +
                         GaussianPolynomial::constant(1, c);
  const Rational kappa = poly_cumulant(q, 4);
  const Rational expected = 48 * (pow(a, 4) + a * a * b * b);
  if (kappa != expected)
    throw std::logic_error("kappa_4 of quadratic " + to_string(kappa) + " differs from 48(a^4 + a^2 b^2) = " +
                           to_string(expected));
  return kappa;
}

}  // namespace tensorres
