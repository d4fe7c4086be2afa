#pragma once

#include "tensorres/rational.hpp"
#include "tensorres/spectral.hpp"
#include "tensorres/tensor.hpp"

#include <optional>

namespace tensorres {

// Cubic tensor on R^{n+1} whose polynomial is
//   g_1 * (1/n) * sum_{i=2}^{n+1} g_i^2 - (1/10) g_1^3.
// `parameter` (n) and the ambient dimension (n + 1) are kept distinct on
// purpose; the normalization of alpha_k uses the ambient dimension.
struct CounterexampleSpec {
  int parameter = 26;

  int ambient_dimension() const { return parameter + 1; }
  static Rational cubic_coefficient() { return Rational(-1, 10); }
  // Stored value of each orbit (1, i, i).
  Rational coupling() const;
};

SymmetricTensor build_counterexample_tensor(int parameter);

// -87/250 + 6/n + 72/n^2 + 144/n^3.
Rational f_closed_form(int parameter);

// Contraction is capped at small n unless allow_large is set.
inline constexpr int kContractionParameterCap = 4;

// kappa_4 of <T^(n), g^{(x)3}>. Throws std::domain_error when the contraction
// backend is requested above the cap without allow_large.
Rational kappa4_of_counterexample(int parameter, Backend backend = Backend::wick, bool allow_large = false);

struct MinimalNegativeResult {
  std::optional<int> parameter;  // smallest n <= bound with f(n) < 0
  bool negative_through_bound = false;  // f(n) < 0 for every n from the answer up to the bound
};

MinimalNegativeResult minimal_negative_N(int search_bound);

// kappa_4(a g^2 + b g + c) through the Wick oracle. Throws std::logic_error
// if it differs from 48(a^4 + a^2 b^2).
Rational kappa4_quadratic_family(const Rational& a, const Rational& b, const Rational& c);

}  // namespace tensorres
