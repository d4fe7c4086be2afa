#include "tensorres/contraction.hpp"
#include "tensorres/counterexample.hpp"
#include "tensorres/gaussian_poly.hpp"
#include "tensorres/montecarlo.hpp"
#include "tensorres/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tensorres;

namespace {

SamplingOptions opts(std::uint64_t samples, std::uint64_t seed, int lanes = 1) {
  SamplingOptions o;
  o.samples = samples;
  o.seed = seed;
  o.lanes = lanes;
  return o;
}

SymmetricTensor fixed_matrix() {
  SymmetricTensor x(2, 3);
  x.set({1, 1}, Rational(1, 2));
  x.set({1, 2}, Rational(-1, 3));
  x.set({2, 2}, -1);
  x.set({2, 3}, Rational(1, 4));
  x.set({3, 3}, Rational(3, 4));
  return x;
}

}  // namespace

TEST(GaussianStream, ReproducibleAndStandardized) {
  GaussianStream a(5), b(5);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = a.next();
    EXPECT_EQ(x, b.next());
    sum += x;
    sum2 += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(EstimateZ, ZeroTensorIsExact) {
  const auto z = estimate_Z(SymmetricTensor(3, 4), 2.0, opts(1000, 1));
  EXPECT_EQ(z.value, std::complex<double>(1.0, 0.0));
  EXPECT_EQ(z.standard_error, 0.0);
  const auto r = estimate_R(SymmetricTensor(3, 4), 2.0, opts(1000, 1));
  EXPECT_EQ(r.value, 1.0 / std::complex<double>(0.0, 2.0));
  EXPECT_EQ(r.standard_error, 0.0);
}

TEST(EstimateZ, LargeYLimit) {
  const auto t = build_counterexample_tensor(26);
  const double y = 1e6 * frobenius_norm(t);
  const auto z = estimate_Z(t, y, opts(20000, 3));
  EXPECT_LE(std::abs(z.value - 1.0), std::max(3 * z.standard_error, 1e-12));
}

TEST(EstimateZ, DiagonalClosedForm) {
  const std::vector<double> lambda{1.0, -0.5, 2.0};
  SymmetricTensor x(2, 3);
  for (int i = 0; i < 3; ++i) x.set({i + 1, i + 1}, Rational(lambda[static_cast<std::size_t>(i)]));
  for (double y : {1.0, 3.0}) {
    std::complex<double> expected = 1.0;
    for (double l : lambda) expected *= std::pow(1.0 - l / std::complex<double>(0.0, y), -0.5);
    const auto z = estimate_Z(x, y, opts(200000, 11));
    EXPECT_LE(std::abs(z.value - expected), 4 * z.standard_error) << y;
  }
}

TEST(EstimateZ, ConjugateSymmetryAndDeterminism) {
  const auto t = build_counterexample_tensor(4);
  const auto plus = estimate_Z(t, 1.5, opts(5000, 9));
  const auto minus = estimate_Z(t, -1.5, opts(5000, 9));
  EXPECT_EQ(minus.value, std::conj(plus.value));
  const auto again = estimate_Z(t, 1.5, opts(5000, 9));
  EXPECT_EQ(again.value, plus.value);
  EXPECT_EQ(again.standard_error, plus.standard_error);
}

TEST(EstimateZ, UnitModulusSummands) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> s(0.0, 50.0);
  for (int i = 0; i < 1000; ++i) EXPECT_NEAR(std::abs(z_summand(s(rng), 3, 0.37)), 1.0, 1e-12);
}

TEST(EstimateZ, LanesAreDeterministicPerLaneCount) {
  const auto t = fixed_matrix();
  const auto a = estimate_Z(t, 2.0, opts(10001, 5, 3));
  const auto b = estimate_Z(t, 2.0, opts(10001, 5, 3));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.sample_count, 10001u);
  EXPECT_EQ(a.lanes, 3);
  const auto one = estimate_Z(t, 2.0, opts(10001, 5, 1));
  EXPECT_LE(std::abs(a.value - one.value), 6 * (a.standard_error + one.standard_error));
}

TEST(EstimateZ, InvalidArguments) {
  EXPECT_THROW(estimate_Z(fixed_matrix(), 0.0, opts(100, 1)), std::domain_error);
  EXPECT_THROW(estimate_R(fixed_matrix(), 0.0, opts(100, 1)), std::domain_error);
  EXPECT_THROW(estimate_Z(fixed_matrix(), 1.0, opts(1, 1)), std::domain_error);
}

TEST(EstimateR, MatchesMatrixResolvent) {
  const auto x = fixed_matrix();
  for (double y : {4.0, 10.0 * frobenius_norm(x)}) {
    const auto r = estimate_R(x, y, opts(100000, 21));
    const auto exact = matrix_resolvent_trace(x, {0.0, y});
    EXPECT_LE(std::abs(r.value - exact), 3 * r.standard_error) << y;
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(EstimateR, CounterexampleMatchesSeries) {
  const auto t = build_counterexample_tensor(26);
  const double y = 20.0;
  const auto r = estimate_R(t, y, opts(100000, 23));
  const auto series = truncated_resolvent_series(t, 4)({0.0, y});
  EXPECT_LE(std::abs(r.value - series), std::max(3 * r.standard_error, std::pow(y, -6.0)));
}

TEST(EstimateR, SmallZWarning) {
  const auto r = estimate_R(fixed_matrix(), 1.0, opts(1000, 2), 2.0);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Identity, ZeroTensor) {
  const auto rep = verify_RT_FT_identity(SymmetricTensor(3, 3), 2.0, opts(1000, 1));
  EXPECT_TRUE(rep.consistent);
  EXPECT_LT(std::abs(rep.direct - 1.0 / std::complex<double>(0.0, 2.0)), 1e-14);
  EXPECT_LT(std::abs(rep.identity - 1.0 / std::complex<double>(0.0, 2.0)), 1e-14);
}

TEST(Identity, RandomMatrixAndCounterexample) {
  const auto x = fixed_matrix();
  const auto a = verify_RT_FT_identity(x, 10.0 * frobenius_norm(x), opts(100000, 31));
  EXPECT_TRUE(a.consistent) << a.discrepancy << " vs " << a.combined_uncertainty;
  const auto b = verify_RT_FT_identity(build_counterexample_tensor(26), 30.0, opts(100000, 33));
  EXPECT_TRUE(b.consistent) << b.discrepancy << " vs " << b.combined_uncertainty;
  EXPECT_THROW(verify_RT_FT_identity(x, 0.0, opts(100, 1)), std::domain_error);
}

TEST(ScalarMoment, Examples) {
  const auto zero = estimate_scalar_moment(SymmetricTensor(3, 3), 2, opts(100, 1));
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_EQ(zero.standard_error, 0.0);

  const auto t = build_counterexample_tensor(26);
  const double exact = poly_moment(tensor_to_polynomial(t), 2).get_d();
  const auto m2 = estimate_scalar_moment(t, 2, opts(100000, 41));
  EXPECT_LE(std::abs(m2.value - exact), 3 * m2.standard_error);

  for (int k : {1, 3}) {
    const auto odd = estimate_scalar_moment(t, k, opts(100000, 43));
    EXPECT_LE(std::abs(odd.value), 3 * odd.standard_error) << k;
  }
  EXPECT_THROW(estimate_scalar_moment(t, 0, opts(100, 1)), std::domain_error);
}

TEST(ScalarMoment, AgreementSuite) {
  std::mt19937_64 rng(71);
  std::vector<SymmetricTensor> tensors;
  for (int i = 0; i < 10; ++i) tensors.push_back(oracle::random_tensor(rng, 3, 4, 0.3));
  for (int k = 1; k <= 4; ++k) {
    int within = 0;
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      const double exact = invariant_M_k<Rational>(tensors[i], k).get_d();
      const auto est = estimate_scalar_moment(tensors[i], k, opts(50000, 100 + i));
      if (std::abs(est.value - exact) <= 4 * est.standard_error + 1e-12) ++within;
    }
    EXPECT_GE(within, 9) << k;
  }
}
