#include "tensorres/counterexample.hpp"
#include "tensorres/spectral.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace tensorres;
using V = std::vector<Rational>;

namespace {

SymmetricTensor diagonal(std::vector<Rational> d) {
  SymmetricTensor x(2, static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) x.set({static_cast<int>(i) + 1, static_cast<int>(i) + 1}, d[i]);
  return x;
}

SymmetricTensor random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4);
  return oracle::random_tensor(rng, 2, dim(rng), 0.7);
}

}  // namespace

TEST(NormalizedCoefficients, Examples) {
  auto zero = normalized_coefficients(SymmetricTensor(3, 3), 5);
  EXPECT_EQ(zero.values, (V{1, 0, 0, 0, 0, 0}));

  auto ident = normalized_coefficients(diagonal({1, 1, 1}), 6);
  for (const auto& a : ident.values) EXPECT_EQ(a, 1);

  auto ce = normalized_coefficients(build_counterexample_tensor(26), 4, Backend::wick);
  EXPECT_EQ(ce.values[4], f_closed_form(26) / (27 * 27 * 6));
  EXPECT_LT(ce.values[4], 0);
  EXPECT_EQ(ce.dimension, 27);
  EXPECT_EQ(ce.order, 3);
}

TEST(NormalizedCoefficients, BackendsAgree) {
  std::mt19937_64 rng(51);
  for (int p : {2, 3})
    for (int n = 1; n <= 4; ++n) {
      const auto t = oracle::random_tensor(rng, p, n, 0.5);
      EXPECT_EQ(normalized_coefficients(t, 4, Backend::contraction).values,
                normalized_coefficients(t, 4, Backend::wick).values);
    }
}

TEST(NormalizedCoefficients, FloatModeTracksExact) {
  std::mt19937_64 rng(52);
  const auto t = oracle::random_tensor(rng, 3, 3, 0.6);
  const auto exact = normalized_coefficients(t, 4);
  const auto fl = normalized_coefficients(t, 4, Backend::contraction, Mode::floating);
  for (std::size_t k = 0; k < exact.values.size(); ++k)
    EXPECT_NEAR(fl.values[k].get_d(), exact.values[k].get_d(), 1e-10 * (1 + std::abs(exact.values[k].get_d())));
}

TEST(NormalizedCoefficients, FirstCoefficient) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const auto odd = oracle::random_tensor(rng, 3, 3, 0.5);
    EXPECT_EQ(normalized_coefficients(odd, 1).values[1], 0);
    const auto x = random_matrix(rng);
    EXPECT_EQ(normalized_coefficients(x, 1).values[1], matrix_power_trace(x, 1) / x.dimension());
  }
}

TEST(NormalizedCoefficients, ScalingCovariance) {
  std::mt19937_64 rng(54);
  const auto t = oracle::random_tensor(rng, 3, 3, 0.6);
  const Rational c(5, 3);
  const auto a = normalized_coefficients(t, 4).values;
  const auto b = normalized_coefficients(t.scaled(c), 4).values;
  for (unsigned k = 0; k <= 4; ++k) EXPECT_EQ(b[k], pow(c, k) * a[k]);

  const auto ce = build_counterexample_tensor(26);
  const auto v1 = check_moment_sequence(normalized_coefficients(ce, 4, Backend::wick));
  const auto v2 = check_moment_sequence(normalized_coefficients(ce.scaled(Rational(7, 2)), 4, Backend::wick));
  EXPECT_EQ(v1.verdict, v2.verdict);
  EXPECT_EQ(v2.certificate.kind, CertificateKind::negative_even_entry);
  EXPECT_EQ(v2.certificate.index, 4);
}

TEST(MatrixRecovery, Examples) {
  auto d = matrix_recovery_check(diagonal({1, 2}), 4);
  EXPECT_TRUE(d.passed);
  EXPECT_EQ(d.rows[3].alpha, Rational(17, 2));
  EXPECT_TRUE(matrix_recovery_check(diagonal({1, 1, 1}), 6).passed);
  auto z = matrix_recovery_check(SymmetricTensor(2, 3), 4);
  EXPECT_TRUE(z.passed);
  for (const auto& row : z.rows) EXPECT_EQ(row.alpha, 0);
  EXPECT_THROW(matrix_recovery_check(SymmetricTensor(3, 2), 2), std::domain_error);
}

TEST(MatrixRecovery, RandomMatrices) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = matrix_recovery_check(random_matrix(rng), 6);
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.mismatched_orders.empty());
  }
}

TEST(MomentCheck, Examples) {
  auto gauss = check_moment_sequence(V{1, 0, 1, 0, 3});
  EXPECT_EQ(gauss.verdict, Verdict::moment_sequence_possible);
  EXPECT_EQ(gauss.hankel_orders_checked, 2);  // H_1, H_2; H_0 is alpha_0 > 0

  auto neg = check_moment_sequence(V{1, 0, 1, 0, Rational(-1, 100)});
  EXPECT_EQ(neg.verdict, Verdict::not_a_moment_sequence);
  EXPECT_EQ(neg.certificate.kind, CertificateKind::negative_even_entry);
  EXPECT_EQ(neg.certificate.index, 4);
  EXPECT_EQ(neg.certificate.value, Rational(-1, 100));

  auto hank = check_moment_sequence(V{1, 2, 1});
  EXPECT_EQ(hank.verdict, Verdict::not_a_moment_sequence);
  EXPECT_EQ(hank.certificate.kind, CertificateKind::hankel_not_psd);
  EXPECT_EQ(hank.certificate.hankel_order, 1);
  EXPECT_EQ(hank.certificate.determinant, -3);
  EXPECT_TRUE(hank.certificate.leading_minor);

  EXPECT_THROW(check_moment_sequence(V{}), std::domain_error);
  EXPECT_THROW(check_moment_sequence(V{0, 1}), std::domain_error);
}

TEST(MomentCheck, ZeroPivotFallsBackToFullTest) {
  // H_2 = [[1,0,0],[0,0,1],[0,1,c]]: the second leading minor is zero and the
  // negative direction only shows in the {1,2} principal minor.
  auto r = check_moment_sequence(V{1, 0, 0, 1, 5});
  EXPECT_EQ(r.verdict, Verdict::not_a_moment_sequence);
  EXPECT_EQ(r.certificate.kind, CertificateKind::hankel_not_psd);
  ASSERT_FALSE(r.certificate.minor_rows.empty());
  EXPECT_LT(r.certificate.determinant, 0);
  const auto h = hankel_matrix(V{1, 0, 0, 1, 5}, r.certificate.hankel_order);
  const std::size_t m = static_cast<std::size_t>(r.certificate.hankel_order) + 1;
  std::vector<Rational> minor;
  for (int i : r.certificate.minor_rows)
    for (int j : r.certificate.minor_rows) minor.push_back(h[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)]);
  EXPECT_EQ(determinant(minor, r.certificate.minor_rows.size()), r.certificate.determinant);

  // Point mass at 0 has a singular but PSD Hankel matrix.
  EXPECT_EQ(check_moment_sequence(V{1, 0, 0, 0, 0}).verdict, Verdict::moment_sequence_possible);
}

TEST(MomentCheck, SoundOnFiniteMeasures) {
  std::mt19937_64 rng(57);
  std::uniform_int_distribution<int> atoms_n(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = atoms_n(rng);
    std::vector<Rational> atoms, weights;
    Rational total = 0;
    for (int j = 0; j < n; ++j) {
      atoms.push_back(oracle::random_small_rational(rng, 5, 3));
      Rational w = abs(oracle::random_nonzero_rational(rng));
      weights.push_back(w);
      total += w;
    }
    for (auto& w : weights) w /= total;
    const auto m = oracle::finite_measure_moments(atoms, weights, 8);
    EXPECT_EQ(check_moment_sequence(m).verdict, Verdict::moment_sequence_possible) << trial;
  }
}

TEST(MomentCheck, CounterexampleIsRejected) {
  auto r = check_moment_sequence(normalized_coefficients(build_counterexample_tensor(26), 4, Backend::wick));
  EXPECT_EQ(r.verdict, Verdict::not_a_moment_sequence);
  EXPECT_EQ(r.certificate.kind, CertificateKind::negative_even_entry);
  EXPECT_EQ(r.certificate.index, 4);
}

TEST(Determinant, Small) {
  EXPECT_EQ(determinant(V{1, 2, 2, 1}, 2), -3);
  EXPECT_EQ(determinant(V{0, 1, 1, 0}, 2), -1);
  EXPECT_EQ(determinant(V{2, 0, 0, 0, 3, 0, 0, 0, 4}, 3), 24);
  EXPECT_EQ(determinant(V{1, 2, 2, 4}, 2), 0);
}

TEST(ResolventSeries, Examples) {
  auto zero = truncated_resolvent_series(SymmetricTensor(3, 2), 4);
  const std::complex<double> z(0, 3);
  EXPECT_EQ(zero(z), 1.0 / z);
  EXPECT_THROW(zero(std::complex<double>(2, 0)), std::domain_error);

  SymmetricTensor x(2, 3);
  x.set({1, 1}, 1);
  x.set({1, 2}, Rational(1, 2));
  x.set({3, 3}, -2);
  auto series = truncated_resolvent_series(x, 6);
  for (double y : {20.0, 40.0}) {
    const std::complex<double> w(0, y);
    const double err = std::abs(series(w) - matrix_resolvent_trace(x, w));
    EXPECT_LT(err, 4 * std::pow(2.5 / y, 8) / y) << y;
  }

  auto ce = truncated_resolvent_series(build_counterexample_tensor(26), 4);
  const auto v = ce(std::complex<double>(0, 10));
  EXPECT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
}
