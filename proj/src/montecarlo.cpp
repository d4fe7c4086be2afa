#include "tensorres/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace tensorres {

double GaussianStream::uniform_open_closed() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open_closed();
  const double u2 = uniform_open_closed();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void GaussianStream::fill(std::vector<double>& g) {
  for (auto& x : g) x = next();
}

TensorForm::TensorForm(const SymmetricTensor& t) : order_(t.order()), dimension_(t.dimension()) {
  for (const auto& [idx, v] : t.entries()) {
    Term term{v.get_d() * static_cast<double>(permutation_count(idx)), {}};
    for (int i : idx) term.variables.push_back(i - 1);
    terms_.push_back(std::move(term));
  }
}

double TensorForm::operator()(const std::vector<double>& g) const {
  double s = 0;
  for (const auto& term : terms_) {
    double x = term.coefficient;
    for (int v : term.variables) x *= g[static_cast<std::size_t>(v)];
    s += x;
  }
  return s;
}

std::complex<double> z_summand(double s, int order, double y) {
  // 1/(p i y) = -i/(p y)
  const double angle = s / (static_cast<double>(order) * y);
  return {std::cos(angle), -std::sin(angle)};
}

int default_lane_count() {
  if (const char* env = std::getenv("TENSORRES_LANES")) {
    const int lanes = std::atoi(env);
    if (lanes >= 1) return lanes;
  }
  return 1;
}

namespace {

void validate(double y, const SamplingOptions& options) {
  if (y == 0 || !std::isfinite(y)) throw std::domain_error("evaluation point must be iy with finite y != 0");
  if (options.samples < 2) throw std::domain_error("need at least two samples");
  if (options.lanes < 1) throw std::domain_error("lane count must be positive");
}

// Runs `per_sample(acc, g)` over the sample budget split across lanes and
// merges lane accumulators in lane order.
template <class Acc, class Make, class PerSample>
Acc run_lanes(int dimension, const SamplingOptions& options, Make make, PerSample per_sample) {
  const auto lanes = static_cast<std::uint64_t>(options.lanes);
  std::vector<Acc> partial;
  partial.reserve(lanes);
  for (std::uint64_t l = 0; l < lanes; ++l) partial.push_back(make());
  auto work = [&](std::uint64_t lane) {
    const std::uint64_t count = options.samples / lanes + (lane < options.samples % lanes ? 1 : 0);
    GaussianStream stream(options.seed + lane);
    std::vector<double> g(static_cast<std::size_t>(dimension));
    Acc& acc = partial[lane];
    for (std::uint64_t i = 0; i < count; ++i) {
      stream.fill(g);
      per_sample(acc, g);
    }
  };
  if (lanes == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::uint64_t l = 0; l < lanes; ++l) threads.emplace_back(work, l);
    for (auto& th : threads) th.join();
  }
  Acc total = make();
  for (const auto& acc : partial) total.merge(acc);
  return total;
}

// Sums over samples for Z and R at several points iy_j, plus cross sums
// e_i conj(e_j) for selected pairs.
struct PhaseSums {
  std::vector<double> ys;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::uint64_t n = 0;
  std::vector<std::complex<double>> e, a, ae, cross;
  std::vector<double> re2, im2, aa;
  std::vector<std::complex<double>> scratch;

  PhaseSums(std::vector<double> points, std::vector<std::pair<std::size_t, std::size_t>> cross_pairs)
      : ys(std::move(points)), pairs(std::move(cross_pairs)) {
    e.assign(ys.size(), 0.0);
    a.assign(ys.size(), 0.0);
    ae.assign(ys.size(), 0.0);
    re2.assign(ys.size(), 0.0);
    im2.assign(ys.size(), 0.0);
    aa.assign(ys.size(), 0.0);
    cross.assign(pairs.size(), 0.0);
    scratch.resize(ys.size());
  }

  void add(double s, double w, int order) {
    ++n;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const std::complex<double> ej = z_summand(s, order, ys[j]);
      scratch[j] = ej;
      const std::complex<double> aj = (w - 1.0) * (ej - 1.0) + ej;
      e[j] += ej;
      re2[j] += ej.real() * ej.real();
      im2[j] += ej.imag() * ej.imag();
      a[j] += aj;
      aa[j] += std::norm(aj);
      ae[j] += aj * std::conj(ej);
    }
    for (std::size_t q = 0; q < pairs.size(); ++q) cross[q] += scratch[pairs[q].first] * std::conj(scratch[pairs[q].second]);
  }

  void merge(const PhaseSums& o) {
    n += o.n;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      e[j] += o.e[j];
      re2[j] += o.re2[j];
      im2[j] += o.im2[j];
      a[j] += o.a[j];
      aa[j] += o.aa[j];
      ae[j] += o.ae[j];
    }
    for (std::size_t q = 0; q < pairs.size(); ++q) cross[q] += o.cross[q];
  }

  std::complex<double> mean_e(std::size_t j) const { return e[j] / static_cast<double>(n); }

  double se_e(std::size_t j) const {
    const double dn = static_cast<double>(n);
    const std::complex<double> m = mean_e(j);
    const double vr = std::max(0.0, (re2[j] - dn * m.real() * m.real()) / (dn - 1));
    const double vi = std::max(0.0, (im2[j] - dn * m.imag() * m.imag()) / (dn - 1));
    return std::sqrt((vr + vi) / dn);
  }

  // R at point j with its delta-method standard error.
  std::pair<std::complex<double>, double> ratio(std::size_t j) const {
    const double dn = static_cast<double>(n);
    const std::complex<double> z(0.0, ys[j]);
    const std::complex<double> b = e[j] / dn;
    const std::complex<double> c = a[j] / e[j];
    const std::complex<double> r = c / z;
    // sum |a_i - c e_i|^2; the residual mean a - c e vanishes by construction.
    const double ss = aa[j] - 2.0 * std::real(std::conj(c) * ae[j]) + std::norm(c) * (re2[j] + im2[j]);
    const double se = std::sqrt(std::max(0.0, ss) / (dn * (dn - 1))) / std::abs(z * b);
    return {r, se};
  }
};

PhaseSums sample_phases(const SymmetricTensor& t, std::vector<double> ys,
                        std::vector<std::pair<std::size_t, std::size_t>> pairs, const SamplingOptions& options) {
  const TensorForm form(t);
  const int order = t.order();
  const double inv_n = 1.0 / static_cast<double>(t.dimension());
  return run_lanes<PhaseSums>(
      t.dimension(), options, [&] { return PhaseSums(ys, pairs); },
      [&](PhaseSums& acc, const std::vector<double>& g) {
        double norm2 = 0;
        for (double x : g) norm2 += x * x;
        acc.add(form(g), norm2 * inv_n, order);
      });
}

ResolventEstimate base_estimate(const char* quantity, double y, const SamplingOptions& options) {
  ResolventEstimate est;
  est.quantity = quantity;
  est.y = y;
  est.sample_count = options.samples;
  est.seed = options.seed;
  est.lanes = options.lanes;
  return est;
}

}  // namespace

ResolventEstimate estimate_Z(const SymmetricTensor& t, double y, const SamplingOptions& options) {
  validate(y, options);
  const PhaseSums sums = sample_phases(t, {y}, {}, options);
  ResolventEstimate est = base_estimate("Z", y, options);
  est.value = sums.mean_e(0);
  est.standard_error = sums.se_e(0);
  return est;
}

ResolventEstimate estimate_R(const SymmetricTensor& t, double y, const SamplingOptions& options,
                             double small_z_threshold) {
  validate(y, options);
  const PhaseSums sums = sample_phases(t, {y}, {}, options);
  ResolventEstimate est = base_estimate("R", y, options);
  std::tie(est.value, est.standard_error) = sums.ratio(0);
  if (std::abs(sums.mean_e(0)) < small_z_threshold)
    est.warnings.push_back("ill-conditioned ratio: |Z| estimate " + std::to_string(std::abs(sums.mean_e(0))) +
                           " below threshold " + std::to_string(small_z_threshold));
  return est;
}

IdentityReport verify_RT_FT_identity(const SymmetricTensor& t, double y, const SamplingOptions& options, double step) {
  validate(y, options);
  const double h = step > 0 ? step : std::abs(y) / 1000.0;
  if (h >= std::abs(y) / 4) throw std::domain_error("finite-difference step too large for y");

  // Stencil y - 2h .. y + 2h with four substeps per h so log Z can be
  // continued point to point.
  constexpr int kSub = 4;
  std::vector<double> ys;
  for (int j = -2 * kSub; j <= 2 * kSub; ++j) ys.push_back(y + h * j / kSub);
  const std::size_t center = 2 * kSub;
  const std::size_t plus = center + kSub;
  const std::size_t minus = center - kSub;
  const PhaseSums sums = sample_phases(t, ys, {{plus, minus}}, options);

  IdentityReport report;
  report.y = y;
  report.step = h;

  std::vector<std::complex<double>> log_z(ys.size());
  double previous_phase = 0;
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const std::complex<double> z = sums.mean_e(j);
    if (std::abs(z) == 0) throw BranchTrackingError("Z estimate vanished on the stencil");
    double phase = std::arg(z);
    if (j > 0) {
      phase += 2.0 * std::numbers::pi * std::round((previous_phase - phase) / (2.0 * std::numbers::pi));
      if (std::abs(phase - previous_phase) > std::numbers::pi / 2)
        throw BranchTrackingError("log Z winds between y = " + std::to_string(ys[j - 1]) + " and y = " +
                                  std::to_string(ys[j]));
    }
    previous_phase = phase;
    log_z[j] = {std::log(std::abs(z)), phase};
  }

  const double p_over_n = static_cast<double>(t.order()) / static_cast<double>(t.dimension());
  const std::complex<double> iy(0.0, y);
  // d/dz = -i d/dy on the imaginary axis.
  const std::complex<double> d_h = (log_z[plus] - log_z[minus]) / (2.0 * h);
  const std::complex<double> d_2h = (log_z.back() - log_z.front()) / (4.0 * h);
  const std::complex<double> f_prime = std::complex<double>(0.0, -1.0) * d_h;
  report.identity = 1.0 / iy - p_over_n * f_prime;
  std::tie(report.direct, report.direct_standard_error) = sums.ratio(center);

  // Linearization of log B+ - log B-: residual e+/B+ - e-/B- with zero mean.
  const double dn = static_cast<double>(sums.n);
  const std::complex<double> b_plus = sums.mean_e(plus);
  const std::complex<double> b_minus = sums.mean_e(minus);
  const double ss = (sums.re2[plus] + sums.im2[plus]) / std::norm(b_plus) +
                    (sums.re2[minus] + sums.im2[minus]) / std::norm(b_minus) -
                    2.0 * std::real(sums.cross[0] / (b_plus * std::conj(b_minus)));
  const double se_diff = std::sqrt(std::max(0.0, ss) / (dn * (dn - 1)));
  report.identity_standard_error = p_over_n * se_diff / (2.0 * h);
  report.truncation_allowance = p_over_n * std::abs(d_2h - d_h) / 3.0;

  report.discrepancy = std::abs(report.direct - report.identity);
  const double floor = 1e-12 / std::abs(y);
  report.combined_uncertainty =
      kIdentityCoverage * (report.direct_standard_error + report.identity_standard_error) +
      report.truncation_allowance + floor;
  report.consistent = report.discrepancy <= report.combined_uncertainty;
  if (std::abs(sums.mean_e(center)) < 1e-3) report.warnings.push_back("|Z| estimate is small; ratio is ill-conditioned");
  return report;
}

namespace {

struct PowerSums {
  std::uint64_t n = 0;
  double sum = 0;
  double sum2 = 0;
  void merge(const PowerSums& o) {
    n += o.n;
    sum += o.sum;
    sum2 += o.sum2;
  }
};

}  // namespace

ScalarEstimate estimate_scalar_moment(const SymmetricTensor& t, int k, const SamplingOptions& options) {
  if (k < 1) throw std::domain_error("moment order must be >= 1");
  if (options.samples < 2) throw std::domain_error("need at least two samples");
  const TensorForm form(t);
  const PowerSums sums = run_lanes<PowerSums>(
      t.dimension(), options, [] { return PowerSums{}; },
      [&](PowerSums& acc, const std::vector<double>& g) {
        const double x = std::pow(form(g), k);
        ++acc.n;
        acc.sum += x;
        acc.sum2 += x * x;
      });
  const double dn = static_cast<double>(sums.n);
  ScalarEstimate est;
  est.value = sums.sum / dn;
  est.standard_error = std::sqrt(std::max(0.0, (sums.sum2 - dn * est.value * est.value) / (dn - 1)) / dn);
  est.sample_count = sums.n;
  est.seed = options.seed;
  return est;
}

}  // namespace tensorres
