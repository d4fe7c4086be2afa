// tensorres: command-line front end.
// Exit codes: 0 ok / moment-sequence-possible, 1 computational failure,
// 2 usage error, 3 not-a-moment-sequence.

#include "tensorres/contraction.hpp"
#include "tensorres/counterexample.hpp"
#include "tensorres/errors.hpp"
#include "tensorres/io.hpp"
#include "tensorres/matchings.hpp"
#include "tensorres/montecarlo.hpp"
#include "tensorres/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>

using namespace tensorres;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotMoment = 3;

void emit(const ReportEnvelope& env) { std::cout << to_json(env).dump(2) << '\n'; }

struct Loaded {
  std::string text;
  SymmetricTensor tensor;
};

Loaded load_tensor(const std::string& path) {
  std::string text = read_file(path);
  SymmetricTensor t = parse_tensor(text);
  return {std::move(text), std::move(t)};
}

int run_moments(const std::string& path, int k, const std::string& backend, bool use_float) {
  const Loaded in = load_tensor(path);
  auto seq = normalized_coefficients(in.tensor, k, backend == "wick" ? Backend::wick : Backend::contraction,
                                     use_float ? Mode::floating : Mode::exact);
  seq.source = path;
  emit(make_envelope("moments", in.text, to_json(seq)));
  return kExitOk;
}

int run_check(const std::string& tensor_path, const std::string& sequence_path, int k, const std::string& backend) {
  std::string text;
  MomentSequence seq;
  if (!tensor_path.empty()) {
    const Loaded in = load_tensor(tensor_path);
    text = in.text;
    seq = normalized_coefficients(in.tensor, k, backend == "wick" ? Backend::wick : Backend::contraction);
    seq.source = tensor_path;
  } else {
    text = read_file(sequence_path);
    seq.values = parse_sequence(text);
    seq.source = sequence_path;
  }
  const auto report = check_moment_sequence(seq);
  json payload = {{"sequence", to_json(seq)}, {"report", to_json(report)}};
  auto env = make_envelope("check", text, payload);
  env.notes.push_back("verdict uses necessary Hamburger conditions on the finite truncation only");
  emit(env);
  return report.verdict == Verdict::not_a_moment_sequence ? kExitNotMoment : kExitOk;
}

int run_counterexample(int parameter, int search_bound) {
  const CounterexampleSpec spec{parameter};
  const SymmetricTensor t = build_counterexample_tensor(parameter);
  const Rational kappa4 = kappa4_of_counterexample(parameter, Backend::wick);
  const Rational f = f_closed_form(parameter);
  auto seq = normalized_coefficients(t, 4, Backend::wick);
  seq.construction_parameter = parameter;
  seq.source = "counterexample";
  const auto report = check_moment_sequence(seq);
  const auto minimal = minimal_negative_N(search_bound);
  json payload = {
      {"parameter", parameter},
      {"ambient_dimension", spec.ambient_dimension()},
      {"tensor", write_tensor(t)},
      {"kappa4", to_string(kappa4)},
      {"f_closed_form", to_string(f)},
      {"kappa4_equals_f", kappa4 == f},
      {"alpha4", to_string(seq.values[4])},
      {"sequence", to_json(seq)},
      {"report", to_json(report)},
      {"minimal_negative",
       {{"search_bound", search_bound},
        {"parameter", minimal.parameter ? json(*minimal.parameter) : json(nullptr)},
        {"negative_through_bound", minimal.negative_through_bound}}},
  };
  auto env = make_envelope("counterexample", write_tensor(t), payload);
  env.notes.push_back("informational command: exit status does not follow the verdict");
  emit(env);
  return kExitOk;
}

int run_enumerate(int p, int k, bool connected_only, bool classes, bool list) {
  std::uint64_t total = 0, connected = 0;
  json matchings = json::array();
  for_each_matching(p, k, [&](const Matching& mu) {
    ++total;
    const bool conn = is_connected(build_multigraph(mu));
    if (conn) ++connected;
    if (list && (conn || !connected_only)) {
      json pairs = json::array();
      for (const auto& [a, b] : mu.pairs) pairs.push_back({a, b});
      matchings.push_back(pairs);
    }
  });
  json payload = {{"p", p},
                  {"k", k},
                  {"total", total},
                  {"connected", connected},
                  {"disconnected", total - connected},
                  {"connected_only", connected_only}};
  if (list) payload["matchings"] = matchings;
  if (classes) {
    json arr = json::array();
    for (const auto& cls : isomorphism_classes(p, k, connected_only))
      arr.push_back({{"multiplicity", cls.multiplicity},
                     {"connected", cls.connected},
                     {"graph", to_json(cls.representative)}});
    payload["classes"] = arr;
  }
  emit(make_envelope("enumerate", std::to_string(p) + " " + std::to_string(k), payload));
  return kExitOk;
}

int run_mc(const std::string& path, double y, std::uint64_t samples, std::uint64_t seed, int lanes,
           bool verify_identity, double step) {
  const Loaded in = load_tensor(path);
  SamplingOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.lanes = lanes;
  json payload = {{"estimates", {to_json(estimate_Z(in.tensor, y, opts)), to_json(estimate_R(in.tensor, y, opts))}}};
  if (verify_identity) payload["identity"] = to_json(verify_RT_FT_identity(in.tensor, y, opts, step));
  emit(make_envelope("mc", in.text, payload));
  return kExitOk;
}

int run_recover(const std::string& path, int k) {
  const Loaded in = load_tensor(path);
  const auto report = matrix_recovery_check(in.tensor, k);
  emit(make_envelope("recover-matrix", in.text, to_json(report)));
  return report.passed ? kExitOk : kExitFailure;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cout << json{{"error", {{"type", kind}, {"message", message}}}}.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants, moment checks and Monte Carlo for symmetric tensor resolvents", "tensorres"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolkitVersion));

  std::string tensor_path, sequence_path, backend = "contraction";
  int k = 4;
  bool use_float = false, use_exact = false;

  auto* moments = app.add_subcommand("moments", "normalized coefficients alpha_0..alpha_K of a tensor");
  moments->add_option("--tensor", tensor_path, "tensor file")->required()->check(CLI::ExistingFile);
  moments->add_option("--k", k, "highest order K")->required()->check(CLI::Range(1, 64));
  moments->add_option("--backend", backend, "contraction or wick")
      ->check(CLI::IsMember({"contraction", "wick"}));
  auto* exact_flag = moments->add_flag("--exact", use_exact, "exact rationals (default)");
  moments->add_flag("--float", use_float, "double precision")->excludes(exact_flag);

  auto* check = app.add_subcommand("check", "moment-sequence check of a tensor's coefficients or a sequence file");
  auto* check_tensor = check->add_option("--tensor", tensor_path, "tensor file")->check(CLI::ExistingFile);
  auto* check_seq = check->add_option("--sequence", sequence_path, "file of alpha_0 alpha_1 ...")
                        ->check(CLI::ExistingFile);
  check_tensor->excludes(check_seq);
  check->add_option("--k", k, "highest order K when checking a tensor")->check(CLI::Range(1, 64));
  check->add_option("--backend", backend, "contraction or wick")->check(CLI::IsMember({"contraction", "wick"}));

  int parameter = 26, search_bound = 100;
  auto* ce = app.add_subcommand("counterexample", "certificate chain for the cubic counterexample family");
  ce->add_option("--param", parameter, "construction parameter n (ambient dimension n + 1)")
      ->required()
      ->check(CLI::Range(1, 100000));
  ce->add_option("--search-bound", search_bound, "bound for the minimal negative parameter search")
      ->check(CLI::Range(1, 100000));

  int p = 3;
  bool connected_only = false, classes = false, list = false;
  auto* en = app.add_subcommand("enumerate", "perfect matchings of [pk] and their glued multigraphs");
  en->add_option("--p", p, "tensor order")->required()->check(CLI::Range(1, 64));
  en->add_option("--k", k, "number of tensor copies")->required()->check(CLI::Range(0, 64));
  en->add_flag("--connected", connected_only, "restrict listings to connected graphs");
  en->add_flag("--classes", classes, "group by multigraph isomorphism class");
  en->add_flag("--list", list, "list every matching");

  double y = 0, step = 0;
  std::uint64_t samples = 100000, seed = 1;
  int lanes = default_lane_count();
  bool verify_identity = false;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates of Z and R at z = iy");
  mc->add_option("--tensor", tensor_path, "tensor file")->required()->check(CLI::ExistingFile);
  mc->add_option("--y", y, "imaginary part of z")->required();
  mc->add_option("--samples", samples, "sample count")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  mc->add_option("--seed", seed, "64-bit seed");
  mc->add_option("--lanes", lanes, "worker lanes (default TENSORRES_LANES or 1)")->check(CLI::Range(1, 1024));
  mc->add_flag("--verify-identity", verify_identity, "also compare R with 1/z - (p/N) F'");
  mc->add_option("--step", step, "finite-difference step (default y/1000)");

  auto* rec = app.add_subcommand("recover-matrix", "compare alpha_k(X) with Tr(X^k)/N for a matrix");
  rec->add_option("--tensor", tensor_path, "order-2 tensor file")->required()->check(CLI::ExistingFile);
  rec->add_option("--k", k, "highest order K")->required()->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
    if (check->parsed() && tensor_path.empty() && sequence_path.empty())
      throw CLI::RequiredError("check needs --tensor or --sequence");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (moments->parsed()) return run_moments(tensor_path, k, backend, use_float);
    if (check->parsed()) return run_check(tensor_path, sequence_path, k, backend);
    if (ce->parsed()) return run_counterexample(parameter, search_bound);
    if (en->parsed()) return run_enumerate(p, k, connected_only, classes, list);
    if (mc->parsed()) return run_mc(tensor_path, y, samples, seed, lanes, verify_identity, step);
    if (rec->parsed()) return run_recover(tensor_path, k);
  } catch (const ParseError& e) {
    print_error("parse", e.what());
    return kExitFailure;
  } catch (const ResourceError& e) {
    print_error("resource", e.what());
    return kExitFailure;
  } catch (const BranchTrackingError& e) {
    print_error("branch-tracking", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    print_error("computation", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
