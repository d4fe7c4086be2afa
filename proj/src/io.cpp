#include "tensorres/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

namespace tensorres {

using nlohmann::json;

namespace {

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, int line, const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  return value;
}

json rational_json(const Rational& r, Mode mode) {
  if (mode == Mode::floating) return r.get_d();
  return to_string(r);
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number()) return Rational(j.get<double>());
  throw std::invalid_argument("expected a rational string or number");
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::complex<double> complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

SymmetricTensor parse_tensor(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::optional<SymmetricTensor> tensor;
  std::set<MultiIndex> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto toks = tokens_of(raw);
    if (toks.empty()) continue;
    if (!tensor) {
      if (toks.size() != 2) throw ParseError(line_no, "header must be 'p N'");
      const int p = parse_int(toks[0], line_no, "order");
      const int n = parse_int(toks[1], line_no, "dimension");
      if (p < 1 || n < 1) throw ParseError(line_no, "order and dimension must be positive");
      tensor.emplace(p, n);
      continue;
    }
    const int p = tensor->order();
    if (static_cast<int>(toks.size()) != p + 1)
      throw ParseError(line_no, "expected " + std::to_string(p) + " indices and a value");
    MultiIndex idx;
    for (int i = 0; i < p; ++i) {
      const int v = parse_int(toks[static_cast<std::size_t>(i)], line_no, "index");
      if (v < 1 || v > tensor->dimension())
        throw ParseError(line_no, "index " + std::to_string(v) + " out of range 1.." + std::to_string(tensor->dimension()));
      idx.push_back(v);
    }
    Rational value;
    try {
      value = parse_rational(toks.back());
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    if (value == 0) throw ParseError(line_no, "zero values must be omitted");
    MultiIndex key = idx;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) throw ParseError(line_no, "duplicate entry for a permutation of an earlier index");
    tensor->set(idx, value);
  }
  if (!tensor) throw ParseError(line_no, "missing header");
  return *tensor;
}

std::string write_tensor(const SymmetricTensor& t) {
  std::ostringstream os;
  os << t.order() << ' ' << t.dimension() << '\n';
  for (const auto& [idx, v] : t.entries()) {
    for (int i : idx) os << i << ' ';
    os << to_string(v) << '\n';
  }
  return os.str();
}

std::vector<Rational> parse_sequence(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::vector<Rational> out;
  while (std::getline(in, raw)) {
    ++line_no;
    for (const auto& tok : tokens_of(raw)) {
      try {
        out.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string content_digest(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 digest failed");
  std::ostringstream os;
  os << "sha256:";
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

json to_json(const MomentSequence& seq) {
  json values = json::array();
  for (const auto& v : seq.values) values.push_back(rational_json(v, seq.mode));
  json j = {{"values", values},
            {"mode", seq.mode == Mode::exact ? "exact" : "float"},
            {"order", seq.order},
            {"dimension", seq.dimension},
            {"max_k", seq.max_order()},
            {"source", seq.source}};
  j["construction_parameter"] = seq.construction_parameter ? json(*seq.construction_parameter) : json(nullptr);
  return j;
}

MomentSequence moment_sequence_from_json(const json& j) {
  MomentSequence seq;
  seq.mode = j.at("mode").get<std::string>() == "float" ? Mode::floating : Mode::exact;
  for (const auto& v : j.at("values")) seq.values.push_back(rational_from_json(v));
  seq.order = j.at("order").get<int>();
  seq.dimension = j.at("dimension").get<int>();
  seq.source = j.at("source").get<std::string>();
  if (j.contains("construction_parameter") && !j["construction_parameter"].is_null())
    seq.construction_parameter = j["construction_parameter"].get<int>();
  return seq;
}

json to_json(const MomentProblemReport& report) {
  const Certificate& c = report.certificate;
  json cert = {{"kind", to_string(c.kind)}};
  if (c.kind == CertificateKind::negative_even_entry) {
    cert["index"] = c.index;
    cert["value"] = to_string(c.value);
  } else if (c.kind == CertificateKind::hankel_not_psd) {
    cert["hankel_order"] = c.hankel_order;
    cert["minor_rows"] = c.minor_rows;
    cert["leading_minor"] = c.leading_minor;
    cert["determinant"] = to_string(c.determinant);
  }
  return {{"verdict", to_string(report.verdict)},
          {"certificate", cert},
          {"hankel_orders_checked", report.hankel_orders_checked},
          {"necessary_conditions_only", true},
          {"description", report.description}};
}

MomentProblemReport moment_problem_report_from_json(const json& j) {
  MomentProblemReport r;
  r.verdict = j.at("verdict").get<std::string>() == "not-a-moment-sequence" ? Verdict::not_a_moment_sequence
                                                                             : Verdict::moment_sequence_possible;
  r.hankel_orders_checked = j.at("hankel_orders_checked").get<int>();
  r.description = j.at("description").get<std::string>();
  const json& c = j.at("certificate");
  const std::string kind = c.at("kind").get<std::string>();
  if (kind == "negative-even-entry") {
    r.certificate.kind = CertificateKind::negative_even_entry;
    r.certificate.index = c.at("index").get<int>();
    r.certificate.value = rational_from_json(c.at("value"));
  } else if (kind == "hankel-not-psd") {
    r.certificate.kind = CertificateKind::hankel_not_psd;
    r.certificate.hankel_order = c.at("hankel_order").get<int>();
    r.certificate.minor_rows = c.at("minor_rows").get<std::vector<int>>();
    r.certificate.leading_minor = c.at("leading_minor").get<bool>();
    r.certificate.determinant = rational_from_json(c.at("determinant"));
  }
  return r;
}

json to_json(const ResolventEstimate& est) {
  return {{"quantity", est.quantity},
          {"z", complex_json({0.0, est.y})},
          {"value", complex_json(est.value)},
          {"standard_error", est.standard_error},
          {"sample_count", est.sample_count},
          {"seed", est.seed},
          {"lanes", est.lanes},
          {"warnings", est.warnings}};
}

ResolventEstimate resolvent_estimate_from_json(const json& j) {
  ResolventEstimate est;
  est.quantity = j.at("quantity").get<std::string>();
  est.y = complex_from_json(j.at("z")).imag();
  est.value = complex_from_json(j.at("value"));
  est.standard_error = j.at("standard_error").get<double>();
  est.sample_count = j.at("sample_count").get<std::uint64_t>();
  est.seed = j.at("seed").get<std::uint64_t>();
  est.lanes = j.at("lanes").get<int>();
  est.warnings = j.at("warnings").get<std::vector<std::string>>();
  return est;
}

json to_json(const IdentityReport& r) {
  return {{"z", complex_json({0.0, r.y})},
          {"step", r.step},
          {"direct", complex_json(r.direct)},
          {"identity", complex_json(r.identity)},
          {"discrepancy", r.discrepancy},
          {"direct_standard_error", r.direct_standard_error},
          {"identity_standard_error", r.identity_standard_error},
          {"truncation_allowance", r.truncation_allowance},
          {"combined_uncertainty", r.combined_uncertainty},
          {"consistent", r.consistent},
          {"warnings", r.warnings}};
}

json to_json(const RecoveryReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"k", row.k}, {"alpha", to_string(row.alpha)}, {"trace_over_n", to_string(row.expected)}});
  return {{"passed", r.passed}, {"rows", rows}, {"mismatched_orders", r.mismatched_orders}};
}

json to_json(const ContractionGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({e.u + 1, e.v + 1});
  return {{"vertices", g.vertex_count}, {"edges", edges}};
}

ReportEnvelope make_envelope(std::string command, std::string_view input, json payload) {
  ReportEnvelope env;
  env.command = std::move(command);
  env.input_digest = content_digest(input);
  env.timestamp = utc_timestamp();
  env.payload = std::move(payload);
  return env;
}

json to_json(const ReportEnvelope& env) {
  return {{"command", env.command},     {"input_digest", env.input_digest}, {"version", env.version},
          {"timestamp", env.timestamp}, {"payload", env.payload},           {"notes", env.notes}};
}

ReportEnvelope envelope_from_json(const json& j) {
  ReportEnvelope env;
  env.command = j.at("command").get<std::string>();
  env.input_digest = j.at("input_digest").get<std::string>();
  env.version = j.at("version").get<std::string>();
  env.timestamp = j.at("timestamp").get<std::string>();
  env.payload = j.at("payload");
  env.notes = j.at("notes").get<std::vector<std::string>>();
  return env;
}

}  // namespace tensorres
