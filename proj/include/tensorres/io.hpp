#pragma once

#include "tensorres/matchings.hpp"
#include "tensorres/montecarlo.hpp"
#include "tensorres/spectral.hpp"
#include "tensorres/tensor.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tensorres {

inline constexpr const char* kToolkitVersion = "0.1.0";

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Tensor text format:
//   p N
//   i_1 ... i_p value      (1-based indices in any order; value "a/b", integer or decimal)
// Blank lines and '#' comments are ignored. Duplicate orbits, out-of-range
// indices, malformed values and zero values are errors.
SymmetricTensor parse_tensor(std::string_view text);

// Canonical form: header, then one line per stored orbit in lexicographic order.
std::string write_tensor(const SymmetricTensor& t);

// Whitespace-separated rationals alpha_0 alpha_1 ... ('#' comments allowed).
std::vector<Rational> parse_sequence(std::string_view text);

std::string read_file(const std::string& path);

// "sha256:<hex>"
std::string content_digest(std::string_view data);

nlohmann::json to_json(const MomentSequence& seq);
MomentSequence moment_sequence_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MomentProblemReport& report);
MomentProblemReport moment_problem_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ResolventEstimate& est);
ResolventEstimate resolvent_estimate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IdentityReport& report);
nlohmann::json to_json(const RecoveryReport& report);
nlohmann::json to_json(const ContractionGraph& g);

struct ReportEnvelope {
  std::string command;
  std::string input_digest;
  std::string version = kToolkitVersion;
  std::string timestamp;  // ISO 8601 UTC
  nlohmann::json payload;
  std::vector<std::string> notes;
};

ReportEnvelope make_envelope(std::string command, std::string_view input, nlohmann::json payload);
nlohmann::json to_json(const ReportEnvelope& env);
ReportEnvelope envelope_from_json(const nlohmann::json& j);

}  // namespace tensorres
