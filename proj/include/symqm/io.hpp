#pragma once

// JSON and CSV persistence. Complex numbers are written as [re, im] pairs;
// JSON keys are lower_snake_case.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "symqm/born_rule.hpp"
#include "symqm/decoherence.hpp"
#include "symqm/gibbs.hpp"
#include "symqm/measurement.hpp"
#include "symqm/state.hpp"

namespace symqm {

using Json = nlohmann::json;

/// Raised for malformed configuration or fixture input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json complex_vector_to_json(const CVector& v);
CVector complex_vector_from_json(const Json& j);

/// {"dim": d, "amplitudes": [[re, im], ...]}
Json to_json(const StateVector& psi);
StateVector state_from_json(const Json& j);

Json to_json(const MeasurementRecord& record);

Json to_json(const GibbsConfig& cfg);
/// Missing keys keep their defaults; the result is validated.
GibbsConfig gibbs_config_from_json(const Json& j);

Json to_json(const PhaseReport& report, bool include_samples = false);
Json to_json(const ExponentScanReport& report);
Json to_json(const SweepReport& report);

Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  std::string str() const { return body_; }

 private:
  std::size_t columns_;
  std::string body_;
};

/// Shortest round-trip decimal form used in CSV output.
std::string format_number(double x);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace symqm
