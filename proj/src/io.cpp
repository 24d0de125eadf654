#include "symqm/io.hpp"

#include <charconv>
#include <fstream>

namespace symqm {

namespace {

std::string initial_name(InitialCondition c) {
  switch (c) {
    case InitialCondition::AllUp:
      return "up";
    case InitialCondition::AllDown:
      return "down";
    case InitialCondition::Random:
      break;
  }
  return "random";
}

InitialCondition initial_from_name(const std::string& s) {
  if (s == "random") return InitialCondition::Random;
  if (s == "up") return InitialCondition::AllUp;
  if (s == "down") return InitialCondition::AllDown;
  throw ConfigError("gibbs config: initial must be one of random, up, down");
}

std::string update_name(UpdateRule r) { return r == UpdateRule::Metropolis ? "metropolis" : "heat-bath"; }

UpdateRule update_from_name(const std::string& s) {
  if (s == "heat-bath") return UpdateRule::HeatBath;
  if (s == "metropolis") return UpdateRule::Metropolis;
  throw ConfigError("gibbs config: update must be one of heat-bath, metropolis");
}

template <typename T>
void read_optional(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

Json complex_vector_to_json(const CVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

CVector complex_vector_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& z = j[i];
    if (z.is_number()) {
      v(static_cast<Eigen::Index>(i)) = Complex(z.get<double>(), 0.0);
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      v(static_cast<Eigen::Index>(i)) = Complex(z[0].get<double>(), z[1].get<double>());
    } else {
      throw ConfigError("complex entries must be [re, im] pairs");
    }
  }
  return v;
}

Json to_json(const StateVector& psi) {
  return Json{{"dim", psi.dim()}, {"amplitudes", complex_vector_to_json(psi.amplitudes())}};
}

StateVector state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("amplitudes")) throw ConfigError("state: missing 'amplitudes'");
  const CVector v = complex_vector_from_json(j.at("amplitudes"));
  if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != v.size()) {
    throw ConfigError("state: 'dim' does not match the amplitude count");
  }
  try {
    return StateVector::from_amplitudes(v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("state: ") + e.what());
  }
}

Json to_json(const MeasurementRecord& record) {
  return Json{{"observable_label", record.observable_label},
              {"eigenvalues", record.eigenvalues},
              {"probabilities", record.probabilities},
              {"outcome_index", record.outcome_index},
              {"pre_state", to_json(record.pre_state)},
              {"post_state", to_json(record.post_state)},
              {"seed", record.seed}};
}

Json to_json(const GibbsConfig& cfg) {
  return Json{{"lattice", cfg.lattice},   {"coupling", cfg.coupling}, {"field", cfg.field},
              {"temperature", cfg.temperature}, {"sweeps", cfg.sweeps},   {"burn_in", cfg.burn_in},
              {"seed", cfg.seed},         {"initial", initial_name(cfg.initial)},
              {"update", update_name(cfg.update)}};
}

GibbsConfig gibbs_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("gibbs config must be a JSON object");
  GibbsConfig cfg;
  read_optional(j, "lattice", cfg.lattice);
  read_optional(j, "coupling", cfg.coupling);
  read_optional(j, "field", cfg.field);
  read_optional(j, "temperature", cfg.temperature);
  read_optional(j, "sweeps", cfg.sweeps);
  read_optional(j, "burn_in", cfg.burn_in);
  read_optional(j, "seed", cfg.seed);
  std::string initial = "random";
  read_optional(j, "initial", initial);
  cfg.initial = initial_from_name(initial);
  std::string update = "heat-bath";
  read_optional(j, "update", update);
  cfg.update = update_from_name(update);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

Json to_json(const PhaseReport& report, bool include_samples) {
  Json j{{"mean_abs_magnetization", report.mean_abs_magnetization},
         {"mean_magnetization", report.mean_magnetization},
         {"broken", report.broken},
         {"selected_sign", report.selected_sign},
         {"samples", report.magnetization_samples.size()}};
  if (include_samples) j["magnetization_samples"] = report.magnetization_samples;
  return j;
}

Json to_json(const ExponentScanReport& report) {
  return Json{{"betas", report.betas},
              {"max_normalization_violation", report.max_normalization_violation},
              {"multiplicativity_violation", report.multiplicativity_violation},
              {"passing", report.passing},
              {"degenerate", report.degenerate}};
}

Json to_json(const SweepReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"temperature", r.temperature},
                    {"mean_abs_magnetization", r.mean_abs_magnetization},
                    {"broken_fraction", r.broken_fraction},
                    {"seeds", r.seeds}});
  }
  Json j{{"rows", rows}};
  j["crossing_temperature"] = report.crossing_temperature ? Json(*report.crossing_temperature) : Json(nullptr);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) body_ += ',';
    body_ += header[i];
  }
  body_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::invalid_argument("CsvWriter: wrong column count");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_number(values[i]);
  }
  body_ += '\n';
}

std::string format_number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace symqm
