#include "bosetopo/config.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace bosetopo {

namespace {

using nlohmann::json;

const std::map<std::string, ModelSpec::Name> kModelNames = {
    {"photo_magnonic", ModelSpec::Name::PhotoMagnonic},
    {"photo_magnonic_rwa", ModelSpec::Name::PhotoMagnonicRWA},
    {"bkc", ModelSpec::Name::BKC},
    {"bosonic_ssh", ModelSpec::Name::BosonicSSH},
};

const std::map<std::string, PerturbationSpec::Kind> kPerturbationKinds = {
    {"magnon_hopping", PerturbationSpec::Kind::MagnonHopping},
    {"ssh_chiral_breaking", PerturbationSpec::Kind::SshChiralBreaking},
    {"linear_interpolation", PerturbationSpec::Kind::LinearInterpolation},
};

const std::map<std::string, Task> kTaskNames = {
    {"spectrum", Task::Spectrum},     {"bands", Task::Bands},
    {"classify", Task::Classify},     {"invariant", Task::Invariant},
    {"zeromodes", Task::ZeroModes},   {"sparams", Task::SParams},
    {"sweep", Task::Sweep},           {"bulkboundary", Task::BulkBoundary},
};

template <typename T>
std::string reverse_lookup(const std::map<std::string, T>& table, T value) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  throw std::logic_error("reverse_lookup: unknown enum value");
}

template <typename T>
T forward_lookup(const std::map<std::string, T>& table, const std::string& key,
                 const char* what) {
  const auto it = table.find(key);
  if (it == table.end()) {
    throw ValidationError(std::string("unknown ") + what + ": " + key);
  }
  return it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  throw ValidationError("complex value must be a number or a [re, im] pair");
}

json complex_to_json(const Complex& z) {
  if (z.imag() == 0.0) return json(z.real());
  return json::array({z.real(), z.imag()});
}

// ---------------------------------------------------------------------------
// ModelSpec
// ---------------------------------------------------------------------------

ModelSpec model_spec_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("model must be an object");
  ModelSpec spec;
  if (!j.contains("name")) throw ValidationError("model.name is required");
  spec.name = forward_lookup(kModelNames, j.at("name").get<std::string>(),
                             "model name");
  spec.N = j.value("N", 1);
  if (spec.N < 1) throw ValidationError("model.N must be >= 1");
  spec.n_offset = j.value("n_offset", 0);
  spec.pbc = j.value("pbc", false);
  if (j.contains("parameters")) {
    for (const auto& [key, value] : j.at("parameters").items()) {
      spec.parameters[key] = complex_from_json(value);
    }
  }
  if (j.contains("perturbations")) {
    for (const auto& pj : j.at("perturbations")) {
      PerturbationSpec p;
      p.kind = forward_lookup(kPerturbationKinds,
                              pj.at("kind").get<std::string>(),
                              "perturbation kind");
      p.strength = pj.value("strength", 0.0);
      if (!std::isfinite(p.strength)) {
        throw ValidationError("perturbation strength must be finite");
      }
      if (pj.contains("toward")) {
        p.toward =
            std::make_shared<ModelSpec>(model_spec_from_json(pj.at("toward")));
      }
      if (p.kind == PerturbationSpec::Kind::LinearInterpolation && !p.toward) {
        throw ValidationError("linear_interpolation requires a toward model");
      }
      spec.perturbations.push_back(std::move(p));
    }
  }
  return spec;
}

json model_spec_to_json(const ModelSpec& spec) {
  json j;
  j["name"] = reverse_lookup(kModelNames, spec.name);
  j["N"] = spec.N;
  j["n_offset"] = spec.n_offset;
  j["pbc"] = spec.pbc;
  json params = json::object();
  for (const auto& [key, value] : spec.parameters) {
    params[key] = complex_to_json(value);
  }
  j["parameters"] = params;
  json perts = json::array();
  for (const auto& p : spec.perturbations) {
    json pj;
    pj["kind"] = reverse_lookup(kPerturbationKinds, p.kind);
    pj["strength"] = p.strength;
    if (p.toward) pj["toward"] = model_spec_to_json(*p.toward);
    perts.push_back(pj);
  }
  j["perturbations"] = perts;
  return j;
}

// ---------------------------------------------------------------------------
// RunConfig
// ---------------------------------------------------------------------------

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be an object");
  RunConfig config;
  if (!j.contains("model")) throw ValidationError("config.model is required");
  config.model = model_spec_from_json(j.at("model"));
  if (j.contains("task")) {
    config.task =
        forward_lookup(kTaskNames, j.at("task").get<std::string>(), "task");
  }
  config.output = j.value("output", std::string());
  config.grid = j.value("grid", 1001);
  if (config.grid < 2) throw ValidationError("grid must be >= 2");
  config.tol = j.value("tol", -1.0);
  config.jobs = j.value("jobs", 1);
  if (j.contains("sweep")) {
    const json& sj = j.at("sweep");
    SweepConfig sweep;
    sweep.parameter = sj.value("parameter", std::string());
    sweep.start = sj.value("start", 0.0);
    sweep.stop = sj.value("stop", 0.0);
    sweep.steps = sj.value("steps", 2);
    if (sweep.steps < 2) throw ValidationError("sweep.steps must be >= 2");
    config.sweep = sweep;
  }
  if (j.contains("scattering")) {
    const json& sj = j.at("scattering");
    config.scattering.kappa_c = sj.value("kappa_c", config.scattering.kappa_c);
    config.scattering.kappa_m = sj.value("kappa_m", config.scattering.kappa_m);
    config.scattering.omega_center =
        sj.value("omega_center", config.scattering.omega_center);
    config.scattering.omega_span =
        sj.value("omega_span", config.scattering.omega_span);
  }
  return config;
}

json run_config_to_json(const RunConfig& config) {
  json j;
  j["model"] = model_spec_to_json(config.model);
  j["task"] = reverse_lookup(kTaskNames, config.task);
  j["output"] = config.output;
  j["grid"] = config.grid;
  j["tol"] = config.tol;
  j["jobs"] = config.jobs;
  if (config.sweep) {
    j["sweep"] = {{"parameter", config.sweep->parameter},
                  {"start", config.sweep->start},
                  {"stop", config.sweep->stop},
                  {"steps", config.sweep->steps}};
  }
  j["scattering"] = {{"kappa_c", config.scattering.kappa_c},
                     {"kappa_m", config.scattering.kappa_m},
                     {"omega_center", config.scattering.omega_center},
                     {"omega_span", config.scattering.omega_span}};
  return j;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  try {
    return run_config_from_json(j);
  } catch (const json::exception& e) {
    throw ValidationError("invalid config in " + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Sweep parameter paths
// ---------------------------------------------------------------------------

void set_model_parameter(ModelSpec& spec, const std::string& path,
                         double value) {
  if (path == "N") {
    spec.N = static_cast<int>(value);
    return;
  }
  if (path == "n_offset") {
    spec.n_offset = static_cast<int>(value);
    return;
  }
  constexpr const char* kParams = "parameters.";
  if (path.rfind(kParams, 0) == 0) {
    const std::string name = path.substr(std::string(kParams).size());
    if (name.empty()) throw ValidationError("empty parameter name in path");
    spec.parameters[name] = Complex(value, spec.parameters[name].imag());
    return;
  }
  constexpr const char* kPerts = "perturbations[";
  if (path.rfind(kPerts, 0) == 0) {
    const size_t open = std::string(kPerts).size();
    const size_t close = path.find(']', open);
    if (close != std::string::npos &&
        path.substr(close) == "].strength") {
      size_t index = 0;
      try {
        index = std::stoul(path.substr(open, close - open));
      } catch (const std::exception&) {
        throw ValidationError("bad perturbation index in path: " + path);
      }
      if (index >= spec.perturbations.size()) {
        throw ValidationError("perturbation index out of range in path: " +
                              path);
      }
      spec.perturbations[index].strength = value;
      return;
    }
  }
  throw ValidationError("unknown parameter path: " + path);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw ValidationError("cannot open output file: " + path);
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  n_columns_ = columns.size();
  for (size_t i = 0; i < columns.size(); ++i) {
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  }
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (n_columns_ != 0 && fields.size() != n_columns_) {
    throw std::logic_error("CsvWriter: field count does not match header");
  }
  for (size_t i = 0; i < fields.size(); ++i) {
    out_ << fields[i] << (i + 1 < fields.size() ? "," : "\n");
  }
}

std::string CsvWriter::num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace bosetopo
