/// bosetopo command-line front end.
///
/// Subcommands: spectrum | bands | classify | invariant | zeromodes |
/// sparams | sweep | bulkboundary. Each loads a JSON config (--config),
/// optionally overridden by flags, and writes a CSV data file plus a short
/// summary on stdout. Exit codes: 0 success, 1 parse error, 2 validation
/// error, 3 numerical failure.

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bosetopo/config.hpp"
#include "bosetopo/models.hpp"
#include "bosetopo/parallel.hpp"
#include "bosetopo/scattering.hpp"
#include "bosetopo/spectral.hpp"
#include "bosetopo/topology.hpp"

namespace {

using namespace bosetopo;

constexpr double kPi = std::numbers::pi;

struct CliOptions {
  std::string config_path;
  std::string output;
  double tol = std::nan("");
  int grid = -1;
  int jobs = -1;
  bool pbc = false;
  // Sweep-specific flags.
  std::string param;
  double start = std::nan("");
  double stop = std::nan("");
  int steps = -1;
};

/// Applies command-line overrides on top of the loaded config.
RunConfig resolve_config(const CliOptions& options, Task task) {
  RunConfig config = load_run_config(options.config_path);
  config.task = task;
  if (!options.output.empty()) config.output = options.output;
  if (!std::isnan(options.tol)) config.tol = options.tol;
  if (options.grid > 0) config.grid = options.grid;
  if (options.jobs > 0) config.jobs = options.jobs;
  if (options.pbc) config.model.pbc = true;
  if (!options.param.empty()) {
    SweepConfig sweep = config.sweep.value_or(SweepConfig{});
    sweep.parameter = options.param;
    if (!std::isnan(options.start)) sweep.start = options.start;
    if (!std::isnan(options.stop)) sweep.stop = options.stop;
    if (options.steps > 0) sweep.steps = options.steps;
    config.sweep = sweep;
  }
  return config;
}

std::string default_output(const RunConfig& config, const char* stem) {
  return config.output.empty() ? std::string(stem) + ".csv" : config.output;
}

CsvWriter open_csv(const RunConfig& config, const char* stem) {
  CsvWriter csv(default_output(config, stem));
  csv.comment(std::string(kToolkitVersion) +
              " config: " + run_config_to_json(config).dump());
  return csv;
}

// ---------------------------------------------------------------------------
// Invariant selection shared by `invariant`, `sweep`, and `bulkboundary`.
// ---------------------------------------------------------------------------

InvariantResult compute_invariant(const ModelSpec& spec, double tol) {
  const double eff_tol = tol > 0.0 ? tol : kDefaultTol;
  ModelSpec probe = spec;
  probe.pbc = false;
  probe.N = std::max(probe.N, 4);
  const QuadraticHamiltonian h = build_model(probe);
  const SymmetryClassReport klass = detect_symmetry_class(h, eff_tol);

  BlochSymbol sym = bloch_symbol(spec);
  if (klass.local_dressing) {
    std::vector<std::string> families;
    for (const auto& [family, q] : klass.local_dressing->q) {
      families.push_back(family);
    }
    sym = apply_dressing(sym, families, *klass.local_dressing, eff_tol);
  }
  if (klass.number && klass.squeezing) {
    return pfaffian_invariant(sym, eff_tol);
  }
  if (klass.squeezing) {
    return winding_number(auxiliary_B(sym, *klass.squeezing, eff_tol));
  }
  InvariantResult trivial;
  trivial.kind = InvariantResult::Kind::Trivial;
  return trivial;
}

std::string invariant_kind_name(InvariantResult::Kind kind) {
  switch (kind) {
    case InvariantResult::Kind::Winding: return "winding";
    case InvariantResult::Kind::Pfaffian: return "pfaffian";
    case InvariantResult::Kind::Trivial: return "trivial";
    case InvariantResult::Kind::GapClosed: return "gap_closed";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Tasks
// ---------------------------------------------------------------------------

int run_spectrum(const RunConfig& config) {
  const QuadraticHamiltonian h = build_model(config.model);
  const SpectrumResult spectrum = diagonalize(dynamical_matrix(h));
  CsvWriter csv = open_csv(config, "spectrum");
  csv.header({"index", "eigenvalue_re", "eigenvalue_im", "residual", "ipr",
              "tau3_norm", "converged"});
  for (size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    csv.row({std::to_string(i), CsvWriter::num(spectrum.eigenvalues[i].real()),
             CsvWriter::num(spectrum.eigenvalues[i].imag()),
             CsvWriter::num(spectrum.residuals(i)),
             CsvWriter::num(spectrum.ipr(i)),
             CsvWriter::num(spectrum.tau3_norms(i)),
             spectrum.converged[i] ? "1" : "0"});
  }
  std::cout << "modes: " << spectrum.eigenvalues.size() / 2
            << "\nspectral_radius: " << spectrum.spectral_radius << "\n";
  if (spectrum.defectivity_warning) {
    std::cout << "warning: eigenvector basis nearly defective\n";
  }
  return 0;
}

int run_bands(const RunConfig& config) {
  const BlochSymbol sym = bloch_symbol(config.model);
  std::vector<double> ks(config.grid);
  for (int i = 0; i < config.grid; ++i) {
    ks[i] = -kPi + 2.0 * kPi * i / config.grid;
  }
  const auto bands = band_structure(sym, ks, config.jobs);
  CsvWriter csv = open_csv(config, "bands");
  std::vector<std::string> header{"k"};
  for (size_t b = 0; b < bands.front().size(); ++b) {
    header.push_back("band" + std::to_string(b) + "_re");
    header.push_back("band" + std::to_string(b) + "_im");
  }
  csv.header(header);
  for (size_t i = 0; i < ks.size(); ++i) {
    std::vector<std::string> row{CsvWriter::num(ks[i])};
    for (const Complex& value : bands[i]) {
      row.push_back(CsvWriter::num(value.real()));
      row.push_back(CsvWriter::num(value.imag()));
    }
    csv.row(row);
  }
  std::cout << "bands: " << bands.front().size() << " over " << ks.size()
            << " k points\n";
  return 0;
}

int run_classify(const RunConfig& config) {
  const QuadraticHamiltonian h = build_model(config.model);
  const SymmetryClassReport report = detect_symmetry_class(
      h, config.tol > 0.0 ? config.tol : kDefaultTol);
  std::cout << "class: " << report.class_label << "\n"
            << "time_reversal: " << (report.time_reversal ? 1 : 0) << "\n"
            << "number: " << (report.number ? 1 : 0) << "\n";
  if (report.squeezing) {
    std::cout << "squeezing: (" << report.squeezing->first << ", "
              << report.squeezing->second << ")\n";
  }
  if (report.local_dressing) {
    std::cout << "dressed: p=" << report.local_dressing->p;
    for (const auto& [family, q] : report.local_dressing->q) {
      std::cout << " q_" << family << "=" << q;
    }
    std::cout << "\n";
  }
  CsvWriter csv = open_csv(config, "classify");
  csv.header({"class", "time_reversal", "number", "squeezing_n1",
              "squeezing_n2", "dressed"});
  csv.row({report.class_label, report.time_reversal ? "1" : "0",
           report.number ? "1" : "0",
           report.squeezing ? CsvWriter::num(report.squeezing->first) : "",
           report.squeezing ? CsvWriter::num(report.squeezing->second) : "",
           report.local_dressing ? "1" : "0"});
  return 0;
}

int run_invariant(const RunConfig& config) {
  const InvariantResult result = compute_invariant(config.model, config.tol);
  if (result.kind == InvariantResult::Kind::GapClosed) {
    std::cerr << "numerical failure: gap closed (margin " << result.gap_margin
              << "), invariant undefined\n";
    return 3;
  }
  std::cout << invariant_kind_name(result.kind);
  if (result.kind == InvariantResult::Kind::Winding) {
    std::cout << ": " << result.winding;
  } else if (result.kind == InvariantResult::Kind::Pfaffian) {
    std::cout << ": " << result.pfaffian_sign;
  }
  std::cout << "\ngap_margin: " << result.gap_margin << "\n";
  CsvWriter csv = open_csv(config, "invariant");
  csv.header({"kind", "value", "gap_margin", "grid_size"});
  csv.row({invariant_kind_name(result.kind),
           std::to_string(result.kind == InvariantResult::Kind::Winding
                              ? result.winding
                              : result.pfaffian_sign),
           CsvWriter::num(result.gap_margin), std::to_string(result.grid_size)});
  return 0;
}

int run_zeromodes(const RunConfig& config) {
  const QuadraticHamiltonian h = build_model(config.model);
  const ZeroModeReport report = zero_modes(h, config.tol);
  std::cout << "zero modes: " << report.count
            << "\ntolerance: " << report.tolerance_used << "\n";
  CsvWriter csv = open_csv(config, "zeromodes");
  csv.header({"index", "eigenvalue_re", "eigenvalue_im", "edge_weight_left",
              "edge_weight_right", "localization_length", "delocalized",
              "ipr"});
  for (size_t i = 0; i < report.modes.size(); ++i) {
    const ZeroMode& mode = report.modes[i];
    csv.row({std::to_string(i), CsvWriter::num(mode.eigenvalue.real()),
             CsvWriter::num(mode.eigenvalue.imag()),
             CsvWriter::num(mode.edge_weight_left),
             CsvWriter::num(mode.edge_weight_right),
             CsvWriter::num(mode.localization_length),
             mode.delocalized ? "1" : "0", CsvWriter::num(mode.ipr)});
  }
  return 0;
}

int run_sparams(const RunConfig& config) {
  const QuadraticHamiltonian h = build_model(config.model);
  const ScatteringSetup setup = photo_magnonic_setup(
      h, config.scattering.kappa_c, config.scattering.kappa_m);
  double center = config.scattering.omega_center;
  if (center <= 0.0) center = config.model.param("omega_a").real();
  const double span = config.scattering.omega_span;
  if (center - span / 2.0 <= 0.0) {
    throw ValidationError(
        "sparams: frequency window extends to non-positive frequencies; set "
        "scattering.omega_center/omega_span");
  }
  RealVector grid(config.grid);
  for (int i = 0; i < config.grid; ++i) {
    grid(i) = center - span / 2.0 + span * i / (config.grid - 1);
  }
  const ScatteringResponse response = s_parameters(setup, grid, config.jobs);

  const int n_ports = static_cast<int>(setup.ports.size());
  CsvWriter csv = open_csv(config, "sparams");
  std::vector<std::string> header{"frequency"};
  for (int q = 0; q < n_ports; ++q) {
    for (int p = 0; p < n_ports; ++p) {
      const std::string name =
          "S" + std::to_string(q + 1) + std::to_string(p + 1);
      header.push_back(name + "_re");
      header.push_back(name + "_im");
      header.push_back(name + "_abs");
    }
  }
  header.push_back("flagged");
  csv.header(header);
  for (int i = 0; i < config.grid; ++i) {
    std::vector<std::string> row{CsvWriter::num(grid(i))};
    for (int q = 0; q < n_ports; ++q) {
      for (int p = 0; p < n_ports; ++p) {
        const Complex s = response.s_matrix[i](q, p);
        row.push_back(CsvWriter::num(s.real()));
        row.push_back(CsvWriter::num(s.imag()));
        row.push_back(CsvWriter::num(std::abs(s)));
      }
    }
    row.push_back(response.flagged[i] ? "1" : "0");
    csv.row(row);
  }
  int n_flagged = 0;
  for (char f : response.flagged) n_flagged += f;
  std::cout << "ports: " << n_ports << "\npoints: " << config.grid
            << "\nflagged: " << n_flagged << "\n";
  return 0;
}

int run_sweep(const RunConfig& config) {
  if (!config.sweep || config.sweep->parameter.empty()) {
    throw ValidationError("sweep requires --param (or config.sweep.parameter)");
  }
  const SweepConfig& sweep = *config.sweep;
  {
    // Fail fast on unknown paths before launching the sweep.
    ModelSpec probe = config.model;
    set_model_parameter(probe, sweep.parameter, sweep.start);
  }

  struct Row {
    double value = 0.0;
    int zero_mode_count = -1;
    double min_abs_eigenvalue = std::nan("");
    double gap_margin = std::nan("");
    std::string invariant = "";
    int invariant_value = 0;
    std::string status = "ok";
  };
  std::vector<Row> rows(sweep.steps);

  parallel_for(sweep.steps, config.jobs, [&](int i) {
    Row& row = rows[i];
    row.value = sweep.start +
                (sweep.stop - sweep.start) * i / (sweep.steps - 1);
    try {
      ModelSpec point = config.model;
      set_model_parameter(point, sweep.parameter, row.value);
      const QuadraticHamiltonian h = build_model(point);
      const ZeroModeReport zeros = zero_modes(h, config.tol);
      row.zero_mode_count = zeros.count;
      const SpectrumResult spectrum = diagonalize(dynamical_matrix(h));
      double min_abs = std::numeric_limits<double>::infinity();
      for (const Complex& lambda : spectrum.eigenvalues) {
        min_abs = std::min(min_abs, std::abs(lambda));
      }
      row.min_abs_eigenvalue = min_abs;
      const InvariantResult invariant = compute_invariant(point, config.tol);
      row.gap_margin = invariant.gap_margin;
      row.invariant = invariant_kind_name(invariant.kind);
      row.invariant_value =
          invariant.kind == InvariantResult::Kind::Winding
              ? invariant.winding
              : invariant.pfaffian_sign;
    } catch (const std::exception& e) {
      row.status = e.what();
      for (char& c : row.status) {
        if (c == ',' || c == '\n') c = ';';
      }
    }
  });

  CsvWriter csv = open_csv(config, "sweep");
  csv.header({sweep.parameter, "zero_mode_count", "min_abs_eigenvalue",
              "gap_margin", "invariant", "invariant_value", "status"});
  for (const Row& row : rows) {
    csv.row({CsvWriter::num(row.value), std::to_string(row.zero_mode_count),
             CsvWriter::num(row.min_abs_eigenvalue),
             CsvWriter::num(row.gap_margin), row.invariant,
             std::to_string(row.invariant_value), row.status});
  }
  std::cout << "sweep points: " << sweep.steps << "\n";
  return 0;
}

int run_bulkboundary(const RunConfig& config) {
  const BulkBoundaryReport report =
      bulk_boundary_check(config.model, config.model.N, config.tol);
  std::cout << "class: " << report.symmetry.class_label << "\n"
            << "invariant: " << invariant_kind_name(report.invariant.kind);
  if (report.invariant.kind == InvariantResult::Kind::Winding) {
    std::cout << " " << report.invariant.winding;
  } else if (report.invariant.kind == InvariantResult::Kind::Pfaffian) {
    std::cout << " " << report.invariant.pfaffian_sign;
  }
  std::cout << "\nleft zero modes: " << report.left_zero_modes
            << "\ncorrespondence: " << (report.holds ? "holds" : "violated")
            << "\n";
  CsvWriter csv = open_csv(config, "bulkboundary");
  csv.header({"class", "invariant", "invariant_value", "gap_margin",
              "left_zero_modes", "cross_edge_weight", "holds"});
  csv.row({report.symmetry.class_label,
           invariant_kind_name(report.invariant.kind),
           std::to_string(report.invariant.kind ==
                                  InvariantResult::Kind::Winding
                              ? report.invariant.winding
                              : report.invariant.pfaffian_sign),
           CsvWriter::num(report.invariant.gap_margin),
           std::to_string(report.left_zero_modes),
           CsvWriter::num(report.cross_edge_weight),
           report.holds ? "1" : "0"});
  return report.holds ? 0 : 3;
}

int dispatch(const CliOptions& options, Task task) {
  const RunConfig config = resolve_config(options, task);
  switch (task) {
    case Task::Spectrum: return run_spectrum(config);
    case Task::Bands: return run_bands(config);
    case Task::Classify: return run_classify(config);
    case Task::Invariant: return run_invariant(config);
    case Task::ZeroModes: return run_zeromodes(config);
    case Task::SParams: return run_sparams(config);
    case Task::Sweep: return run_sweep(config);
    case Task::BulkBoundary: return run_bulkboundary(config);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bosetopo: quadratic bosonic lattice models, symmetry classes, "
               "topological invariants, and microwave S-parameters"};
  app.require_subcommand(1);

  CliOptions options;
  Task task = Task::Spectrum;

  const auto add_common = [&](CLI::App* sub, Task t) {
    sub->add_option("--config", options.config_path, "JSON config file")
        ->required();
    sub->add_option("--output", options.output, "output CSV path");
    sub->add_option("--tol", options.tol, "zero/symmetry tolerance");
    sub->add_option("--grid", options.grid, "grid size (k or frequency)");
    sub->add_option("--jobs", options.jobs, "max worker threads");
    sub->add_flag("--pbc", options.pbc, "periodic boundary conditions");
    sub->callback([&task, t] { task = t; });
    return sub;
  };

  add_common(app.add_subcommand("spectrum", "eigenvalues of the open chain"),
             Task::Spectrum);
  add_common(app.add_subcommand("bands", "Bloch band structure"), Task::Bands);
  add_common(app.add_subcommand("classify", "many-body symmetry class"),
             Task::Classify);
  add_common(app.add_subcommand("invariant", "topological invariant"),
             Task::Invariant);
  add_common(app.add_subcommand("zeromodes", "boundary zero modes"),
             Task::ZeroModes);
  add_common(app.add_subcommand("sparams", "input-output S-parameters"),
             Task::SParams);
  CLI::App* sweep =
      add_common(app.add_subcommand("sweep", "parameter sweep"), Task::Sweep);
  sweep->add_option("--param", options.param, "parameter path to sweep");
  sweep->add_option("--start", options.start, "sweep start value");
  sweep->add_option("--stop", options.stop, "sweep stop value");
  sweep->add_option("--steps", options.steps, "sweep point count");
  add_common(app.add_subcommand("bulkboundary",
                                "invariant vs boundary zero-mode count"),
             Task::BulkBoundary);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  }

  try {
    return dispatch(options, task);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
