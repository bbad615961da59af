#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "agsparse/csv.hpp"
#include "agsparse/errors.hpp"
#include "agsparse/harness.hpp"
#include "agsparse/rng.hpp"
#include "agsparse/path.hpp"
#include "agsparse/simulate.hpp"
#include "agsparse/solver.hpp"
#include "agsparse/version.hpp"

namespace ag = agsparse;
using json = nlohmann::ordered_json;

namespace {

struct LoadedData {
  ag::Dataset data;
  std::vector<std::string> covariate_names;
  std::string response_name;
};

ag::Family parse_family(const std::string& s) {
  if (s == "linear") return ag::Family::Linear;
  if (s == "logistic") return ag::Family::Logistic;
  throw ag::DomainError("unknown family '" + s + "'");
}

ag::PenaltyKind parse_penalty(const std::string& s) {
  if (s == "scad") return ag::PenaltyKind::Scad;
  if (s == "mcp") return ag::PenaltyKind::Mcp;
  throw ag::DomainError("unknown penalty '" + s + "'");
}

double default_shape(ag::PenaltyKind kind) {
  return kind == ag::PenaltyKind::Scad ? 3.7 : 3.0;
}

// Response column: name match first, then a 0-based index, default "y"
// or the last column.
LoadedData load_dataset(const std::string& path, const std::string& response,
                        ag::Family family, bool standardize) {
  ag::csv::NumericCsv raw = ag::csv::read_numeric_csv_file(path);
  const auto& h = raw.header;
  Eigen::Index y_col = -1;
  if (response.empty()) {
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (h[j] == "y") y_col = static_cast<Eigen::Index>(j);
    }
    if (y_col < 0) y_col = static_cast<Eigen::Index>(h.size()) - 1;
  } else {
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (h[j] == response) y_col = static_cast<Eigen::Index>(j);
    }
    if (y_col < 0) {
      try {
        y_col = std::stol(response);
      } catch (...) {
        throw ag::DomainError("response column '" + response + "' not found");
      }
      if (y_col < 0 || y_col >= raw.values.cols()) {
        throw ag::DomainError("response column index out of range");
      }
    }
  }
  const Eigen::Index q = raw.values.cols() - 1;
  if (q < 1) throw ag::DomainError("dataset needs at least one covariate");
  Eigen::MatrixXd X(raw.values.rows(), q);
  LoadedData out;
  Eigen::Index c = 0;
  for (Eigen::Index j = 0; j < raw.values.cols(); ++j) {
    if (j == y_col) continue;
    X.col(c++) = raw.values.col(j);
    out.covariate_names.push_back(h[static_cast<std::size_t>(j)]);
  }
  out.response_name = h[static_cast<std::size_t>(y_col)];
  out.data = ag::make_dataset(X, raw.values.col(y_col), family, standardize);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ag::DomainError("cannot write '" + path + "'");
  f << content;
}

void write_sidecar(const std::string& out_path, const json& j) {
  write_file(out_path + ".json", j.dump(2) + "\n");
}

json base_sidecar(const std::string& command) {
  json j;
  j["tool"] = "agsparse";
  j["version"] = ag::kVersion;
  j["command"] = command;
  return j;
}

// ----- fit ---------------------------------------------------------------

struct FitArgs {
  std::string data_path, response, solver = "ag", trace_path, out_path;
  std::string family = "linear", penalty = "scad";
  double lambda = 0.5;
  double shape = 0.0;
  double tol = 1e-6;
  std::size_t max_iter = 2000;
  bool no_standardize = false;
};

int run_fit(const FitArgs& a) {
  const ag::Family family = parse_family(a.family);
  const ag::PenaltyKind kind = parse_penalty(a.penalty);
  const double shape = a.shape > 0.0 ? a.shape : default_shape(kind);
  LoadedData loaded =
      load_dataset(a.data_path, a.response, family, !a.no_standardize);
  const ag::Dataset& data = loaded.data;

  ag::PenaltySpec spec(kind, a.lambda, shape);
  ag::CompositeProblem problem(data, spec);
  ag::SolverConfig config;
  config.max_iter = a.max_iter;
  config.tol = a.tol;
  config.record_trace = !a.trace_path.empty();
  const Eigen::VectorXd x0 = ag::null_model_start(data);

  ag::FitResult fit;
  if (a.solver == "ag") {
    fit = ag::ag_solve(problem, ag::Schedule::proposed(problem.lipschitz()),
                       config, x0);
  } else if (a.solver == "ag-orig") {
    fit = ag::ag_solve(problem, ag::Schedule::original(problem.lipschitz()),
                       config, x0);
  } else if (a.solver == "ista") {
    fit = ag::ista_solve(problem, config, x0);
  } else {
    throw ag::DomainError("unknown solver '" + a.solver + "'");
  }

  const Eigen::VectorXd beta = a.no_standardize
                                   ? fit.beta
                                   : ag::original_scale_coefficients(data, fit.beta);
  ag::csv::Table coef;
  coef.header = {"term", "estimate"};
  coef.rows.push_back({"(intercept)", ag::csv::format_double(beta[0])});
  for (Eigen::Index j = 1; j < beta.size(); ++j) {
    coef.rows.push_back({loaded.covariate_names[static_cast<std::size_t>(j - 1)],
                         ag::csv::format_double(beta[j])});
  }
  const std::string text = ag::csv::to_string(coef);
  if (a.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(a.out_path, text);
    json j = base_sidecar("fit");
    j["data"] = a.data_path;
    j["family"] = a.family;
    j["penalty"] = a.penalty;
    j["lambda"] = a.lambda;
    j["shape"] = shape;
    j["solver"] = a.solver;
    j["tol"] = a.tol;
    j["max_iter"] = a.max_iter;
    j["standardized"] = !a.no_standardize;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged();
    write_sidecar(a.out_path, j);
  }
  if (!a.trace_path.empty()) {
    std::ostringstream ss;
    ag::write_trace_csv(ss, fit);
    write_file(a.trace_path, ss.str());
  }
  std::cerr << "solver " << a.solver << ": "
            << (fit.converged() ? "tolerance reached" : "max iterations")
            << " after " << fit.iterations << " iterations\n";
  return 0;
}

// ----- path --------------------------------------------------------------

struct PathArgs {
  std::string data_path, validation_path, response, out_path;
  std::string family = "linear", penalty = "scad";
  double shape = 0.0;
  std::size_t grid_size = 50;
  double tol = 1e-6;
  std::size_t max_iter = 2000;
  bool cold_start = false;
};

int run_path(const PathArgs& a) {
  const ag::Family family = parse_family(a.family);
  const ag::PenaltyKind kind = parse_penalty(a.penalty);
  const double shape = a.shape > 0.0 ? a.shape : default_shape(kind);
  LoadedData loaded = load_dataset(a.data_path, a.response, family, true);

  const double lmax = ag::lambda_max(loaded.data);
  std::vector<double> grid = ag::lambda_grid(lmax, a.grid_size);
  if (grid.size() == 1) {
    std::cerr << "warning: lambda_max is 0, fitting the unpenalized model only\n";
  }
  ag::PathConfig config;
  config.solver.max_iter = a.max_iter;
  config.solver.tol = a.tol;
  config.warm_start = !a.cold_start;
  ag::PathResult path = ag::path_solve(loaded.data, kind, shape, grid, config);

  json j = base_sidecar("path");
  j["data"] = a.data_path;
  j["family"] = a.family;
  j["penalty"] = a.penalty;
  j["shape"] = shape;
  j["grid_size"] = a.grid_size;
  j["lambda_max"] = lmax;
  j["warm_start"] = !a.cold_start;
  if (!a.validation_path.empty()) {
    ag::csv::NumericCsv vraw = ag::csv::read_numeric_csv_file(a.validation_path);
    LoadedData vload;
    {
      // reuse training standardization
      Eigen::Index y_col = -1;
      for (std::size_t c = 0; c < vraw.header.size(); ++c) {
        if (vraw.header[c] == loaded.response_name) {
          y_col = static_cast<Eigen::Index>(c);
        }
      }
      if (y_col < 0) y_col = vraw.values.cols() - 1;
      Eigen::MatrixXd Xv(vraw.values.rows(), vraw.values.cols() - 1);
      Eigen::Index c = 0;
      for (Eigen::Index col = 0; col < vraw.values.cols(); ++col) {
        if (col == y_col) continue;
        Xv.col(c++) = vraw.values.col(col);
      }
      vload.data = ag::make_dataset_like(Xv, vraw.values.col(y_col), family,
                                         loaded.data.centers,
                                         loaded.data.scales);
    }
    const std::size_t sel = ag::select_by_validation(path, vload.data);
    path.selected = static_cast<std::ptrdiff_t>(sel);
    j["selected_index"] = sel;
    j["selected_lambda"] = path.lambdas[sel];
    std::cerr << "selected lambda " << path.lambdas[sel] << " (index " << sel
              << ")\n";
  }
  std::ostringstream ss;
  ag::write_path_csv(ss, path);
  if (a.out_path.empty()) {
    std::cout << ss.str();
  } else {
    write_file(a.out_path, ss.str());
    write_sidecar(a.out_path, j);
  }
  return 0;
}

// ----- simulate ----------------------------------------------------------

struct SimulateArgs {
  std::string preset = "blocks5x10";
  std::size_t n = 200, q = 410;
  double tau = 0.5, snr = 3.0;
  std::string family = "linear";
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_simulate(const SimulateArgs& a) {
  ag::SimConfig config;
  if (a.preset == "visual4") {
    config.pattern = ag::SignalPattern::Visual4;
  } else if (a.preset == "blocks5x10") {
    config.pattern = ag::SignalPattern::Blocks5x10;
  } else {
    throw ag::DomainError("unknown preset '" + a.preset + "'");
  }
  config.n = a.n;
  config.q = a.q;
  config.tau = a.tau;
  config.snr = a.snr;
  config.family = parse_family(a.family);
  config.seed = a.seed;
  ag::SimData sim = ag::simulate(config);

  std::ostringstream ss;
  for (std::size_t j = 1; j <= a.q; ++j) ss << 'x' << j << ',';
  ss << "y\n";
  for (Eigen::Index i = 0; i < sim.X.rows(); ++i) {
    for (Eigen::Index j = 0; j < sim.X.cols(); ++j) {
      ss << ag::csv::format_double(sim.X(i, j)) << ',';
    }
    ss << ag::csv::format_double(sim.y[i]) << '\n';
  }
  if (a.out_path.empty()) {
    std::cout << ss.str();
    return 0;
  }
  write_file(a.out_path, ss.str());

  json j = base_sidecar("simulate");
  j["preset"] = a.preset;
  j["n"] = a.n;
  j["q"] = a.q;
  j["tau"] = a.tau;
  j["snr"] = a.snr;
  j["family"] = a.family;
  j["seed"] = a.seed;
  j["support"] = sim.truth.support;
  json betas = json::array();
  for (Eigen::Index k = 0; k < sim.truth.beta_true.size(); ++k) {
    betas.push_back(sim.truth.beta_true[k]);
  }
  j["beta_true"] = betas;
  write_sidecar(a.out_path, j);
  return 0;
}

// ----- bench / recover ---------------------------------------------------

struct HarnessArgs {
  std::string preset = "desk";
  std::size_t reps = 10;
  std::uint64_t seed = 0;
  std::string out_path;
  std::size_t threads = 1;
  std::size_t n_override = 0, q_override = 0;
  std::size_t max_iter = 2000;
  double tol = 1e-6;
};

const std::pair<ag::Family, ag::PenaltyKind> kCombos[] = {
    {ag::Family::Linear, ag::PenaltyKind::Scad},
    {ag::Family::Linear, ag::PenaltyKind::Mcp},
    {ag::Family::Logistic, ag::PenaltyKind::Scad},
    {ag::Family::Logistic, ag::PenaltyKind::Mcp},
};

int run_bench(const HarnessArgs& a) {
  ag::csv::Table table;
  json summary = base_sidecar("bench");
  summary["preset"] = a.preset;
  summary["reps"] = a.reps;
  summary["seed"] = a.seed;
  summary["threads"] = a.threads;
  std::size_t ista_runs = 0, ista_monotone = 0, cell_errors = 0;
  std::uint64_t combo_id = 0;
  for (const auto& [family, kind] : kCombos) {
    ag::BenchConfig config;
    if (a.preset == "paper") {
      config.ns = {200, 500, 1000, 3000};
      config.q = 2050;
    } else if (a.preset == "desk") {
      config.ns = {200};
      config.q = 400;
    } else {
      throw ag::DomainError("unknown preset '" + a.preset + "'");
    }
    if (a.n_override) config.ns = {a.n_override};
    if (a.q_override) config.q = a.q_override;
    config.family = family;
    config.penalty = kind;
    config.shape = default_shape(kind);
    config.reps = a.reps;
    config.seed = ag::derive_seed(a.seed, 0xbe0c, combo_id++);
    config.threads = a.threads;
    config.max_iter = a.max_iter;
    config.tol = a.tol;
    ag::BenchResult result = ag::run_benchmark(config);
    ag::csv::Table part = ag::bench_table(config, result);
    if (table.header.empty()) table.header = part.header;
    for (auto& row : part.rows) table.rows.push_back(std::move(row));
    ista_runs += result.ista_runs;
    ista_monotone += result.ista_monotone_runs;
    for (const auto& cell : result.cells) {
      if (cell.method == ag::Method::AGProposed) cell_errors += cell.errors;
    }
  }
  summary["ista_runs"] = ista_runs;
  summary["ista_monotone_runs"] = ista_monotone;
  summary["replicate_errors"] = cell_errors;
  const std::string text = ag::csv::to_string(table);
  if (a.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(a.out_path, text);
    write_sidecar(a.out_path, summary);
  }
  if (cell_errors > 0) {
    std::cerr << "warning: " << cell_errors
              << " replicate(s) failed; see the error_message column\n";
    return 3;
  }
  return 0;
}

int run_recover(const HarnessArgs& a) {
  ag::csv::Table table;
  json summary = base_sidecar("recover");
  summary["preset"] = a.preset;
  summary["reps"] = a.reps;
  summary["seed"] = a.seed;
  summary["threads"] = a.threads;
  std::uint64_t combo_id = 0;
  std::size_t cell_errors = 0;
  for (const auto& [family, kind] : kCombos) {
    ag::RecoveryConfig config;
    if (a.preset == "paper") {
      config.n = 1000;
      config.q = 2050;
    } else if (a.preset == "desk") {
      config.n = 200;
      config.q = 410;
    } else {
      throw ag::DomainError("unknown preset '" + a.preset + "'");
    }
    if (a.n_override) config.n = a.n_override;
    if (a.q_override) config.q = a.q_override;
    config.family = family;
    config.penalty = kind;
    config.shape = default_shape(kind);
    config.reps = a.reps;
    config.seed = ag::derive_seed(a.seed, 0x5ec0, combo_id++);
    config.threads = a.threads;
    config.max_iter = a.max_iter;
    config.tol = a.tol;
    ag::RecoveryResult result = ag::run_recovery(config);
    ag::csv::Table part = ag::recovery_table(config, result);
    if (table.header.empty()) table.header = part.header;
    for (auto& row : part.rows) table.rows.push_back(std::move(row));
    for (std::size_t c = 0; c < result.cells.size(); ++c) {
      // per-replicate failures repeat across the snr cells of a tau group
      if (c % config.snrs.size() == 0) cell_errors += result.cells[c].errors;
    }
  }
  summary["replicate_errors"] = cell_errors;
  const std::string text = ag::csv::to_string(table);
  if (a.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(a.out_path, text);
    write_sidecar(a.out_path, summary);
  }
  if (cell_errors > 0) {
    std::cerr << "warning: " << cell_errors
              << " replicate(s) failed; see the error_message column\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SCAD/MCP penalized regression via nonconvex accelerated gradient"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* cfit = app.add_subcommand("fit", "fit one penalized model");
  cfit->add_option("--data", fit.data_path, "training CSV (header row)")->required();
  cfit->add_option("--family", fit.family, "linear|logistic");
  cfit->add_option("--penalty", fit.penalty, "scad|mcp");
  cfit->add_option("--lambda", fit.lambda, "penalty level");
  cfit->add_option("--shape", fit.shape, "a (scad, >2) or gamma (mcp, >1)");
  cfit->add_option("--solver", fit.solver, "ag|ag-orig|ista");
  cfit->add_option("--tol", fit.tol, "gradient-mapping tolerance");
  cfit->add_option("--max-iter", fit.max_iter, "iteration cap");
  cfit->add_option("--trace", fit.trace_path, "write per-iteration trace CSV");
  cfit->add_option("--response", fit.response, "response column (name or index)");
  cfit->add_option("--out", fit.out_path, "coefficient CSV (default stdout)");
  cfit->add_flag("--no-standardize", fit.no_standardize, "skip standardization");

  PathArgs path;
  auto* cpath = app.add_subcommand("path", "solve a lambda path");
  cpath->add_option("--data", path.data_path, "training CSV")->required();
  cpath->add_option("--family", path.family, "linear|logistic");
  cpath->add_option("--penalty", path.penalty, "scad|mcp");
  cpath->add_option("--shape", path.shape, "a or gamma");
  cpath->add_option("--grid-size", path.grid_size, "lambda count (default 50)");
  cpath->add_option("--validation", path.validation_path, "validation CSV");
  cpath->add_option("--response", path.response, "response column");
  cpath->add_option("--tol", path.tol, "gradient-mapping tolerance");
  cpath->add_option("--max-iter", path.max_iter, "iteration cap");
  cpath->add_flag("--cold-start", path.cold_start, "per-lambda null starts");
  cpath->add_option("--out", path.out_path, "path CSV (default stdout)");

  SimulateArgs sim;
  auto* csim = app.add_subcommand("simulate", "generate synthetic data");
  csim->add_option("--preset", sim.preset, "visual4|blocks5x10");
  csim->add_option("--n", sim.n, "observations");
  csim->add_option("--q", sim.q, "covariates");
  csim->add_option("--tau", sim.tau, "AR(1) correlation");
  csim->add_option("--snr", sim.snr, "signal-to-noise ratio");
  csim->add_option("--family", sim.family, "linear|logistic");
  csim->add_option("--seed", sim.seed, "RNG seed");
  csim->add_option("--out", sim.out_path, "dataset CSV (default stdout)");

  HarnessArgs bench;
  auto* cbench = app.add_subcommand("bench", "convergence-rate experiment");
  cbench->add_option("--preset", bench.preset, "desk|paper");
  cbench->add_option("--reps", bench.reps, "simulation replicates");
  cbench->add_option("--seed", bench.seed, "RNG seed");
  cbench->add_option("--out", bench.out_path, "results CSV (default stdout)");
  cbench->add_option("--threads", bench.threads, "worker threads");
  cbench->add_option("--n", bench.n_override, "override n");
  cbench->add_option("--q", bench.q_override, "override q");
  cbench->add_option("--max-iter", bench.max_iter, "iteration cap");
  cbench->add_option("--tol", bench.tol, "gradient-mapping tolerance");

  HarnessArgs recover;
  auto* crec = app.add_subcommand("recover", "signal-recovery experiment");
  crec->add_option("--preset", recover.preset, "desk|paper");
  crec->add_option("--reps", recover.reps, "simulation replicates");
  crec->add_option("--seed", recover.seed, "RNG seed");
  crec->add_option("--out", recover.out_path, "results CSV (default stdout)");
  crec->add_option("--threads", recover.threads, "worker threads");
  crec->add_option("--n", recover.n_override, "override n");
  crec->add_option("--q", recover.q_override, "override q");
  crec->add_option("--max-iter", recover.max_iter, "iteration cap");
  crec->add_option("--tol", recover.tol, "gradient-mapping tolerance");

  try {
    app.parse(argc, argv);
    if (cfit->parsed()) return run_fit(fit);
    if (cpath->parsed()) return run_path(path);
    if (csim->parsed()) return run_simulate(sim);
    if (cbench->parsed()) return run_bench(bench);
    if (crec->parsed()) return run_recover(recover);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ag::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const ag::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ag::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
