#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agsparse/csv.hpp"
#include "agsparse/errors.hpp"
#include "agsparse/harness.hpp"
#include "agsparse/metrics.hpp"
#include "agsparse/model.hpp"
#include "agsparse/path.hpp"
#include "agsparse/penalty.hpp"
#include "agsparse/rng.hpp"
#include "agsparse/schedule.hpp"
#include "agsparse/simulate.hpp"
#include "agsparse/solver.hpp"
#include "agsparse/version.hpp"

namespace py = pybind11;
using namespace agsparse;

namespace {

PenaltySpec make_spec(const std::string& penalty, double lambda, double shape) {
  if (penalty == "scad") return PenaltySpec::scad(lambda, shape);
  if (penalty == "mcp") return PenaltySpec::mcp(lambda, shape);
  throw DomainError("unknown penalty '" + penalty + "'");
}

Family make_family(const std::string& family) {
  if (family == "linear") return Family::Linear;
  if (family == "logistic") return Family::Logistic;
  throw DomainError("unknown family '" + family + "'");
}

Dataset make_dataset_py(const Eigen::MatrixXd& raw_X, const Eigen::VectorXd& y,
                        const std::string& family, bool standardize) {
  return make_dataset(raw_X, y, make_family(family), standardize);
}

py::dict fit_result_dict(const FitResult& fit) {
  py::dict d;
  d["beta"] = fit.beta;
  d["iterations"] = fit.iterations;
  d["converged"] = fit.converged();
  d["best_iteration"] = fit.best_iteration;
  py::list trace;
  for (const auto& p : fit.trace) {
    trace.append(py::make_tuple(p.objective, p.grad_map_norm));
  }
  d["trace"] = trace;
  return d;
}

py::dict fit_py(const Dataset& data, const std::string& penalty, double lambda,
                double shape, const std::string& solver, double tol,
                std::size_t max_iter, bool record_trace) {
  PenaltySpec spec = make_spec(penalty, lambda, shape);
  CompositeProblem problem(data, spec);
  SolverConfig config;
  config.tol = tol;
  config.max_iter = max_iter;
  config.record_trace = record_trace;
  const Eigen::VectorXd x0 = null_model_start(data);
  FitResult fit;
  if (solver == "ag") {
    fit = ag_solve(problem, Schedule::proposed(problem.lipschitz()), config, x0);
  } else if (solver == "ag-orig") {
    fit = ag_solve(problem, Schedule::original(problem.lipschitz()), config, x0);
  } else if (solver == "ista") {
    fit = ista_solve(problem, config, x0);
  } else {
    throw DomainError("unknown solver '" + solver + "'");
  }
  py::dict d = fit_result_dict(fit);
  d["beta_original_scale"] = original_scale_coefficients(data, fit.beta);
  return d;
}

py::dict path_py(const Dataset& data, const std::string& penalty, double shape,
                 std::size_t grid_size, bool warm_start, double tol,
                 std::size_t max_iter) {
  PathConfig config;
  config.solver.tol = tol;
  config.solver.max_iter = max_iter;
  config.warm_start = warm_start;
  PenaltyKind kind = make_spec(penalty, 0.0, shape).kind;
  const double lmax = lambda_max(data);
  PathResult path = path_solve(data, kind, shape, lambda_grid(lmax, grid_size),
                               config);
  py::dict d;
  d["lambdas"] = path.lambdas;
  py::list betas;
  for (const auto& fit : path.fits) betas.append(fit.beta);
  d["betas"] = betas;
  d["lambda_max"] = lmax;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nonconvex accelerated gradient solvers for SCAD/MCP penalized "
            "regression";
  m.attr("__version__") = kVersion;

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("n", [](const Dataset& d) { return d.n(); })
      .def_property_readonly("q", [](const Dataset& d) { return d.q(); })
      .def_readonly("X", &Dataset::X)
      .def_readonly("y", &Dataset::y)
      .def_readonly("centers", &Dataset::centers)
      .def_readonly("scales", &Dataset::scales);

  m.def("make_dataset", &make_dataset_py, py::arg("X"), py::arg("y"),
        py::arg("family") = "linear", py::arg("standardize") = true,
        "Build a dataset (intercept column added; covariates standardized).");

  m.def("penalty_value", [](const std::string& p, double lam, double shape,
                            double theta) {
    return penalty_value(make_spec(p, lam, shape), theta);
  }, py::arg("penalty"), py::arg("lambda_"), py::arg("shape"), py::arg("theta"));
  m.def("dc_smooth_value", [](const std::string& p, double lam, double shape,
                              double theta) {
    return dc_smooth_value(make_spec(p, lam, shape), theta);
  }, py::arg("penalty"), py::arg("lambda_"), py::arg("shape"), py::arg("theta"));
  m.def("dc_smooth_grad", [](const std::string& p, double lam, double shape,
                             double theta) {
    return dc_smooth_grad(make_spec(p, lam, shape), theta);
  }, py::arg("penalty"), py::arg("lambda_"), py::arg("shape"), py::arg("theta"));
  m.def("soft_threshold", &soft_threshold, py::arg("z"), py::arg("t"));

  m.def("proposed_alphas", [](std::size_t n, double l_psi) {
    Schedule s = Schedule::proposed(l_psi);
    std::vector<double> out(n);
    for (std::size_t k = 1; k <= n; ++k) out[k - 1] = s.alpha(k);
    return out;
  }, py::arg("n"), py::arg("l_psi") = 1.0,
     "First n damping values of the tuned schedule.");
  m.def("alpha_bounds", [](std::size_t k, double a, double b) {
    AlphaBounds ab = alpha_bounds(k, a, b);
    return py::make_tuple(ab.lower, ab.upper);
  }, py::arg("k"), py::arg("a") = 1.0, py::arg("b") = 0.5);
  m.def("verify_conditions", [](const std::string& which, double l_psi,
                                std::size_t n) {
    Schedule s = which == "original" ? Schedule::original(l_psi)
                                     : Schedule::proposed(l_psi);
    ConditionsReport r = verify_conditions(s, l_psi, n);
    py::dict d;
    d["step_ok"] = r.step_ok;
    d["ratio_ok"] = r.ratio_ok;
    d["ok"] = r.ok();
    return d;
  }, py::arg("schedule") = "proposed", py::arg("l_psi") = 1.0,
     py::arg("n") = 1000);

  m.def("loss", &loss, py::arg("data"), py::arg("beta"));
  m.def("loss_grad", &loss_grad, py::arg("data"), py::arg("beta"));
  m.def("smooth_lipschitz", &smooth_lipschitz, py::arg("data"));
  m.def("lambda_max", &lambda_max, py::arg("data"));
  m.def("lambda_grid", &lambda_grid, py::arg("lmax"), py::arg("count") = 50);

  m.def("fit", &fit_py, py::arg("data"), py::arg("penalty") = "scad",
        py::arg("lambda_") = 0.5, py::arg("shape") = 3.7,
        py::arg("solver") = "ag", py::arg("tol") = 1e-6,
        py::arg("max_iter") = 2000, py::arg("record_trace") = false,
        "Fit one penalized model from the null-model start.");
  m.def("solve_path", &path_py, py::arg("data"), py::arg("penalty") = "scad",
        py::arg("shape") = 3.7, py::arg("grid_size") = 50,
        py::arg("warm_start") = true, py::arg("tol") = 1e-6,
        py::arg("max_iter") = 2000,
        "Warm-started lambda path from lambda_max down to 0.");

  m.def("toeplitz_design", &toeplitz_design, py::arg("n"), py::arg("q"),
        py::arg("tau"), py::arg("seed"));
  m.def("simulate", [](std::size_t n, std::size_t q, double tau, double snr,
                       const std::string& family, const std::string& pattern,
                       std::uint64_t seed) {
    SimConfig c;
    c.n = n;
    c.q = q;
    c.tau = tau;
    c.snr = snr;
    c.family = make_family(family);
    if (pattern == "visual4") c.pattern = SignalPattern::Visual4;
    else if (pattern == "blocks5x10") c.pattern = SignalPattern::Blocks5x10;
    else throw DomainError("unknown pattern '" + pattern + "'");
    c.seed = seed;
    SimData d = simulate(c);
    py::dict out;
    out["X"] = d.X;
    out["y"] = d.y;
    out["beta_true"] = d.truth.beta_true;
    out["support"] = d.truth.support;
    return out;
  }, py::arg("n"), py::arg("q"), py::arg("tau") = 0.5, py::arg("snr") = 3.0,
     py::arg("family") = "linear", py::arg("pattern") = "blocks5x10",
     py::arg("seed") = 0);

  m.def("recovery_metrics", [](const Eigen::VectorXd& beta_true,
                               const Eigen::VectorXd& beta_hat,
                               double zero_tol) {
    GroundTruth truth;
    truth.beta_true = beta_true;
    for (Eigen::Index j = 1; j < beta_true.size(); ++j) {
      if (beta_true[j] != 0.0) {
        truth.support.push_back(static_cast<std::size_t>(j));
      }
    }
    RecoveryMetrics r = recovery_metrics(truth, beta_hat, zero_tol);
    py::dict d;
    d["ppv"] = r.ppv ? py::cast(*r.ppv) : py::none();
    d["npv"] = r.npv ? py::cast(*r.npv) : py::none();
    d["scaled_error"] = r.scaled_error;
    d["active_size"] = r.active_size;
    return d;
  }, py::arg("beta_true"), py::arg("beta_hat"), py::arg("zero_tol") = 1e-8);

  m.def("bootstrap_median_ci", [](const std::vector<double>& samples,
                                  std::size_t n_boot, double level,
                                  std::uint64_t seed) {
    BootstrapCI ci = bootstrap_median_ci(samples, n_boot, level, seed);
    py::dict d;
    d["median"] = ci.median;
    d["lo"] = ci.lo;
    d["hi"] = ci.hi;
    d["breakdown"] = ci.breakdown;
    return d;
  }, py::arg("samples"), py::arg("n_boot") = 1000, py::arg("level") = 0.95,
     py::arg("seed") = 0);
}
