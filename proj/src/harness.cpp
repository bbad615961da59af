#include "agsparse/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "agsparse/errors.hpp"
#include "agsparse/path.hpp"
#include "agsparse/rng.hpp"
#include "agsparse/solver.hpp"

namespace agsparse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// harness seed streams
enum : std::uint64_t {
  kStreamBenchData = 101,
  kStreamBenchBoot = 102,
  kStreamRecTruth = 201,
  kStreamRecTrainX = 202,
  kStreamRecValX = 203,
  kStreamRecTrainNoise = 204,
  kStreamRecValNoise = 205,
  kStreamRecTrainBern = 206,
  kStreamRecValBern = 207,
};

// Runs fn(0..n_jobs) on `threads` workers; job results must go into
// preallocated slots so the output is independent of scheduling.
void parallel_for(std::size_t n_jobs, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n_jobs));
  if (threads == 1) {
    for (std::size_t i = 0; i < n_jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_jobs) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return sd / std::sqrt(static_cast<double>(v.size()));
}

// Sum-scale logistic composite: n * loss + DC-smooth penalty part.
CompositeProblem sum_scale_problem(const Dataset& data,
                                   const PenaltySpec& spec, double l_f) {
  const double n = static_cast<double>(data.n());
  std::vector<bool> mask(static_cast<std::size_t>(data.X.cols()), true);
  mask[0] = false;
  SmoothFunction psi;
  psi.lipschitz = n * l_f + dc_smooth_lipschitz(spec);
  psi.value = [&data, spec, n](const Eigen::VectorXd& x) {
    double v = n * loss(data, x);
    for (Eigen::Index j = 1; j < x.size(); ++j) {
      v += dc_smooth_value(spec, x[j]);
    }
    return v;
  };
  psi.gradient = [&data, spec, n](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = loss_grad(data, x);
    g *= n;
    for (Eigen::Index j = 1; j < x.size(); ++j) {
      g[j] += dc_smooth_grad(spec, x[j]);
    }
    return g;
  };
  return CompositeProblem(std::move(psi), spec.lambda, std::move(mask));
}

bool trace_nonincreasing(const std::vector<TracePoint>& trace) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    const double prev = trace[k - 1].objective;
    if (trace[k].objective > prev + 1e-10 * (1.0 + std::abs(prev))) {
      return false;
    }
  }
  return true;
}

struct BenchJobOut {
  double iters[3] = {kInf, kInf, kInf};  // AGProposed, AGOriginal, Ista
  bool ista_monotone = true;
  std::string error;  // empty on success
};

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::AGProposed: return "ag_proposed";
    case Method::AGOriginal: return "ag_original";
    case Method::Ista: return "ista";
  }
  return "?";
}

BenchResult run_benchmark(const BenchConfig& config) {
  if (config.reps < 1) throw DomainError("bench: reps >= 1");
  const std::size_t n_cells = config.ns.size() * config.taus.size();
  const std::size_t n_jobs = n_cells * config.reps;
  const double offset =
      config.target_offset.value_or(config.family == Family::Linear
                                        ? std::exp(3.0)
                                        : std::exp(2.0));

  std::vector<BenchJobOut> jobs(n_jobs);
  parallel_for(n_jobs, config.threads, [&](std::size_t job) {
    try {
    const std::size_t cell = job / config.reps;
    const std::size_t rep = job % config.reps;
    const std::size_t n = config.ns[cell / config.taus.size()];
    const double tau = config.taus[cell % config.taus.size()];

    SimConfig sim;
    sim.n = n;
    sim.q = config.q;
    sim.tau = tau;
    sim.snr = config.snr;
    sim.family = config.family;
    sim.pattern = SignalPattern::Blocks5x10;
    sim.seed = derive_seed(config.seed, kStreamBenchData + 17 * cell, rep);
    SimData data = simulate(sim);

    Dataset train = make_dataset(data.X, data.y, config.family);
    PenaltySpec spec(config.penalty, config.lambda, config.shape);
    const double l_f = smooth_lipschitz(train);
    CompositeProblem problem =
        config.family == Family::Linear
            ? CompositeProblem(train, spec, l_f)
            : sum_scale_problem(train, spec, l_f);

    SolverConfig solver;
    solver.max_iter = config.max_iter;
    solver.tol = config.tol;
    solver.record_trace = true;
    const Eigen::VectorXd x0 = null_model_start(train);

    FitResult fits[3];
    fits[0] = ag_solve(problem, Schedule::proposed(problem.lipschitz()),
                       solver, x0);
    fits[1] = ag_solve(problem, Schedule::original(problem.lipschitz()),
                       solver, x0);
    fits[2] = ista_solve(problem, solver, x0);

    double g_star = kInf;
    for (const auto& f : fits) {
      for (const auto& p : f.trace) g_star = std::min(g_star, p.objective);
    }
    const double target = g_star + offset;
    BenchJobOut& out = jobs[job];
    for (int m = 0; m < 3; ++m) {
      const TargetResult r = iterations_to_target(fits[m].trace, target);
      out.iters[m] = r.censored ? kInf : static_cast<double>(r.iteration);
    }
    out.ista_monotone = trace_nonincreasing(fits[2].trace);
    } catch (const std::exception& e) {
      // failed replicates are tagged per cell; the rest of the grid survives
      jobs[job].error = e.what();
    }
  });

  BenchResult result;
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    std::size_t cell_errors = 0;
    std::string first_error;
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      const auto& j = jobs[cell * config.reps + rep];
      if (!j.error.empty()) {
        ++cell_errors;
        if (first_error.empty()) first_error = j.error;
      }
    }
    for (int m = 0; m < 3; ++m) {
      std::vector<double> iters;
      std::size_t censored = 0;
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        const auto& j = jobs[cell * config.reps + rep];
        if (!j.error.empty()) continue;
        iters.push_back(j.iters[m]);
        if (std::isinf(iters.back())) ++censored;
      }
      BenchCellStats stats;
      stats.n = config.ns[cell / config.taus.size()];
      stats.tau = config.taus[cell % config.taus.size()];
      stats.method = static_cast<Method>(m);
      stats.reps = iters.size();
      stats.censored = censored;
      stats.errors = cell_errors;
      stats.error_message = first_error;
      if (iters.empty()) {
        stats.ci.median = std::numeric_limits<double>::quiet_NaN();
        stats.ci.lo = stats.ci.hi = std::numeric_limits<double>::quiet_NaN();
        stats.ci.breakdown = true;
      } else {
        stats.ci = bootstrap_median_ci(
            iters, config.n_boot, config.ci_level,
            derive_seed(config.seed, kStreamBenchBoot + 11 * cell,
                        static_cast<std::uint64_t>(m)));
      }
      result.cells.push_back(stats);
    }
  }
  for (const auto& j : jobs) {
    if (!j.error.empty()) continue;
    ++result.ista_runs;
    if (j.ista_monotone) ++result.ista_monotone_runs;
  }
  return result;
}

csv::Table bench_table(const BenchConfig& config, const BenchResult& result) {
  csv::Table t;
  t.header = {"family", "penalty",  "n",      "q",     "q_over_n", "tau",
              "snr",    "lambda",   "shape",  "method", "reps",    "censored",
              "median", "ci_lo",    "ci_hi",  "breakdown", "errors",
              "error_message"};
  for (const auto& c : result.cells) {
    const double qn =
        static_cast<double>(config.q) / static_cast<double>(c.n);
    t.rows.push_back({
        config.family == Family::Linear ? "linear" : "logistic",
        config.penalty == PenaltyKind::Scad ? "scad" : "mcp",
        csv::format_size(c.n),
        csv::format_size(config.q),
        csv::format_double(qn),
        csv::format_double(c.tau),
        csv::format_double(config.snr),
        csv::format_double(config.lambda),
        csv::format_double(config.shape),
        method_name(c.method),
        csv::format_size(c.reps),
        csv::format_size(c.censored),
        csv::format_double(c.ci.median),
        c.ci.breakdown ? "" : csv::format_double(c.ci.lo),
        c.ci.breakdown ? "" : csv::format_double(c.ci.hi),
        c.ci.breakdown ? "1" : "0",
        csv::format_size(c.errors),
        c.error_message,
    });
  }
  return t;
}

namespace {

struct RecoveryJobOut {
  // one entry per snr index
  std::vector<RecoveryMetrics> metrics;
  std::string error;  // empty on success
};

}  // namespace

RecoveryResult run_recovery(const RecoveryConfig& config) {
  if (config.reps < 1) throw DomainError("recover: reps >= 1");
  const std::size_t n_taus = config.taus.size();
  const std::size_t n_jobs = n_taus * config.reps;
  const Eigen::Index n = static_cast<Eigen::Index>(config.n);

  std::vector<RecoveryJobOut> jobs(n_jobs);
  parallel_for(n_jobs, config.threads, [&](std::size_t job) {
    try {
    const std::size_t tau_idx = job / config.reps;
    const std::size_t rep = job % config.reps;
    const double tau = config.taus[tau_idx];
    const std::uint64_t rep_seed = derive_seed(config.seed, tau_idx, rep);

    // Replicate-level draws shared across the snr grid (paired comparisons):
    // snr only rescales the noise below.
    GroundTruth truth =
        true_beta(config.pattern, config.family, config.q,
                  derive_seed(rep_seed, kStreamRecTruth));
    const Eigen::MatrixXd x_train = toeplitz_design(
        config.n, config.q, tau, derive_seed(rep_seed, kStreamRecTrainX));
    const Eigen::MatrixXd x_val = toeplitz_design(
        config.n, config.q, tau, derive_seed(rep_seed, kStreamRecValX));
    Eigen::VectorXd z_train(n), z_val(n), u_train(n), u_val(n);
    {
      Rng r1(derive_seed(rep_seed, kStreamRecTrainNoise));
      Rng r2(derive_seed(rep_seed, kStreamRecValNoise));
      Rng r3(derive_seed(rep_seed, kStreamRecTrainBern));
      Rng r4(derive_seed(rep_seed, kStreamRecValBern));
      for (Eigen::Index i = 0; i < n; ++i) {
        z_train[i] = r1.normal();
        z_val[i] = r2.normal();
        u_train[i] = r3.uniform();
        u_val[i] = r4.uniform();
      }
    }
    const Eigen::VectorXd eta_train0 =
        x_train * truth.beta_true.tail(x_train.cols());
    const Eigen::VectorXd eta_val0 = x_val * truth.beta_true.tail(x_val.cols());
    const double qf = ar1_quadratic_form(truth.beta_true.tail(config.q), tau);
    if (!(qf > 0.0)) throw DomainError("recover: degenerate zero signal");

    RecoveryJobOut& out = jobs[job];
    out.metrics.resize(config.snrs.size());
    for (std::size_t s = 0; s < config.snrs.size(); ++s) {
      const double sigma = std::sqrt(qf) / config.snrs[s];
      Eigen::VectorXd y_train(n), y_val(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double eta_t = eta_train0[i] + sigma * z_train[i];
        const double eta_v = eta_val0[i] + sigma * z_val[i];
        if (config.family == Family::Linear) {
          y_train[i] = eta_t;
          y_val[i] = eta_v;
        } else {
          y_train[i] = u_train[i] < 1.0 / (1.0 + std::exp(-eta_t)) ? 1.0 : 0.0;
          y_val[i] = u_val[i] < 1.0 / (1.0 + std::exp(-eta_v)) ? 1.0 : 0.0;
        }
      }
      Dataset train = make_dataset(x_train, y_train, config.family);
      Dataset val = make_dataset_like(x_val, y_val, config.family,
                                      train.centers, train.scales);
      PathConfig path_cfg;
      path_cfg.solver.max_iter = config.max_iter;
      path_cfg.solver.tol = config.tol;
      path_cfg.warm_start = config.warm_start;
      PathResult path =
          path_solve(train, config.penalty, config.shape,
                     lambda_grid(lambda_max(train), config.grid_size),
                     path_cfg);
      const std::size_t sel = select_by_validation(path, val);
      path.selected = static_cast<std::ptrdiff_t>(sel);
      const Eigen::VectorXd beta_orig =
          original_scale_coefficients(train, path.fits[sel].beta);
      out.metrics[s] = recovery_metrics(truth, beta_orig, config.zero_tol);
    }
    } catch (const std::exception& e) {
      jobs[job].error = e.what();
    }
  });

  RecoveryResult result;
  for (std::size_t t = 0; t < n_taus; ++t) {
    for (std::size_t s = 0; s < config.snrs.size(); ++s) {
      RecoveryCellStats cell;
      cell.tau = config.taus[t];
      cell.snr = config.snrs[s];
      std::vector<double> err, ppv, npv, act;
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        const RecoveryJobOut& j = jobs[t * config.reps + rep];
        if (!j.error.empty()) {
          ++cell.errors;
          if (cell.error_message.empty()) cell.error_message = j.error;
          continue;
        }
        const RecoveryMetrics& m = j.metrics[s];
        err.push_back(m.scaled_error);
        act.push_back(static_cast<double>(m.active_size));
        if (m.ppv) ppv.push_back(*m.ppv); else ++cell.ppv_missing;
        if (m.npv) npv.push_back(*m.npv); else ++cell.npv_missing;
      }
      cell.reps = err.size();
      if (err.empty()) {
        result.cells.push_back(cell);
        continue;
      }
      cell.scaled_error_mean = mean_of(err);
      cell.scaled_error_se = se_of(err);
      cell.active_mean = mean_of(act);
      cell.active_se = se_of(act);
      if (!ppv.empty()) {
        cell.ppv_mean = mean_of(ppv);
        cell.ppv_se = se_of(ppv);
      }
      if (!npv.empty()) {
        cell.npv_mean = mean_of(npv);
        cell.npv_se = se_of(npv);
      }
      result.cells.push_back(cell);
    }
  }
  return result;
}

csv::Table recovery_table(const RecoveryConfig& config,
                          const RecoveryResult& result) {
  auto opt = [](const std::optional<double>& v) {
    return v ? csv::format_double(*v) : std::string();
  };
  csv::Table t;
  t.header = {"family",      "penalty",           "n",
              "q",           "tau",               "snr",
              "reps",        "scaled_error_mean", "scaled_error_se",
              "ppv_mean",    "ppv_se",            "ppv_missing",
              "npv_mean",    "npv_se",            "npv_missing",
              "active_mean", "active_se",         "errors",
              "error_message"};
  for (const auto& c : result.cells) {
    t.rows.push_back({
        config.family == Family::Linear ? "linear" : "logistic",
        config.penalty == PenaltyKind::Scad ? "scad" : "mcp",
        csv::format_size(config.n),
        csv::format_size(config.q),
        csv::format_double(c.tau),
        csv::format_double(c.snr),
        csv::format_size(c.reps),
        csv::format_double(c.scaled_error_mean),
        csv::format_double(c.scaled_error_se),
        opt(c.ppv_mean),
        opt(c.ppv_se),
        csv::format_size(c.ppv_missing),
        opt(c.npv_mean),
        opt(c.npv_se),
        csv::format_size(c.npv_missing),
        csv::format_double(c.active_mean),
        csv::format_double(c.active_se),
        csv::format_size(c.errors),
        c.error_message,
    });
  }
  return t;
}

}  // namespace agsparse
