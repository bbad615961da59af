#include "agsparse/path.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "agsparse/csv.hpp"
#include "agsparse/errors.hpp"

namespace agsparse {

double lambda_max(const Dataset& data) {
  if (!is_standardized(data)) {
    throw DomainError("lambda_max: dataset must be standardized");
  }
  const double n = static_cast<double>(data.n());
  const Eigen::VectorXd r = data.y.array() - data.y.mean();
  double best = 0.0;
  for (Eigen::Index j = 1; j < data.X.cols(); ++j) {
    best = std::max(best, std::abs(data.X.col(j).dot(r)) / n);
  }
  return best;
}

std::vector<double> lambda_grid(double lmax, std::size_t count) {
  if (lmax < 0.0) throw DomainError("lambda_grid: lmax must be >= 0");
  if (count < 2) throw DomainError("lambda_grid: need at least two values");
  if (lmax == 0.0) return {0.0};
  std::vector<double> grid(count);
  const double step = lmax / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lmax - step * static_cast<double>(i);
  }
  grid.front() = lmax;
  grid.back() = 0.0;
  return grid;
}

PathResult path_solve(const Dataset& data, PenaltyKind kind, double shape,
                      const std::vector<double>& grid,
                      const PathConfig& config) {
  if (grid.empty()) throw DomainError("path_solve: empty lambda grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] < grid[i - 1])) {
      throw DomainError("path_solve: grid must be strictly decreasing");
    }
  }
  const double l_f = smooth_lipschitz(data);  // shared by every lambda
  PathResult out;
  out.lambdas = grid;
  out.fits.reserve(grid.size());
  out.ill_posed.reserve(grid.size());
  Eigen::VectorXd start = null_model_start(data);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    PenaltySpec spec(kind, grid[i], shape);
    CompositeProblem problem(data, spec, l_f);
    Schedule schedule = Schedule::proposed(problem.lipschitz());
    FitResult fit;
    try {
      fit = ag_solve(problem, schedule, config.solver, start);
    } catch (const NumericError& e) {
      throw NumericError("path_solve: lambda index " + std::to_string(i) +
                         " (" + csv::format_double(grid[i]) + "): " + e.what());
    }
    if (config.warm_start) start = fit.beta;
    out.ill_posed.push_back(grid[i] == 0.0 && data.q() >= data.n());
    out.fits.push_back(std::move(fit));
  }
  return out;
}

std::size_t argmin_tie_first(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("argmin of empty sequence");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

std::size_t select_by_validation(const PathResult& path,
                                 const Dataset& validation) {
  if (path.fits.empty()) throw DomainError("select_by_validation: empty path");
  std::vector<double> losses;
  losses.reserve(path.fits.size());
  for (const auto& fit : path.fits) {
    losses.push_back(loss(validation, fit.beta));
  }
  return argmin_tie_first(losses);  // first index = largest lambda
}

void write_path_csv(std::ostream& out, const PathResult& path) {
  out << "lambda,j,beta_j\n";
  for (std::size_t i = 0; i < path.fits.size(); ++i) {
    const auto& beta = path.fits[i].beta;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
      out << csv::format_double(path.lambdas[i]) << ',' << j << ','
          << csv::format_double(beta[j]) << '\n';
    }
  }
}

}  // namespace agsparse
