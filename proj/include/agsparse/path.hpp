#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "agsparse/model.hpp"
#include "agsparse/penalty.hpp"
#include "agsparse/solver.hpp"

namespace agsparse {

struct PathResult {
  std::vector<double> lambdas;     // decreasing
  std::vector<FitResult> fits;     // aligned with lambdas
  std::vector<bool> ill_posed;     // lambda ~ 0 with q >= n
  std::ptrdiff_t selected = -1;    // validation-chosen index, -1 = none
};

// Smallest lambda at which the all-zero penalized fit is stationary:
// max_j |<x_j, y - ybar>| / n over penalized columns (both families; ybar is
// the null-model fitted mean). Requires standardized data.
double lambda_max(const Dataset& data);

// `count` equally spaced values from lmax down to 0. Degenerate lmax = 0
// collapses to the single value {0}.
std::vector<double> lambda_grid(double lmax, std::size_t count = 50);

struct PathConfig {
  SolverConfig solver;
  bool warm_start = true;  // harness runs use cold starts for per-lambda fits
};

// Solve the grid in decreasing order with ag_solve under the proposed
// schedule. The first fit starts from the null model (intercept only);
// warm starts reuse the previous solution. L_psi per lambda is
// L_f + L_h with L_f computed once.
PathResult path_solve(const Dataset& data, PenaltyKind kind, double shape,
                      const std::vector<double>& grid,
                      const PathConfig& config = {});

// Index minimizing the unpenalized validation loss; ties break toward the
// larger lambda. The validation dataset must be expressed in the training
// coordinates (make_dataset_like) and share the family.
std::size_t select_by_validation(const PathResult& path,
                                 const Dataset& validation);

// argmin keeping the first index on ties.
std::size_t argmin_tie_first(const std::vector<double>& values);

// Long format: lambda,j,beta_j.
void write_path_csv(std::ostream& out, const PathResult& path);

}  // namespace agsparse
