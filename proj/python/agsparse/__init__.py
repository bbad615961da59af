"""SCAD/MCP penalized regression via a nonconvex accelerated gradient method."""

from agsparse._core import (  # noqa: F401
    __version__,
    Dataset,
    alpha_bounds,
    bootstrap_median_ci,
    dc_smooth_grad,
    dc_smooth_value,
    fit,
    lambda_grid,
    lambda_max,
    loss,
    loss_grad,
    make_dataset,
    penalty_value,
    proposed_alphas,
    recovery_metrics,
    simulate,
    smooth_lipschitz,
    soft_threshold,
    solve_path,
    toeplitz_design,
    verify_conditions,
)

__all__ = [
    "__version__",
    "Dataset",
    "alpha_bounds",
    "bootstrap_median_ci",
    "dc_smooth_grad",
    "dc_smooth_value",
    "fit",
    "lambda_grid",
    "lambda_max",
    "loss",
    "loss_grad",
    "make_dataset",
    "penalty_value",
    "proposed_alphas",
    "recovery_metrics",
    "simulate",
    "smooth_lipschitz",
    "soft_threshold",
    "solve_path",
    "toeplitz_design",
    "verify_conditions",
]
