"""Optimal perturbation iteration for singular Emden-Fowler initial value problems."""

from ._core import (
    ConfigError,
    Error,
    InvalidInterval,
    SingularJacobian,
    StepUnderflow,
    UnknownProblem,
    bootstrap_series,
    catalog_names,
    first_correction,
    fit,
    integrate,
    iterate,
    iterate_exact,
    objective,
    residual,
    table1,
)

__all__ = [
    "ConfigError",
    "Error",
    "InvalidInterval",
    "SingularJacobian",
    "StepUnderflow",
    "UnknownProblem",
    "bootstrap_series",
    "catalog_names",
    "first_correction",
    "fit",
    "integrate",
    "iterate",
    "iterate_exact",
    "objective",
    "residual",
    "table1",
]
