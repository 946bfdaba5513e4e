"""Run configuration: tolerances, seeds, solver budgets.

Every tolerance with a ``_rel`` suffix is scaled by a magnitude factor at the
point of use (coefficient scale or root scale); the docstrings of the consuming
functions say which.  The default seed is fixed so identical configurations
produce byte-identical outputs; the CLI honors the STARVED_POLY_SEED
environment variable as an override.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict, replace

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class SolverConfig:
    # |Im root| acceptance for hyperbolicity, scaled by 1 + max|f_i|
    hyper_tol_rel: float = 1e-7
    # root clustering radius, scaled by 1 + max|root|
    cluster_tol_rel: float = 1e-6
    # Newton convergence on power-sum residuals, scaled by 1 + |c_i|
    newton_tol: float = 1e-12
    # final coefficient verification, scaled by 1 + |f_i|
    verify_tol: float = 1e-9
    # floating subdiscriminant zero band, scaled by 1 + max subdiscriminant
    zero_tol: float = 1e-9
    # distinct-solution radius when deduplicating converged Newton endpoints
    solution_cluster_radius: float = 1e-7
    # multistart cloud size for square systems
    n_starts: int = 128
    max_newton_iter: int = 60
    # continuation: initial split gap relative to root scale, and the floor
    continuation_delta_rel: float = 1e-3
    continuation_delta_min: float = 1e-12
    # low-discrepancy sweep budget per axis (interior-point fallback)
    sweep_points_per_axis: int = 9
    sweep_budget_cap: int = 4096
    seed: int = DEFAULT_SEED

    def replace(self, **kw) -> "SolverConfig":
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_CONFIG = SolverConfig()
