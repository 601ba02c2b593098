"""Parameter sweeps: spectrum scans, bifurcation sampling, attractor traces.

Grid points are embarrassingly parallel; a multiprocessing pool of
configurable width evaluates them, and aggregation preserves grid order,
so serial and concurrent runs produce identical results.  Every record
carries both the Lyapunov spectrum and the bifurcation samples, so either
artifact can be emitted per point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from multiprocessing import Pool
from typing import Optional, Sequence, Tuple

import numpy as np

from . import conformable, lyapunov, models
from ._kernels import spectrum_5d
from .conformable import DEFAULT_GUARD, GridSpec

TARGETS = (
    "alpha1",
    "alpha2",
    "alpha3",
    "alpha4",
    "alpha5",
    "a",
    "b",
    "c",
    "d",
    "k",
    "p",
    "h",
)
COMPONENTS = "xyzwu"


@dataclass(frozen=True)
class SweepPlan:
    """One-parameter sweep: target varies over [lo, hi], all else fixed."""

    target: str
    lo: float
    hi: float
    grid_points: int = 97
    model: str = "5d"
    params: models.FinanceParams = models.REFERENCE_PARAMS
    orders: Tuple[float, ...] = models.REFERENCE_ORDERS
    x0: Tuple[float, ...] = models.REFERENCE_X0
    h: float = models.REFERENCE_H
    transient: int = 10_000
    n_iter: int = 200_000
    reorth_every: int = 1
    guard: float = DEFAULT_GUARD
    sample_transient: int = 10_000
    n_samples: int = 200
    component: str = "u"
    eps: float = 0.01

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise ValueError(f"unknown sweep target '{self.target}'")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.grid_points < 2:
            raise ValueError(f"grid_points must be >= 2, got {self.grid_points}")
        if self.model not in models.MODELS:
            raise ValueError(f"unknown model '{self.model}'")
        dim = models.MODELS[self.model].dim
        if len(self.orders) != dim or len(self.x0) != dim:
            raise ValueError(
                f"model '{self.model}' is {dim}-dimensional, got "
                f"{len(self.orders)} orders and {len(self.x0)} initial components"
            )
        if self.target.startswith("alpha") and int(self.target[5:]) > dim:
            raise ValueError(f"target '{self.target}' exceeds model dimension {dim}")
        _component_index(self.component, dim)
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")
        if self.sample_transient < 0:
            raise ValueError(
                f"sample_transient must be >= 0, got {self.sample_transient}"
            )

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.grid_points)


@dataclass
class SweepRecord:
    """Everything computed at one grid point."""

    value: float
    spectrum: lyapunov.LyapunovSpectrum
    regime: str
    samples: np.ndarray
    diverged: bool


@dataclass
class SweepResult:
    plan: SweepPlan
    component: str
    records: list


@dataclass
class TraceResult:
    """Post-transient orbit projected onto three components."""

    points: np.ndarray
    projection: Tuple[str, str, str]
    diverged: bool


def _component_index(component: str, dim: int) -> int:
    idx = COMPONENTS.find(component)
    if idx < 0 or idx >= dim:
        raise ValueError(
            f"component must be one of '{COMPONENTS[:dim]}', got '{component}'"
        )
    return idx


def _point_settings(plan: SweepPlan, value: float):
    """Base settings with the target parameter set to value."""
    params, orders, h = plan.params, list(plan.orders), plan.h
    if plan.target == "h":
        h = float(value)
    elif plan.target.startswith("alpha"):
        orders[int(plan.target[5:]) - 1] = float(value)
    else:
        params = replace(params, **{plan.target: float(value)})
    return params, tuple(orders), h


def point_spectrum(
    model: str,
    params: models.FinanceParams,
    orders: Sequence[float],
    h: float,
    x0: Sequence[float],
    transient: int = 10_000,
    n_iter: int = 200_000,
    reorth_every: int = 1,
    guard: float = DEFAULT_GUARD,
) -> lyapunov.LyapunovSpectrum:
    """Spectrum of one model at one parameter point.

    The 5D model takes the compiled fast path; other models go through the
    generic reference implementation.  Both routes agree to tight tolerance
    (tested) but are kept distinct on purpose.
    """
    coeffs = conformable.step_coefficients(orders, h)
    x_start = np.asarray(x0, dtype=float)
    if model == "5d":
        lams, diverged, converged, degenerate = spectrum_5d(
            params.a,
            params.b,
            params.c,
            params.d,
            params.k,
            params.p,
            coeffs,
            x_start,
            transient,
            n_iter,
            reorth_every,
            guard,
        )
        return lyapunov.LyapunovSpectrum(
            exponents=lams,
            n_iterations=n_iter,
            transient_skipped=transient,
            converged=bool(converged),
            diverged=bool(diverged),
            degenerate=bool(degenerate),
        )
    mdl = models.MODELS[model]
    eye = np.eye(mdl.dim)

    def map_fn(s):
        return s + coeffs * mdl.field(s, params)

    def jac_fn(s):
        return eye + coeffs[:, None] * mdl.jacobian(s, params)

    return lyapunov.lyapunov_spectrum(
        map_fn,
        jac_fn,
        x_start,
        transient=transient,
        n_iter=n_iter,
        reorth_every=reorth_every,
        guard=guard,
    )


def _point_samples(
    plan: SweepPlan,
    params: models.FinanceParams,
    coeffs: np.ndarray,
    component: str,
) -> np.ndarray:
    """n_samples successive post-transient values of one component.

    Divergence leaves the remaining samples NaN.
    """
    mdl = models.MODELS[plan.model]
    idx = _component_index(component, mdl.dim)
    fld = mdl.field
    x = np.asarray(plan.x0, dtype=float)
    g2 = plan.guard * plan.guard
    out = np.full(plan.n_samples, np.nan)
    for _ in range(plan.sample_transient):
        x = x + coeffs * fld(x, params)
        if not (float(x @ x) <= g2):
            return out
    for i in range(plan.n_samples):
        x = x + coeffs * fld(x, params)
        if not (float(x @ x) <= g2):
            return out
        out[i] = x[idx]
    return out


def _evaluate_point(args) -> SweepRecord:
    plan, value, component = args
    params, orders, h = _point_settings(plan, value)
    spec = point_spectrum(
        plan.model,
        params,
        orders,
        h,
        plan.x0,
        transient=plan.transient,
        n_iter=plan.n_iter,
        reorth_every=plan.reorth_every,
        guard=plan.guard,
    )
    regime = lyapunov.classify_regime(spec, plan.eps)
    coeffs = conformable.step_coefficients(orders, h)
    samples = _point_samples(plan, params, coeffs, component)
    diverged = spec.diverged or not bool(np.isfinite(samples).all())
    return SweepRecord(float(value), spec, regime, samples, diverged)


def _run(plan: SweepPlan, component: str, workers: int) -> SweepResult:
    dim = models.MODELS[plan.model].dim
    _component_index(component, dim)
    args = [(plan, float(v), component) for v in plan.values()]
    if workers <= 1:
        records = [_evaluate_point(arg) for arg in args]
    else:
        with Pool(workers) as pool:
            records = pool.map(_evaluate_point, args)
    return SweepResult(plan, component, records)


def spectrum_scan(plan: SweepPlan, workers: int = 1) -> SweepResult:
    """Spectrum and regime label at every grid point, in parameter order."""
    return _run(plan, plan.component, workers)


def bifurcation_scan(
    plan: SweepPlan, component: Optional[str] = None, workers: int = 1
) -> SweepResult:
    """Post-transient scatter samples of one component at every grid point."""
    chosen = plan.component if component is None else component
    return _run(plan, chosen, workers)


def attractor_trace(
    params: models.FinanceParams,
    orders: Sequence[float],
    x0: Sequence[float],
    grid: GridSpec,
    projection: Sequence[str],
    transient: int = 10_000,
    guard: float = DEFAULT_GUARD,
    model: str = "5d",
) -> TraceResult:
    """Post-transient orbit projected onto three chosen components.

    Records the states with step index transient+1 .. n_steps, so a
    non-divergent trace has exactly n_steps - transient rows.
    """
    if model not in models.MODELS:
        raise ValueError(f"unknown model '{model}'")
    mdl = models.MODELS[model]
    if len(projection) != 3:
        raise ValueError(f"projection needs exactly 3 components, got {projection}")
    idx = [_component_index(c, mdl.dim) for c in projection]
    if not 0 <= transient < grid.n_steps:
        raise ValueError(
            f"transient must be in [0, n_steps), got {transient} of {grid.n_steps}"
        )
    traj = conformable.integrate(
        lambda s: mdl.field(s, params), x0, orders, grid, guard
    )
    points = traj.states[transient + 1 :, idx]
    return TraceResult(points, tuple(projection), traj.diverged)
