"""Conformable-Euler simulation and Lyapunov analysis of financial chaos models.

The engine advances x_{n+1} = x_n + (h^alpha / alpha) f(x_n) with one
fractional order per state dimension, simulates the 3D/4D/5D financial
systems, computes Lyapunov spectra of the resulting maps, and drives
parameter sweeps, bifurcation sampling, and attractor traces from a CLI.
"""

from .conformable import (
    GridSpec,
    Trajectory,
    conformable_derivative_at,
    conformable_integral,
    euler_step,
    integrate,
    order_vector,
    step_coefficient,
    step_coefficients,
)
from .models import (
    MODELS,
    FinanceParams,
    discrete_map_5d,
    field_3d,
    field_4d,
    field_5d,
    jacobian_3d,
    jacobian_4d,
    jacobian_5d,
    map_jacobian_5d,
)
from .lyapunov import (
    LyapunovSpectrum,
    REGIME_CHAOTIC,
    REGIME_DIVERGENT,
    REGIME_HYPERCHAOTIC,
    REGIME_PERIODIC_OR_QUASI,
    REGIME_STABLE,
    classify_regime,
    lyapunov_spectrum,
)
from .sweep import (
    SweepPlan,
    SweepRecord,
    SweepResult,
    TraceResult,
    attractor_trace,
    bifurcation_scan,
    point_spectrum,
    spectrum_scan,
)

__version__ = "0.1.0"

__all__ = [
    "GridSpec",
    "Trajectory",
    "conformable_derivative_at",
    "conformable_integral",
    "euler_step",
    "integrate",
    "order_vector",
    "step_coefficient",
    "step_coefficients",
    "MODELS",
    "FinanceParams",
    "discrete_map_5d",
    "field_3d",
    "field_4d",
    "field_5d",
    "jacobian_3d",
    "jacobian_4d",
    "jacobian_5d",
    "map_jacobian_5d",
    "LyapunovSpectrum",
    "REGIME_CHAOTIC",
    "REGIME_DIVERGENT",
    "REGIME_HYPERCHAOTIC",
    "REGIME_PERIODIC_OR_QUASI",
    "REGIME_STABLE",
    "classify_regime",
    "lyapunov_spectrum",
    "SweepPlan",
    "SweepRecord",
    "SweepResult",
    "TraceResult",
    "attractor_trace",
    "bifurcation_scan",
    "point_spectrum",
    "spectrum_scan",
    "__version__",
]
