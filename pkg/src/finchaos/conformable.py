"""Conformable-calculus primitives and the fixed-step explicit integrator.

The discretization advances x_{n+1} = x_n + (h^alpha / alpha) * f(x_n),
with one coefficient h^alpha_i / alpha_i per state dimension.  For
alpha = 1 the scheme is classical forward Euler, bit for bit.

Divergence (state norm beyond a guard, NaN, or overflow) truncates a
trajectory and flags it; it is data, not an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

Field = Callable[[np.ndarray], np.ndarray]

DEFAULT_GUARD = 1e8


def step_coefficient(alpha: float, h: float) -> float:
    """Per-dimension step weight h**alpha / alpha.

    Requires 0 < alpha <= 1 and h > 0.  At alpha = 1 the weight is h
    exactly, so the scheme degenerates to forward Euler.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"order alpha must be in (0, 1], got {alpha}")
    if h <= 0.0:
        raise ValueError(f"step size h must be positive, got {h}")
    return h ** alpha / alpha


def order_vector(alphas: Sequence[float]) -> np.ndarray:
    """Validate per-dimension fractional orders, returned as a float array."""
    arr = np.asarray(alphas, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("orders must be a non-empty 1-D sequence")
    for i, a in enumerate(arr):
        if not 0.0 < a <= 1.0:
            raise ValueError(f"orders[{i}] must be in (0, 1], got {a}")
    return arr


def step_coefficients(alphas: Sequence[float], h: float) -> np.ndarray:
    """Vector of h**alpha_i / alpha_i, one entry per state dimension."""
    arr = order_vector(alphas)
    return np.array([step_coefficient(a, h) for a in arr])


@dataclass(frozen=True)
class GridSpec:
    """Uniform time grid t_n = t0 + n*h for n = 0..n_steps."""

    h: float
    n_steps: int
    t0: float = 0.0

    def __post_init__(self) -> None:
        if self.h <= 0.0:
            raise ValueError(f"step size h must be positive, got {self.h}")
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {self.n_steps}")

    @property
    def horizon(self) -> float:
        return self.n_steps * self.h

    def times(self) -> np.ndarray:
        return self.t0 + self.h * np.arange(self.n_steps + 1)


@dataclass
class Trajectory:
    """Recorded orbit; states[n] is x_n and row 0 is the initial state.

    When the divergence guard trips at step n, states is truncated to the
    last finite state (rows 0..n-1), diverged is True, and diverged_index
    is n.
    """

    states: np.ndarray
    times: np.ndarray
    diverged: bool = False
    diverged_index: Optional[int] = None

    @property
    def n_recorded(self) -> int:
        return self.states.shape[0] - 1


def euler_step(field: Field, x_n: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """One explicit step x_n + coeffs * field(x_n).

    The field is evaluated exactly once, at x_n.  Dimension mismatches
    raise; non-finite field values propagate into the returned state and
    are caught by integrate's guard.
    """
    x_n = np.asarray(x_n, dtype=float)
    coeffs = np.asarray(coeffs, dtype=float)
    if x_n.shape != coeffs.shape:
        raise ValueError(
            f"state dim {x_n.shape} does not match coeffs dim {coeffs.shape}"
        )
    f = np.asarray(field(x_n), dtype=float)
    if f.shape != x_n.shape:
        raise ValueError(f"field output dim {f.shape} does not match state {x_n.shape}")
    return x_n + coeffs * f


def integrate(
    field: Field,
    x0: Sequence[float],
    orders: Sequence[float],
    grid: GridSpec,
    guard: float = DEFAULT_GUARD,
) -> Trajectory:
    """Iterate the scheme over the grid, recording every state.

    Stops early and flags divergence if any state norm exceeds guard or
    goes non-finite (a single squared-norm comparison catches NaN, Inf,
    and overflow alike).
    """
    if guard <= 0.0:
        raise ValueError(f"guard must be positive, got {guard}")
    x = np.array(x0, dtype=float)
    coeffs = step_coefficients(orders, grid.h)
    if coeffs.shape != x.shape:
        raise ValueError(
            f"orders dim {coeffs.shape} does not match state dim {x.shape}"
        )
    f = np.asarray(field(x), dtype=float)
    if f.shape != x.shape:
        raise ValueError(f"field output dim {f.shape} does not match state {x.shape}")

    states = np.empty((grid.n_steps + 1, x.size))
    states[0] = x
    g2 = guard * guard
    times = grid.times()
    for n in range(grid.n_steps):
        x = x + coeffs * np.asarray(field(x), dtype=float)
        s = float(x @ x)
        if not (s <= g2):
            return Trajectory(states[: n + 1].copy(), times[: n + 1], True, n + 1)
        states[n + 1] = x
    return Trajectory(states, times, False, None)


def conformable_derivative_at(
    f: Callable[[float], float],
    t: float,
    t0: float,
    alpha: float,
    eps: float = 1e-6,
    richardson: bool = False,
) -> float:
    """Finite-difference estimate of the order-alpha conformable derivative.

    Uses the defining quotient (f(t + eps*(t-t0)**(1-alpha)) - f(t)) / eps.
    For smooth f it agrees with (t-t0)**(1-alpha) * f'(t) up to O(eps).
    richardson=True combines the eps and eps/2 quotients (2*D(eps/2) - D(eps))
    to cancel the leading error term.
    """
    if t <= t0:
        raise ValueError(f"require t > t0, got t={t}, t0={t0}")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"order alpha must be in (0, 1], got {alpha}")
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")

    stretch = (t - t0) ** (1.0 - alpha)

    def quotient(e: float) -> float:
        return (f(t + e * stretch) - f(t)) / e

    d = quotient(eps)
    if richardson:
        d = 2.0 * quotient(eps / 2.0) - d
    return d


def conformable_integral(
    f: Callable[[float], float],
    t0: float,
    t: float,
    alpha: float,
    n_quad: int = 64,
) -> float:
    """Gauss-Legendre estimate of the integral of (s-t0)**(alpha-1) f(s) over [t0, t].

    The substitution u = (s-t0)**alpha removes the integrable endpoint
    singularity at s = t0; the integral becomes
    (1/alpha) * int_0^{(t-t0)**alpha} f(t0 + u**(1/alpha)) du
    with a bounded integrand for every alpha in (0, 1].
    """
    if t <= t0:
        raise ValueError(f"require t > t0, got t={t}, t0={t0}")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"order alpha must be in (0, 1], got {alpha}")
    if n_quad < 1:
        raise ValueError(f"n_quad must be >= 1, got {n_quad}")

    upper = (t - t0) ** alpha
    nodes, weights = np.polynomial.legendre.leggauss(n_quad)
    u = 0.5 * upper * (nodes + 1.0)
    vals = np.array([f(t0 + ui ** (1.0 / alpha)) for ui in u], dtype=float)
    return 0.5 * upper * float(weights @ vals) / alpha
