"""Lyapunov spectra of smooth maps via tangent-frame QR propagation.

An orthonormal frame (the standard basis) co-evolves with the orbit under
the map Jacobian; periodic QR reorthonormalization accumulates the log
diagonal stretches, and exponent i is the accumulated log stretch divided
by the iteration count (nats per map iteration).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .conformable import DEFAULT_GUARD

REGIME_DIVERGENT = "divergent"
REGIME_STABLE = "stable"
REGIME_PERIODIC_OR_QUASI = "periodic_or_quasi"
REGIME_CHAOTIC = "chaotic"
REGIME_HYPERCHAOTIC = "hyperchaotic"

# Tail of the run over which running estimates must settle for converged=True.
TAIL_FRACTION = 0.1
TAIL_TOLERANCE = 1e-3


@dataclass
class LyapunovSpectrum:
    """Spectrum plus convergence metadata.

    exponents are sorted descending, in nats per map iteration.  converged
    means every exponent's running estimate varied by less than 1e-3 over
    the final 10% of iterations.  degenerate flags a tangent direction
    whose stretch underflowed to zero (reported as -inf).
    """

    exponents: np.ndarray
    n_iterations: int
    transient_skipped: int
    converged: bool
    diverged: bool = False
    degenerate: bool = False


def _diverged_result(dim: int, transient: int, n_iter: int) -> LyapunovSpectrum:
    return LyapunovSpectrum(
        exponents=np.full(dim, np.nan),
        n_iterations=n_iter,
        transient_skipped=transient,
        converged=False,
        diverged=True,
    )


def lyapunov_spectrum(
    map_fn: Callable[[np.ndarray], np.ndarray],
    map_jacobian: Callable[[np.ndarray], np.ndarray],
    x0: Sequence[float],
    transient: int = 10_000,
    n_iter: int = 200_000,
    reorth_every: int = 1,
    guard: float = DEFAULT_GUARD,
) -> LyapunovSpectrum:
    """Full spectrum of a smooth map from x0.

    The orbit advances transient steps first; the frame then co-evolves for
    n_iter steps with QR reorthonormalization every reorth_every steps (and
    once more at the end if the count is not a multiple).  Deterministic:
    fixed iteration order, standard-basis initial frame, no randomness.
    Returns a diverged-flagged result if the orbit leaves the guard ball.
    """
    if transient < 0:
        raise ValueError(f"transient must be >= 0, got {transient}")
    if n_iter < 1:
        raise ValueError(f"n_iter must be >= 1, got {n_iter}")
    if reorth_every < 1:
        raise ValueError(f"reorth_every must be >= 1, got {reorth_every}")
    if guard <= 0.0:
        raise ValueError(f"guard must be positive, got {guard}")

    x = np.atleast_1d(np.array(x0, dtype=float))
    dim = x.size
    g2 = guard * guard

    for _ in range(transient):
        x = np.asarray(map_fn(x), dtype=float)
        if not (float(x @ x) <= g2):
            return _diverged_result(dim, transient, n_iter)

    frame = np.eye(dim)
    logs = np.zeros(dim)
    degenerate = False
    tail_start = int(np.ceil((1.0 - TAIL_FRACTION) * n_iter))
    tail_min = np.full(dim, np.inf)
    tail_max = np.full(dim, -np.inf)
    steps_since = 0

    for n in range(n_iter):
        frame = np.asarray(map_jacobian(x), dtype=float) @ frame
        x = np.asarray(map_fn(x), dtype=float)
        if not (float(x @ x) <= g2):
            return _diverged_result(dim, transient, n_iter)
        steps_since += 1
        if steps_since == reorth_every or n == n_iter - 1:
            frame, r = np.linalg.qr(frame)
            stretch = np.abs(np.diag(r))
            if np.any(stretch == 0.0):
                degenerate = True
            with np.errstate(divide="ignore"):
                logs += np.log(stretch)
            steps_since = 0
            if n + 1 >= tail_start:
                est = logs / (n + 1)
                np.minimum(tail_min, est, out=tail_min)
                np.maximum(tail_max, est, out=tail_max)

    with np.errstate(invalid="ignore"):
        # degenerate runs put -inf in both bounds; the NaN spread reads
        # as not-converged, which is the right verdict
        spread = tail_max - tail_min
    converged = bool(np.all(spread < TAIL_TOLERANCE))
    exponents = np.sort(logs / n_iter)[::-1]
    return LyapunovSpectrum(
        exponents=exponents,
        n_iterations=n_iter,
        transient_skipped=transient,
        converged=converged,
        diverged=False,
        degenerate=degenerate,
    )


def classify_regime(spec: LyapunovSpectrum, eps: float = 0.01) -> str:
    """Label a spectrum by its count of exponents above eps.

    divergent orbits are labeled unconditionally; otherwise two or more
    exponents above eps mean hyperchaotic, exactly one chaotic, none with
    the leading exponent inside [-eps, eps] periodic_or_quasi, and all
    below -eps stable.
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    if spec.diverged:
        return REGIME_DIVERGENT
    lam = np.asarray(spec.exponents, dtype=float)
    n_pos = int(np.sum(lam > eps))
    if n_pos >= 2:
        return REGIME_HYPERCHAOTIC
    if n_pos == 1:
        return REGIME_CHAOTIC
    if lam[0] >= -eps:
        return REGIME_PERIODIC_OR_QUASI
    return REGIME_STABLE
