"""Numba fast path for the 5D model's Lyapunov spectrum.

The sweep layer calls this kernel once per grid point; at the default
200000 tangent iterations the JIT loop is two orders of magnitude faster
than the generic numpy route in lyapunov.py, which remains the reference
implementation (the two are cross-checked in tests).  Reorthonormalization
here is modified Gram-Schmidt, deliberately a different route than the
Householder QR used by the generic code.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def spectrum_5d(
    a, b, c, d, k, p, coeffs, x0, transient, n_iter, reorth_every, guard
):
    """Spectrum of the discretized 5D financial map.

    Returns (exponents sorted descending, diverged, converged, degenerate).
    Semantics match lyapunov.lyapunov_spectrum specialized to this map:
    standard-basis frame, log stretches divided by n_iter, tail-settling
    convergence flag over the final 10% of iterations.
    """
    x = x0.copy()
    g2 = guard * guard
    nan_spec = np.full(5, np.nan)

    for _ in range(transient):
        drive = k * (x[3] - p * x[4])
        f0 = x[2] + (x[1] - a) * x[0] + drive
        f1 = 1.0 - b * x[1] - x[0] * x[0] + drive
        f2 = -x[0] - c * x[2] + drive
        f3 = -d * x[0] * x[1] * x[2]
        x = np.array(
            [
                x[0] + coeffs[0] * f0,
                x[1] + coeffs[1] * f1,
                x[2] + coeffs[2] * f2,
                x[3] + coeffs[3] * f3,
                x[4] + coeffs[4] * drive,
            ]
        )
        s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4]
        if not (s <= g2):
            return nan_spec, True, False, False

    frame = np.eye(5)
    new = np.empty((5, 5))
    jac = np.empty((5, 5))
    logs = np.zeros(5)
    tail_start = int(np.ceil(0.9 * n_iter))
    tail_min = np.full(5, np.inf)
    tail_max = np.full(5, -np.inf)
    degenerate = False
    steps_since = 0

    for n in range(n_iter):
        # tangent map I + diag(coeffs) * Df at the current state
        jac[0, 0] = 1.0 + coeffs[0] * (x[1] - a)
        jac[0, 1] = coeffs[0] * x[0]
        jac[0, 2] = coeffs[0]
        jac[0, 3] = coeffs[0] * k
        jac[0, 4] = -coeffs[0] * k * p
        jac[1, 0] = -coeffs[1] * 2.0 * x[0]
        jac[1, 1] = 1.0 - coeffs[1] * b
        jac[1, 2] = 0.0
        jac[1, 3] = coeffs[1] * k
        jac[1, 4] = -coeffs[1] * k * p
        jac[2, 0] = -coeffs[2]
        jac[2, 1] = 0.0
        jac[2, 2] = 1.0 - coeffs[2] * c
        jac[2, 3] = coeffs[2] * k
        jac[2, 4] = -coeffs[2] * k * p
        jac[3, 0] = -coeffs[3] * d * x[1] * x[2]
        jac[3, 1] = -coeffs[3] * d * x[0] * x[2]
        jac[3, 2] = -coeffs[3] * d * x[0] * x[1]
        jac[3, 3] = 1.0
        jac[3, 4] = 0.0
        jac[4, 0] = 0.0
        jac[4, 1] = 0.0
        jac[4, 2] = 0.0
        jac[4, 3] = coeffs[4] * k
        jac[4, 4] = 1.0 - coeffs[4] * k * p

        for i in range(5):
            for j in range(5):
                acc = 0.0
                for r in range(5):
                    acc += jac[i, r] * frame[r, j]
                new[i, j] = acc
        for i in range(5):
            for j in range(5):
                frame[i, j] = new[i, j]

        drive = k * (x[3] - p * x[4])
        f0 = x[2] + (x[1] - a) * x[0] + drive
        f1 = 1.0 - b * x[1] - x[0] * x[0] + drive
        f2 = -x[0] - c * x[2] + drive
        f3 = -d * x[0] * x[1] * x[2]
        x = np.array(
            [
                x[0] + coeffs[0] * f0,
                x[1] + coeffs[1] * f1,
                x[2] + coeffs[2] * f2,
                x[3] + coeffs[3] * f3,
                x[4] + coeffs[4] * drive,
            ]
        )
        s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4]
        if not (s <= g2):
            return nan_spec, True, False, False

        steps_since += 1
        if steps_since == reorth_every or n == n_iter - 1:
            # modified Gram-Schmidt, accumulating log column norms
            for i in range(5):
                for j in range(i):
                    dot = 0.0
                    for r in range(5):
                        dot += frame[r, j] * frame[r, i]
                    for r in range(5):
                        frame[r, i] -= dot * frame[r, j]
                nrm = 0.0
                for r in range(5):
                    nrm += frame[r, i] * frame[r, i]
                nrm = np.sqrt(nrm)
                if nrm == 0.0:
                    degenerate = True
                    logs[i] = -np.inf
                else:
                    logs[i] += np.log(nrm)
                    inv = 1.0 / nrm
                    for r in range(5):
                        frame[r, i] *= inv
            steps_since = 0
            if n + 1 >= tail_start:
                for i in range(5):
                    est = logs[i] / (n + 1)
                    if est < tail_min[i]:
                        tail_min[i] = est
                    if est > tail_max[i]:
                        tail_max[i] = est

    converged = True
    for i in range(5):
        if not (tail_max[i] - tail_min[i] < 1e-3):
            converged = False
    exponents = np.sort(logs / n_iter)[::-1]
    return exponents, False, converged, degenerate
