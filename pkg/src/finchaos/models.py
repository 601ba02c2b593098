"""Financial dynamical systems: vector fields, analytic Jacobians, 5D map.

State conventions: x interest rate, y investment demand, z price index,
w market confidence, u ethics risk.  The 5D field couples confidence and
ethics risk only through the combination k*(w - p*u).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np


@dataclass(frozen=True)
class FinanceParams:
    """Model constants.  a, b, c must be nonnegative.

    a saving amount, b cost per investment, c demand elasticity,
    d confidence impact factor, k confidence/ethics coupling factor,
    p ethics-risk weight; m1, m2, m3 are the 4D system's confidence
    impact factors (the 5D system replaces them with the single k).
    """

    a: float = 0.8
    b: float = 0.6
    c: float = 1.0
    d: float = 2.0
    k: float = 2.0
    p: float = 1.0
    m1: float = 0.0
    m2: float = 0.0
    m3: float = 0.0

    def __post_init__(self) -> None:
        if self.a < 0.0 or self.b < 0.0 or self.c < 0.0:
            raise ValueError(
                f"a, b, c must be nonnegative, got a={self.a}, b={self.b}, c={self.c}"
            )


# Baseline constants used throughout the bundled experiments and presets.
REFERENCE_PARAMS = FinanceParams()
REFERENCE_ORDERS = (0.3, 0.5, 0.6, 0.24, 0.24)
REFERENCE_X0 = (0.4, 0.6, 0.8, 0.3, 0.4)
REFERENCE_H = 0.002


def field_3d(s: np.ndarray, prm: FinanceParams) -> np.ndarray:
    """3D system: interest rate, investment demand, price index."""
    x, y, z = s
    return np.array(
        [
            z + (y - prm.a) * x,
            1.0 - prm.b * y - x * x,
            -x - prm.c * z,
        ]
    )


def field_4d(s: np.ndarray, prm: FinanceParams) -> np.ndarray:
    """4D system: adds market confidence w with impact factors m1, m2, m3."""
    x, y, z, w = s
    return np.array(
        [
            z + (y - prm.a) * x + prm.m1 * w,
            1.0 - prm.b * y - x * x + prm.m2 * w,
            -x - prm.c * z + prm.m3 * w,
            -x * y * z,
        ]
    )


def field_5d(s: np.ndarray, prm: FinanceParams) -> np.ndarray:
    """5D system: adds ethics risk u, coupled via the shared term k*(w - p*u)."""
    x, y, z, w, u = s
    drive = prm.k * (w - prm.p * u)
    return np.array(
        [
            z + (y - prm.a) * x + drive,
            1.0 - prm.b * y - x * x + drive,
            -x - prm.c * z + drive,
            -prm.d * x * y * z,
            drive,
        ]
    )


def jacobian_3d(s: np.ndarray, prm: FinanceParams) -> np.ndarray:
    x, y, z = s
    return np.array(
        [
            [y - prm.a, x, 1.0],
            [-2.0 * x, -prm.b, 0.0],
            [-1.0, 0.0, -prm.c],
        ]
    )


def jacobian_4d(s: np.ndarray, prm: FinanceParams) -> np.ndarray:
    x, y, z, w = s
    return np.array(
        [
            [y - prm.a, x, 1.0, prm.m1],
            [-2.0 * x, -prm.b, 0.0, prm.m2],
            [-1.0, 0.0, -prm.c, prm.m3],
            [-y * z, -x * z, -x * y, 0.0],
        ]
    )


def jacobian_5d(s: np.ndarray, prm: FinanceParams) -> np.ndarray:
    """Analytic 5x5 Jacobian of field_5d; the last row is state independent."""
    x, y, z = s[0], s[1], s[2]
    k, kp = prm.k, prm.k * prm.p
    return np.array(
        [
            [y - prm.a, x, 1.0, k, -kp],
            [-2.0 * x, -prm.b, 0.0, k, -kp],
            [-1.0, 0.0, -prm.c, k, -kp],
            [-prm.d * y * z, -prm.d * x * z, -prm.d * x * y, 0.0, 0.0],
            [0.0, 0.0, 0.0, k, -kp],
        ]
    )


def discrete_map_5d(
    s: np.ndarray, prm: FinanceParams, coeffs: np.ndarray
) -> np.ndarray:
    """One step of the discretized 5D system: s + coeffs * field_5d(s)."""
    s = np.asarray(s, dtype=float)
    return s + coeffs * field_5d(s, prm)


def map_jacobian_5d(
    s: np.ndarray, prm: FinanceParams, coeffs: np.ndarray
) -> np.ndarray:
    """Tangent map of discrete_map_5d: I + diag(coeffs) * jacobian_5d(s)."""
    coeffs = np.asarray(coeffs, dtype=float)
    return np.eye(5) + coeffs[:, None] * jacobian_5d(s, prm)


def field_zero_5d(s: np.ndarray, prm: FinanceParams) -> np.ndarray:
    """Debug field, identically zero: the induced map is the identity."""
    return np.zeros(5)


def jacobian_zero_5d(s: np.ndarray, prm: FinanceParams) -> np.ndarray:
    return np.zeros((5, 5))


class Model(NamedTuple):
    dim: int
    field: Callable[[np.ndarray, FinanceParams], np.ndarray]
    jacobian: Callable[[np.ndarray, FinanceParams], np.ndarray]


MODELS: dict[str, Model] = {
    "3d": Model(3, field_3d, jacobian_3d),
    "4d": Model(4, field_4d, jacobian_4d),
    "5d": Model(5, field_5d, jacobian_5d),
    "zero-5d": Model(5, field_zero_5d, jacobian_zero_5d),
}
