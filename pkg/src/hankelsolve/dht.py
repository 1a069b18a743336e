"""Discrete Hankel transform of integer order on ``[0, R]``.

The transform is the quadrature rule built on the zeros of ``J_n``: with
``x_1 < ... < x_{M+1}`` the first ``M + 1`` zeros, samples live at
``r_m = x_m R / x_{M+1}`` and the symmetric kernel is

    B[m, j] = (2 / x_{M+1}) J_n(x_m x_j / x_{M+1}) / |J_{n+1}(x_m) J_{n+1}(x_j)|

The last zero only sets the scale; there are ``M`` samples.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from numba import njit

from .specfun import BesselZeros, DomainError, _jn, bessel_j, bessel_j_zeros

__all__ = [
    "DhtPlan",
    "HankelCoefficients",
    "PlanCache",
    "dht_plan",
    "dht_apply",
    "dht_synthesize",
    "sandwich_twice",
]


@dataclass(frozen=True)
class DhtPlan:
    order: int
    size: int
    radius: float
    zeros: BesselZeros
    nodes: np.ndarray
    weights: np.ndarray
    matrix: np.ndarray
    # |J_{n+1}(x_m)|, m = 1..M
    jn1_abs: np.ndarray

    @property
    def scale_zero(self) -> float:
        return float(self.zeros.zeros[-1])

    @property
    def wavenumbers(self) -> np.ndarray:
        """Radial wavenumbers ``x_m / R`` of the expansion, m = 1..M."""
        return self.zeros.zeros[:-1] / self.radius


@dataclass(frozen=True)
class HankelCoefficients:
    """Fourier-Bessel coefficients: ``f(r) ~ sum_j c[j] J_n(alpha[j] r)``."""

    order: int
    radius: float
    alpha: np.ndarray
    c: np.ndarray


@njit(cache=True)
def _fill_matrix(n, x, jn1_abs, scale):
    m = x.size
    out = np.empty((m, m))
    two_over = 2.0 / scale
    for i in range(m):
        for j in range(i, m):
            v = two_over * _jn(n, x[i] * x[j] / scale) / (jn1_abs[i] * jn1_abs[j])
            out[i, j] = v
            out[j, i] = v
    return out


def dht_plan(n: int, M: int, R: float) -> DhtPlan:
    """Transform plan of order ``n`` and size ``M`` on ``[0, R]``.

    Construction is O(M^2) Bessel evaluations (the matrix fill).
    """
    n, M, R = int(n), int(M), float(R)
    if n < 0 or M < 4 or not R > 0.0:
        raise DomainError("need n >= 0, M >= 4 and R > 0")
    zeros = bessel_j_zeros(n, M + 1)
    x = zeros.zeros[:M]
    scale = float(zeros.zeros[M])
    jn1_abs = np.abs(bessel_j(n + 1, x))
    matrix = _fill_matrix(n, np.ascontiguousarray(x), jn1_abs, scale)
    nodes = x * (R / scale)
    weights = 1.0 / jn1_abs**2
    for a in (nodes, weights, matrix, jn1_abs):
        a.setflags(write=False)
    return DhtPlan(
        order=n,
        size=M,
        radius=R,
        zeros=zeros,
        nodes=nodes,
        weights=weights,
        matrix=matrix,
        jn1_abs=jn1_abs,
    )


def dht_apply(plan: DhtPlan, samples) -> HankelCoefficients:
    """Fourier-Bessel coefficients of ``samples`` given at ``plan.nodes``.

    ``c[j] = (2/x_{M+1}) (B g)[j] / |J_{n+1}(x_j)|`` with
    ``g[m] = samples[m] / |J_{n+1}(x_m)|``.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (plan.size,):
        raise ValueError(f"expected {plan.size} samples, got shape {samples.shape}")
    g = samples / plan.jn1_abs
    c = (2.0 / plan.scale_zero) * (plan.matrix @ g) / plan.jn1_abs
    return HankelCoefficients(order=plan.order, radius=plan.radius, alpha=plan.wavenumbers, c=c)


def dht_synthesize(coeffs: HankelCoefficients, r) -> np.ndarray:
    """Evaluate ``sum_j c[j] J_n(alpha[j] r)`` at radii ``r``."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    basis = bessel_j(coeffs.order, np.multiply.outer(r, coeffs.alpha))
    return basis @ coeffs.c


def sandwich_twice(plan: DhtPlan, samples) -> np.ndarray:
    """Apply the symmetric kernel twice, ``|J_{n+1}| B B (f / |J_{n+1}|)``.

    ``B`` is close to an involution, so this reproduces band-limited input.
    """
    samples = np.asarray(samples, dtype=float)
    g = samples / plan.jn1_abs
    return plan.jn1_abs * (plan.matrix @ (plan.matrix @ g))


class PlanCache:
    """DHT plans keyed by ``(n, M, R)`` with the time it took to build each."""

    def __init__(self):
        self._plans: dict[tuple, tuple[DhtPlan, float]] = {}

    def get(self, n: int, M: int, R: float) -> tuple[DhtPlan, float]:
        key = (int(n), int(M), float(R))
        if key not in self._plans:
            t0 = time.perf_counter()
            plan = dht_plan(*key)
            self._plans[key] = (plan, time.perf_counter() - t0)
        return self._plans[key]

    def plan(self, n: int, M: int, R: float) -> DhtPlan:
        return self.get(n, M, R)[0]

    def __len__(self) -> int:
        return len(self._plans)
