"""Cylindrical Poisson driver.

``lap u = f`` on ``0 <= r <= R``, periodic in ``theta`` and in ``z`` with
period ``length_z``.  A 2-d DFT over ``(theta, z)`` splits the problem into
independent radial modes ``(n, kappa)`` of the modified Bessel equation, each
solved by :func:`hankelsolve.greens.solve_mode` on the radial block grid.

The ``kappa = 0`` modes (the ``z``-average of ``f``) are not covered by the
Green's function and are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dht import PlanCache, dht_apply
from .greens import solve_mode
from .interp import BlockGrid, block_grid, interpolate
from .specfun import DomainError

__all__ = [
    "CylGrid",
    "ModeSet",
    "cyl_grid",
    "decompose",
    "resynthesize",
    "solve_modes",
    "solve_poisson",
    "single_mode_field",
    "KAPPA_ZERO_TOL",
]

# Largest kappa = 0 content accepted, relative to max |f|.
KAPPA_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class CylGrid:
    """Radial block grid times uniform periodic ``theta`` and ``z`` grids."""

    radial: BlockGrid
    n_theta: int
    n_z: int
    length_z: float

    def __post_init__(self):
        for name in ("n_theta", "n_z"):
            v = getattr(self, name)
            if int(v) != v or v < 4 or v % 2:
                raise DomainError(f"{name} must be an even integer >= 4, got {v!r}")
        if not self.length_z > 0.0:
            raise DomainError(f"length_z must be > 0, got {self.length_z!r}")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.radial.nodes.size, int(self.n_theta), int(self.n_z))

    @property
    def theta(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_theta) / self.n_theta

    @property
    def z(self) -> np.ndarray:
        return self.length_z * np.arange(self.n_z) / self.n_z

    @property
    def orders(self) -> np.ndarray:
        """Azimuthal order of each theta-frequency slot, in DFT order."""
        return np.rint(np.fft.fftfreq(self.n_theta) * self.n_theta).astype(int)

    @property
    def wavenumbers(self) -> np.ndarray:
        """``kappa_k = 2 pi |k| / length_z`` for each z-frequency slot, in DFT order."""
        k = np.rint(np.fft.fftfreq(self.n_z) * self.n_z)
        return 2.0 * np.pi * np.abs(k) / self.length_z


def cyl_grid(N: int, P: int, R: float, n_theta: int, n_z: int, length_z: float) -> CylGrid:
    return CylGrid(block_grid(N, P, R), int(n_theta), int(n_z), float(length_z))


@dataclass(frozen=True)
class ModeSet:
    """Complex mode amplitudes ``[radial, n, k]`` with ``n`` and ``k`` in DFT order.

    ``f(r, theta_j, z_l) = sum_{n,k} values[:, n, k] exp(i (n theta_j + k 2 pi z_l / L))``.
    """

    grid: CylGrid
    values: np.ndarray

    def mode(self, n: int, k: int) -> np.ndarray:
        """Radial samples of the mode with signed order ``n`` and signed index ``k``."""
        return self.values[:, n % self.grid.n_theta, k % self.grid.n_z]


def _check_field(grid: CylGrid, f) -> np.ndarray:
    f = np.asarray(f)
    if f.shape != grid.shape:
        raise ValueError(f"field shape {f.shape} does not match grid {grid.shape}")
    return f


def decompose(grid: CylGrid, f_samples) -> ModeSet:
    """DFT over ``theta`` and ``z``, normalized so that :func:`resynthesize` inverts it."""
    f = _check_field(grid, f_samples)
    values = np.fft.fft2(f, axes=(1, 2)) / (grid.n_theta * grid.n_z)
    return ModeSet(grid, values)


def resynthesize(modes: ModeSet) -> np.ndarray:
    """Inverse of :func:`decompose`; complex in general."""
    g = modes.grid
    return np.fft.ifft2(modes.values * (g.n_theta * g.n_z), axes=(1, 2))


def solve_modes(modes: ModeSet, dht_size: int = 128, cache: PlanCache | None = None) -> ModeSet:
    """Solve every ``kappa > 0`` mode.

    ``kappa = 0`` slots must be negligible (at most ``KAPPA_ZERO_TOL`` times
    the largest amplitude) and map to zero.

    Each mode is interpolated to the order-``|n|`` DHT nodes for the
    transform and evaluated back on the block grid.  Real and
    imaginary parts go through the same real pipeline, so conjugate symmetry
    of the input is kept exactly.  All-zero modes are skipped.
    """
    g = modes.grid
    cache = PlanCache() if cache is None else cache
    radial = g.radial
    out = np.zeros_like(modes.values, dtype=complex)
    limit = KAPPA_ZERO_TOL * np.max(np.abs(modes.values), initial=0.0)
    for jn, n in enumerate(g.orders):
        order = abs(int(n))
        for jk, kappa in enumerate(g.wavenumbers):
            data = modes.values[:, jn, jk]
            if kappa == 0.0:
                if np.max(np.abs(data)) > limit:
                    raise DomainError("kappa = 0 modes are not supported")
                continue
            if not np.any(data):
                continue
            plan = cache.plan(order, dht_size, radial.radius)
            parts = []
            for part in (data.real, data.imag):
                if not np.any(part):
                    parts.append(np.zeros(radial.nodes.size))
                    continue
                coeffs = dht_apply(plan, interpolate(radial, part, plan.nodes))
                parts.append(solve_mode(order, float(kappa), plan, coeffs, radial.nodes).values)
            out[:, jn, jk] = parts[0] + 1j * parts[1]
    return ModeSet(g, out)


def solve_poisson(grid: CylGrid, f_samples, dht_size: int = 128, cache: PlanCache | None = None) -> np.ndarray:
    """Real solution ``u`` of ``lap u = f`` on the grid.

    Raises :class:`DomainError` when the ``z``-average of ``f`` exceeds
    ``KAPPA_ZERO_TOL * max|f|``; smaller ``kappa = 0`` content is dropped.
    """
    f = _check_field(grid, f_samples)
    if np.iscomplexobj(f):
        raise ValueError("field must be real")
    f = f.astype(float)
    if not np.all(np.isfinite(f)):
        raise ValueError("field contains NaN or Inf")
    scale = float(np.max(np.abs(f))) if f.size else 0.0
    if np.max(np.abs(f.mean(axis=2)), initial=0.0) > KAPPA_ZERO_TOL * scale:
        raise DomainError("input has kappa = 0 content (nonzero z-average); not supported")
    modes = decompose(grid, f)
    modes.values[:, :, grid.wavenumbers == 0.0] = 0.0
    u = resynthesize(solve_modes(modes, dht_size, cache))
    return np.ascontiguousarray(u.real)


def single_mode_field(grid: CylGrid, radial, n: int, k: int) -> np.ndarray:
    """``radial(r) cos(n theta) cos(2 pi k z / L)`` sampled on the grid."""
    r = grid.radial.nodes
    prof = np.asarray(radial(r), dtype=float)
    ang = np.cos(n * grid.theta)
    ax = np.cos(2.0 * math.pi * k * grid.z / grid.length_z)
    return prof[:, None, None] * ang[None, :, None] * ax[None, None, :]
