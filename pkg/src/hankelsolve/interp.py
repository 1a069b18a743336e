"""Block Chebyshev grid on ``[0, R]`` and barycentric interpolation.

Each of the ``N`` blocks carries ``P + 1`` Chebyshev points of the second
kind, ordered as ``cos(p pi / P)`` for ``p = 0..P`` (so descending within a
block); neighbouring blocks share their end points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specfun import DomainError

__all__ = ["BlockGrid", "block_grid", "interpolate"]


@dataclass(frozen=True)
class BlockGrid:
    block_count: int
    points_per_block: int
    boundaries: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def radius(self) -> float:
        return float(self.boundaries[-1])

    def block(self, k: int) -> np.ndarray:
        P = self.points_per_block
        return self.nodes[k * (P + 1):(k + 1) * (P + 1)]


def block_grid(N: int, P: int, R: float, boundaries=None) -> BlockGrid:
    """``N`` blocks of ``P + 1`` Chebyshev nodes on ``[0, R]``.

    Boundaries default to uniform spacing ``k R / N``; pass an increasing
    array of ``N + 1`` values from 0 to ``R`` for a graded mesh.
    """
    N, P, R = int(N), int(P), float(R)
    if N < 1 or P < 2 or not R > 0.0:
        raise DomainError("need N >= 1, P >= 2 and R > 0")
    if boundaries is None:
        edges = np.linspace(0.0, R, N + 1)
    else:
        edges = np.asarray(boundaries, dtype=float)
        if edges.shape != (N + 1,) or edges[0] != 0.0 or edges[-1] != R or np.any(np.diff(edges) <= 0):
            raise DomainError("boundaries must increase from 0 to R with N + 1 entries")
    p = np.arange(P + 1)
    cheb = np.cos(p * np.pi / P)
    # pin the end points so shared block edges are bitwise equal
    cheb[0], cheb[-1] = 1.0, -1.0
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * cheb[None, :])
    nodes[:, 0] = edges[1:]
    nodes[:, -1] = edges[:-1]
    weights = np.where(p % 2 == 0, 1.0, -1.0)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    for a in (edges, nodes, weights):
        a.setflags(write=False)
    return BlockGrid(N, P, edges, nodes.ravel(), weights)


def interpolate(grid: BlockGrid, samples, targets) -> np.ndarray:
    """Barycentric interpolation of block samples at ``targets`` in ``[0, R]``.

    A target on an interior block edge is taken from the block to its left.
    """
    P = grid.points_per_block
    samples = np.asarray(samples)
    if samples.shape[0] != grid.nodes.size:
        raise ValueError(f"expected {grid.nodes.size} samples, got {samples.shape[0]}")
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    if np.any(t < 0.0) or np.any(t > grid.radius):
        raise DomainError("interpolation targets must lie in [0, R]")
    block = np.clip(np.searchsorted(grid.boundaries, t, side="left") - 1, 0, grid.block_count - 1)
    idx = block[:, None] * (P + 1) + np.arange(P + 1)[None, :]
    x = grid.nodes[idx]
    y = samples[idx]
    diff = t[:, None] - x
    exact = diff == 0.0
    hit = exact.any(axis=1)
    diff[exact] = 1.0
    w = grid.weights / diff
    out = (w * y).sum(axis=1) / w.sum(axis=1)
    if hit.any():
        rows = np.nonzero(hit)[0]
        cols = exact[rows].argmax(axis=1)
        out[rows] = y[rows, cols]
    return out
