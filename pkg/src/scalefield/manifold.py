"""Flat manifolds with rectangular grids.

Dimension 3 carries the identity metric; dimension 4 carries the flat
diagonal metric (+1, -1, -1, -1).  Each axis has bounds and a grid spacing;
the spacing must tile the bounds exactly.  Points are float vectors, and all
point-taking APIs accept arrays of shape (..., dim).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from .errors import OutOfBounds

_NODE_TOL = 1e-9


@dataclass(frozen=True)
class Manifold:
    dimension: int
    bounds: Tuple[Tuple[float, float], ...]
    spacing: Tuple[float, ...]

    def __post_init__(self) -> None:
        if self.dimension not in (3, 4):
            raise ValueError("dimension must be 3 or 4")
        bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
        if len(bounds) != self.dimension:
            raise ValueError("one (lo, hi) pair per axis required")
        spacing = self.spacing
        if isinstance(spacing, (int, float)):
            spacing = (float(spacing),) * self.dimension
        else:
            spacing = tuple(float(h) for h in spacing)
            if len(spacing) == 1:
                spacing = spacing * self.dimension
        if len(spacing) != self.dimension:
            raise ValueError("one spacing per axis required")
        for (lo, hi), h in zip(bounds, spacing):
            if not lo < hi:
                raise ValueError(f"empty axis range [{lo}, {hi}]")
            if not h > 0:
                raise ValueError("spacing must be positive")
            n = (hi - lo) / h
            if abs(n - round(n)) > _NODE_TOL * max(1.0, n) or round(n) < 1:
                raise ValueError(
                    f"spacing {h} does not tile [{lo}, {hi}] into whole cells"
                )
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "spacing", spacing)

    @staticmethod
    def box(bounds: Sequence[Sequence[float]],
            nodes: Union[int, Sequence[int]]) -> "Manifold":
        """Build a manifold from bounds and node counts per axis."""
        dim = len(bounds)
        if isinstance(nodes, int):
            nodes = (nodes,) * dim
        spacing = tuple(
            (float(hi) - float(lo)) / (n - 1)
            for (lo, hi), n in zip(bounds, nodes)
        )
        return Manifold(dim, tuple((float(lo), float(hi)) for lo, hi in bounds),
                        spacing)

    @property
    def metric_diagonal(self) -> np.ndarray:
        if self.dimension == 3:
            return np.ones(3)
        return np.array([1.0, -1.0, -1.0, -1.0])

    @property
    def spatial_axes(self) -> Tuple[int, ...]:
        return (0, 1, 2) if self.dimension == 3 else (1, 2, 3)

    @property
    def grid_shape(self) -> Tuple[int, ...]:
        return tuple(
            int(round((hi - lo) / h)) + 1
            for (lo, hi), h in zip(self.bounds, self.spacing)
        )

    def axis_nodes(self, axis: int) -> np.ndarray:
        lo, hi = self.bounds[axis]
        return np.linspace(lo, hi, self.grid_shape[axis])

    def grid_points(self, axes: Iterable[int] | None = None) -> np.ndarray:
        """Mesh of grid nodes over ``axes`` (default all), shape (*counts, k)."""
        axes = tuple(axes) if axes is not None else tuple(range(self.dimension))
        mesh = np.meshgrid(*(self.axis_nodes(a) for a in axes), indexing="ij")
        return np.stack(mesh, axis=-1)

    def as_points(self, x) -> np.ndarray:
        pts = np.asarray(x, dtype=float)
        if pts.shape[-1:] != (self.dimension,):
            raise ValueError(
                f"points must have {self.dimension} components, got shape {pts.shape}"
            )
        return pts

    def contains(self, x) -> np.ndarray:
        pts = self.as_points(x)
        lo = np.array([b[0] for b in self.bounds])
        hi = np.array([b[1] for b in self.bounds])
        return np.all((pts >= lo) & (pts <= hi), axis=-1)

    def require_inside(self, x, what: str = "point") -> np.ndarray:
        pts = self.as_points(x)
        ok = self.contains(pts)
        if not np.all(ok):
            bad = pts if pts.ndim == 1 else pts[~ok][0]
            raise OutOfBounds(f"{what} {np.asarray(bad).tolist()} outside bounds")
        return pts

    def margin_inside(self, x, margin: float) -> np.ndarray:
        """True where every axis has ``margin`` of room to both bounds.

        A relative slack absorbs the last-ulp wobble of grid nodes built by
        linspace, so interior nodes always qualify at margin = spacing.
        """
        pts = self.as_points(x)
        lo = np.array([b[0] for b in self.bounds])
        hi = np.array([b[1] for b in self.bounds])
        m = margin - 1e-12 * (1.0 + abs(margin))
        return np.all((pts >= lo + m) & (pts <= hi - m), axis=-1)

    def node_index(self, x) -> Tuple[int, ...]:
        """Index of the grid node at ``x``; rejects points off the lattice."""
        pts = self.require_inside(x, "grid point")
        if pts.ndim != 1:
            raise ValueError("node_index takes a single point")
        idx = []
        for axis in range(self.dimension):
            lo, _ = self.bounds[axis]
            h = self.spacing[axis]
            k = round((pts[axis] - lo) / h)
            if abs(pts[axis] - (lo + k * h)) > _NODE_TOL * max(1.0, abs(pts[axis])):
                raise ValueError(f"{pts.tolist()} is not a grid node")
            idx.append(int(k))
        return tuple(idx)

    def interior_grid_points(self) -> np.ndarray:
        """All grid nodes with both neighbors available on every axis."""
        axes_nodes = [self.axis_nodes(a)[1:-1] for a in range(self.dimension)]
        mesh = np.meshgrid(*axes_nodes, indexing="ij")
        return np.stack(mesh, axis=-1).reshape(-1, self.dimension)
