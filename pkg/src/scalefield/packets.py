"""Wave packets on the spatial grid and their scaled representations.

A packet holds one complex amplitude per spatial node.  Localizing it at a
reference point x0 multiplies each amplitude by f(w)/f(x0).  The quotient is
evaluated as exp((theta(w)-theta(x0)) + i(phi(w)-phi(x0))): any overall level
c of the structure appears in numerator and denominator alike, so it drops
out before a single float is produced, and constant shifts of theta or phi
cancel to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import OutOfBounds
from .fields import Level, ScalingField
from .manifold import Manifold


@dataclass(frozen=True, eq=False)
class WavePacket:
    """Complex amplitudes over the spatial slice of a manifold grid.

    For a 4-dimensional manifold the slice sits at the fixed time coordinate
    `time_slice`; for 3 dimensions the slice is the whole grid and
    `time_slice` must stay None.
    """

    manifold: Manifold
    amplitudes: np.ndarray
    time_slice: Optional[float] = None

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=complex)
        m = self.manifold
        shape = tuple(m.grid_shape[a] for a in m.spatial_axes)
        if amp.shape != shape:
            raise ValueError(
                f"amplitudes shape {amp.shape} does not match the spatial "
                f"grid {shape}"
            )
        if m.dimension == 4:
            if self.time_slice is None:
                raise ValueError("a 4-dimensional packet needs a time_slice")
            t = float(self.time_slice)
            lo, hi = m.bounds[0]
            if not (lo <= t <= hi):
                raise OutOfBounds(f"time_slice {t} outside [{lo}, {hi}]")
            object.__setattr__(self, "time_slice", t)
        elif self.time_slice is not None:
            raise ValueError("time_slice only applies to 4-dimensional grids")
        total = float(np.sum(np.abs(amp) ** 2))
        if not np.isfinite(total) or total <= 0.0:
            raise ValueError("packet norm must be finite and positive")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def spatial_shape(self) -> Tuple[int, ...]:
        m = self.manifold
        return tuple(m.grid_shape[a] for a in m.spatial_axes)

    def points(self) -> np.ndarray:
        """Full-dimensional coordinates of every node in the slice."""
        mesh = spatial_mesh(self.manifold)
        if self.manifold.dimension == 3:
            return mesh
        t = np.full(mesh.shape[:-1] + (1,), self.time_slice)
        return np.concatenate([t, mesh], axis=-1)

    @property
    def cell_volume(self) -> float:
        m = self.manifold
        out = 1.0
        for a in m.spatial_axes:
            out *= m.spacing[a]
        return out


def packet_norm_squared(psi: WavePacket) -> float:
    """Riemann-sum norm: sum of |amplitude|^2 times the cell volume."""
    return float(np.sum(np.abs(psi.amplitudes) ** 2)) * psi.cell_volume


def spatial_mesh(manifold: Manifold) -> np.ndarray:
    """Spatial node coordinates, shape = spatial grid shape + (n_spatial,)."""
    axes = [manifold.axis_nodes(a) for a in manifold.spatial_axes]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)


def gaussian_packet(manifold: Manifold, center, width: float,
                    momentum=None, time_slice: Optional[float] = None,
                    ) -> WavePacket:
    """exp(-|w-c|^2 / (2 sigma^2)) exp(i k.(w-c)) sampled on the slice."""
    c = np.asarray(center, dtype=float)
    if c.shape != (len(manifold.spatial_axes),):
        raise ValueError("center must have one entry per spatial axis")
    d = spatial_mesh(manifold) - c
    amp = np.exp(-np.sum(d * d, axis=-1) / (2.0 * float(width) ** 2))
    amp = amp.astype(complex)
    if momentum is not None:
        k = np.asarray(momentum, dtype=float)
        amp = amp * np.exp(1j * np.sum(d * k, axis=-1))
    return WavePacket(manifold, amp, time_slice=time_slice)


def scale_wave_packet(psi: WavePacket, field: ScalingField, x0,
                      c=None) -> WavePacket:
    """Localize psi at x0: amplitude at w picks up f(w)/f(x0).

    The level argument is validated (zero is rejected) and then unused: the
    quotient c f(w) / (c f(x0)) is computed as the exponential of the
    exponent difference, so c cancels identically and the output bytes do
    not depend on it.
    """
    if c is not None and not isinstance(c, Level):
        c = Level(c)
    if psi.manifold != field.manifold:
        raise ValueError("packet and field live on different manifolds")
    x0 = field.manifold.require_inside(x0)
    pts = psi.points().reshape(-1, field.manifold.dimension)
    log = field.log_ratio(pts, x0[None, :])
    factor = np.exp(log).reshape(psi.spatial_shape)
    return WavePacket(psi.manifold, factor * psi.amplitudes,
                      time_slice=psi.time_slice)


def canonical_momentum_shift(p, field: ScalingField, x) -> np.ndarray:
    """p -> p + Gamma(x) + i Delta(x), componentwise."""
    gamma, delta = field.gamma_delta(x)
    return np.asarray(p, dtype=complex) + gamma + 1j * delta
