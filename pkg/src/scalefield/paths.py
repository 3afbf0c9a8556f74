"""Paths q(s), s in [0,1], and their plain and theta-weighted lengths.

The length integrand is |eta^{mm} dq_m dq_m|^{1/2} with eta the diagonal
metric of the manifold; the absolute value admits null tangents (they just
contribute zero).  The scaled variant weights the integrand by
exp(theta(q(s)) - theta(x_ref)), tying the whole number to one reference
point; change_reference moves that point by a pure exponent factor.

Quadrature is composite Simpson.  Paths advertise their smoothness breaks
via `breakpoints`, and the rule is applied piecewise between breaks, so a
polyline is integrated segment by segment (exactly, for constant speed)
while analytic paths keep the clean fourth-order error decay.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DegenerateParameterization
from .fields import ScalingField
from .manifold import Manifold


class Path:
    """Base parameterization: position(s) and velocity(s), vectorized."""

    def position(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def velocity(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def breakpoints(self) -> Tuple[float, ...]:
        return (0.0, 1.0)

    @property
    def endpoints(self) -> Tuple[np.ndarray, np.ndarray]:
        q = self.position(np.array([0.0, 1.0]))
        return q[0], q[1]


@dataclass(frozen=True, eq=False)
class SegmentPath(Path):
    """Straight line from start to end."""

    start: np.ndarray
    end: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", np.asarray(self.start, dtype=float))
        object.__setattr__(self, "end", np.asarray(self.end, dtype=float))
        if self.start.shape != self.end.shape or self.start.ndim != 1:
            raise ValueError("endpoints must be two points of equal dimension")

    def position(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return self.start + s[..., None] * (self.end - self.start)

    def velocity(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return np.broadcast_to(self.end - self.start,
                               s.shape + self.start.shape).copy()


@dataclass(frozen=True, eq=False)
class PolylinePath(Path):
    """Piecewise straight path through the given vertices, uniform in s."""

    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] < 2:
            raise ValueError("need at least two vertices of equal dimension")
        object.__setattr__(self, "vertices", v)

    @property
    def _segments(self) -> int:
        return self.vertices.shape[0] - 1

    def position(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        n = self._segments
        u = np.clip(s, 0.0, 1.0) * n
        idx = np.minimum(u.astype(int), n - 1)
        frac = u - idx
        a = self.vertices[idx]
        b = self.vertices[idx + 1]
        return a + frac[..., None] * (b - a)

    def velocity(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        n = self._segments
        u = np.clip(s, 0.0, 1.0) * n
        idx = np.minimum(u.astype(int), n - 1)
        return (self.vertices[idx + 1] - self.vertices[idx]) * n

    def breakpoints(self) -> Tuple[float, ...]:
        n = self._segments
        return tuple(k / n for k in range(n + 1))


@dataclass(frozen=True, eq=False)
class SplinePath(Path):
    """Cubic spline through uniformly spaced samples.

    End slopes are clamped when given (in d position / d s units); otherwise
    the spline is natural.  C2 everywhere, so it is treated as one smooth
    piece by the quadrature.
    """

    samples: np.ndarray
    start_velocity: Optional[np.ndarray] = None
    end_velocity: Optional[np.ndarray] = None
    _spline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self) -> None:
        pts = np.asarray(self.samples, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 2:
            raise ValueError("need at least two samples of equal dimension")
        object.__setattr__(self, "samples", pts)
        s = np.linspace(0.0, 1.0, pts.shape[0])
        if self.start_velocity is not None and self.end_velocity is not None:
            bc = ((1, np.asarray(self.start_velocity, dtype=float)),
                  (1, np.asarray(self.end_velocity, dtype=float)))
        elif self.start_velocity is None and self.end_velocity is None:
            bc = "natural"
        else:
            raise ValueError("give both end velocities or neither")
        object.__setattr__(self, "_spline", CubicSpline(s, pts, bc_type=bc))

    def position(self, s: np.ndarray) -> np.ndarray:
        return self._spline(np.asarray(s, dtype=float))

    def velocity(self, s: np.ndarray) -> np.ndarray:
        return self._spline(np.asarray(s, dtype=float), 1)


@dataclass(frozen=True, eq=False)
class AnalyticPath(Path):
    """Wraps closed-form position and velocity callables."""

    position_fn: Callable[[np.ndarray], np.ndarray]
    velocity_fn: Callable[[np.ndarray], np.ndarray]

    def position(self, s: np.ndarray) -> np.ndarray:
        return np.asarray(self.position_fn(np.asarray(s, dtype=float)))

    def velocity(self, s: np.ndarray) -> np.ndarray:
        return np.asarray(self.velocity_fn(np.asarray(s, dtype=float)))


@dataclass(frozen=True, eq=False)
class PerturbedPath(Path):
    """Base path plus endpoint-fixed sine bumps on selected axes.

    coefficients has shape (modes, len(axes)); mode k contributes
    coefficients[k] sin((k+1) pi s), which vanishes at both ends.
    """

    base: Path
    coefficients: np.ndarray
    axes: Tuple[int, ...]

    def __post_init__(self) -> None:
        c = np.atleast_2d(np.asarray(self.coefficients, dtype=float))
        if c.shape[1] != len(self.axes):
            raise ValueError("one coefficient column per perturbed axis")
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "axes", tuple(int(a) for a in self.axes))

    def position(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        q = np.array(self.base.position(s), dtype=float, copy=True)
        k = np.arange(1, self.coefficients.shape[0] + 1)
        bumps = np.sin(np.pi * s[..., None] * k) @ self.coefficients
        q[..., list(self.axes)] += bumps
        return q

    def velocity(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        v = np.array(self.base.velocity(s), dtype=float, copy=True)
        k = np.arange(1, self.coefficients.shape[0] + 1)
        dbumps = (np.cos(np.pi * s[..., None] * k) * (np.pi * k)) \
            @ self.coefficients
        v[..., list(self.axes)] += dbumps
        return v

    def breakpoints(self) -> Tuple[float, ...]:
        return self.base.breakpoints()


# -- quadrature --------------------------------------------------------------


def _piece_steps(breaks: Sequence[float], steps: int) -> list:
    """Split a total Simpson budget across pieces, even and at least 2 each."""
    out = []
    for a, b in zip(breaks, breaks[1:]):
        n = int(round(steps * (b - a)))
        n += n % 2
        out.append(max(2, n))
    return out

def _simpson_nodes(a: float, b: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    s = np.linspace(a, b, n + 1)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= (b - a) / (3.0 * n)
    return s, w


def _integrate(q: Path, m: Manifold, steps: int,
               weight: Optional[Callable[[np.ndarray], np.ndarray]] = None,
               ) -> float:
    if steps < 2:
        raise ValueError("need at least 2 quadrature steps")
    breaks = q.breakpoints()
    eta = m.metric_diagonal
    total = 0.0
    max_speed = 0.0
    for (a, b), n in zip(zip(breaks, breaks[1:]), _piece_steps(breaks, steps)):
        s, w = _simpson_nodes(a, b, n)
        v = q.velocity(s)
        g = np.sqrt(np.abs(np.sum(eta * v * v, axis=-1)))
        max_speed = max(max_speed, float(np.max(np.abs(v))))
        if weight is not None:
            g = g * weight(q.position(s))
        total += float(np.dot(w, g))
    if max_speed == 0.0:
        raise DegenerateParameterization("tangent vanishes along the path")
    return total


def local_path_length(q: Path, m: Manifold, steps: int = 1000) -> float:
    """Unweighted length, composite Simpson with `steps` intervals."""
    return _integrate(q, m, steps)


def scaled_path_length(q: Path, fieldref: ScalingField, x_ref,
                       steps: int = 1000) -> float:
    """Length with weight exp(theta(q(s)) - theta(x_ref))."""
    m = fieldref.manifold
    t0 = float(fieldref.theta_at(x_ref))

    def weight(pts: np.ndarray) -> np.ndarray:
        return np.exp(fieldref.theta_at(pts) - t0)

    return _integrate(q, m, steps, weight)


def change_reference(length: float, fieldref: ScalingField, frm, to) -> float:
    """Re-expresses a scaled length at another reference point."""
    t_from = float(fieldref.theta_at(frm))
    t_to = float(fieldref.theta_at(to))
    return length * float(np.exp(t_from - t_to))


# -- brute-force variational test --------------------------------------------

PERTURBATION_MODES = 5


@dataclass(frozen=True)
class VariationalReport:
    base_length: float
    perturbed_lengths: Tuple[float, ...]
    tolerance: float

    @property
    def fraction_not_shorter(self) -> float:
        wins = sum(1 for L in self.perturbed_lengths
                   if L >= self.base_length - self.tolerance)
        return wins / len(self.perturbed_lengths)

    @property
    def minimizes(self) -> bool:
        return self.fraction_not_shorter == 1.0


def variational_check(q_star: Path, fieldref: ScalingField,
                      perturbations: int = 100, amplitude: float = 1e-2,
                      seed: int = 0, steps: int = 2000,
                      axes: Optional[Sequence[int]] = None,
                      x_ref=None, tolerance: float = 1e-7,
                      ) -> VariationalReport:
    """Compare q_star's scaled length against random endpoint-fixed rivals.

    Rivals add the first PERTURBATION_MODES sine modes with uniform random
    coefficients of size `amplitude` on the chosen axes (the spatial axes
    when none are given).  A minimizing path beats every rival up to the
    quadrature tolerance.  The reference point (default: the path's start)
    rescales every length by the same factor, so the verdict ignores it.
    """
    if x_ref is None:
        x_ref = q_star.position(np.array(0.0))
    if axes is None:
        axes = fieldref.manifold.spatial_axes
    axes = tuple(int(a) for a in axes)
    rng = np.random.default_rng(seed)
    base = scaled_path_length(q_star, fieldref, x_ref, steps)
    lengths = []
    for _ in range(perturbations):
        coeff = amplitude * rng.uniform(-1.0, 1.0,
                                        size=(PERTURBATION_MODES, len(axes)))
        rival = PerturbedPath(q_star, coeff, axes)
        lengths.append(scaled_path_length(rival, fieldref, x_ref, steps))
    return VariationalReport(base, tuple(lengths), tolerance)
