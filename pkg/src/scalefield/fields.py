"""Scalar field families and the complex scaling field f = exp(theta + i phi).

Field specs evaluate on point arrays of shape (..., dim) and return values of
shape (...); analytic families also provide exact gradients of shape
(..., dim).  The scaling field bundles theta and phi over a manifold and
exposes the quantities everything downstream consumes: f itself, the real
and imaginary connection components (Gamma, Delta) = (grad theta, grad phi),
connection factors between points, and connection-modified derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Number
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .errors import BoundaryPoint, OutOfBounds, ScenarioValidationError, ZeroLevel
from .manifold import Manifold


class FieldSpec:
    """Interface shared by all scalar field families."""

    has_analytic_gradient = True

    def value(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def is_constant(self) -> bool:
        return False


@dataclass(frozen=True)
class ConstantField(FieldSpec):
    constant: float = 0.0

    def value(self, pts: np.ndarray) -> np.ndarray:
        return np.full(pts.shape[:-1], float(self.constant))

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        return np.zeros(pts.shape)

    @property
    def is_constant(self) -> bool:
        return True


@dataclass(frozen=True)
class LinearField(FieldSpec):
    """a . x + b"""

    coefficients: Tuple[float, ...]
    offset: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients",
                           tuple(float(c) for c in self.coefficients))

    def value(self, pts: np.ndarray) -> np.ndarray:
        return pts @ np.array(self.coefficients) + self.offset

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.array(self.coefficients), pts.shape).copy()

    @property
    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coefficients)


@dataclass(frozen=True)
class GaussianField(FieldSpec):
    """A exp(-|x - x0|^2 / (2 sigma^2)).

    When `axes` is given, the distance runs over those coordinates only and
    the gradient vanishes on the rest (e.g. a time-independent spatial bump).
    """

    amplitude: float
    center: Tuple[float, ...]
    width: float
    axes: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        if not self.width > 0:
            raise ValueError("width must be positive")
        if self.axes is not None:
            object.__setattr__(self, "axes", tuple(int(a) for a in self.axes))

    def _mask(self, dim: int) -> np.ndarray:
        if self.axes is None:
            return np.ones(dim)
        mask = np.zeros(dim)
        mask[list(self.axes)] = 1.0
        return mask

    def value(self, pts: np.ndarray) -> np.ndarray:
        d = (pts - np.array(self.center)) * self._mask(pts.shape[-1])
        return self.amplitude * np.exp(-np.sum(d * d, axis=-1)
                                       / (2.0 * self.width ** 2))

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        d = (pts - np.array(self.center)) * self._mask(pts.shape[-1])
        return self.value(pts)[..., None] * (-d / self.width ** 2)

    @property
    def is_constant(self) -> bool:
        return self.amplitude == 0


@dataclass(frozen=True)
class RadialPolynomial(FieldSpec):
    """g(|x|) with g a polynomial given by ascending coefficients."""

    coefficients: Tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients",
                           tuple(float(c) for c in self.coefficients))

    def value(self, pts: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(pts, axis=-1)
        return np.polynomial.polynomial.polyval(r, np.array(self.coefficients))

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(pts, axis=-1)
        coeffs = np.array(self.coefficients)
        dg = np.polynomial.polynomial.polyval(
            r, np.polynomial.polynomial.polyder(coeffs)) if len(coeffs) > 1 \
            else np.zeros_like(r)
        # radial direction is undefined at the origin; the symmetric limit is 0
        safe_r = np.where(r == 0, 1.0, r)
        scale = np.where(r == 0, 0.0, dg / safe_r)
        return scale[..., None] * pts

    @property
    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coefficients[1:])


@dataclass(frozen=True, eq=False)
class TabulatedField(FieldSpec):
    """Values sampled on the full manifold grid, interpolated multilinearly."""

    manifold: Manifold
    values: np.ndarray
    has_analytic_gradient = False

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != self.manifold.grid_shape:
            raise ScenarioValidationError(
                f"tabulated values shape {vals.shape} does not match grid "
                f"{self.manifold.grid_shape}"
            )
        if np.any(np.isnan(vals)):
            raise ScenarioValidationError("tabulated values contain NaN")
        object.__setattr__(self, "values", vals)
        interp = RegularGridInterpolator(
            tuple(self.manifold.axis_nodes(a)
                  for a in range(self.manifold.dimension)),
            vals, method="linear", bounds_error=False, fill_value=None,
        )
        object.__setattr__(self, "_interp", interp)

    def value(self, pts: np.ndarray) -> np.ndarray:
        return self._interp(pts)

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        raise ScenarioValidationError(
            "tabulated fields have no analytic gradient; use central differences"
        )


@dataclass(frozen=True)
class CombinationField(FieldSpec):
    """Linear combination sum_i c_i * spec_i."""

    terms: Tuple[Tuple[float, FieldSpec], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "terms", tuple((float(c), s) for c, s in self.terms))

    @property
    def has_analytic_gradient(self) -> bool:  # type: ignore[override]
        return all(s.has_analytic_gradient for _, s in self.terms)

    def value(self, pts: np.ndarray) -> np.ndarray:
        out = np.zeros(pts.shape[:-1])
        for c, s in self.terms:
            out = out + c * s.value(pts)
        return out

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        out = np.zeros(pts.shape)
        for c, s in self.terms:
            out = out + c * s.gradient(pts)
        return out

    @property
    def is_constant(self) -> bool:
        return all(c == 0 or s.is_constant for c, s in self.terms)


@dataclass(frozen=True)
class AxisDerivativeField(FieldSpec):
    """The scalar field x -> d(base)/dx_axis.

    With ``fd_step`` set, the derivative is a central difference of the base
    values; otherwise the base must provide an analytic gradient.  Used to
    carry gradient terms of gauge transforms as evaluable fields.
    """

    base: FieldSpec
    axis: int
    fd_step: Optional[float] = None
    has_analytic_gradient = False

    def value(self, pts: np.ndarray) -> np.ndarray:
        if self.fd_step is None:
            return self.base.gradient(pts)[..., self.axis]
        h = self.fd_step
        offset = np.zeros(pts.shape[-1])
        offset[self.axis] = h
        return (self.base.value(pts + offset)
                - self.base.value(pts - offset)) / (2.0 * h)

    def gradient(self, pts: np.ndarray) -> np.ndarray:
        raise ScenarioValidationError(
            "derivative fields have no analytic gradient; use central differences"
        )

    @property
    def is_constant(self) -> bool:
        return self.base.is_constant


@dataclass(frozen=True)
class Level:
    """A nonzero scale level attached to local structures."""

    value: complex = 1.0

    def __post_init__(self) -> None:
        if complex(self.value) == 0:
            raise ZeroLevel("level must be nonzero")


@dataclass(frozen=True, eq=False)
class FieldSample:
    """Complex samples of a field on the full manifold grid."""

    manifold: Manifold
    values: np.ndarray
    role: str = "scalar"

    def __post_init__(self) -> None:
        if self.role not in ("scalar", "vector_component"):
            raise ValueError(f"unknown role {self.role!r}")
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.manifold.grid_shape:
            raise ValueError(
                f"sample shape {vals.shape} does not match grid "
                f"{self.manifold.grid_shape}"
            )
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class ScalingField:
    """f(x) = exp(theta(x) + i phi(x)) over a manifold.

    ``gradient_mode`` selects analytic gradients or second-order central
    differences with step ``gradient_step`` (defaults to the smallest grid
    spacing).
    """

    manifold: Manifold
    theta: FieldSpec
    phi: FieldSpec = field(default_factory=ConstantField)
    gradient_mode: str = "analytic"
    gradient_step: Optional[float] = None

    def __post_init__(self) -> None:
        if self.gradient_mode not in ("analytic", "central"):
            raise ValueError(f"unknown gradient_mode {self.gradient_mode!r}")
        if self.gradient_mode == "analytic":
            for name, spec in (("theta", self.theta), ("phi", self.phi)):
                if not spec.has_analytic_gradient:
                    raise ScenarioValidationError(
                        f"{name} has no analytic gradient; "
                        "use central-difference mode"
                    )
        if self.gradient_step is None:
            object.__setattr__(self, "gradient_step", min(self.manifold.spacing))
        elif not self.gradient_step > 0:
            raise ValueError("gradient step must be positive")
        # probe once so malformed specs fail at construction, not mid-run
        center = np.array([(lo + hi) / 2.0 for lo, hi in self.manifold.bounds])
        self.theta.value(center[None, :])
        self.phi.value(center[None, :])

    # -- raw components ----------------------------------------------------

    def theta_at(self, x) -> np.ndarray:
        pts = self.manifold.require_inside(x)
        return np.asarray(self.theta.value(pts))

    def phi_at(self, x) -> np.ndarray:
        pts = self.manifold.require_inside(x)
        return np.asarray(self.phi.value(pts))

    def log_ratio(self, y, x) -> np.ndarray:
        """theta(y) - theta(x) + i (phi(y) - phi(x)), the exact log of f(y)/f(x)."""
        ty, tx = self.theta_at(y), self.theta_at(x)
        py, px = self.phi_at(y), self.phi_at(x)
        return (ty - tx) + 1j * (py - px)

    def _spec_gradient(self, spec: FieldSpec, pts: np.ndarray) -> np.ndarray:
        if self.gradient_mode == "analytic":
            return spec.gradient(pts)
        h = self.gradient_step
        if not np.all(self.manifold.margin_inside(pts, h)):
            raise BoundaryPoint(
                f"central differences need {h} of margin on every axis"
            )
        out = np.empty(pts.shape)
        for axis in range(self.manifold.dimension):
            offset = np.zeros(pts.shape[-1])
            offset[axis] = h
            out[..., axis] = (spec.value(pts + offset)
                              - spec.value(pts - offset)) / (2.0 * h)
        return out

    def gamma_delta(self, x) -> Tuple[np.ndarray, np.ndarray]:
        pts = self.manifold.require_inside(x)
        return (self._spec_gradient(self.theta, pts),
                self._spec_gradient(self.phi, pts))


def eval_f(fieldref: ScalingField, x) -> np.ndarray:
    """f(x) = exp(theta + i phi), vectorized over points."""
    pts = fieldref.manifold.require_inside(x)
    return np.exp(fieldref.theta.value(pts) + 1j * fieldref.phi.value(pts))


def gradients(fieldref: ScalingField, x) -> Tuple[np.ndarray, np.ndarray]:
    """(Gamma, Delta) = (grad theta, grad phi) at x."""
    return fieldref.gamma_delta(x)


def connection_factor(fieldref: ScalingField, y, x) -> np.ndarray:
    """f(y)/f(x), computed in exponent-difference form.

    The difference form makes the factor exactly 1 at y = x, keeps the
    cocycle identity tight, and cancels constant shifts of theta and phi to
    machine precision.
    """
    return np.exp(fieldref.log_ratio(y, x))


def structure_derivative(fieldref: ScalingField, x, mu: int) -> np.ndarray:
    """(d_mu f)/f = Gamma_mu + i Delta_mu, the coefficient a constant-number
    field picks up from the position dependence of the structures."""
    gamma, delta = fieldref.gamma_delta(x)
    return gamma[..., mu] + 1j * delta[..., mu]


def covariant_derivative(psi: FieldSample, fieldref: ScalingField, x,
                         mu: int) -> complex:
    """D_mu psi = d_mu psi + (Gamma_mu + i Delta_mu) psi at a grid node."""
    m = fieldref.manifold
    if psi.manifold != m:
        raise ValueError("sample and field live on different manifolds")
    idx = m.node_index(x)
    if idx[mu] == 0 or idx[mu] == m.grid_shape[mu] - 1:
        raise BoundaryPoint(f"axis {mu} stencil leaves the grid at {idx}")
    fwd = list(idx)
    bwd = list(idx)
    fwd[mu] += 1
    bwd[mu] -= 1
    h = m.spacing[mu]
    dpsi = (psi.values[tuple(fwd)] - psi.values[tuple(bwd)]) / (2.0 * h)
    pts = m.as_points(x)
    return dpsi + structure_derivative(fieldref, pts, mu) * psi.values[idx]
