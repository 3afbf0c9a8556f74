"""Scaled number structures and their value maps.

A structure of kind natural/rational/real/complex carries an internal factor
t and is represented at level s.  Base numbers are fixed set elements; what
changes between levels is the value map.  The same number with value v at
level t has value (t/s) v at level s, and only "0" keeps its value at every
level.  The arithmetic operations pick up compensating factors of t/s so the
structure axioms keep holding after relabeling:

    add(A, B)  = A + B
    mul(A, B)  = (s/t) A B
    identity   = (t/s) 1
    inv(A)     = (t/s)^2 A^(-1)
    conj(A)    = (w / conj(w)) conj(A),  w = t/s

The inverse factor is squared because mul(A, inv(A)) must return the scaled
identity; an alternative single-factor mode is provided (``inverse_mode=
"linear"``) purely so the axiom suite can demonstrate that it breaks the
identity and inverse axioms.  The order relation only exists for real kinds
and flips direction when t and s have opposite signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import (
    DivisionByZero,
    NotInBaseSet,
    NotRepresentable,
    OrderUndefined,
    ZeroScaling,
)
from .exact import (
    ComplexFraction,
    Scalar,
    as_complex,
    real_fraction,
    real_part,
    scalar_conj,
    scalar_is_real,
    scalar_is_zero,
    scalar_reciprocal,
)

KINDS = ("natural", "rational", "real", "complex")


@dataclass(frozen=True)
class ScalingFactor:
    """A nonzero exact scalar used as a structure factor or level."""

    value: Scalar

    def __post_init__(self) -> None:
        v = self.value
        if isinstance(v, int):
            v = Fraction(v)
            object.__setattr__(self, "value", v)
        if not isinstance(v, (Fraction, ComplexFraction)):
            raise TypeError(f"scaling factor must be exact, got {type(v).__name__}")
        if scalar_is_zero(v):
            raise ZeroScaling("scaling factor must be nonzero")

    @property
    def is_real(self) -> bool:
        return scalar_is_real(self.value)

    def __str__(self) -> str:
        return str(self.value)


FactorLike = Union[ScalingFactor, Scalar]


def _factor_value(f: FactorLike) -> Scalar:
    if isinstance(f, ScalingFactor):
        return f.value
    return ScalingFactor(f).value


@dataclass(frozen=True)
class BaseNumber:
    """An element of a base set; identical across structures sharing the set.

    The payload is the element's value at level 1: an exact nonnegative
    integer for naturals, an exact rational for rational/real kinds, and an
    exact rational pair for complex.
    """

    kind: str
    payload: Scalar

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        p = self.payload
        if self.kind == "complex":
            object.__setattr__(self, "payload", as_complex(p))
        else:
            if isinstance(p, ComplexFraction):
                if not p.is_real:
                    raise NotInBaseSet(f"{self.kind} payload must be real")
                p = p.re
            p = Fraction(p)
            if self.kind == "natural" and (p < 0 or p.denominator != 1):
                raise NotInBaseSet("natural payload must be a nonnegative integer")
            object.__setattr__(self, "payload", p)

    @staticmethod
    def natural(n: int) -> "BaseNumber":
        return BaseNumber("natural", Fraction(n))

    @staticmethod
    def rational(value: Union[str, int, Fraction]) -> "BaseNumber":
        if isinstance(value, str):
            num, _, den = value.partition("/")
            value = Fraction(int(num), int(den)) if den else Fraction(int(num))
        return BaseNumber("rational", Fraction(value))

    @staticmethod
    def real(value, digits: int = 50) -> "BaseNumber":
        return BaseNumber("real", real_fraction(value, digits))

    @staticmethod
    def complex(re, im=0) -> "BaseNumber":
        return BaseNumber("complex", ComplexFraction(Fraction(re), Fraction(im)))


@dataclass(frozen=True)
class ScaledStructure:
    """Structure of a given kind with internal factor t represented at level s."""

    kind: str
    factor_t: ScalingFactor
    level_s: ScalingFactor
    base_set_stride: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        t, s = self.factor_t.value, self.level_s.value
        if self.kind != "complex":
            if not (scalar_is_real(t) and scalar_is_real(s)):
                raise ZeroScaling(f"{self.kind} structures need real factors")
        if self.kind == "natural":
            for name, v in (("factor", t), ("level", s)):
                fv = v.re if isinstance(v, ComplexFraction) else Fraction(v)
                if fv <= 0 or fv.denominator != 1:
                    raise ZeroScaling(f"natural {name} must be a positive integer")
            stride = int(Fraction(t))
            if self.base_set_stride is None:
                object.__setattr__(self, "base_set_stride", stride)
            elif self.base_set_stride != stride:
                raise NotInBaseSet(
                    f"stride {self.base_set_stride} does not match factor {stride}"
                )
        elif self.base_set_stride is not None:
            raise NotInBaseSet("base_set_stride applies to naturals only")

    @property
    def ratio(self) -> Scalar:
        """t/s, the factor relating level-s values to this structure's values."""
        t, s = self.factor_t.value, self.level_s.value
        if isinstance(t, ComplexFraction) or isinstance(s, ComplexFraction):
            return as_complex(t) / as_complex(s)
        return t / s

    @property
    def order_defined(self) -> bool:
        return self.kind != "complex" and scalar_is_real(self.ratio)


def structure(kind: str, t: FactorLike, s: FactorLike,
              stride: Optional[int] = None) -> ScaledStructure:
    """Convenience constructor accepting raw exact scalars for t and s."""
    return ScaledStructure(kind, ScalingFactor(_factor_value(t)),
                           ScalingFactor(_factor_value(s)), stride)


@dataclass(frozen=True)
class ScaledValue:
    """A number value carried by a structure, expressed at its level s."""

    structure: ScaledStructure
    value: Scalar


def value_of(a: BaseNumber, s: FactorLike) -> ScaledValue:
    """Value of base number ``a`` in the structure with factor s (own level).

    Naturals: the member "m*s" of the stride-s base set has value m.  Other
    kinds: val_s(a) = payload / s.
    """
    sv = _factor_value(s)
    st = structure(a.kind, sv, sv)
    if a.kind == "natural":
        stride = Fraction(sv)
        q = Fraction(a.payload) / stride
        if q.denominator != 1:
            raise NotInBaseSet(
                f"{a.payload} is not a multiple of the stride {stride}"
            )
        return ScaledValue(st, Fraction(q))
    if a.kind == "complex":
        return ScaledValue(st, as_complex(a.payload) / as_complex(sv))
    return ScaledValue(st, Fraction(a.payload) / Fraction(sv))


def number_of(v: Union[ScaledValue, Scalar], s: FactorLike,
              kind: Optional[str] = None) -> BaseNumber:
    """Base number whose value at factor s is ``v`` (inverse of value_of)."""
    if isinstance(v, ScaledValue):
        kind = kind or v.structure.kind
        raw = v.value
    else:
        if kind is None:
            raise TypeError("kind required when passing a raw scalar")
        raw = v
    sv = _factor_value(s)
    if kind == "complex":
        payload: Scalar = as_complex(raw) * as_complex(sv)
        return BaseNumber(kind, payload)
    if isinstance(raw, ComplexFraction):
        if not raw.is_real:
            raise NotRepresentable(f"{kind} value must be real")
        raw = raw.re
    raw = Fraction(raw)
    if kind == "natural" and (raw < 0 or raw.denominator != 1):
        raise NotRepresentable(
            f"value {raw} has no preimage in the stride-{sv} base set"
        )
    return BaseNumber(kind, raw * Fraction(sv))


def relabel(v: Union[ScaledValue, Scalar], t: FactorLike, s: FactorLike,
            kind: str = "rational") -> ScaledValue:
    """Re-express a level-t value at level s: v -> (t/s) v.

    Composing relabel(t -> s') with relabel(s' -> s) equals the direct map,
    and relabel(v, t, t) is the identity.
    """
    tv, sv = _factor_value(t), _factor_value(s)
    if isinstance(v, ScaledValue):
        kind = v.structure.kind
        if v.structure.level_s.value != tv:
            raise NotRepresentable(
                f"value lives at level {v.structure.level_s}, not {tv}"
            )
        raw = v.value
    else:
        raw = v
    if isinstance(tv, ComplexFraction) or isinstance(sv, ComplexFraction) \
            or isinstance(raw, ComplexFraction):
        out: Scalar = as_complex(tv) / as_complex(sv) * as_complex(raw)
    else:
        out = tv / sv * Fraction(raw)
    return ScaledValue(structure(kind, sv, sv), out)


def group_action(t: FactorLike, level: FactorLike) -> ScalingFactor:
    """Action of the scaling group on levels: t sends level c to t*c.

    The group is abelian; acting by t then u equals acting by u*t, and
    acting by the reciprocal of a level maps that level to 1.
    """
    tv, cv = _factor_value(t), _factor_value(level)
    if isinstance(tv, ComplexFraction) or isinstance(cv, ComplexFraction):
        return ScalingFactor(as_complex(tv) * as_complex(cv))
    return ScalingFactor(Fraction(tv) * Fraction(cv))


@dataclass(frozen=True)
class ScaledOps:
    """Operation table of a scaled structure, acting on level-s values."""

    structure: ScaledStructure
    add: Callable[[Scalar, Scalar], Scalar]
    mul: Callable[[Scalar, Scalar], Scalar]
    neg: Callable[[Scalar], Scalar]
    identity: Scalar
    zero: Scalar
    inv: Optional[Callable[[Scalar], Scalar]] = None
    conj: Optional[Callable[[Scalar], Scalar]] = None
    lt: Optional[Callable[[Scalar, Scalar], bool]] = None


def scaled_ops(st: ScaledStructure, inverse_mode: str = "axiom") -> ScaledOps:
    """Build the operation table for ``st``.

    ``inverse_mode="axiom"`` applies the (t/s)^2 inverse factor required by
    mul(A, inv(A)) = identity.  ``inverse_mode="linear"`` applies a single
    t/s factor, matching the other unary constants but breaking the inverse
    axiom whenever t != s; it exists to be exercised by the axiom suite.
    """
    if inverse_mode not in ("axiom", "linear"):
        raise ValueError(f"unknown inverse_mode {inverse_mode!r}")
    w: Scalar = st.ratio
    if st.kind == "complex":
        w = as_complex(w)
    mul_factor = scalar_reciprocal(w)  # s/t
    inv_factor = w * w if inverse_mode == "axiom" else w

    def add(a: Scalar, b: Scalar) -> Scalar:
        return a + b

    def mul(a: Scalar, b: Scalar) -> Scalar:
        return mul_factor * a * b

    def neg(a: Scalar) -> Scalar:
        return -a

    inv: Optional[Callable[[Scalar], Scalar]] = None
    if st.kind != "natural":
        def inv(a: Scalar) -> Scalar:  # type: ignore[no-redef]
            if scalar_is_zero(a):
                raise DivisionByZero("scaled inverse of zero")
            return inv_factor * scalar_reciprocal(a)

    conj: Optional[Callable[[Scalar], Scalar]] = None
    if st.kind == "complex":
        wc = as_complex(w)
        conj_factor = wc / wc.conjugate()

        def conj(a: Scalar) -> Scalar:  # type: ignore[no-redef]
            return conj_factor * as_complex(a).conjugate()

    lt: Optional[Callable[[Scalar, Scalar], bool]] = None
    if st.order_defined:
        reversed_order = real_part(w) < 0

        def lt(a: Scalar, b: Scalar) -> bool:  # type: ignore[no-redef]
            if not (scalar_is_real(a) and scalar_is_real(b)):
                raise OrderUndefined("order compares real values only")
            ar, br = real_part(a), real_part(b)
            return (ar > br) if reversed_order else (ar < br)
    else:
        def lt(a: Scalar, b: Scalar) -> bool:  # type: ignore[no-redef]
            raise OrderUndefined(
                f"no order on {st.kind} structure with ratio {st.ratio}"
            )

    return ScaledOps(
        structure=st,
        add=add,
        mul=mul,
        neg=neg,
        identity=w * 1,
        zero=w - w,
        inv=inv,
        conj=conj,
        lt=lt,
    )


@dataclass(frozen=True)
class ScaledVectorSpace:
    """Finite-dimensional vector space over a scaled scalar structure.

    Vector values transform between levels with the same t/s factor as
    scalar values.  Scalar multiplication therefore carries an s/t factor so
    the scaled identity scalar acts as the identity map; ``mode="linear"``
    applies the bare t/s factor instead (breaking that axiom) so tests can
    surface the difference.
    """

    dimension: int
    scalars: ScaledStructure
    mode: str = "axiom"

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.mode not in ("axiom", "linear"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.scalars.kind == "natural":
            raise ValueError("vector spaces need field scalars")

    def _check(self, v: Sequence[Scalar]) -> tuple:
        if len(v) != self.dimension:
            raise ValueError(f"expected {self.dimension} components")
        return tuple(v)

    def vadd(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
        u, v = self._check(u), self._check(v)
        return tuple(a + b for a, b in zip(u, v))

    def smul(self, c: Scalar, v: Sequence[Scalar]) -> tuple:
        v = self._check(v)
        w = self.scalars.ratio
        factor = scalar_reciprocal(w) if self.mode == "axiom" else w
        return tuple(factor * c * x for x in v)

    def norm_squared(self, v: Sequence[Scalar]) -> Scalar:
        """Scaled value of |v|^2: exact, avoids square roots.

        The level-s representation of the underlying |v|^2 is w * |s/t|^2 *
        sum |V_i|^2 with w = t/s; for a real positive ratio this collapses
        to sum V_i^2 / w.
        """
        v = self._check(v)
        w = self.scalars.ratio
        total: Scalar = Fraction(0)
        for x in v:
            if isinstance(x, ComplexFraction):
                total = total + (x.conjugate() * x).re
            else:
                total = total + x * x
        winv = scalar_reciprocal(w)
        scale = winv * scalar_conj(winv) * w
        return scale * total
