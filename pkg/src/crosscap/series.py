"""Truncated power-series (jet) arithmetic with explicit reliability tracking.

Series come in two coefficient fields: EXACT (arbitrary-precision rationals,
``fractions.Fraction``) and FLOAT (binary64).  Every series carries a
``reliable_order`` R: coefficients of degree <= R are guaranteed by the
computation that produced them, anything beyond is unknown.  All operations
propagate R by a conservative documented rule and never claim more.

The univariate variable is called x throughout; bivariate series live in
(u, v) and are indexed by (i, j) exponent pairs with a total-degree bound.

Square roots exist only in the FLOAT field; the EXACT field stays inside the
rationals so that degree/top-term extraction is bit-exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Union

#: Default absolute tolerance for treating a FLOAT coefficient as zero.
FLOAT_TOL = 1e-9


class Field(Enum):
    EXACT = "exact"
    FLOAT = "float"


Coeff = Union[Fraction, float]


class SeriesError(ValueError):
    """Raised on field mismatches, domain violations and reliability abuse."""


def _coerce(field: Field, value) -> Coeff:
    if field is Field.EXACT:
        if isinstance(value, float):
            raise SeriesError("EXACT series cannot absorb float coefficients")
        return Fraction(value)
    return float(value)


def _zero(field: Field) -> Coeff:
    return Fraction(0) if field is Field.EXACT else 0.0


def is_zero_coeff(field: Field, value: Coeff, tol: float | None = None) -> bool:
    """Zero test: exact in EXACT, absolute tolerance (default 1e-9) in FLOAT."""
    if field is Field.EXACT:
        return value == 0
    return abs(value) <= (FLOAT_TOL if tol is None else tol)


@dataclass(frozen=True)
class UniSeries:
    """A univariate series c_0 + c_1 x + ... + c_R x^R + O(x^{R+1}).

    ``coeffs`` always has exactly ``reliable_order + 1`` entries; the class
    never stores coefficients it cannot vouch for.
    """

    field: Field
    coeffs: tuple
    reliable_order: int

    def __post_init__(self):
        if self.reliable_order < 0:
            raise SeriesError("reliable_order must be >= 0")
        if len(self.coeffs) != self.reliable_order + 1:
            raise SeriesError("coefficient count must equal reliable_order + 1")

    # -- construction -----------------------------------------------------

    @staticmethod
    def make(field: Field, coeffs: Iterable, reliable_order: int | None = None) -> "UniSeries":
        cs = [_coerce(field, c) for c in coeffs]
        if reliable_order is None:
            reliable_order = len(cs) - 1
        if reliable_order < 0:
            raise SeriesError("reliable_order must be >= 0")
        if len(cs) < reliable_order + 1:
            cs += [_zero(field)] * (reliable_order + 1 - len(cs))
        return UniSeries(field, tuple(cs[: reliable_order + 1]), reliable_order)

    @staticmethod
    def zero(field: Field, reliable_order: int) -> "UniSeries":
        return UniSeries.make(field, [], reliable_order)

    @staticmethod
    def constant(field: Field, value, reliable_order: int) -> "UniSeries":
        return UniSeries.make(field, [value], reliable_order)

    @staticmethod
    def monomial(field: Field, value, degree: int, reliable_order: int) -> "UniSeries":
        if degree > reliable_order:
            raise SeriesError("monomial degree exceeds reliable order")
        cs = [_zero(field)] * (degree + 1)
        cs[degree] = _coerce(field, value)
        return UniSeries.make(field, cs, reliable_order)

    # -- inspection -------------------------------------------------------

    def coefficient(self, degree: int) -> Coeff:
        """Coefficient of x^degree; degrees beyond reliable_order are an error."""
        if degree < 0:
            raise SeriesError("negative degree")
        if degree > self.reliable_order:
            raise SeriesError(
                f"coefficient of degree {degree} requested, but series is only "
                f"reliable to order {self.reliable_order}"
            )
        return self.coeffs[degree]

    def truncate(self, reliable_order: int) -> "UniSeries":
        r = min(self.reliable_order, reliable_order)
        return UniSeries(self.field, self.coeffs[: r + 1], r)

    def to_float(self) -> "UniSeries":
        if self.field is Field.FLOAT:
            return self
        return UniSeries(Field.FLOAT, tuple(float(c) for c in self.coeffs), self.reliable_order)

    def evaluate(self, x) -> Coeff:
        """Horner evaluation of the reliable polynomial part at x."""
        x = _coerce(self.field, x)
        acc = _zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def max_abs_coeff(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    # -- ring operations ---------------------------------------------------

    def _check_field(self, other: "UniSeries") -> None:
        if self.field is not other.field:
            raise SeriesError("field mismatch between series operands")

    def __add__(self, other):
        if isinstance(other, UniSeries):
            self._check_field(other)
            r = min(self.reliable_order, other.reliable_order)
            cs = [self.coeffs[i] + other.coeffs[i] for i in range(r + 1)]
            return UniSeries(self.field, tuple(cs), r)
        c0 = _coerce(self.field, other)
        cs = list(self.coeffs)
        cs[0] = cs[0] + c0
        return UniSeries(self.field, tuple(cs), self.reliable_order)

    __radd__ = __add__

    def __neg__(self):
        return UniSeries(self.field, tuple(-c for c in self.coeffs), self.reliable_order)

    def __sub__(self, other):
        if isinstance(other, UniSeries):
            return self + (-other)
        return self + (-_coerce(self.field, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UniSeries):
            self._check_field(other)
            r = min(self.reliable_order, other.reliable_order)
            zero = _zero(self.field)
            cs = [zero] * (r + 1)
            for i, a in enumerate(self.coeffs):
                if i > r:
                    break
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs[: r + 1 - i]):
                    if b == 0:
                        continue
                    cs[i + j] += a * b
            return UniSeries(self.field, tuple(cs), r)
        c = _coerce(self.field, other)
        return UniSeries(self.field, tuple(a * c for a in self.coeffs), self.reliable_order)

    __rmul__ = __mul__

    def diff(self) -> "UniSeries":
        """d/dx; the output is reliable one order less."""
        if self.reliable_order < 1:
            raise SeriesError("cannot differentiate a series reliable only to order 0")
        cs = [i * self.coeffs[i] for i in range(1, self.reliable_order + 1)]
        return UniSeries(self.field, tuple(cs), self.reliable_order - 1)

    def shift(self, power: int) -> "UniSeries":
        """Multiply by the exact monomial x^power (power >= 0)."""
        if power < 0:
            raise SeriesError("shift power must be >= 0")
        if power == 0:
            return self
        zero = _zero(self.field)
        return UniSeries(
            self.field,
            tuple([zero] * power + list(self.coeffs)),
            self.reliable_order + power,
        )


@dataclass(frozen=True)
class Valuation:
    """Result of valuation extraction.

    ``order is None`` encodes ZERO_TO_ORDER: every reliable coefficient
    vanishes, which is *not* a proof that the series is zero.
    """

    order: int | None
    leading: Coeff | None
    reliable_order: int

    @property
    def is_zero_to_order(self) -> bool:
        return self.order is None


def valuation(a: UniSeries, tol: float | None = None) -> Valuation:
    """Smallest degree with a nonzero reliable coefficient, and that coefficient."""
    for i, c in enumerate(a.coeffs):
        if not is_zero_coeff(a.field, c, tol):
            return Valuation(i, c, a.reliable_order)
    return Valuation(None, None, a.reliable_order)


def factor_power(a: UniSeries, power: int, tol: float | None = None) -> UniSeries:
    """Divide by x^power given that val(a) >= power; reliability drops by power."""
    if power < 0:
        raise SeriesError("power must be >= 0")
    if power == 0:
        return a
    if a.reliable_order < power:
        raise SeriesError("series not reliable far enough to factor x^%d" % power)
    for c in a.coeffs[:power]:
        if not is_zero_coeff(a.field, c, tol):
            raise SeriesError(
                "valuation smaller than %d: cannot factor x^%d out of the series" % (power, power)
            )
    return UniSeries(a.field, a.coeffs[power:], a.reliable_order - power)


def reciprocal(a: UniSeries) -> UniSeries:
    """Multiplicative inverse: a * reciprocal(a) = 1 + O(x^{R+1}); needs a_0 != 0."""
    if is_zero_coeff(a.field, a.coeffs[0]):
        raise SeriesError("reciprocal requires a nonzero constant term")
    inv0 = (
        Fraction(1) / a.coeffs[0] if a.field is Field.EXACT else 1.0 / a.coeffs[0]
    )
    out = [inv0]
    for n in range(1, a.reliable_order + 1):
        acc = _zero(a.field)
        for k in range(1, n + 1):
            acc += a.coeffs[k] * out[n - k]
        out.append(-acc * inv0)
    return UniSeries(a.field, tuple(out), a.reliable_order)


def sqrt_series(a: UniSeries) -> UniSeries:
    """Square root with positive constant term.  FLOAT only: roots leave the rationals."""
    if a.field is not Field.FLOAT:
        raise SeriesError("sqrt_series is defined on the FLOAT field only")
    if a.coeffs[0] <= 0:
        raise SeriesError("sqrt_series requires a positive constant term")
    s0 = math.sqrt(a.coeffs[0])
    out = [s0]
    for n in range(1, a.reliable_order + 1):
        acc = 0.0
        for k in range(1, n):
            acc += out[k] * out[n - k]
        out.append((a.coeffs[n] - acc) / (2.0 * s0))
    return UniSeries(Field.FLOAT, tuple(out), a.reliable_order)


# ---------------------------------------------------------------------------
# Bivariate series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BiSeries:
    """A series in (u, v) truncated by total degree.

    ``coeffs`` maps (i, j) -> coefficient with i + j <= reliable_order; pairs
    that are absent are zero.  Reliability bookkeeping is by total degree,
    exactly as in the univariate case.
    """

    field: Field
    coeffs: Mapping
    reliable_order: int

    @staticmethod
    def make(field: Field, coeffs: Mapping, reliable_order: int) -> "BiSeries":
        if reliable_order < 0:
            raise SeriesError("reliable_order must be >= 0")
        clean = {}
        for (i, j), c in coeffs.items():
            if i < 0 or j < 0:
                raise SeriesError("negative exponent in BiSeries")
            if i + j > reliable_order:
                continue
            c = _coerce(field, c)
            if c != 0:
                clean[(i, j)] = c
        return BiSeries(field, clean, reliable_order)

    def coefficient(self, i: int, j: int) -> Coeff:
        if i + j > self.reliable_order:
            raise SeriesError("coefficient beyond reliable total degree requested")
        return self.coeffs.get((i, j), _zero(self.field))

    def _check_field(self, other: "BiSeries") -> None:
        if self.field is not other.field:
            raise SeriesError("field mismatch between series operands")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check_field(other)
        r = min(self.reliable_order, other.reliable_order)
        out = dict()
        for (i, j), c in self.coeffs.items():
            if i + j <= r:
                out[(i, j)] = c
        for (i, j), c in other.coeffs.items():
            if i + j <= r:
                out[(i, j)] = out.get((i, j), _zero(self.field)) + c
        return BiSeries.make(self.field, out, r)

    def __neg__(self) -> "BiSeries":
        return BiSeries(self.field, {k: -c for k, c in self.coeffs.items()}, self.reliable_order)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        self._check_field(other)
        r = min(self.reliable_order, other.reliable_order)
        out: dict = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i + j > r:
                    continue
                key = (i, j)
                out[key] = out.get(key, _zero(self.field)) + c1 * c2
        return BiSeries.make(self.field, out, r)

    def diff_u(self) -> "BiSeries":
        if self.reliable_order < 1:
            raise SeriesError("cannot differentiate a series reliable only to order 0")
        out = {}
        for (i, j), c in self.coeffs.items():
            if i >= 1:
                out[(i - 1, j)] = c * i
        return BiSeries.make(self.field, out, self.reliable_order - 1)

    def diff_v(self) -> "BiSeries":
        if self.reliable_order < 1:
            raise SeriesError("cannot differentiate a series reliable only to order 0")
        out = {}
        for (i, j), c in self.coeffs.items():
            if j >= 1:
                out[(i, j - 1)] = c * j
        return BiSeries.make(self.field, out, self.reliable_order - 1)

    def evaluate(self, u, v) -> Coeff:
        u = _coerce(self.field, u)
        v = _coerce(self.field, v)
        acc = _zero(self.field)
        for (i, j), c in self.coeffs.items():
            acc += c * u**i * v**j
        return acc

    def to_float(self) -> "BiSeries":
        if self.field is Field.FLOAT:
            return self
        return BiSeries(
            Field.FLOAT, {k: float(c) for k, c in self.coeffs.items()}, self.reliable_order
        )


def _valuation_lower_bound(a: UniSeries) -> int:
    v = valuation(a)
    return a.reliable_order + 1 if v.is_zero_to_order else v.order


def compose_bi(F: BiSeries, u: UniSeries, v: UniSeries) -> UniSeries:
    """Substitute u(x), v(x) into F(u, v); both curves must vanish at x = 0.

    Output reliability: discarding the O(u,v)^{R_F + 1} tail of F loses
    information only from x-degree m_min * (R_F + 1) on, where m_min is the
    smaller valuation of the two substituted series (their reliable orders
    cap the result as well).
    """
    if u.field is not v.field or u.field is not F.field:
        raise SeriesError("field mismatch between series operands")
    for s, name in ((u, "u"), (v, "v")):
        if not is_zero_coeff(s.field, s.coeffs[0]):
            raise SeriesError(f"compose_bi requires {name}(0) = 0")
    m_min = min(_valuation_lower_bound(u), _valuation_lower_bound(v))
    if m_min < 1:
        raise SeriesError("substituted series must have positive valuation")
    val_u = _valuation_lower_bound(u)
    val_v = _valuation_lower_bound(v)
    r_out = min(m_min * (F.reliable_order + 1) - 1, u.reliable_order, v.reliable_order)
    if r_out < 0:
        raise SeriesError("composition carries no reliable coefficients")
    u = u.truncate(r_out)
    v = v.truncate(r_out)
    zero = UniSeries.zero(F.field, r_out)
    one = UniSeries.constant(F.field, 1, r_out)

    # Cache powers of u and v up to the largest exponent that can contribute.
    u_pows = [one]
    v_pows = [one]

    def upow(i: int) -> UniSeries:
        while len(u_pows) <= i:
            u_pows.append(u_pows[-1] * u)
        return u_pows[i]

    def vpow(j: int) -> UniSeries:
        while len(v_pows) <= j:
            v_pows.append(v_pows[-1] * v)
        return v_pows[j]

    acc = zero
    for (i, j), c in sorted(F.coeffs.items()):
        if i * val_u + j * val_v > r_out:
            continue
        acc = acc + upow(i) * vpow(j) * c
    return acc


# ---------------------------------------------------------------------------
# 3-vectors of series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Vec3Series:
    """A vector-valued map (R, 0) -> R^3 stored componentwise."""

    x: UniSeries
    y: UniSeries
    z: UniSeries

    def __post_init__(self):
        if not (self.x.field is self.y.field is self.z.field):
            raise SeriesError("Vec3Series components must share one field")

    @property
    def field(self) -> Field:
        return self.x.field

    @property
    def reliable_order(self) -> int:
        return min(self.x.reliable_order, self.y.reliable_order, self.z.reliable_order)

    @property
    def components(self):
        return (self.x, self.y, self.z)

    @staticmethod
    def make(field: Field, cx, cy, cz, reliable_order: int) -> "Vec3Series":
        return Vec3Series(
            UniSeries.make(field, cx, reliable_order),
            UniSeries.make(field, cy, reliable_order),
            UniSeries.make(field, cz, reliable_order),
        )

    def truncate(self, r: int) -> "Vec3Series":
        return Vec3Series(self.x.truncate(r), self.y.truncate(r), self.z.truncate(r))

    def to_float(self) -> "Vec3Series":
        return Vec3Series(self.x.to_float(), self.y.to_float(), self.z.to_float())

    def __add__(self, other: "Vec3Series") -> "Vec3Series":
        return Vec3Series(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3Series") -> "Vec3Series":
        return Vec3Series(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3Series":
        return Vec3Series(-self.x, -self.y, -self.z)

    def scale(self, factor) -> "Vec3Series":
        """Multiply every component by a scalar or a UniSeries."""
        return Vec3Series(self.x * factor, self.y * factor, self.z * factor)

    def dot(self, other: "Vec3Series") -> UniSeries:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3Series") -> "Vec3Series":
        return Vec3Series(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm_sq(self) -> UniSeries:
        return self.dot(self)

    def diff(self) -> "Vec3Series":
        return Vec3Series(self.x.diff(), self.y.diff(), self.z.diff())

    def shift(self, power: int) -> "Vec3Series":
        return Vec3Series(self.x.shift(power), self.y.shift(power), self.z.shift(power))

    def evaluate(self, t):
        return (self.x.evaluate(t), self.y.evaluate(t), self.z.evaluate(t))

    def constant_vector(self):
        return (self.x.coeffs[0], self.y.coeffs[0], self.z.coeffs[0])

    def unit(self) -> "Vec3Series":
        """Normalized vector field (FLOAT only; needs a nonvanishing value at 0)."""
        inv_norm = reciprocal(sqrt_series(self.norm_sq()))
        return self.scale(inv_norm)


def vec3_valuation(a: Vec3Series, tol: float | None = None) -> Valuation:
    """Minimum valuation over the three components (ZERO_TO_ORDER if all vanish)."""
    best: Valuation | None = None
    for comp in a.components:
        v = valuation(comp, tol)
        if v.is_zero_to_order:
            continue
        if best is None or v.order < best.order:
            best = v
    if best is None:
        return Valuation(None, None, a.reliable_order)
    return Valuation(best.order, best.leading, a.reliable_order)


def vec3_factor_power(a: Vec3Series, power: int, tol: float | None = None) -> Vec3Series:
    return Vec3Series(
        factor_power(a.x, power, tol),
        factor_power(a.y, power, tol),
        factor_power(a.z, power, tol),
    )


@dataclass(frozen=True)
class Vec3BiSeries:
    """A vector of bivariate series: the ambient surface map (u, v) -> R^3."""

    x: BiSeries
    y: BiSeries
    z: BiSeries

    @property
    def field(self) -> Field:
        return self.x.field

    @property
    def reliable_order(self) -> int:
        return min(self.x.reliable_order, self.y.reliable_order, self.z.reliable_order)

    @property
    def components(self):
        return (self.x, self.y, self.z)

    def diff_u(self) -> "Vec3BiSeries":
        return Vec3BiSeries(self.x.diff_u(), self.y.diff_u(), self.z.diff_u())

    def diff_v(self) -> "Vec3BiSeries":
        return Vec3BiSeries(self.x.diff_v(), self.y.diff_v(), self.z.diff_v())

    def cross(self, other: "Vec3BiSeries") -> "Vec3BiSeries":
        return Vec3BiSeries(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def compose(self, u: UniSeries, v: UniSeries) -> Vec3Series:
        return Vec3Series(
            compose_bi(self.x, u, v),
            compose_bi(self.y, u, v),
            compose_bi(self.z, u, v),
        )

    def evaluate(self, u, v):
        return (self.x.evaluate(u, v), self.y.evaluate(u, v), self.z.evaluate(u, v))

    def to_float(self) -> "Vec3BiSeries":
        return Vec3BiSeries(self.x.to_float(), self.y.to_float(), self.z.to_float())
