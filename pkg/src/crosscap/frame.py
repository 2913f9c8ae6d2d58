"""Frame factorizations, curvatures, divergence degrees and reference tables.

The tangent and normal fields along the curve degenerate at the singular
point; both factor as a nonvanishing vector series times a power of x:

    (W o c_w)'(x)          = E_t(x) x^alpha,    E_t(0) != 0,
    (W_u x W_v)(c_w(x))    = N(x)  x^beta,      N(0)  != 0,
    (W o c_w)(x)           = E_c(x) x^alpha0,   E_c(0) != 0.

Normalizing E_t and N (FLOAT field) gives the extended frame {e, b, n} with
b = n x e, and the structure functions

    kappa_1 = <e', b>,   kappa_2 = <e', n>,   kappa_3 = <b', n>.

The exact path never takes square roots: the numerators

    khat_1 = <E_t', N x E_t>, khat_2 = <E_t', N>, khat_3 = <N' x E_t, N>

satisfy kappa_1 = khat_1 / (|E_t|^2 |N|), kappa_2 = khat_2 / (|E_t| |N|),
kappa_3 = khat_3 / (|N|^2 |E_t|), so valuations and leading coefficients of
the khat_i are exactly the divergence degrees alpha_i and the normalized
top-terms T_i of the curvatures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .series import (
    UniSeries,
    Vec3Series,
    factor_power,
    reciprocal,
    sqrt_series,
    valuation,
    vec3_factor_power,
    vec3_valuation,
)
from .model import (
    CurveSpec,
    FamilyMPQ,
    GeneralCurve,
    UmbrellaCoefficients,
    image_curve,
    normal_field_raw,
)


class FrameError(ValueError):
    """Degenerate factorization or an inapplicable closed form."""


@dataclass(frozen=True)
class FrameFactors:
    """The three factorizations with their exponents (EXACT field)."""

    alpha: int
    tangent: Vec3Series  # E_t
    beta: int
    normal: Vec3Series  # N
    alpha0: int
    curve: Vec3Series  # E_c


def frame_factors(W, c1: UniSeries, c2: UniSeries) -> FrameFactors:
    """Factor the derivative, the raw normal and the curve itself."""
    img = image_curve(W, c1, c2)
    alpha0, e_c = _factor(img, "curve")
    alpha, e_t = _factor(img.diff(), "tangent derivative")
    raw = normal_field_raw(W, c1, c2)
    beta, n = _factor(raw, "normal field")
    return FrameFactors(alpha=alpha, tangent=e_t, beta=beta, normal=n, alpha0=alpha0, curve=e_c)


def _factor(vec: Vec3Series, label: str):
    val = vec3_valuation(vec)
    if val.is_zero_to_order:
        raise FrameError(f"{label} vanishes to reliable order {val.reliable_order}")
    return val.order, vec3_factor_power(vec, val.order)


@dataclass(frozen=True)
class DarbouxFrame:
    """Orthonormal frame {e, b, n} along the curve (FLOAT field)."""

    e: Vec3Series
    b: Vec3Series
    n: Vec3Series


def darboux_frame(factors: FrameFactors) -> DarbouxFrame:
    e = factors.tangent.to_float().unit()
    n = factors.normal.to_float().unit()
    return DarbouxFrame(e=e, b=n.cross(e), n=n)


def curvature_series(frame: DarbouxFrame):
    """(kappa_1, kappa_2, kappa_3) as FLOAT series from the frame derivative."""
    de = frame.e.diff()
    db = frame.b.diff()
    return (de.dot(frame.b), de.dot(frame.n), db.dot(frame.n))


def curvature_numerators(factors: FrameFactors):
    """Square-root-free curvature numerators khat_i in the EXACT field."""
    e_t, n = factors.tangent, factors.normal
    de = e_t.diff()
    k1 = de.dot(n.cross(e_t))
    k2 = de.dot(n)
    k3 = n.diff().cross(e_t).dot(n)
    return (k1, k2, k3)


class ReportSource(Enum):
    ORACLE = "oracle"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class CurvatureReport:
    """Divergence degrees alpha_1..alpha_3 and normalized top-terms T_1..T_3.

    A degree of ``None`` means the corresponding numerator vanished to its
    reliable order (recorded in ``reliable_orders``); for the closed-form
    source it never happens.  ``advisory`` flags table entries whose constant
    is known to disagree with the series computation on some inputs; the
    comparison layer reports instead of failing on those.
    """

    source: ReportSource
    degrees: tuple
    tops: tuple
    reliable_orders: tuple
    advisory: tuple = (False, False, False)
    kappa: tuple | None = None  # FLOAT curvature series, attached on oracle reports

    def entry(self, i: int):
        return self.degrees[i], self.tops[i]

    def with_kappa(self, kappa) -> "CurvatureReport":
        return CurvatureReport(
            source=self.source,
            degrees=self.degrees,
            tops=self.tops,
            reliable_orders=self.reliable_orders,
            advisory=self.advisory,
            kappa=tuple(kappa),
        )


def divergence_report(numerators, tol: float | None = None) -> CurvatureReport:
    """Valuations and leading coefficients of the three curvature numerators."""
    degrees = []
    tops = []
    rel = []
    for k in numerators:
        v = valuation(k, tol)
        degrees.append(v.order)
        tops.append(v.leading)
        rel.append(v.reliable_order)
    return CurvatureReport(
        source=ReportSource.ORACLE,
        degrees=tuple(degrees),
        tops=tuple(tops),
        reliable_orders=tuple(rel),
    )


# ---------------------------------------------------------------------------
# Closed-form reference tables
# ---------------------------------------------------------------------------


def first_nonzero_index(c: tuple) -> int | None:
    """First n >= 1 with c_n != 0, or None when c is constant."""
    for n in range(1, len(c)):
        if c[n] != 0:
            return n
    return None


def closed_form_reference(spec: CurveSpec, coeffs: UmbrellaCoefficients) -> CurvatureReport:
    """Tabulated degrees and top-terms for the two curve families.

    The entries are transcribed literally from the reference tables.  Four
    constants are flagged advisory because the series computation (confirmed
    independently by pointwise finite differences) contradicts them on
    generic inputs; the degrees are reliable throughout:

    * family (mp+q), p = 1, kappa_3: tabulated -q(mp+q) a02 c0, computed
      -q(mp+q) a02 c0^2 (they coincide only at c0 = 1);
    * family (mp+q), 4 <= p, kappa_1: tabulated -m^2 a02^2 b3, computed
      -m^3 a02^2 b3 / 2 (they coincide only at m = 2);
    * family (mp), 5 <= p, kappa_1: tabulated +m^3 a02^2 b3 / 2, computed
      with the opposite sign;
    * family (mp), 3 <= p, kappa_2: tabulated -m^2 (p-1) a02 b3 / 2, computed
      without the (p-1) factor.
    """
    if isinstance(spec, GeneralCurve):
        raise FrameError("closed forms apply only to the two curve families")
    a02 = coeffs.a02
    a11 = coeffs.a_coeff(1, 1)
    a03 = coeffs.a_coeff(0, 3)
    b3 = coeffs.b_coeff(3)
    m = Fraction(spec.m)
    p = spec.p
    c0 = spec.c[0]
    advisory = [False, False, False]

    if isinstance(spec, FamilyMPQ):
        q = Fraction(spec.q)
        if p == 1:
            deg1, top1 = spec.m - spec.q - 1, m * (m * m - q * q) * a02 * a02 * c0
        elif p < 4:
            deg1 = spec.m * (p - 2) + spec.q - 1
            top1 = -m * (m * (p - 2) + q) * (m * p + q) * a02 * a02 * c0
        else:
            deg1, top1 = 2 * spec.m - 1, -m * m * a02 * a02 * b3
            advisory[0] = True
        deg2 = spec.m - 1
        top2 = -m * (m + 2 * q) * a02 * c0 if p == 1 else -m * m * a02 * b3 / 2
        if p == 1:
            deg3, top3 = spec.q - 1, -q * (m * p + q) * a02 * c0
            advisory[2] = True
        else:
            deg3, top3 = spec.m - 1, m * m * a02 ** 3
    else:
        n = first_nonzero_index(spec.c)
        cm = spec.c[spec.m] if spec.m < len(spec.c) else Fraction(0)
        if p == 2:
            if n is not None and n < spec.m:
                cn = spec.c[n]
                deg1, top1 = n - 1, -m * n * (2 * m + n) * a02 * a02 * cn
            elif n == spec.m:
                deg1 = spec.m - 1
                top1 = m ** 3 * a02 * (6 * a11 * c0 * c0 + a03 * c0 - 3 * a02 * cm)
            else:
                deg1, top1 = spec.m - 1, m ** 3 * a02 * c0 * (6 * a11 * c0 + a03)
        elif p == 3:
            deg1, top1 = spec.m - 1, -3 * m ** 3 * a02 * a02 * c0
        elif p == 4:
            deg1, top1 = 2 * spec.m - 1, -(m ** 3) * a02 * a02 * (8 * c0 + b3 / 2)
        else:
            deg1, top1 = 2 * spec.m - 1, m ** 3 * a02 * a02 * b3 / 2
            advisory[0] = True
        deg2 = spec.m - 1
        if p == 2:
            top2 = -m * m * a02 * (3 * c0 + b3 / 2)
        else:
            top2 = -m * m * (p - 1) * a02 * b3 / 2
            advisory[1] = True
        deg3 = spec.m - 1
        if p == 2:
            top3 = -m * m * a02 * (2 * c0 * c0 + b3 * c0 - a02 * a02)
        else:
            top3 = m * m * a02 ** 3

    degrees = (deg1, deg2, deg3)
    tops = (Fraction(top1), Fraction(top2), Fraction(top3))
    return CurvatureReport(
        source=ReportSource.CLOSED_FORM,
        degrees=degrees,
        tops=tops,
        reliable_orders=(-1, -1, -1),
        advisory=tuple(advisory),
    )


# ---------------------------------------------------------------------------
# FLOAT-side helpers shared with the developable computations
# ---------------------------------------------------------------------------


def norm_series(vec: Vec3Series) -> UniSeries:
    """|vec| as a FLOAT series (the value at 0 must be nonzero)."""
    return sqrt_series(vec.to_float().norm_sq())


def kappa_tilde_series(factors: FrameFactors, report: CurvatureReport):
    """Unit parts kappa~_i = kappa_i / x^{alpha_i} built from the exact numerators."""
    if any(d is None for d in report.degrees):
        raise FrameError("a curvature numerator vanishes to reliable order")
    k1, k2, k3 = curvature_numerators(factors)
    inv_e = reciprocal(norm_series(factors.tangent))
    inv_n = reciprocal(norm_series(factors.normal))
    inv_e2 = inv_e * inv_e
    inv_n2 = inv_n * inv_n
    a1, a2, a3 = report.degrees
    t1 = factor_power(k1, a1).to_float() * (inv_e2 * inv_n)
    t2 = factor_power(k2, a2).to_float() * (inv_e * inv_n)
    t3 = factor_power(k3, a3).to_float() * (inv_e * inv_n2)
    return (t1, t2, t3)


# ---------------------------------------------------------------------------
# Reconstruction of the regular-point curvatures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegularCurvatures:
    """Geodesic curvature, normal curvature and geodesic torsion at one x != 0."""

    kappa_g: float
    kappa_nu: float
    kappa_t: float


def _sgn_power(x: float, t: int) -> float:
    return -1.0 if (x < 0.0 and t % 2 == 1) else 1.0


def reconstruct_regular_curvatures(
    kappas, factors: FrameFactors, x: float
) -> RegularCurvatures:
    """Undo the divergent normalization at a regular parameter value.

    kappa_g = sgn(x^{alpha+beta}) kappa_1(x) / (|E_t(x)| x^alpha) and its two
    companions; the sign factors account for the frame flipping across 0 when
    the factored exponents are odd.
    """
    if x == 0.0:
        raise FrameError("regular curvatures are undefined at the singular point")
    k1, k2, k3 = (k.evaluate(x) for k in kappas)
    et = factors.tangent.to_float().evaluate(x)
    norm_et = math.sqrt(sum(c * c for c in et))
    denom = norm_et * x**factors.alpha
    sab = _sgn_power(x, factors.alpha + factors.beta)
    sb = _sgn_power(x, factors.beta)
    return RegularCurvatures(
        kappa_g=sab * k1 / denom,
        kappa_nu=sb * k2 / denom,
        kappa_t=k3 / denom,
    )


def direct_regular_curvatures(img: Vec3Series, raw_normal: Vec3Series, x: float) -> RegularCurvatures:
    """Independent regular-point pipeline straight from the unfactored series.

    Builds the frame pointwise from the curve derivative and the raw normal,
    then applies the textbook formulas; shares nothing with the factored path
    beyond the input series.
    """
    if x == 0.0:
        raise FrameError("regular curvatures are undefined at the singular point")
    imgf = img.to_float()
    d1 = imgf.diff()
    d2 = d1.diff()
    nraw = raw_normal.to_float()
    dnraw = nraw.diff()

    c1 = d1.evaluate(x)
    c2 = d2.evaluate(x)
    nv = nraw.evaluate(x)
    dnv = dnraw.evaluate(x)

    def norm(v):
        return math.sqrt(sum(c * c for c in v))

    def scale(v, s):
        return tuple(c * s for c in v)

    def dot(a, b):
        return sum(p * q for p, q in zip(a, b))

    def cross(a, b):
        return (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )

    speed = norm(c1)
    ebar = scale(c1, 1.0 / speed)
    nn = norm(nv)
    nbar = scale(nv, 1.0 / nn)
    bbar = cross(nbar, ebar)
    # d/dx of n_raw/|n_raw| by the quotient rule, evaluated numerically.
    nbar_dx = tuple(
        dnv[i] / nn - nv[i] * dot(nv, dnv) / nn**3 for i in range(3)
    )
    return RegularCurvatures(
        kappa_g=dot(c2, bbar) / speed**2,
        kappa_nu=dot(c2, nbar) / speed**2,
        kappa_t=-dot(nbar_dx, bbar) / speed,
    )
