"""Top-term invariants A, B, C, D and their geometric verdicts.

Everything here concerns curves of the shape (c(x) x^{2m}, x^m) with
c(x) = c_0 + c_m x^m + O(x^{m+1}), the family whose tangent leaves the
tangent line of the singularity.  The invariants

    A = 6 a11 c0^2 + a03 c0 - 3 a02 c_m
    B = 3 c0 + b3 / 2
    C = 2 c0^2 + b3 c0 - a02^2
    D = (a11 b3 - a03) c0 - 5 a02 c_m - b4 a02 / 3

control (in order) the projected limiting tangent, tangency to the surface's
self-intersection curve, the contour-line pairing, and the secondary normal
top-term once B vanishes.  The verdict operations compute the geometry from
series and cross-check it against the plugged invariant values; both sides
are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .series import (
    Field,
    UniSeries,
    Vec3Series,
    vec3_factor_power,
    vec3_valuation,
)
from .model import (
    CurveSpec,
    FamilyMP,
    UmbrellaCoefficients,
    build_curve,
    build_umbrella,
    default_series_order,
    image_curve,
)
from .frame import DarbouxFrame, FrameFactors


class InvariantError(ValueError):
    """Curve shape outside the (c, 2m) family or insufficient reliability."""


def c2m_shape(spec: CurveSpec):
    """Validate the (c(x) x^{2m}, x^m) shape and return (m, c0, c_m).

    Requires p = 2 and c_1 = ... = c_{m-1} = 0 so that c(x) = c0 + c_m x^m
    up to higher order; c_m itself may be zero.
    """
    if not isinstance(spec, FamilyMP) or spec.p != 2:
        raise InvariantError("curve is not of the (c(x) x^{2m}, x^m) shape")
    for j in range(1, spec.m):
        if j < len(spec.c) and spec.c[j] != 0:
            raise InvariantError(
                "curve is not of the (c(x) x^{2m}, x^m) shape: c_%d != 0" % j
            )
    cm = spec.c[spec.m] if spec.m < len(spec.c) else Fraction(0)
    return spec.m, spec.c[0], cm


@dataclass(frozen=True)
class TopInvariants:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction


def top_invariants(coeffs: UmbrellaCoefficients, spec: CurveSpec) -> TopInvariants:
    _, c0, cm = c2m_shape(spec)
    a02 = coeffs.a02
    a11 = coeffs.a_coeff(1, 1)
    a03 = coeffs.a_coeff(0, 3)
    b3 = coeffs.b_coeff(3)
    b4 = coeffs.b_coeff(4)
    return TopInvariants(
        A=6 * a11 * c0 * c0 + a03 * c0 - 3 * a02 * cm,
        B=3 * c0 + b3 / 2,
        C=2 * c0 * c0 + b3 * c0 - a02 * a02,
        D=(a11 * b3 - a03) * c0 - 5 * a02 * cm - b4 * a02 / 3,
    )


def expected_tops(inv: TopInvariants, m: int, a02: Fraction):
    """The curvature top-terms this family must produce: (m^3 a02 A, -m^2 a02 B, -m^2 a02 C)."""
    mf = Fraction(m)
    return (mf**3 * a02 * inv.A, -(mf**2) * a02 * inv.B, -(mf**2) * a02 * inv.C)


def secondary_normal_top(inv: TopInvariants, m: int):
    """Top-term of the normal structure function once B = 0: m^2 D at degree 2m-1."""
    return Fraction(m) ** 2 * inv.D


# ---------------------------------------------------------------------------
# Projection of the curve along its limiting tangent
# ---------------------------------------------------------------------------

PROJ_GENERIC = "generic"
PROJ_TANGENT_TO_N = "tangent_to_n"
PROJ_TANGENT_TO_B = "tangent_to_b"
PROJ_DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ProjectionTangency:
    """Leading behavior of the curve projected to the plane orthogonal to e(0).

    ``coeff_along_b``/``coeff_along_n`` are the exact x^{3m} coefficients of
    the pairings with the unnormalized frame directions (-a02, 0, 2c0) and
    (0, 1, 0); they equal A/3 and B/3.  The float attributes carry the same
    coefficients against the unit frame vectors b(0), n(0).
    """

    verdict: str
    coeff_along_b: Fraction
    coeff_along_n: Fraction
    unit_coeff_along_b: float
    unit_coeff_along_n: float


def projection_tangency(coeffs: UmbrellaCoefficients, spec: CurveSpec) -> ProjectionTangency:
    m, c0, _ = c2m_shape(spec)
    order = default_series_order(spec, coeffs.degree)
    if order < 3 * m:
        raise InvariantError("series order %d cannot resolve degree %d" % (order, 3 * m))
    W = build_umbrella(coeffs)
    c1, c2 = build_curve(spec, order)
    img = image_curve(W, c1, c2)
    a02 = coeffs.a02
    b_dir = Vec3Series.make(Field.EXACT, [-a02], [0], [2 * c0], img.reliable_order)
    pb = img.dot(b_dir)
    pn = img.y
    if pb.reliable_order < 3 * m or pn.reliable_order < 3 * m:
        raise InvariantError("series not reliable to degree %d" % (3 * m))
    # The projection along e(0) leaves the b/n pairings untouched; everything
    # below x^{3m} must cancel.
    for deg in range(3 * m):
        if pb.coefficient(deg) != 0 or pn.coefficient(deg) != 0:
            raise InvariantError("unexpected low-order term in the projected curve")
    cb = pb.coefficient(3 * m)
    cn = pn.coefficient(3 * m)
    inv = top_invariants(coeffs, spec)
    if cb * 3 != inv.A or cn * 3 != inv.B:
        raise InvariantError("projected coefficients disagree with the invariants")
    if cb == 0 and cn == 0:
        verdict = PROJ_DEGENERATE
    elif cb == 0:
        verdict = PROJ_TANGENT_TO_N
    elif cn == 0:
        verdict = PROJ_TANGENT_TO_B
    else:
        verdict = PROJ_GENERIC
    s = 1.0 if a02 > 0 else -1.0
    r = math.sqrt(float(4 * c0 * c0 + a02 * a02))
    return ProjectionTangency(
        verdict=verdict,
        coeff_along_b=cb,
        coeff_along_n=cn,
        unit_coeff_along_b=s * float(cb) / r,
        unit_coeff_along_n=-s * float(cn),
    )


# ---------------------------------------------------------------------------
# Self-intersection curve of the surface
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SelfIntersectionCurve:
    """Quadratic-order preimage of the surface's double-point curve.

    Normalized to d(x) = (d12 x^2, x + d22 x^2); the image is symmetric in
    x -> -x through order 3 by construction.
    """

    d11: Fraction
    d21: Fraction
    d12: Fraction
    d22: Fraction
    image: Vec3Series
    image_tangent_direction: tuple
    curve_tangent_direction: tuple | None
    tangent_to_curve: bool | None


def self_intersection(
    coeffs: UmbrellaCoefficients, spec: CurveSpec | None = None
) -> SelfIntersectionCurve:
    a02 = coeffs.a02
    a11 = coeffs.a_coeff(1, 1)
    a03 = coeffs.a_coeff(0, 3)
    b3 = coeffs.b_coeff(3)
    d12 = -b3 / 6
    d22 = (b3 * a11 - a03) / (6 * a02)
    order = coeffs.degree  # composition with a multiplicity-1 curve keeps degree k
    W = build_umbrella(coeffs)
    d1 = UniSeries.make(Field.EXACT, [0, 0, d12], order)
    d2 = UniSeries.make(Field.EXACT, [0, 1, d22], order)
    img = image_curve(W, d1, d2)
    for comp in img.components:
        for deg in range(1, min(4, comp.reliable_order + 1), 2):
            if comp.coefficient(deg) != 0:
                raise InvariantError("self-intersection image is not symmetric")
    dv = vec3_valuation(img.diff())
    lead_d = vec3_factor_power(img.diff(), dv.order).constant_vector()
    lead_c = None
    tangent = None
    if spec is not None:
        _, c0, _ = c2m_shape(spec)
        lead_c = (2 * c0, Fraction(0), a02)
        cr = _cross3(lead_d, lead_c)
        tangent = all(c == 0 for c in cr)
    return SelfIntersectionCurve(
        d11=Fraction(0),
        d21=Fraction(1),
        d12=d12,
        d22=d22,
        image=img,
        image_tangent_direction=lead_d,
        curve_tangent_direction=lead_c,
        tangent_to_curve=tangent,
    )


def _cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


# ---------------------------------------------------------------------------
# Contour-line pairing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContourDeviation:
    """x^m coefficient of <n(x), b(0)> and its exact counterpart.

    The exact coefficient pairs the factored normal with the unnormalized
    direction (-a02, 0, 2c0) and equals C; the float value carries the
    normalization sgn(a02) / (sqrt(4c0^2 + a02^2) |N(0)|).
    """

    coefficient: float
    exact_coefficient: Fraction
    vanishes: bool


def contour_deviation(
    coeffs: UmbrellaCoefficients,
    spec: CurveSpec,
    factors: FrameFactors,
    frame: DarbouxFrame,
    tol: float = 1e-9,
) -> ContourDeviation:
    m, c0, _ = c2m_shape(spec)
    a02 = coeffs.a02
    b_dir = Vec3Series.make(
        factors.normal.field, [-a02], [0], [2 * c0], factors.normal.reliable_order
    )
    exact_pairing = factors.normal.dot(b_dir)
    if exact_pairing.reliable_order < m:
        raise InvariantError("series not reliable to degree %d" % m)
    exact = exact_pairing.coefficient(m)

    n_unit = frame.n
    b0 = frame.b.constant_vector()
    b0_vec = Vec3Series.make(Field.FLOAT, [b0[0]], [b0[1]], [b0[2]], n_unit.reliable_order)
    pairing = n_unit.dot(b0_vec)
    coeff = pairing.coefficient(m)
    return ContourDeviation(
        coefficient=coeff, exact_coefficient=exact, vanishes=abs(coeff) <= tol
    )
