"""End-to-end analysis of one surface + curve fixture.

Chains the model, frame, invariants and developable modules and collects
everything a report needs.  Pieces that only apply to particular curve
shapes (closed forms, the A/B/C/D block, geometric verdicts) are populated
when applicable and left as None with a reason otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .series import Field, UniSeries, Vec3Series
from .model import (
    CurveSpec,
    GeneralCurve,
    TangencyClassification,
    UmbrellaCoefficients,
    build_curve,
    build_umbrella,
    classify_tangency,
    default_series_order,
    image_curve,
    normal_field_raw,
)
from .frame import (
    CurvatureReport,
    DarbouxFrame,
    FrameError,
    FrameFactors,
    closed_form_reference,
    curvature_numerators,
    curvature_series,
    darboux_frame,
    divergence_report,
    frame_factors,
)
from .invariants import (
    ContourDeviation,
    InvariantError,
    ProjectionTangency,
    SelfIntersectionCurve,
    TopInvariants,
    contour_deviation,
    projection_tangency,
    self_intersection,
    top_invariants,
)
from .developable import (
    DevelopableData,
    DevelopableError,
    osculating_developable,
    osculating_surface,
)


@dataclass
class Analysis:
    coeffs: UmbrellaCoefficients
    spec: CurveSpec
    field: Field
    order: int
    W: object
    c1: UniSeries
    c2: UniSeries
    image: Vec3Series
    raw_normal: Vec3Series
    tangency: TangencyClassification
    factors: FrameFactors
    frame: DarbouxFrame
    kappas: tuple
    numerators: tuple
    oracle: CurvatureReport
    closed_form: CurvatureReport | None
    closed_form_reason: str | None
    invariants: TopInvariants | None
    invariants_reason: str | None
    projection: ProjectionTangency | None
    self_int: SelfIntersectionCurve | None
    contour: ContourDeviation | None
    developable: DevelopableData | None
    developable_reason: str | None


def analyze(
    coeffs: UmbrellaCoefficients,
    spec: CurveSpec,
    field: Field = Field.EXACT,
    order: int | None = None,
) -> Analysis:
    if order is None:
        order = default_series_order(spec, coeffs.degree)
    W = build_umbrella(coeffs)
    c1, c2 = build_curve(spec, order)
    tangency = classify_tangency(coeffs, c1, c2)
    if field is Field.FLOAT:
        c1w, c2w = c1.to_float(), c2.to_float()
        Ww = _umbrella_float(W)
    else:
        c1w, c2w, Ww = c1, c2, W
    img = image_curve(Ww, c1w, c2w)
    raw = normal_field_raw(Ww, c1w, c2w)
    factors = frame_factors(Ww, c1w, c2w)
    frame = darboux_frame(factors)
    kappas = curvature_series(frame)
    numerators = curvature_numerators(factors)
    oracle = divergence_report(numerators).with_kappa(kappas)

    closed = closed_reason = None
    if isinstance(spec, GeneralCurve):
        closed_reason = "closed forms apply only to the two curve families"
    else:
        closed = closed_form_reference(spec, coeffs)

    inv = inv_reason = None
    proj = selfint = contour = None
    try:
        inv = top_invariants(coeffs, spec)
    except InvariantError as exc:
        inv_reason = str(exc)
    if inv is not None:
        proj = projection_tangency(coeffs, spec)
        selfint = self_intersection(coeffs, spec)
        contour = contour_deviation(coeffs, spec, factors, frame)

    dev = dev_reason = None
    try:
        dev = osculating_developable(factors, frame, oracle)
    except (DevelopableError, FrameError) as exc:
        dev_reason = str(exc)

    return Analysis(
        coeffs=coeffs,
        spec=spec,
        field=field,
        order=order,
        W=W,
        c1=c1,
        c2=c2,
        image=img,
        raw_normal=raw,
        tangency=tangency,
        factors=factors,
        frame=frame,
        kappas=kappas,
        numerators=numerators,
        oracle=oracle,
        closed_form=closed,
        closed_form_reason=closed_reason,
        invariants=inv,
        invariants_reason=inv_reason,
        projection=proj,
        self_int=selfint,
        contour=contour,
        developable=dev,
        developable_reason=dev_reason,
    )


def _umbrella_float(W):
    from .series import Vec3BiSeries

    return Vec3BiSeries(W.x.to_float(), W.y.to_float(), W.z.to_float())


def osculating_ruled(analysis: Analysis):
    if analysis.developable is None:
        raise DevelopableError(analysis.developable_reason or "developable data missing")
    return osculating_surface(analysis.factors, analysis.developable)
