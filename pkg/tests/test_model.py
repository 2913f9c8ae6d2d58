import math
import random

import pytest

from crosscap import (
    FamilyMP,
    FamilyMPQ,
    Field,
    GeneralCurve,
    ModelError,
    UmbrellaCoefficients,
    UniSeries,
    build_curve,
    build_umbrella,
    classify_tangency,
    classify_tangency_spec,
    default_series_order,
    image_curve,
    normal_field_raw,
)
from conftest import random_family, random_surface


def bicoeff(W, comp, i, j):
    return W.components[comp].coefficient(i, j)


# ---------------------------------------------------------------------------
# surface construction
# ---------------------------------------------------------------------------


def test_standard_cross_cap():
    co = UmbrellaCoefficients(degree=4, a={(0, 2): 2}, b={})
    W = build_umbrella(co)
    assert bicoeff(W, 0, 1, 0) == 1
    assert bicoeff(W, 1, 1, 1) == 1
    assert bicoeff(W, 2, 0, 2) == 1  # a02 / 2! = 1
    assert all(c == 0 for c in W.y.coeffs.values() if c != W.y.coefficient(1, 1))


def test_surface_with_mixed_term():
    co = UmbrellaCoefficients(degree=5, a={(0, 2): 2, (1, 1): 1}, b={})
    W = build_umbrella(co)
    assert bicoeff(W, 2, 0, 2) == 1
    assert bicoeff(W, 2, 1, 1) == 1  # a11 / (1! 1!)


def test_cubic_second_component():
    co = UmbrellaCoefficients(degree=5, a={(0, 2): 2}, b={3: 6})
    W = build_umbrella(co)
    assert bicoeff(W, 1, 0, 3) == 1  # b3 / 3! = 1


def test_a02_required():
    with pytest.raises(ModelError, match="a_02"):
        UmbrellaCoefficients(degree=4, a={(0, 2): 0, (1, 1): 1}, b={})


def test_index_bounds():
    with pytest.raises(ModelError, match="outside"):
        UmbrellaCoefficients(degree=4, a={(0, 2): 1, (0, 5): 1}, b={})
    with pytest.raises(ModelError, match="outside"):
        UmbrellaCoefficients(degree=4, a={(0, 2): 1}, b={2: 1})


# ---------------------------------------------------------------------------
# curve construction
# ---------------------------------------------------------------------------


def test_parabolic_curve():
    c1, c2 = build_curve(FamilyMP(m=1, p=2, c=(1,)), 6)
    assert c1.coeffs == (0, 0, 1, 0, 0, 0, 0)
    assert c2.coeffs == (0, 1, 0, 0, 0, 0, 0)


def test_curve_with_linear_correction():
    c1, c2 = build_curve(FamilyMP(m=1, p=2, c=(1, -2)), 5)
    assert c1.coeffs == (0, 0, 1, -2, 0, 0)
    assert c2.coeffs == (0, 1, 0, 0, 0, 0)


def test_mpq_curve():
    c1, c2 = build_curve(FamilyMPQ(m=3, p=1, q=1, c=(1,)), 8)
    assert c1.coeffs[4] == 1
    assert sum(1 for c in c1.coeffs if c != 0) == 1
    assert c2.coeffs[3] == 1


def test_family_bounds():
    with pytest.raises(ModelError, match="q < m"):
        FamilyMPQ(m=2, p=1, q=2, c=(1,))
    with pytest.raises(ModelError, match="p >= 2"):
        FamilyMP(m=1, p=1, c=(1,))
    with pytest.raises(ModelError, match="c_0"):
        FamilyMP(m=1, p=2, c=(0, 1))


def test_general_curve_rank_two():
    ok = GeneralCurve(
        c1=UniSeries.make(Field.EXACT, [0, 1], 5),
        c2=UniSeries.make(Field.EXACT, [0, 1, 1], 5),
    )
    assert ok.c1.coeffs[1] == 1
    with pytest.raises(ModelError, match="rank-two"):
        GeneralCurve(
            c1=UniSeries.make(Field.EXACT, [0, 2, 4], 5),
            c2=UniSeries.make(Field.EXACT, [0, 1, 2], 5),
        )


def test_curve_valuations_per_family():
    rng = random.Random(9)
    for _ in range(20):
        spec = random_family(rng)
        c1, c2 = build_curve(spec, 40)
        from crosscap.series import valuation

        v1, v2 = valuation(c1), valuation(c2)
        assert v2.order == spec.m
        if isinstance(spec, FamilyMPQ):
            assert v1.order == spec.m * spec.p + spec.q
        else:
            assert v1.order == spec.m * spec.p


# ---------------------------------------------------------------------------
# composition with the surface
# ---------------------------------------------------------------------------


def test_image_curve_s1(s1):
    img = s1.image
    assert img.x.coeffs[:5] == (0, 0, 1, 0, 0)
    assert img.y.coeffs[:5] == (0, 0, 0, 1, 0)
    assert img.z.coeffs[:5] == (0, 0, 1, 1, 0)


def test_image_curve_cross_cap():
    co = UmbrellaCoefficients(degree=6, a={(0, 2): 2}, b={})
    W = build_umbrella(co)
    c1, c2 = build_curve(FamilyMP(m=1, p=2, c=(1,)), 6)
    img = image_curve(W, c1, c2)
    assert img.x.coeffs[:4] == (0, 0, 1, 0)
    assert img.y.coeffs[:4] == (0, 0, 0, 1)
    assert img.z.coeffs[:4] == (0, 0, 1, 0)


def test_image_curve_s3(s3):
    img = s3.image
    assert img.x.coefficient(4) == 1
    assert img.y.coefficient(7) == 1
    assert img.z.coefficient(6) == 1
    assert img.z.coefficient(5) == 0


def test_normal_field_s1(s1):
    raw = s1.raw_normal
    assert raw.x.coeffs[:4] == (0, 0, 2, 0)
    assert raw.y.coeffs[:4] == (0, -2, -1, 0)
    assert raw.z.coeffs[:4] == (0, 0, 1, 0)


def test_normal_field_cross_cap_slanted_curve():
    co = UmbrellaCoefficients(degree=6, a={(0, 2): 2}, b={})
    W = build_umbrella(co)
    g = GeneralCurve(
        c1=UniSeries.make(Field.EXACT, [0, 1], 12),
        c2=UniSeries.make(Field.EXACT, [0, 1, 1], 12),
    )
    c1, c2 = build_curve(g, 12)
    raw = normal_field_raw(W, c1, c2)
    # (2v^2, -2v, u) along (x, x + x^2)
    assert raw.x.coeffs[:4] == (0, 0, 2, 4)
    assert raw.y.coeffs[:4] == (0, -2, -2, 0)
    assert raw.z.coeffs[:4] == (0, 1, 0, 0)


def test_normality_identity_on_random_fixtures():
    # <raw normal, image'> = 0 as an exact series, 50 random fixtures
    rng = random.Random(42)
    for _ in range(50):
        co = random_surface(rng)
        spec = random_family(rng)
        W = build_umbrella(co)
        order = default_series_order(spec, co.degree)
        c1, c2 = build_curve(spec, order)
        img = image_curve(W, c1, c2)
        raw = normal_field_raw(W, c1, c2)
        pairing = raw.dot(img.diff())
        assert all(c == 0 for c in pairing.coeffs)


# ---------------------------------------------------------------------------
# tangency classification
# ---------------------------------------------------------------------------


def test_case3_limiting_tangent_s1(s1_coeffs, s1_spec):
    t = classify_tangency_spec(s1_coeffs, s1_spec)
    assert t.case == 3
    assert t.kind == "principal-plane"
    r = 1 / math.sqrt(2)
    assert max(abs(a - b) for a, b in zip(t.limiting_tangent, (r, 0.0, r))) < 1e-12


def test_case1_along_tangent_line():
    co = UmbrellaCoefficients(degree=5, a={(0, 2): 2}, b={})
    c1 = UniSeries.make(Field.EXACT, [0, 1], 10)
    c2 = UniSeries.make(Field.EXACT, [0, 1, 0, 1], 10)
    t = classify_tangency(co, c1, c2)
    assert t.case == 1
    assert t.limiting_tangent == (1.0, 0.0, 0.0)
    assert t.kind == "tangent-line"


def test_case4_along_principal_intersection():
    co = UmbrellaCoefficients(degree=5, a={(0, 2): 2}, b={})
    spec = FamilyMP(m=1, p=5, c=(1,))
    t = classify_tangency_spec(co, spec)
    assert t.case == 4
    assert t.limiting_tangent == (0.0, 0.0, 1.0)
    assert t.kind == "principal-intersection-line"


def test_case_mapping_per_family():
    rng = random.Random(4)
    for _ in range(30):
        co = random_surface(rng)
        spec = random_family(rng)
        t = classify_tangency_spec(co, spec)
        if isinstance(spec, FamilyMPQ):
            assert t.case == (2 if spec.p == 1 else 4)
        elif spec.p == 2:
            assert t.case == 3
        else:
            assert t.case == 4


def test_limiting_tangent_matches_frame(s1, s2, s3):
    # the tangency formula and the factored frame agree at 0
    for a in (s1, s2, s3):
        e0 = a.frame.e.constant_vector()
        lt = a.tangency.limiting_tangent
        assert max(abs(p - q) for p, q in zip(e0, lt)) < 1e-9


def test_fixed_directions():
    co = UmbrellaCoefficients(degree=4, a={(0, 2): 2}, b={})
    t = classify_tangency_spec(co, FamilyMP(m=1, p=2, c=(1,)))
    assert t.tangent_line_direction == (1.0, 0.0, 0.0)
    assert t.principal_intersection_direction == (0.0, 0.0, 1.0)
    assert t.null_vector == (0.0, 1.0)
    assert t.principal_plane_normal == (0.0, 1.0, 0.0)


def test_default_series_order_rule():
    assert default_series_order(FamilyMP(m=1, p=2, c=(1,)), 9) == 9
    assert default_series_order(FamilyMPQ(m=3, p=1, q=1, c=(1,)), 7) == 23
