from fractions import Fraction

import pytest

from wavefront import factory
from wavefront.algebra import Homogeneous, MPoly, NotHomogeneous, parse_poly, to_text, weighted_degree
from wavefront.factory import Unsupported
from wavefront.golden import A3_THETA, THETA_24
from wavefront.maps import InvalidType, build_map, parse_type, suspend



def theta(tag):
    return factory.build_theta(parse_type(tag), with_S=False).theta


def test_a2_a3_theta():
    assert to_text(theta("A2")) == "27*x0^2 + 4*x1^3"
    assert theta("A3") == parse_poly(A3_THETA, ("x0", "x1", "x2"))


def test_a_char_system():
    cs = factory.char_system(parse_type("A3"))
    assert to_text(cs.A.to_mpoly(("v",) + cs.params)) == "v^4 + v^2*x2 + v*x1 + x0"
    assert cs.B == cs.A.derivative()


@pytest.mark.parametrize("k", range(4, 9))
@pytest.mark.parametrize("sign", [1, -1])
def test_d_closed_form(k, sign):
    t = parse_type(f"D{k}{'+' if sign > 0 else '-'}")
    assert factory.char_system(t).A == factory.d_type_A(k, sign)


@pytest.mark.parametrize("tag", ["A2", "A3", "A4", "A5", "D4+", "D4-", "D5+", "D5-", "D6+", "D6-"])
def test_theta_weighted_homogeneous(tag):
    t = parse_type(tag)
    h = weighted_degree(theta(tag), factory.type_weights(t))
    assert isinstance(h, Homogeneous)


@pytest.mark.parametrize("k", (6, 7, 8))
def test_gamma_data_reproduces_pair(k):
    t = parse_type(f"E{k}")
    cs = factory.char_system(t)
    gamma, delta = factory._gamma(t)
    alpha, beta = factory.appendixC_build(*gamma, delta)
    vv = ("v",) + cs.params
    assert alpha.embed(vv) == cs.A.to_mpoly(vv)
    assert beta.embed(vv) == cs.B.to_mpoly(vv)


@pytest.mark.parametrize("k", (6, 7, 8))
def test_r_matches_display(k):
    t = parse_type(f"E{k}")
    cs = factory.char_system(t)
    assert cs.r == parse_poly(factory._R_TEXT[k], cs.params)
    assert factory.recompute_r(t) == cs.r


@pytest.mark.parametrize("k,deg", [(6, 15), (7, 14), (8, 28)])
def test_r_weights(k, deg):
    cs = factory.char_system(parse_type(f"E{k}"))
    assert weighted_degree(cs.r, factory.WEIGHTS[k]) == Homogeneous(deg)


def test_printed_e7_weights_are_not_a_grading():
    cs = factory.char_system(parse_type("E7"))
    assert isinstance(weighted_degree(cs.r, factory.PRINTED_E7_WEIGHTS), NotHomogeneous)


def test_e6_theta():
    t = parse_type("E6")
    res = factory.build_theta(t)
    cs = factory.char_system(t)
    assert res.divided and res.theta * cs.r ** 2 == res.R
    w = factory.WEIGHTS[6]
    assert weighted_degree(res.R, w) == Homogeneous(102)
    assert weighted_degree(res.theta, w) == Homogeneous(72)
    d, lead = factory.leading_in(res.R, "x0")
    assert d == 6 and lead == (cs.r ** 2).scale(2 ** 20 * 3 ** 11)
    d, lead = factory.leading_in(res.S, "x0")
    assert d == 5 and lead == (MPoly.var(cs.params, "x5") ** 5).scale(-(2 ** 21) * 3 ** 9)


def test_e6_b0_shortcut():
    t = parse_type("E6")
    cs = factory.char_system(t)
    R0, S0 = factory.b0_leading_terms(t)
    assert factory.leading_in(R0, "x0") == (6, (cs.r ** 2).scale(2 ** 4 * 3 ** 7))
    assert factory.leading_in(S0, "x0") == (5, (MPoly.var(cs.params, "x5") ** 5).scale(-(2 ** 5) * 3 ** 5))


def test_e8_b0_and_delta():
    t = parse_type("E8")
    cs = factory.char_system(t)
    R0, S0 = factory.b0_leading_terms(t)
    p1, p2 = parse_poly(factory.P1_TEXT, cs.params), parse_poly(factory.P2_TEXT, cs.params)
    assert factory.leading_in(R0, "x0") == (8, (cs.r ** 2).scale(3 ** 10))
    assert factory.leading_in(S0, "x0") == (7, (p1 * p2).scale(-4 * 3 ** 8))
    ra, _ = factory.delta_resultants(t)
    assert ra == (cs.r ** 2).scale(9)


def test_e6_specialized_theta_agrees():
    t = parse_type("E6")
    full = factory.build_theta(t).theta
    pt = {"x1": 2, "x2": -1, "x3": Fraction(1, 2), "x4": 3, "x5": 1}
    assert factory.specialized_theta(t, pt, ("x0",)) == full.substitute(pt).embed(("x0",))


def test_morin_and_crosscap():
    names = ("y1", "y2", "y3", "y4", "y5")
    assert factory.morin_theta(parse_type("M4,5,2")) == parse_poly(THETA_24, names)
    assert factory.morin_S(parse_type("M4,5,2")) == parse_poly("y4*y2 + y1^2 + y2^2*y3", names)
    assert to_text(factory.morin_theta(parse_type("C2"), form="resultant")) == "-y1^2*y3 + y2^2"
    assert factory.morin_theta(parse_type("C2")) == parse_poly("(y2^2 - y1^2*y3)^2", ("y1", "y2", "y3"))
    with pytest.raises(Unsupported):
        factory.morin_theta(parse_type("C3"), form="resultant")


def test_char_system_rejects_morin():
    with pytest.raises(InvalidType):
        factory.char_system(parse_type("C2"))


def test_suspended_theta():
    spec = suspend(build_map(parse_type("A2")), 2, 4)
    th = factory.suspended_theta(theta("A2"), spec)
    assert th == parse_poly("(27*x0^2 + 4*x1^3)^2 + z1^2", spec.target_vars)


def test_clear_fraction():
    f = parse_poly("v^2 + x*v + 1", ("v", "x", "y"))
    num, den = parse_poly("x", ("v", "x", "y")), parse_poly("y", ("v", "x", "y"))
    assert factory.clear_fraction(f, "v", num, den) == parse_poly("x^2 + x^2*y + y^2", ("v", "x", "y"))


def test_e6_printed_k_forms():
    aux = factory.e6_aux()
    up = ("u",) + aux.k0.params
    assert aux.k0.to_mpoly(up) == parse_poly(factory.K0_PRINTED, up)
    assert aux.k1.to_mpoly(up) == parse_poly(factory.K1_PRINTED, up)
