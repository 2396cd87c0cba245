from fractions import Fraction

import pytest

from wavefront.algebra import MPoly, parse_poly, to_text
from wavefront.maps import (
    InvalidType, build_map, eval_map, family_vars, generating_family, morin_crosscap_permutation,
    parse_point, parse_type, suspend,
)

ADE = ["A2", "A3", "A4", "A5", "D4+", "D4-", "D5+", "D5-", "D6+", "E6", "E7", "E8"]


@pytest.mark.parametrize("tag", ADE + ["M4,5,2", "M3,4,1", "C2", "C3"])
def test_tag_roundtrip(tag):
    assert parse_type(tag).tag == tag


@pytest.mark.parametrize("bad", ["A1", "D3+", "E9", "Q4", "M2,2,1", "M4,5,3", "C1", ""])
def test_invalid_types(bad):
    with pytest.raises(InvalidType):
        parse_type(bad)


def test_d_without_sign_defaults_to_plus():
    assert parse_type("D5").tag == "D5+"


@pytest.mark.parametrize("tag", ADE)
def test_image_lies_on_the_critical_set(tag):
    """F = F_u = F_v = 0 after substituting the map into the generating family."""
    t = parse_type(tag)
    spec = build_map(t)
    F = generating_family(t).F
    fv = family_vars(t)
    allv = tuple(dict.fromkeys(fv + list(spec.source_vars)))
    passthrough = {spec.target_vars[i] for i, _ in spec.passthrough}
    subs = {spec.target_vars[i]: c.embed(allv) for i, c in enumerate(spec.components)
            if spec.target_vars[i] not in passthrough}
    G = F.embed(allv)
    for expr in [G] + [G.derivative(v) for v in ("u", "v") if v in fv]:
        assert expr.substitute(subs).is_zero()


def test_a2_map_and_family():
    spec = build_map(parse_type("A2"))
    assert [to_text(c) for c in spec.components] == ["2*v^3", "-3*v^2"]
    assert eval_map(spec, [2]) == [16, -12]
    with pytest.raises(ValueError):
        eval_map(spec, [1, 2])
    assert to_text(generating_family(parse_type("A2")).F) == "v^3 + v*x1 + x0"


def test_h24_map():
    spec = build_map(parse_type("M4,5,2"))
    assert [to_text(c) for c in spec.components][3:] == ["x1*x4 + x2*x4^2", "x3*x4 + x4^3"]
    assert spec.target_vars == ("y1", "y2", "y3", "y4", "y5")


def test_crosscap_map():
    spec = build_map(parse_type("C2"))
    assert [to_text(c) for c in spec.components] == ["x1", "x1*x2", "x2^2"]


def test_suspension():
    spec = suspend(build_map(parse_type("A2")), 2, 4)
    assert spec.source_vars == ("v", "s1")
    assert spec.target_vars == ("x0", "x1", "t1", "z1")
    assert spec.zero_slots == (3,)
    assert eval_map(spec, [1, 5]) == [2, -3, 5, 0]
    with pytest.raises(InvalidType):
        suspend(build_map(parse_type("A2")), 3, 3)


def test_morin_crosscap_permutation_is_a_permutation():
    for m, n in ((3, 4), (4, 5), (5, 7)):
        src, tgt = morin_crosscap_permutation(m, n)
        assert sorted(src) == list(range(m))
        assert sorted(tgt) == list(range(n))


def test_parse_point():
    assert parse_point("1/4, 0,-2") == [Fraction(1, 4), 0, -2]
    with pytest.raises(ValueError):
        parse_point("1,,2")
