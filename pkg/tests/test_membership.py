import random
import zlib
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wavefront import membership as M
from wavefront.algebra import dense
from wavefront.maps import build_map, eval_map, parse_type

from conftest import rq

fractions = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 5))


def Q(*cs):
    return [Fraction(c) for c in cs]


def test_sturm_count():
    f = Q(-2, 0, 1)                                  # v^2 - 2
    assert M.sturm_count(f) == 2
    assert M.sturm_count(f, 0, 2) == 1
    assert M.sturm_count(f, -1, 1) == 0
    assert M.sturm_count(Q(1, 0, 1)) == 0
    with pytest.raises(ValueError):
        M.sturm_count([])


def test_isolation_reports_rationals_exactly():
    f = dense.mul(Q(-2, 0, 1), Q(-1, 3))             # (v^2 - 2)(3v - 1)
    iso = M.isolate_real_roots(f)
    assert iso.rational_roots == (Fraction(1, 3),)
    assert len(iso.intervals) == 2
    for lo, hi in iso.intervals:
        assert lo < hi and M.sturm_count(f, lo, hi) == 1


@given(st.lists(fractions, min_size=1, max_size=5, unique=True))
def test_isolation_of_planted_roots(roots):
    f = [Fraction(1)]
    for r in roots:
        f = dense.mul(f, [-r, Fraction(1)])
    f = dense.mul(f, Q(1, 0, 1))                      # no extra real roots
    iso = M.isolate_real_roots(f)
    assert sorted(iso.rational_roots) == sorted(roots)
    assert not iso.intervals


def test_common_real_roots():
    a = dense.mul(Q(-2, 0, 1), Q(1, 1))
    b = dense.mul(Q(-2, 0, 1), Q(5, 1))
    iso = M.common_real_roots(a, b)
    assert not iso.rational_roots and len(iso.intervals) == 2


def test_a3_member_with_witness():
    t = parse_type("A3")
    v = M.member(t, [3, -4, 0])
    assert v.is_member
    assert v.witness.rational() == (1, 0)
    assert M.verify_witness(build_map(t), [3, -4, 0], v.witness)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_a3_lower_set_branch(s):
    v = M.member(parse_type("A3"), [Fraction(s * s, 4), 0, s])
    assert v.status == M.ON_ZERO_SET
    assert M.theta_value(parse_type("A3"), [Fraction(s * s, 4), 0, s]) == 0


def test_crosscap_stalk():
    assert M.member(parse_type("C2"), [0, 0, -1]).status == M.ON_ZERO_SET
    assert M.member(parse_type("C3"), [0, 0, 0, 0, -1]).status == M.ON_ZERO_SET
    assert M.member(parse_type("C2"), [0, 0, 1]).is_member


def test_irrational_witness():
    # x2 = -2v^2 gives (v^4, 0, -2v^2); v = +-sqrt(2) are the preimages of (4, 0, -4)
    t = parse_type("A3")
    spec = build_map(t)
    x = [4, 0, -4]
    v = M.member(t, x)
    assert v.is_member and len(v.witnesses) == 2
    assert all(not w.root.is_rational for w in v.witnesses)
    assert all(M.verify_witness(spec, x, w) for w in v.witnesses)
    assert v.witness.rational() is None
    assert abs(abs(float(v.witness.approx()["v"])) - 2 ** 0.5) < 1e-9


def test_forged_witness_is_rejected():
    t = parse_type("A3")
    spec = build_map(t)
    good = M.member(t, [3, -4, 0]).witness
    assert not M.verify_witness(spec, [3, -4, 1], good)


def test_preimage_counts():
    assert M.preimage_count(parse_type("D4+"), [0, 0, -1, 0]) == 2
    assert M.preimage_count(parse_type("A2"), [0, 0]) == 1


def test_off_image_points():
    t = parse_type("A2")
    v = M.member(t, [1, 1])
    assert v.status == M.NOT_MEMBER
    assert M.theta_value(t, [1, 1]) == 31


def test_wrong_arity():
    with pytest.raises(ValueError):
        M.member(parse_type("A2"), [1, 2, 3])


@pytest.mark.parametrize("tag", ["A2", "A4", "D4-", "D5+", "E6", "E7", "E8", "C2", "M4,5,2"])
def test_round_trip(tag):
    t = parse_type(tag)
    spec = build_map(t)
    rng = random.Random(zlib.crc32(tag.encode()))
    for _ in range(15):
        x = eval_map(spec, [rq(rng) for _ in spec.source_vars])
        v = M.member(t, x)
        assert v.is_member, (x, v.status)
        assert M.verify_witness(spec, x, v.witness)


@given(st.lists(fractions, min_size=2, max_size=2))
def test_a3_round_trip_property(params):
    t = parse_type("A3")
    spec = build_map(t)
    x = eval_map(spec, params)
    v = M.member(t, x)
    assert v.is_member and M.verify_witness(spec, x, v.witness)


@given(st.lists(fractions, min_size=3, max_size=3))
def test_theta_nonzero_means_not_member(x):
    t = parse_type("A3")
    if M.theta_value(t, x) != 0:
        assert M.member(t, x).status == M.NOT_MEMBER


# parameter choices that force delta = 0 at the preimage
_DELTA_ZERO = {
    "E6": lambda p: dict(p, x4=-2 * p["v"] * p["x5"]),
    "E7": lambda p: dict(p, x5=-3 * p["v"] ** 2 - 2 * p["x6"] * p["v"]),
    "E8": lambda p: dict(p, x5=-3 * p["x7"] * p["v"] ** 2 - 2 * p["x6"] * p["v"]),
}


@pytest.mark.parametrize("tag", ["E6", "E7", "E8"])
def test_delta_zero_points(tag):
    t = parse_type(tag)
    spec = build_map(t)
    rng = random.Random(5)
    for _ in range(10):
        p = _DELTA_ZERO[tag]({n: rq(rng) for n in spec.source_vars})
        x = eval_map(spec, [p[n] for n in spec.source_vars])
        v = M.member(t, x)
        assert v.is_member and M.verify_witness(spec, x, v.witness)
        assert "delta=0" in v.detail["branches"]
