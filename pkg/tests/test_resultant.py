import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from wavefront.algebra import (
    MPoly, UPoly, parse_poly, psc, resultant, subresultant_chain, sylvester, bareiss_det, to_text,
    up_from_mpoly,
)
from wavefront.algebra import dense
from wavefront.algebra.resultant import ResultantError

from conftest import rand_upoly, upoly


def scalar_upoly(values):
    return UPoly.from_scalars("v", values)


def res_value(a, b, method="auto"):
    return resultant(scalar_upoly(a), scalar_upoly(b), method).constant_value()


def root_product(a, b):
    """Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a."""
    roots = mpmath.polyroots(list(reversed(a)), maxsteps=200, extraprec=200)
    val = mpmath.mpf(a[-1]) ** (len(b) - 1)
    for r in roots:
        val *= mpmath.polyval(list(reversed(b)), r)
    return val


def test_crosscap_pair():
    names = ("x", "y", "z")
    a = up_from_mpoly(parse_poly("x*v - y", ("v",) + names), "v", names)
    b = up_from_mpoly(parse_poly("v^2 - z", ("v",) + names), "v", names)
    assert to_text(resultant(a, b)) == "-x^2*z + y^2"
    assert psc(a, b, 1) == parse_poly("x", names)


def test_sylvester_layout():
    a, b = scalar_upoly([1, 2, 3]), scalar_upoly([4, 5])
    rows = [[c.constant_value() for c in row] for row in sylvester(a, b)]
    # deg(b) = 1 row of a on top, then deg(a) = 2 rows of b
    assert rows == [[3, 2, 1], [5, 4, 0], [0, 5, 4]]


def test_root_product_oracle_fifty_pairs():
    rng = random.Random(7)
    mpmath.mp.dps = 60
    for _ in range(50):
        da, db = rng.randint(1, 6), rng.randint(1, 6)
        a = [rng.randint(-9, 9) for _ in range(da)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        b = [rng.randint(-9, 9) for _ in range(db)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        exact = res_value(a, b)
        approx = root_product(a, b)
        scale = max(1, abs(exact))
        assert abs(mpmath.mpf(exact) - approx) / scale < 1e-6, (a, b)


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6),
       st.lists(st.integers(-6, 6), min_size=2, max_size=6))
def test_bareiss_and_prs_agree(a, b):
    if a[-1] == 0 or b[-1] == 0:
        return
    assert res_value(a, b, "bareiss") == res_value(a, b, "prs") == dense.resultant(a, b)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=5),
       st.lists(st.integers(-5, 5), min_size=2, max_size=5))
def test_vanishing_iff_common_factor(a, b):
    if a[-1] == 0 or b[-1] == 0:
        return
    common = len(dense.gcd([Fraction(c) for c in a], [Fraction(c) for c in b])) > 1
    assert (res_value(a, b) == 0) == common


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=4),
       st.lists(st.integers(-4, 4), min_size=2, max_size=4),
       st.lists(st.integers(-4, 4), min_size=2, max_size=4))
def test_planted_gcd_chain(g, f1, f2):
    """The chain vanishes below deg gcd and is nonzero at deg gcd."""
    if g[-1] == 0 or f1[-1] == 0 or f2[-1] == 0:
        return
    a, b = dense.mul(g, f1), dense.mul(g, f2)
    d = len(dense.gcd([Fraction(c) for c in a], [Fraction(c) for c in b])) - 1
    assert d >= len(g) - 1
    chain = [c.constant_value() for c in subresultant_chain(scalar_upoly(a), scalar_upoly(b))]
    assert all(c == 0 for c in chain[:d])
    assert chain[d] != 0


def test_planted_gcd_multivariate():
    rng = random.Random(3)
    for _ in range(5):
        g = rand_upoly(rng, 1)
        f1, f2 = rand_upoly(rng, 2), rand_upoly(rng, 2)
        a = up_from_mpoly(g.to_mpoly() * f1.to_mpoly(), "v", g.params)
        b = up_from_mpoly(g.to_mpoly() * f2.to_mpoly(), "v", g.params)
        chain = subresultant_chain(a, b)
        assert chain[0].is_zero()
        assert not chain[1].is_zero()


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=5),
       st.lists(st.integers(-5, 5), min_size=2, max_size=5))
def test_antisymmetry(a, b):
    if a[-1] == 0 or b[-1] == 0:
        return
    sign = (-1) ** ((len(a) - 1) * (len(b) - 1))
    assert res_value(a, b) == sign * res_value(b, a)


def test_formal_degree_rule_matches_determinant():
    """Vanishing formal leading coefficients: the full Sylvester determinant decides."""
    rng = random.Random(11)
    for _ in range(30):
        a = [rng.randint(-5, 5) for _ in range(rng.randint(2, 5))] + [rng.randint(1, 4)]
        b = [rng.randint(-5, 5) for _ in range(rng.randint(2, 4))] + [0]
        ua, ub = scalar_upoly(a), scalar_upoly(b)
        full = bareiss_det(sylvester(ua, ub)).constant_value()
        assert resultant(ua, ub).constant_value() == full
        assert resultant(ub, ua).constant_value() == bareiss_det(sylvester(ub, ua)).constant_value()


def test_formal_degree_symbolic():
    a = upoly("x*v^2 + y*v + 1")
    b = upoly("v - y").with_degree(2)
    assert b.declared_degree == 2 and b.actual_degree() == 1
    assert resultant(a, b) == bareiss_det(sylvester(a, b))


def test_psc_range_and_errors():
    a, b = upoly("v^3 + x"), upoly("v^2 + y")
    assert psc(a, b, 2) == MPoly.constant(("x", "y"), 1)
    with pytest.raises(ResultantError):
        psc(a, b, 3)
    with pytest.raises(ResultantError):
        resultant(upoly("v^2 + x"), upoly("w + 1", var="w"))


def test_discriminant_and_xgcd():
    f = [Fraction(c) for c in (-2, 0, 1)]
    assert dense.discriminant(f) == 8
    d, s, t = dense.xgcd([Fraction(c) for c in (-1, 0, 1)], [Fraction(c) for c in (1, 1)])
    assert d == [1, 1]
    inv = dense.inverse_mod([Fraction(1), Fraction(1)], f)
    assert dense.rem(dense.mul(inv, [Fraction(1), Fraction(1)]), f) == [1]
