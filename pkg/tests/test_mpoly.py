from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wavefront.algebra import (
    ArityMismatch, Homogeneous, MPoly, NotDivisible, NotHomogeneous, from_json, parse_poly,
    to_json, to_text, weighted_degree,
)
from wavefront.algebra.rational import PrimeField
from wavefront.algebra.serialize import ParseError

VARS = ("x", "y", "z")

coeffs = st.one_of(st.integers(-20, 20), st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6)))
monos = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.lists(st.tuples(coeffs, monos), max_size=6).map(lambda items: MPoly.from_terms(VARS, items))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    zero, one = MPoly.zero(VARS), MPoly.constant(VARS, 1)
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + zero == f and f * one == f
    assert f - f == zero
    assert (f * zero).is_zero()


@given(polys, polys)
def test_exact_division_recovers_factor(f, g):
    if g.is_zero():
        return
    assert (f * g).exact_div(g) == f


@given(polys)
def test_text_roundtrip(f):
    assert parse_poly(to_text(f), VARS) == f


@given(polys)
def test_json_roundtrip(f):
    assert from_json(to_json(f)) == f


@given(polys, st.lists(st.fractions(max_denominator=5), min_size=3, max_size=3),
       st.lists(st.fractions(max_denominator=5), min_size=3, max_size=3))
def test_evaluation_is_a_ring_map(f, p, q):
    g = parse_poly("x*y - z^2 + 3", VARS)
    assert (f * g).evaluate(p) == f.evaluate(p) * g.evaluate(p)
    assert (f + g).evaluate(q) == f.evaluate(q) + g.evaluate(q)


@given(polys, polys)
def test_derivative_product_rule(f, g):
    for v in VARS:
        assert (f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v)


def test_canonical_text_order():
    f = parse_poly("4*x1^3 + 27*x0^2", ("x0", "x1"))
    assert to_text(f) == "27*x0^2 + 4*x1^3"
    g = parse_poly("-(27*x1^4 + 4*x1^2*x2^3) + 256*x0^3 + (144*x1^2*x2 + 16*x2^4)*x0 - 128*x2^2*x0^2",
                   ("x0", "x1", "x2"))
    assert to_text(g) == "256*x0^3 - 128*x0^2*x2^2 + 144*x0*x1^2*x2 + 16*x0*x2^4 - 27*x1^4 - 4*x1^2*x2^3"


def test_text_formats():
    f = parse_poly("x^2 - 1/2*y + 3", ("x", "y"))
    assert to_text(f) == "x^2 - 1/2*y + 3"
    assert to_text(MPoly.zero(("x",))) == "0"
    assert to_text(-parse_poly("x", ("x",))) == "-x"
    assert parse_poly("x**2 * (y - 1)", ("x", "y")) == parse_poly("x^2*y - x^2", ("x", "y"))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_poly("x + ", ("x",))
    with pytest.raises(ParseError):
        parse_poly("x + w", ("x",))


def test_division_failure_and_zero_divisor():
    f = parse_poly("x^2 + 1", ("x", "y"))
    with pytest.raises(NotDivisible):
        f.exact_div(parse_poly("x + 1", ("x", "y")))
    with pytest.raises(ZeroDivisionError):
        f.exact_div(MPoly.zero(("x", "y")))


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        _ = parse_poly("x", ("x",)) + parse_poly("x", ("x", "y"))


def test_embed_substitute_and_coefficients():
    f = parse_poly("x*v^2 + y*v + 1", ("v", "x", "y"))
    assert [to_text(c) for c in f.coefficients_in("v")] == ["1", "y", "x"]
    g = f.substitute({"v": 2, "y": Fraction(1, 2)})
    assert g == parse_poly("4*x + 2", ("v", "x", "y"))
    assert f.embed(("v", "x", "y", "z")).degree("z") == 0
    assert f.free_vars() == ("v", "x", "y")


def test_modular_reduction_and_lift():
    f = parse_poly("10*x^2 - 3*y + 7", ("x", "y"))
    r = f.reduce(7)
    assert r.modulus == 7
    assert r == parse_poly("3*x^2 + 4*y", ("x", "y"), modulus=7)
    assert r.lift_symmetric() == parse_poly("3*x^2 - 3*y", ("x", "y"))
    assert int(f.evaluate_mod([1, 1], 7)) == (10 - 3 + 7) % 7


def test_prime_field():
    a, b = PrimeField(7, 3), PrimeField(7, 5)
    assert (a + b).value == 1 and (a * b).value == 1
    with pytest.raises(ValueError):
        PrimeField(8, 1)


def test_weighted_degree():
    f = parse_poly("27*x0^2 + 4*x1^3", ("x0", "x1"))
    assert weighted_degree(f, (3, 2)) == Homogeneous(6)
    assert weighted_degree(f, (1, 1)) == NotHomogeneous((2, 3))
    with pytest.raises(ValueError):
        weighted_degree(f, (1,))
