"""Acceptance suite: one PASS/FAIL line per criterion.

The lines are printed as each criterion finishes and again in the pytest
terminal summary.  Criterion 9 (full E8 discriminant) is opt-in: set
WAVEFRONT_E8_FULL=1.
"""

import os
import random
import statistics
import time
import zlib
from contextlib import contextmanager
from fractions import Fraction

import mpmath
import pytest

from wavefront import certificates as C
from wavefront import factory, membership
from wavefront.algebra import (
    Homogeneous, MPoly, UPoly, parse_poly, psc, resultant, subresultant_chain, to_text,
    up_from_mpoly, weighted_degree,
)
from wavefront.algebra import dense
from wavefront.algebra.modular import STRATEGIES, resultant_modular
from wavefront.golden import A3_THETA, THETA_24
from wavefront.maps import build_map, eval_map, parse_type

from conftest import modular_corpus, rand_mpoly

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(n, title, limit=None):
    t0 = time.perf_counter()
    try:
        yield
        dt = time.perf_counter() - t0
        if limit is not None:
            assert dt < limit, f"took {dt:.2f}s, limit {limit}s"
    except pytest.skip.Exception as exc:
        RESULTS[n] = f"criterion {n:2d}: SKIP  {title} ({exc})"
        print(RESULTS[n])
        raise
    except BaseException as exc:
        RESULTS[n] = f"criterion {n:2d}: FAIL  {title}: {type(exc).__name__}: {exc}"
        print(RESULTS[n])
        raise
    RESULTS[n] = f"criterion {n:2d}: PASS  {title} ({time.perf_counter() - t0:.3f}s)"
    print(RESULTS[n])


def lead(f, var):
    return factory.leading_in(f, var)


# ----------------------------------------------------------------------------


def test_criterion_01_crosscap():
    names = ("x", "y", "z")
    tv = ("v",) + names
    a = up_from_mpoly(parse_poly("x*v - y", tv), "v", names)
    b = up_from_mpoly(parse_poly("v^2 - z", tv), "v", names)
    with criterion(1, "cross cap: Res = y^2 - z*x^2, Psc = x, median < 1 ms"):
        assert resultant(a, b) == parse_poly("y^2 - z*x^2", names)
        assert psc(a, b, 1) == parse_poly("x", names)
        runs = []
        for _ in range(50):
            t0 = time.perf_counter()
            resultant(a, b)
            psc(a, b, 1)
            runs.append(time.perf_counter() - t0)
        assert statistics.median(runs) < 1e-3, statistics.median(runs)


def test_criterion_02_a2_a3():
    with criterion(2, "A2 and A3 discriminants byte-exact", limit=1.0):
        for tag, display in (("A2", "27*x0^2 + 4*x1^3"), ("A3", A3_THETA)):
            cs = factory.char_system(parse_type(tag))
            th = resultant(cs.A, cs.B)
            assert to_text(th) == to_text(parse_poly(display, cs.params))
            if tag == "A2":
                assert to_text(th) == "27*x0^2 + 4*x1^3"


def test_criterion_03_h24():
    names = ("y1", "y2", "y3", "y4", "y5")
    with criterion(3, "Theta_{2,4} and S_{2,4} displays", limit=1.0):
        a, b = factory.h24_pair()
        assert resultant(a, b) == parse_poly(THETA_24, names)
        assert psc(a, b, 1) == parse_poly("y4*y2 + y1^2 + y2^2*y3", names)


def test_criterion_04_d_types():
    with criterion(4, "D4..D8 both signs: A^x closed form, Theta, squarefree k<=6", limit=60.0):
        for k in range(4, 9):
            for sign, s in ((1, "+"), (-1, "-")):
                t = parse_type(f"D{k}{s}")
                cs = factory.char_system(t)
                assert cs.A == factory.d_type_A(k, sign)
                th = factory.build_theta(t, with_S=False).theta
                assert not th.is_zero()
                assert isinstance(weighted_degree(th, factory.type_weights(t)), Homogeneous)
                if k <= 6:
                    cert = C.squarefree_certificate(th, "x0", name=f"{t.tag}:squarefree")
                    assert cert.passed, cert.to_dict()


def test_criterion_05_e6():
    with criterion(5, "E6: r6, leading terms, B0 shortcut, r6^2 | R, degrees 15/102/72", limit=300.0):
        t = parse_type("E6")
        cs = factory.char_system(t)
        x5 = MPoly.var(cs.params, "x5")
        assert cs.r == parse_poly("x4^3 + 2*x3*x5^2*x4 - 2*x2*x5^3", cs.params)
        res = factory.build_theta(t)
        assert lead(res.R, "x0") == (6, (cs.r ** 2).scale(2 ** 20 * 3 ** 11))
        assert lead(res.S, "x0") == (5, (x5 ** 5).scale(-(2 ** 21) * 3 ** 9))
        R0, S0 = factory.b0_leading_terms(t)
        assert lead(R0, "x0") == (6, (cs.r ** 2).scale(2 ** 4 * 3 ** 7))
        assert lead(S0, "x0") == (5, (x5 ** 5).scale(-(2 ** 5) * 3 ** 5))
        assert res.R.exact_div(cs.r ** 2) == res.theta
        w = factory.WEIGHTS[6]
        assert [weighted_degree(f, w) for f in (cs.r, res.R, res.theta)] == \
            [Homogeneous(15), Homogeneous(102), Homogeneous(72)]


def test_criterion_06_e7():
    title = "E7: r7, R/S leading terms (R up to argument-order sign), delta resultants, r7^2 | R, 14/91/63"
    with criterion(6, title, limit=1800.0):
        t = parse_type("E7")
        cs = factory.char_system(t)
        P = lambda s: parse_poly(s, cs.params)
        assert cs.r == P(factory._R_TEXT[7])
        res = factory.build_theta(t)
        d, c = lead(res.R, "x0")
        want = (cs.r ** 2).scale(3 ** 20)
        # our Sylvester layout gives -3^20 r7^2; the printed sign is Res_v(B, A) = -Res_v(A, B)
        assert d == 7 and c == -want
        assert lead(resultant_modular(cs.B, cs.A, "hybrid", weights=cs.weights), "x0") == (7, want)
        s_lead = (P("x3 - x4*x6") * P("3*x2 - 3*x4*x5 - 2*x3*x6 + 2*x4*x6^2")).scale(4 * 3 ** 18)
        assert lead(res.S, "x0") == (6, s_lead)
        ra, rb = factory.delta_resultants(t)
        assert ra == (cs.r ** 2).scale(3 ** 7)
        assert rb == (cs.r * P("27*x1^2 - 18*x1*x5*x6 + 4*x1*x6^3 + 4*x5^3 - x5^2*x6^2")).scale(12)
        assert res.R.exact_div(cs.r ** 2) == res.theta
        w = factory.WEIGHTS[7]
        assert [weighted_degree(f, w) for f in (cs.r, res.R, res.theta)] == \
            [Homogeneous(14), Homogeneous(91), Homogeneous(63)]


def test_criterion_07_modp():
    with criterion(7, "mod-p certificates: E6 2 mod 5, E7 1 mod 5, E8 1 mod 7 with R/S displays, r8/p_i", limit=120.0):
        c6 = C.e_type_modp(parse_type("E6"), C.E6_PHI_POINT, 5, expected=2)
        assert c6.passed and c6.residue == 2
        c7 = C.e_type_modp(parse_type("E7"), C.E7_XI1, 5, expected=1)
        assert c7.passed and c7.residue == 1
        [c8] = C.e8_xi1_certificates()
        assert c8.passed and c8.residue == 1
        assert c8.detail["R_xi1_matches_display"] and c8.detail["S_xi1_matches_display"]
        for cert in C.e8_r8_p_certificates():
            assert cert.passed and str(cert.residue) == "1"


def test_criterion_08_e8_b0():
    with criterion(8, "E8 via B0: 3^10 r8^2 x0^8, -2^2 3^8 p1 p2 x0^7, Res(A, delta8) = 9 r8^2", limit=600.0):
        t = parse_type("E8")
        cs = factory.char_system(t)
        p1, p2 = parse_poly(factory.P1_TEXT, cs.params), parse_poly(factory.P2_TEXT, cs.params)
        R0, S0 = factory.b0_leading_terms(t)
        assert lead(R0, "x0") == (8, (cs.r ** 2).scale(3 ** 10))
        assert lead(S0, "x0") == (7, (p1 * p2).scale(-4 * 3 ** 8))
        assert factory.delta_resultants(t)[0] == (cs.r ** 2).scale(9)


@pytest.mark.e8full
def test_criterion_09_e8_full():
    title = "E8 full: r8^2 | R, Theta weighted degree 120, <= 7.5 h, Res_v(A, B) text within 5x of 13 MB"
    with criterion(9, title, limit=7.5 * 3600):
        if os.environ.get("WAVEFRONT_E8_FULL") != "1":
            pytest.skip("opt-in, set WAVEFRONT_E8_FULL=1")
        t = parse_type("E8")
        cs = factory.char_system(t)
        R = factory.compute_R(cs, "hybrid")
        theta = R.exact_div(cs.r ** 2)
        w = factory.WEIGHTS[8]
        assert weighted_degree(R, w) == Homogeneous(176)
        assert weighted_degree(theta, w) == Homogeneous(120)
        # the 13 MB reference point is the undivided resultant
        size = len(to_text(R).encode())
        print(f"E8: R {len(R)} terms, {size} bytes; Theta {len(theta)} terms, "
              f"{len(to_text(theta).encode())} bytes")
        assert 13e6 / 5 <= size <= 13e6 * 5, size


MEMBER_TYPES = ["A2", "A3", "A4", "A5", "D4+", "D4-", "D5+", "D5-", "E6", "E7", "E8"]


def _rq(rng):
    return Fraction(rng.randint(-20, 20), rng.randint(1, 7))


def test_criterion_10_membership():
    with criterion(10, "membership: 100 image and 100 off-image points per type, L-family, cross cap",
                   limit=300.0):
        for tag in MEMBER_TYPES:
            t = parse_type(tag)
            spec = build_map(t)
            rng = random.Random(zlib.crc32(tag.encode()))
            for _ in range(100):
                x = eval_map(spec, [_rq(rng) for _ in spec.source_vars])
                v = membership.member(t, x)
                assert v.is_member and membership.verify_witness(spec, x, v.witness), (tag, x)
            found = 0
            while found < 100:
                x = [_rq(rng) for _ in spec.target_vars]
                if membership.theta_value(t, x) == 0:
                    continue      # on the front; not an off-image sample
                found += 1
                assert membership.member(t, x).status == membership.NOT_MEMBER, (tag, x)
        for s in (1, 2, 3):
            v = membership.member(parse_type("A3"), [Fraction(s * s, 4), 0, s])
            assert v.status == membership.ON_ZERO_SET
        assert membership.member(parse_type("C2"), [0, 0, -1]).status == membership.ON_ZERO_SET


def test_criterion_11_gamma_data():
    with criterion(11, "gamma-data construction reproduces (A^x, B^x) for E6, E7, E8", limit=10.0):
        for k in (6, 7, 8):
            t = parse_type(f"E{k}")
            cs = factory.char_system(t)
            gamma, delta = factory._gamma(t)
            alpha, beta = factory.appendixC_build(*gamma, delta)
            vv = ("v",) + cs.params
            assert alpha.embed(vv) == parse_poly(factory._A_TEXT[k], vv)
            assert beta.embed(vv) == parse_poly(factory._B_TEXT[k], vv)


def test_criterion_12_properties():
    with criterion(12, "properties: root-product oracle, planted gcd chains, modular corpus, ring axioms"):
        rng = random.Random(2024)
        mpmath.mp.dps = 60
        for _ in range(50):
            a = [rng.randint(-9, 9) for _ in range(rng.randint(1, 6))] + [rng.choice([-2, -1, 1, 2, 3])]
            b = [rng.randint(-9, 9) for _ in range(rng.randint(1, 6))] + [rng.choice([-2, -1, 1, 2, 3])]
            exact = resultant(UPoly.from_scalars("v", a), UPoly.from_scalars("v", b)).constant_value()
            roots = mpmath.polyroots(a[::-1], maxsteps=200, extraprec=200)
            approx = mpmath.mpf(a[-1]) ** (len(b) - 1)
            for r in roots:
                approx *= mpmath.polyval(b[::-1], r)
            assert abs(exact - approx) / max(1, abs(exact)) < 1e-6

        for _ in range(50):
            g = [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [rng.choice([1, 2, -3])]
            f1 = [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [1]
            f2 = [rng.randint(-4, 4) for _ in range(rng.randint(1, 3))] + [-2]
            a, b = dense.mul(g, f1), dense.mul(g, f2)
            d = len(dense.gcd([Fraction(c) for c in a], [Fraction(c) for c in b])) - 1
            chain = [c.constant_value()
                     for c in subresultant_chain(UPoly.from_scalars("v", a), UPoly.from_scalars("v", b))]
            assert all(c == 0 for c in chain[:d]) and chain[d] != 0

        for a, b in modular_corpus():
            direct = resultant(a, b)
            for s in STRATEGIES:
                assert resultant_modular(a, b, s) == direct

        vars = ("x", "y", "z")
        zero = MPoly.zero(vars)
        for _ in range(50):
            f, g, h = (rand_mpoly(rng, vars, n_terms=4, max_deg=3) for _ in range(3))
            assert f + g == g + f and f * g == g * f
            assert (f + g) + h == f + (g + h) and (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h and f - f == zero
