import os
import sys
import random
from fractions import Fraction

import pytest
from hypothesis import settings

from wavefront.algebra import MPoly, UPoly, up_from_mpoly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PARAMS = ("x", "y")


def rand_mpoly(rng, vars, n_terms=4, max_deg=2, coeff=5):
    items = []
    for _ in range(n_terms):
        e = [rng.randint(0, max_deg) for _ in vars]
        items.append((rng.randint(-coeff, coeff), e))
    return MPoly.from_terms(vars, items)


def rand_upoly(rng, deg, params=PARAMS, var="v", **kw):
    """Random polynomial of declared degree ``deg`` with a nonzero leading coefficient."""
    coeffs = [rand_mpoly(rng, params, **kw) for _ in range(deg)]
    lead = rand_mpoly(rng, params, **kw)
    while lead.is_zero():
        lead = rand_mpoly(rng, params, **kw)
    return UPoly(var, coeffs + [lead])


def modular_corpus(n=50, seed=20240611):
    """Fixed corpus of integer pairs in v over (x, y)."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        da, db = rng.randint(1, 4), rng.randint(1, 3)
        out.append((rand_upoly(rng, da, n_terms=3, max_deg=2),
                    rand_upoly(rng, db, n_terms=3, max_deg=2)))
    return out


def upoly(text, var="v", params=PARAMS):
    from wavefront.algebra import parse_poly
    return up_from_mpoly(parse_poly(text, (var,) + tuple(params)), var, params)


def rq(rng, num=9, den=4):
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
