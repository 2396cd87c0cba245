"""Golden files for the published polynomials.

Each entry pairs a displayed polynomial (typed in literally) with an
independent derivation.  ``write_golden`` stores the canonical text of the
display under ``<dir>/<type>/<what>.txt``; ``check_golden`` re-derives every
entry and diffs it against the stored file.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .algebra.mpoly import MPoly
from .algebra.resultant import psc, resultant
from .algebra.serialize import parse_poly, to_text
from .algebra.upoly import up_from_mpoly
from . import factory
from .maps import build_map, generating_family, parse_type


@dataclass(frozen=True)
class GoldenEntry:
    type: str
    what: str
    vars: tuple[str, ...]
    display: tuple[str, ...]                 # one polynomial per line
    derive: Callable[[], list[MPoly]]
    slow: bool = False

    @property
    def relpath(self) -> str:
        return f"{self.type}/{self.what}.txt"

    def canonical(self) -> str:
        return "\n".join(to_text(parse_poly(d, self.vars)) for d in self.display) + "\n"

    def derived(self) -> str:
        return "\n".join(to_text(p.embed(self.vars)) for p in self.derive()) + "\n"


def _x(k: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(k))


def _vx(k: int) -> tuple[str, ...]:
    return ("v",) + _x(k)


def _cs(tag: str):
    return factory.char_system(parse_type(tag))


def _theta(tag: str) -> Callable[[], list[MPoly]]:
    return lambda: [factory.build_theta(parse_type(tag), with_S=False).theta]


def _char(tag: str, which: str) -> Callable[[], list[MPoly]]:
    def run():
        cs = _cs(tag)
        return [getattr(cs, which).to_mpoly(("v",) + cs.params)]
    return run


def _gamma_pair(tag: str, which: int) -> Callable[[], list[MPoly]]:
    def run():
        gam, delta = factory._gamma(parse_type(tag))
        return [factory.appendixC_build(*gam, delta)[which]]
    return run


def _delta_from_map(tag: str) -> Callable[[], list[MPoly]]:
    """delta = -d(h2)/du; pass-through sources share the target names."""
    def run():
        t = parse_type(tag)
        spec = build_map(t)
        cs = factory.char_system(t)
        return [(-spec.components[2].derivative("u")).drop_unused().embed(("v",) + cs.params)]
    return run


def _map(tag: str) -> Callable[[], list[MPoly]]:
    return lambda: list(build_map(parse_type(tag)).components)


def _family(tag: str) -> Callable[[], list[MPoly]]:
    return lambda: [generating_family(parse_type(tag)).F]


def _crosscap_S() -> list[MPoly]:
    names = ("y1", "y2", "y3")
    tv = ("v",) + names
    a = up_from_mpoly(parse_poly("y1*v - y2", tv), "v", names)
    b = up_from_mpoly(parse_poly("v^2 - y3", tv), "v", names)
    return [psc(a, b, 1)]


def _h24_theta() -> list[MPoly]:
    return [resultant(*factory.h24_pair())]


def _h24_S() -> list[MPoly]:
    return [psc(*factory.h24_pair(), 1)]


def _b0(tag: str) -> Callable[[], list[MPoly]]:
    def run():
        cs = _cs(tag)
        return [cs.B0.to_mpoly(("v",) + cs.params)]
    return run


def _e8_p(i: int) -> Callable[[], list[MPoly]]:
    """p_i as (x0-lead of Psc_v(A, B0)) / (-4*3^8) divided by the other factor."""
    def run():
        t = parse_type("E8")
        cs = factory.char_system(t)
        lead = factory.leading_in(factory.b0_leading_terms(t)[1], "x0")[1]
        other = parse_poly(factory.P2_TEXT if i == 1 else factory.P1_TEXT, cs.params)
        return [lead.scale(Fraction(-1, 4 * 3 ** 8)).exact_div(other)]
    return run


def _e7_b_delta_factor() -> list[MPoly]:
    t = parse_type("E7")
    cs = factory.char_system(t)
    rb = factory.delta_resultants(t)[1]
    return [rb.exact_div(cs.r.scale(12))]


def _e7_s_factor() -> list[MPoly]:
    t = parse_type("E7")
    S = factory.build_theta(t).S
    return [factory.leading_in(S, "x0")[1].scale(Fraction(1, 4 * 3 ** 18))]


def _r(tag: str) -> Callable[[], list[MPoly]]:
    return lambda: [factory.recompute_r(parse_type(tag))]


def _e6_k1() -> list[MPoly]:
    aux = factory.e6_aux()
    return [aux.k1.to_mpoly(("u",) + aux.k1.params)]


def _e6_k0() -> list[MPoly]:
    aux = factory.e6_aux()
    return [aux.k0.to_mpoly(("u",) + aux.k0.params)]


def _d_closed(k: int, sign: int) -> str:
    return to_text(factory.d_type_A(k, sign).to_mpoly())


THETA_24 = ("-y1^2*y3*y4 - y2^2*y3^2*y4 - 2*y2*y3*y4^2 - y4^3 + y1^3*y5"
            " + y1*y2^2*y3*y5 + 3*y1*y2*y4*y5 + y2^3*y5^2")
A3_THETA = "256*x0^3 - 128*x2^2*x0^2 + (144*x1^2*x2 + 16*x2^4)*x0 - (27*x1^4 + 4*x1^2*x2^3)"


def entries() -> list[GoldenEntry]:
    E6, E7, E8 = _vx(6), _vx(7), _vx(8)
    out = [
        GoldenEntry("C2", "theta", ("y1", "y2", "y3"), ("y2^2 - y3*y1^2",),
                    lambda: [factory.crosscap_resultant_form()]),
        GoldenEntry("C2", "S", ("y1", "y2", "y3"), ("y1",), _crosscap_S),
        GoldenEntry("M4,5,2", "theta", ("y1", "y2", "y3", "y4", "y5"), (THETA_24,), _h24_theta),
        GoldenEntry("M4,5,2", "S", ("y1", "y2", "y3", "y4", "y5"), ("y4*y2 + y1^2 + y2^2*y3",), _h24_S),
        GoldenEntry("M6,7,3", "map", tuple(f"x{i}" for i in range(1, 7)),
                    ("x1", "x2", "x3", "x4", "x5", "x1*x6 + x2*x6^2 + x3*x6^3", "x4*x6 + x5*x6^2 + x6^4"),
                    _map("M6,7,3")),
        GoldenEntry("M4,5,1", "map", ("x1", "x2", "x3", "x4"),
                    ("x1", "x2", "x3", "x1*x4", "x4^2"), _map("M4,5,1")),
        GoldenEntry("A2", "map", ("v",), ("2*v^3", "-3*v^2"), _map("A2")),
        GoldenEntry("A2", "A", _vx(2), ("v^3 + x1*v + x0",), _char("A2", "A")),
        GoldenEntry("A2", "B", _vx(2), ("3*v^2 + x1",), _char("A2", "B")),
        GoldenEntry("A2", "theta", _x(2), ("27*x0^2 + 4*x1^3",), _theta("A2")),
        GoldenEntry("A3", "theta", _x(3), (A3_THETA,), _theta("A3")),
        GoldenEntry("D4+", "family", ("u", "v") + _x(4),
                    ("u^2*v + v^3 + x1*u + x0 + x2*v + x3*v^2",), _family("D4+")),
        GoldenEntry("E8", "family", ("u", "v") + _x(8),
                    ("u^3 + v^5 + x7*u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 + x2*v + x1*u + x0",),
                    _family("E8")),
        GoldenEntry("E6", "B0", E6, ("-3*(2*x5*v + x4)*x0",), _b0("E6")),
        GoldenEntry("E8", "B0", E8, ("-3*x0*x5 - 6*x0*x6*v - 9*x0*x7*v^2",), _b0("E8")),
        GoldenEntry("E8", "p1", _x(8), (factory.P1_TEXT,), _e8_p(1)),
        GoldenEntry("E8", "p2", _x(8), (factory.P2_TEXT,), _e8_p(2)),
        GoldenEntry("E7", "B-delta-factor", _x(7), (factory.E7_B_DELTA_FACTOR,), _e7_b_delta_factor),
        GoldenEntry("E7", "S-lead-factor", _x(7), (factory.E7_S_FACTOR,), _e7_s_factor, slow=True),
        GoldenEntry("E6", "k0-printed", ("u",) + _x(6), (factory.K0_PRINTED,), _e6_k0),
        GoldenEntry("E6", "k1-printed", ("u",) + _x(6), (factory.K1_PRINTED,), _e6_k1),
    ]
    for k, vv in ((6, E6), (7, E7), (8, E8)):
        tag = f"E{k}"
        out += [
            GoldenEntry(tag, "A", vv, (factory._A_TEXT[k],), _gamma_pair(tag, 0)),
            GoldenEntry(tag, "B", vv, (factory._B_TEXT[k],), _gamma_pair(tag, 1)),
            GoldenEntry(tag, "delta", vv, (factory._DELTA_TEXT[k],), _delta_from_map(tag)),
            GoldenEntry(tag, "r", _x(k), (factory._R_TEXT[k],), _r(tag)),
        ]
    for k in range(4, 9):
        for sign, s in ((1, "+"), (-1, "-")):
            tag = f"D{k}{s}"
            out.append(GoldenEntry(tag, "A", _vx(k), (_d_closed(k, sign),), _char(tag, "A")))
    return out


def default_dir() -> Path:
    env = os.environ.get("WAVEFRONT_GOLDEN")
    if env:
        return Path(env)
    here = Path(__file__).resolve()
    for parent in here.parents:
        if (parent / "golden").is_dir() and (parent / "pyproject.toml").exists():
            return parent / "golden"
    return Path.cwd() / "golden"


def write_golden(directory: Path | None = None) -> list[Path]:
    directory = Path(directory or default_dir())
    written = []
    for e in entries():
        path = directory / e.relpath
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(e.canonical())
        written.append(path)
    return written


@dataclass
class GoldenResult:
    entry: GoldenEntry
    ok: bool
    reason: str = ""


def check_golden(directory: Path | None = None, include_slow: bool = True,
                 only: str | None = None) -> list[GoldenResult]:
    directory = Path(directory or default_dir())
    out = []
    for e in entries():
        if (e.slow and not include_slow) or (only and e.type != only):
            continue
        path = directory / e.relpath
        if not path.exists():
            out.append(GoldenResult(e, False, "missing golden file"))
            continue
        stored = path.read_text()
        if stored != e.canonical():
            out.append(GoldenResult(e, False, "golden file differs from the display"))
            continue
        derived = e.derived()
        out.append(GoldenResult(e, derived == stored, "" if derived == stored else "derivation differs"))
    return out
