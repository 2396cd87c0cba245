"""Standard singularity maps, their suspensions and generating families."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra.mpoly import MPoly
from .algebra.rational import normalize
from .algebra.serialize import parse_poly


class InvalidType(ValueError):
    pass


@dataclass(frozen=True)
class SingularityType:
    """Type tag: ``A`` (k>=2), ``D`` (k>=4, sign +-1), ``E`` (k in 6,7,8),
    ``Morin`` (m, n, r) or ``CrossCap`` (m)."""

    family: str
    k: int = 0
    sign: int = 1
    m: int = 0
    n: int = 0
    r: int = 0

    def __post_init__(self):
        f = self.family
        if f == "A":
            if self.k < 2:
                raise InvalidType("A_k needs k >= 2")
        elif f == "D":
            if self.k < 4:
                raise InvalidType("D_k needs k >= 4")
            if self.sign not in (1, -1):
                raise InvalidType("D sign must be +1 or -1")
        elif f == "E":
            if self.k not in (6, 7, 8):
                raise InvalidType("E_k needs k in {6, 7, 8}")
        elif f == "Morin":
            if not (self.n > self.m >= 2 and self.r >= 1):
                raise InvalidType("Morin(m, n, r) needs n > m >= 2 and r >= 1")
            if self.m < self.r * (self.n - self.m + 1):
                raise InvalidType("Morin(m, n, r) needs m >= r(n - m + 1)")
        elif f == "CrossCap":
            if self.m < 2:
                raise InvalidType("CrossCap(m) needs m >= 2")
        else:
            raise InvalidType(f"unknown family {f!r}")

    @property
    def is_ade(self) -> bool:
        return self.family in ("A", "D", "E")

    @property
    def tag(self) -> str:
        if self.family == "A":
            return f"A{self.k}"
        if self.family == "D":
            return f"D{self.k}{'+' if self.sign > 0 else '-'}"
        if self.family == "E":
            return f"E{self.k}"
        if self.family == "Morin":
            return f"M{self.m},{self.n},{self.r}"
        return f"C{self.m}"

    def __str__(self):
        return self.tag


def A(k: int) -> SingularityType:
    return SingularityType("A", k=k)


def D(k: int, sign: int = 1) -> SingularityType:
    return SingularityType("D", k=k, sign=sign)


def E(k: int) -> SingularityType:
    return SingularityType("E", k=k)


def Morin(m: int, n: int, r: int) -> SingularityType:
    return SingularityType("Morin", m=m, n=n, r=r)


def CrossCap(m: int) -> SingularityType:
    return SingularityType("CrossCap", m=m)


_TAG = re.compile(r"^(?:A(\d+)|D(\d+)([+-])?|E([678])|M(\d+),(\d+),(\d+)|C(\d+))$")


def parse_type(text: str) -> SingularityType:
    """Parse ``A3``, ``D5-``, ``E6``, ``M4,5,2`` or ``C2``."""
    m = _TAG.match(text.strip().replace(" ", ""))
    if not m:
        raise InvalidType(f"cannot parse type {text!r}")
    a, dk, ds, e, mm, mn, mr, c = m.groups()
    if a:
        return A(int(a))
    if dk:
        return D(int(dk), -1 if ds == "-" else 1)
    if e:
        return E(int(e))
    if mm:
        return Morin(int(mm), int(mn), int(mr))
    return CrossCap(int(c))


def x_names(k: int) -> list[str]:
    return [f"x{i}" for i in range(k)]


@dataclass(frozen=True)
class MapSpec:
    type: SingularityType
    source_vars: tuple[str, ...]
    target_vars: tuple[str, ...]
    components: tuple[MPoly, ...]
    passthrough: tuple[tuple[int, int], ...] = ()   # (target slot, source slot)
    zero_slots: tuple[int, ...] = ()
    suspended_from: tuple[int, int] | None = None   # (source, target) arity before suspension

    @property
    def source_arity(self) -> int:
        return len(self.source_vars)

    @property
    def target_arity(self) -> int:
        return len(self.target_vars)

    def header(self) -> dict:
        t = self.type
        return {"type": t.tag, "parameters": {"k": t.k, "m": t.m, "n": t.n, "r": t.r},
                "sign": t.sign, "source": list(self.source_vars), "target": list(self.target_vars)}


def _mp(text: str, vars: Sequence[str]) -> MPoly:
    return parse_poly(text, vars)


def _build_A(k: int) -> MapSpec:
    src = ["v"] + [f"x{i}" for i in range(2, k)]
    v = MPoly.var(src, "v")
    xs = {i: MPoly.var(src, f"x{i}") for i in range(2, k)}
    h0 = (v ** (k + 1)).scale(k)
    h1 = (v ** k).scale(-(k + 1))
    for i in range(2, k):
        h0 = h0 + (xs[i] * v ** i).scale(i - 1)
        h1 = h1 - (xs[i] * v ** (i - 1)).scale(i)
    comps = [h0, h1] + [xs[i] for i in range(2, k)]
    pt = tuple((i, i - 1) for i in range(2, k))
    return MapSpec(A(k), tuple(src), tuple(x_names(k)), tuple(comps), pt)


def _build_D(k: int, sign: int) -> MapSpec:
    src = ["u", "v"] + [f"x{i}" for i in range(3, k)]
    u, v = MPoly.var(src, "u"), MPoly.var(src, "v")
    xs = {i: MPoly.var(src, f"x{i}") for i in range(3, k)}
    s = sign
    h0 = (u * u * v).scale(2 * s) + (v ** (k - 1)).scale(k - 2)
    h1 = (u * v).scale(-2 * s)
    h2 = (u * u).scale(-s) - (v ** (k - 2)).scale(k - 1)
    for i in range(3, k):
        h0 = h0 + (xs[i] * v ** (i - 1)).scale(i - 2)
        h2 = h2 - (xs[i] * v ** (i - 2)).scale(i - 1)
    comps = [h0, h1, h2] + [xs[i] for i in range(3, k)]
    pt = tuple((i, i - 1) for i in range(3, k))
    return MapSpec(D(k, sign), tuple(src), tuple(x_names(k)), tuple(comps), pt)


_E_COMPONENTS = {
    6: ("x4 + 2*v*x5",
        ["2*u^3 + 3*v^4 + v^2*x3 + u*v*({d})",
         "-3*u^2 - v*x4 - v^2*x5",
         "-4*v^3 - 2*v*x3 - ({d})*u"]),
    7: ("3*v^2 + 2*x6*v + x5",
        ["2*u^3 + x3*v^2 + 2*x4*v^3 + u*v*({d})",
         "-3*u^2 - v^3 - x5*v - x6*v^2",
         "-2*x3*v - 3*x4*v^2 - u*({d})"]),
    8: ("3*x7*v^2 + 2*x6*v + x5",
        ["2*u^3 + 4*v^5 + x3*v^2 + 2*x4*v^3 + u*v*({d})",
         "-3*u^2 - x5*v - x6*v^2 - x7*v^3",
         "-5*v^4 - 2*x3*v - 3*x4*v^2 - u*({d})"]),
}


def _build_E(k: int) -> MapSpec:
    src = ["u", "v"] + [f"x{i}" for i in range(3, k)]
    d, texts = _E_COMPONENTS[k]
    comps = [_mp(t.format(d=d), src) for t in texts]
    comps += [MPoly.var(src, f"x{i}") for i in range(3, k)]
    pt = tuple((i, i - 1) for i in range(3, k))
    return MapSpec(E(k), tuple(src), tuple(x_names(k)), tuple(comps), pt)


def _build_morin(m: int, n: int, r: int, t: SingularityType) -> MapSpec:
    src = [f"x{i}" for i in range(1, m + 1)]
    tgt = [f"y{i}" for i in range(1, n + 1)]
    x = {i: MPoly.var(src, f"x{i}") for i in range(1, m + 1)}
    xm = x[m]
    comps = [x[i] for i in range(1, m)]
    for i in range(1, n - m + 1):
        h = MPoly.zero(src)
        for j in range(1, r + 1):
            h = h + x[j + r * (i - 1)] * xm ** j
        comps.append(h)
    h = xm ** (r + 1)
    for j in range(1, r):
        h = h + x[j + r * (n - m)] * xm ** j
    comps.append(h)
    pt = tuple((i - 1, i - 1) for i in range(1, m))
    return MapSpec(t, tuple(src), tuple(tgt), tuple(comps), pt)


def build_map(t: SingularityType) -> MapSpec:
    if t.family == "A":
        return _build_A(t.k)
    if t.family == "D":
        return _build_D(t.k, t.sign)
    if t.family == "E":
        return _build_E(t.k)
    if t.family == "Morin":
        spec = _build_morin(t.m, t.n, t.r, t)
        if (t.m, t.n, t.r) == (4, 5, 2):
            _assert_h24(spec)
        return spec
    m = t.m
    return _build_morin(m, 2 * m - 1, 1, t)


def _assert_h24(spec: MapSpec) -> None:
    src = spec.source_vars
    want = ["x1", "x2", "x3", "x1*x4 + x2*x4^2", "x3*x4 + x4^3"]
    got = [c for c in spec.components]
    if got != [_mp(w, src) for w in want]:
        raise AssertionError("Morin index convention drifted for (m, n, r) = (4, 5, 2)")


def eval_map(spec: MapSpec, params: Sequence) -> list:
    if len(params) != spec.source_arity:
        raise ValueError(f"expected {spec.source_arity} parameters, got {len(params)}")
    return [c.evaluate(params) for c in spec.components]


def suspend(spec: MapSpec, new_source: int, new_target: int) -> MapSpec:
    """(x, y) -> (h(x), y, 0) with new_source - k pass-through and the rest zero slots."""
    k, l = spec.source_arity, spec.target_arity
    if new_source < k or new_target < l or new_target - l < new_source - k:
        raise InvalidType("suspension needs m' >= k, n' >= l and n' - l >= m' - k")
    if (new_source, new_target) == (k, l):
        return spec
    extra = new_source - k
    zeros = new_target - l - extra
    src = spec.source_vars + tuple(f"s{i}" for i in range(1, extra + 1))
    tgt = spec.target_vars + tuple(f"t{i}" for i in range(1, extra + 1)) \
        + tuple(f"z{i}" for i in range(1, zeros + 1))
    comps = [c.embed(src) for c in spec.components]
    comps += [MPoly.var(src, f"s{i}") for i in range(1, extra + 1)]
    comps += [MPoly.zero(src)] * zeros
    pt = spec.passthrough + tuple((l + i, k + i) for i in range(extra))
    zs = spec.zero_slots + tuple(l + extra + i for i in range(zeros))
    base = spec.suspended_from or (k, l)
    return MapSpec(spec.type, src, tgt, tuple(comps), pt, zs, base)


def morin_crosscap_permutation(m: int, n: int) -> tuple[list[int], list[int]]:
    """Coordinate permutations relating Morin(m, n, 1) to a suspended CrossCap(n-m+1).

    Returns ``(source_perm, target_perm)``: source slot i of the suspension reads
    Morin source variable ``source_perm[i]``; target slot j of the suspension is
    Morin target ``target_perm[j]``.
    """
    c = n - m + 1
    src = list(range(c - 1)) + [m - 1] + list(range(c - 1, m - 1))
    tgt = list(range(c - 1)) + list(range(m - 1, n)) + list(range(c - 1, m - 1))
    return src, tgt


@dataclass(frozen=True)
class GeneratingFamily:
    type: SingularityType
    F: MPoly


def family_vars(t: SingularityType) -> list[str]:
    if t.family == "A":
        return ["v"] + x_names(t.k)
    return ["u", "v"] + x_names(t.k)


_E_FAMILY = {
    6: "u^3 + v^4 + x5*u*v^2 + x4*u*v + x3*v^2 + x2*v + x1*u + x0",
    7: "u^3 + u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 + x2*v + x1*u + x0",
    8: "u^3 + v^5 + x7*u*v^3 + x6*u*v^2 + x5*u*v + x4*v^3 + x3*v^2 + x2*v + x1*u + x0",
}


def generating_family(t: SingularityType) -> GeneratingFamily:
    if not t.is_ade:
        raise InvalidType("generating families exist for A, D and E types only")
    vars = family_vars(t)
    k = t.k
    if t.family == "A":
        v = MPoly.var(vars, "v")
        F = v ** (k + 1) + MPoly.var(vars, "x0")
        for i in range(1, k):
            F = F + MPoly.var(vars, f"x{i}") * v ** i
        return GeneratingFamily(t, F)
    if t.family == "D":
        u, v = MPoly.var(vars, "u"), MPoly.var(vars, "v")
        F = (u * u * v).scale(t.sign) + v ** (k - 1) + MPoly.var(vars, "x1") * u + MPoly.var(vars, "x0")
        for i in range(2, k):
            F = F + MPoly.var(vars, f"x{i}") * v ** (i - 1)
        return GeneratingFamily(t, F)
    return GeneratingFamily(t, _mp(_E_FAMILY[k], vars))


def parse_point(text: str) -> list:
    """``"1/4,0,1"`` -> [Fraction(1, 4), 0, 1]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ValueError("empty coordinate")
        out.append(normalize(Fraction(part)))
    return out
