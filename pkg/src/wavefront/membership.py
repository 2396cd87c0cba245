"""Exact membership of rational points in the image of a standard map.

Real roots are isolated with Sturm sequences over Q.  Every ``Member`` verdict
carries a witness whose parameters are polynomials in one real algebraic
generator; the witness is checked by reducing each map component modulo the
generator's defining polynomial, which is exact for every root of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .algebra import dense
from .algebra.mpoly import MPoly
from .algebra.rational import normalize
from .algebra.resultant import psc
from .algebra.upoly import UPoly
from . import factory
from .factory import Unsupported
from .maps import MapSpec, SingularityType, build_map

Poly = list  # dense, lowest degree first, Fraction coefficients

MEMBER = "Member"
NOT_MEMBER = "NotMember"
BOUNDARY = "BoundaryBranch"
ON_ZERO_SET = "OnZeroSetNotMember"


# ----------------------------------------------------------------------------
# Sturm sequences and real-root isolation


def _q(f: Sequence) -> Poly:
    return dense.trim([Fraction(c) for c in f])


def _sign(c) -> int:
    return (c > 0) - (c < 0)


def sturm_chain(f: Sequence) -> list[Poly]:
    f = _q(f)
    chain = [f, dense.derivative(f)]
    while chain[-1]:
        r = dense.rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _variations(chain: list[Poly], x) -> int:
    """Sign variations at x; x = +-inf given as the strings '+inf' / '-inf'."""
    signs = []
    for g in chain:
        if x == "+inf":
            s = _sign(g[-1])
        elif x == "-inf":
            s = _sign(g[-1]) * (-1) ** (len(g) - 1)
        else:
            s = _sign(dense.evaluate(g, x))
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(f: Sequence, lo=None, hi=None) -> int:
    """Distinct real roots of f in (lo, hi]; None means an infinite end."""
    f = _q(f)
    if not f:
        raise ValueError("sturm_count of the zero polynomial")
    if len(f) == 1:
        return 0
    chain = sturm_chain(dense.squarefree_part(f))
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    return _variations(chain, a) - _variations(chain, b)


def cauchy_bound(f: Sequence) -> Fraction:
    f = _q(f)
    lc = abs(f[-1])
    return 1 + max((abs(c) / lc for c in f[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootIsolation:
    """Real roots of a squarefree polynomial: exact rational roots plus
    disjoint half-open intervals (lo, hi] holding exactly one irrational root."""

    polynomial: tuple
    rational_roots: tuple[Fraction, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]

    @property
    def count(self) -> int:
        return len(self.rational_roots) + len(self.intervals)

    def roots(self) -> list["RealRoot"]:
        out = [RealRoot(tuple(dense.trim([-r, 1])), (r, r)) for r in self.rational_roots]
        out += [RealRoot(self.polynomial, iv) for iv in self.intervals]
        return sorted(out, key=lambda r: r.interval[0])


def _integer_lc(f: Poly) -> int:
    den = lcm(*[c.denominator for c in f])
    return abs(int(f[-1] * den))


def isolate_real_roots(f: Sequence, rational_bits: int = 256) -> RootIsolation:
    """Isolate the real roots of the squarefree part of f.

    Intervals are refined until the width rules out more than one fraction with
    denominator at most the integer leading coefficient; that fraction is then
    tested, so rational roots are always reported exactly (when the leading
    coefficient has at most ``rational_bits`` bits).
    """
    f = _q(dense.squarefree_part(_q(f)))
    if len(f) <= 1:
        return RootIsolation(tuple(f), (), ())
    if len(f) == 2:
        return RootIsolation(tuple(f), (normalize(Fraction(-f[0]) / f[1]),), ())
    chain = sturm_chain(f)
    B = cauchy_bound(f)
    rational, intervals = [], []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        n = _variations(chain, a) - _variations(chain, b)
        if n == 0:
            continue
        if n == 1:
            if dense.evaluate(f, b) == 0:
                rational.append(b)
            else:
                intervals.append((a, b))
            continue
        m = (a + b) / 2
        stack += [(a, m), (m, b)]
    L = _integer_lc(f)
    final = []
    for a, b in intervals:
        r = _rational_in(f, a, b, L, rational_bits)
        if r is None:
            final.append((a, b))
        else:
            rational.append(r)
    return RootIsolation(tuple(f), tuple(sorted(rational)), tuple(sorted(final)))


def _bisect(f: Poly, a: Fraction, b: Fraction, steps: int):
    """Halve (a, b] ``steps`` times around its unique simple root (f(b) != 0)."""
    sb = _sign(dense.evaluate(f, b))
    for _ in range(steps):
        m = (a + b) / 2
        sm = _sign(dense.evaluate(f, m))
        if sm == 0:
            return m, m
        if sm == sb:
            b = m
        else:
            a = m
    return a, b


def _rational_in(f: Poly, a: Fraction, b: Fraction, L: int, bits: int) -> Fraction | None:
    if L.bit_length() > bits:
        return None
    target = Fraction(1, 2 * L * L)
    steps = 0
    w = b - a
    while w > target:
        w /= 2
        steps += 1
    a, b = _bisect(f, a, b, steps)
    if a == b:
        return a
    cand = ((a + b) / 2).limit_denominator(L)
    if a < cand <= b and dense.evaluate(f, cand) == 0:
        return cand
    return None


@dataclass(frozen=True)
class RealRoot:
    """One real root of ``polynomial`` in (lo, hi], or exactly lo when lo == hi."""

    polynomial: tuple
    interval: tuple[Fraction, Fraction]

    @property
    def is_rational(self) -> bool:
        return self.interval[0] == self.interval[1]

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational root; use approx()")
        return self.interval[0]

    def refine(self, width: Fraction) -> tuple[Fraction, Fraction]:
        a, b = self.interval
        if a == b:
            return a, b
        steps = 0
        w = b - a
        while w > width:
            w /= 2
            steps += 1
        return _bisect(list(self.polynomial), a, b, steps)

    def approx(self, digits: int = 20) -> str:
        a, b = self.refine(Fraction(1, 10 ** (digits + 2)))
        m = (a + b) / 2
        return _decimal(m, digits)

    def to_dict(self) -> dict:
        return {"polynomial": [str(c) for c in self.polynomial],
                "interval": [str(self.interval[0]), str(self.interval[1])]}


def _decimal(x: Fraction, digits: int) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = round(x * 10 ** digits)
    s = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def common_real_roots(a: UPoly | Sequence, b: UPoly | Sequence) -> RootIsolation:
    """Isolation of the real roots of gcd(a, b) for fully specialized inputs."""
    fa = a.scalars() if isinstance(a, UPoly) else list(a)
    fb = b.scalars() if isinstance(b, UPoly) else list(b)
    return isolate_real_roots(dense.gcd(_q(fa), _q(fb)))


# ----------------------------------------------------------------------------
# witnesses


@dataclass
class Witness:
    """Preimage parameters as polynomials in a real algebraic generator.

    ``exprs[name]`` is a dense polynomial in the generator reduced modulo
    ``root.polynomial``; rational parameters are constants.
    """

    source_vars: tuple[str, ...]
    root: RealRoot
    exprs: dict

    def rational(self) -> tuple[Fraction, ...] | None:
        if not self.root.is_rational:
            if all(len(self.exprs[n]) <= 1 for n in self.source_vars):
                return tuple(self.exprs[n][0] if self.exprs[n] else Fraction(0)
                             for n in self.source_vars)
            return None
        r = self.root.value
        return tuple(dense.evaluate(self.exprs[n], r) if self.exprs[n] else Fraction(0)
                     for n in self.source_vars)

    def approx(self, digits: int = 20) -> dict:
        vals = self.rational()
        if vals is not None:
            return {n: str(v) for n, v in zip(self.source_vars, vals)}
        a, b = self.root.refine(Fraction(1, 10 ** (digits + 4)))
        m = (a + b) / 2
        return {n: _decimal(dense.evaluate(self.exprs[n], m) if self.exprs[n] else Fraction(0), digits)
                for n in self.source_vars}

    def to_dict(self) -> dict:
        vals = self.rational()
        d = {"params": list(self.source_vars)}
        if vals is not None:
            d["values"] = [str(v) for v in vals]
        else:
            d["generator"] = self.root.to_dict()
            d["expressions"] = {n: [str(c) for c in self.exprs[n]] for n in self.source_vars}
            d["approx"] = self.approx(12)
        return d


def verify_witness(spec: MapSpec, x: Sequence, w: Witness) -> bool:
    """Exact check h(witness) == x modulo the generator's polynomial."""
    M = list(w.root.polynomial)
    if w.root.is_rational:
        M = [-w.root.value, Fraction(1)]
    gen = "_g"
    names = tuple(spec.source_vars) + (gen,)
    subs = {n: _poly_in(w.exprs[n], names, gen) for n in spec.source_vars}
    for c, xi in zip(spec.components, x):
        val = c.embed(spec.source_vars).embed(names).substitute(subs)
        coeffs = [cc.constant_value() if cc else 0 for cc in val.coefficients_in(gen)]
        r = dense.rem(dense.sub(_q(coeffs), [Fraction(xi)]), M)
        if r:
            return False
    return True


def _poly_in(coeffs: Sequence, names: tuple, gen: str) -> MPoly:
    g = MPoly.var(names, gen)
    acc = MPoly.zero(names)
    for c in reversed(list(coeffs)):
        acc = acc * g + MPoly.constant(names, c)
    return acc


# ----------------------------------------------------------------------------
# verdicts


@dataclass
class MemberVerdict:
    status: str
    witness: Witness | None = None
    detail: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def is_member(self) -> bool:
        return self.status == MEMBER

    def to_dict(self) -> dict:
        d = {"status": self.status, "detail": self.detail}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


@dataclass
class _Branch:
    """A family of candidate preimages: real roots of ``poly`` with the given
    parameter expressions (polynomials in the generator modulo ``poly``)."""

    name: str
    poly: Poly
    exprs: dict


def _spec_point(x: Sequence) -> list[Fraction]:
    return [normalize(Fraction(c)) for c in x]


def _specialize(u: UPoly, names: Sequence[str], x: Sequence[Fraction]) -> Poly:
    point = dict(zip(names, x))
    return _q([c.substitute(point).embed(()).constant_value() if c else 0 for c in u.coeffs])


def _in_var(f: MPoly, var: str, point: dict) -> Poly:
    """f with ``point`` substituted, as a dense polynomial in ``var``."""
    g = f.substitute(point) if point else f
    rest = [v for v in g.vars if v != var and g.degree(v) > 0]
    if rest:
        raise ValueError(f"unfixed variables {rest}")
    if var not in g.vars:
        return _q([g.constant_value()]) if g else []
    return _q([c.constant_value() if c else 0 for c in g.coefficients_in(var)])


def _split_branch(poly: Poly, cond: Poly) -> tuple[Poly, Poly]:
    """(part where cond vanishes, part where cond is invertible) of squarefree poly."""
    g = dense.gcd(poly, cond) if cond else dense.monic(poly)
    return g, dense.divmod_(poly, g)[0]


def _nonconstant(p: Poly) -> bool:
    return len(p) > 1


# A/D/E


def _ade_branches(t: SingularityType, x: list[Fraction]) -> tuple[list[_Branch], dict]:
    cs = factory.char_system(t)
    spec = build_map(t)
    names = cs.params
    A = _specialize(cs.A, names, x)
    B = _specialize(cs.B, names, x)
    detail: dict = {}
    if not A and not B:
        raise _Indeterminate("A and B vanish identically")
    G = dense.squarefree_part(dense.gcd(A, B))
    detail["gcd_degree"] = len(G) - 1
    point = dict(zip(names, x))
    passthrough = {spec.source_vars[s]: x[tgt] for tgt, s in spec.passthrough}
    consts = {n: [Fraction(v)] if v else [] for n, v in passthrough.items()}
    if not _nonconstant(G):
        return [], detail
    if t.family == "A":
        return [_Branch("common-root", G, dict(consts, v=[Fraction(0), Fraction(1)]))], detail
    vv = ("v",) + names
    num, den = cs.u_formula()
    num_p = _in_var(num, "v", point)
    den_p = _in_var(den, "v", point)
    if t.family == "D":
        zero_part, main = _split_branch(G, [Fraction(0), Fraction(1)])
        branches = []
        if _nonconstant(main):
            u = dense.rem(dense.mul(num_p, dense.inverse_mod(den_p, main)), main)
            branches.append(_Branch("v!=0", main, dict(consts, v=[Fraction(0), Fraction(1)], u=u)))
        if _nonconstant(zero_part):
            detail["v0_branch"] = True
            branches += _d_v0_branches(t, x, consts)
        return branches, detail
    # E types
    delta_p = _in_var(cs.delta, "v", point)
    if delta_p:
        dpart, main = _split_branch(G, delta_p)
    else:
        dpart, main = G, [Fraction(1)]
        detail["delta_identically_zero"] = True
    branches = []
    if _nonconstant(main):
        u = dense.rem(dense.mul(num_p, dense.inverse_mod(den_p, main)), main)
        branches.append(_Branch("delta!=0", main, dict(consts, v=[Fraction(0), Fraction(1)], u=u)))
    if _nonconstant(dpart):
        detail["delta0_branch"] = True
        branches += _delta0_branches(cs, point, dpart, consts, detail)
        if t.k == 6:
            aux = factory.e6_aux()
            detail["H"] = str(aux.H_derived.evaluate(x))
            detail["r"] = str(cs.r.evaluate(x))
    return branches, detail


class _Indeterminate(Exception):
    pass


def _d_v0_branches(t: SingularityType, x: list[Fraction], consts: dict) -> list[_Branch]:
    """v = 0: h(u, 0, x3, ...) = (0, 0, -sign*u^2, x3, ...)."""
    if x[0] != 0 or x[1] != 0:
        return []
    c = -t.sign * x[2]          # u^2 = c
    if c < 0:
        return []
    if c == 0:
        return [_Branch("v=0", [Fraction(0), Fraction(1)], dict(consts, v=[], u=[]))]
    # generator is u itself, root of u^2 - c
    return [_Branch("v=0", [-c, Fraction(0), Fraction(1)], dict(consts, v=[], u=[Fraction(0), Fraction(1)]))]


def _delta0_branches(cs, point: dict, P: Poly, consts: dict, detail: dict) -> list[_Branch]:
    """Solve g0 = g1 = g2 = 0 for u over the roots of P (where delta vanishes).

    Works in Q[v]/P, splitting P whenever a coefficient that must be inverted
    or must vanish is a zero divisor.
    """
    g = [_u_coeffs(gi, point) for gi in cs.g]      # each: list over u-degree of Poly in v
    out: list[_Branch] = []
    todo = [P]
    while todo:
        P = todo.pop()
        if not _nonconstant(P):
            continue
        red = [[dense.rem(c, P) for c in gi] for gi in g]
        # g2 must vanish without u (its u-coefficient is delta)
        bad = [c for c in red[2][1:] if c]
        if bad:
            detail.setdefault("unresolved", []).append("g2 depends on u on delta=0")
            continue
        keep, drop = _split_branch(P, red[2][0] if red[2] else [])
        if _nonconstant(drop) and red[2][0]:
            pass                                     # g2 != 0 there: no preimage
        P = keep
        if not _nonconstant(P):
            continue
        red = [[dense.rem(c, P) for c in gi] for gi in g]
        g1 = red[1] + [[]] * (3 - len(red[1]))
        if g1[1] or len(red[1]) != 3 or len(g1[2]) != 1:
            detail.setdefault("unresolved", []).append("g1 not of the form c*u^2 + q")
            continue
        q = dense.scale(g1[0], Fraction(-1) / g1[2][0])        # u^2 = q
        g0 = red[0] + [[]] * (4 - len(red[0]))
        if len(red[0]) > 4 or not g0[3] or len(g0[3]) != 1:
            detail.setdefault("unresolved", []).append("g0 not cubic in u")
            continue
        # g0 = c3*u^3 + c2*u^2 + c1*u + c0 = u*(c3*q + c1) + (c2*q + c0)
        L = dense.rem(dense.add(dense.scale(q, g0[3][0]), g0[1]), P)
        C = dense.rem(dense.add(dense.mul(g0[2], q), g0[0]), P)
        zero_L, inv_L = _split_branch(P, L)
        if _nonconstant(inv_L):
            u = dense.rem(dense.mul([-c for c in C], dense.inverse_mod(L, inv_L)), inv_L)
            check = dense.rem(dense.sub(dense.mul(u, u), q), inv_L)
            ok, _ = _split_branch(inv_L, check)
            if _nonconstant(ok):
                out.append(_Branch("delta=0", ok, dict(consts, v=[Fraction(0), Fraction(1)],
                                                        u=dense.rem(u, ok))))
        if _nonconstant(zero_L):
            # L = 0: need C = 0 and u^2 = q; only q = 0 (u = 0) stays in Q[v]
            zc, _ = _split_branch(zero_L, dense.rem(C, zero_L))
            zq, rest = _split_branch(zc, dense.rem(q, zc)) if _nonconstant(zc) else ([Fraction(1)], [])
            if _nonconstant(zq):
                out.append(_Branch("delta=0", zq, dict(consts, v=[Fraction(0), Fraction(1)], u=[])))
            if _nonconstant(rest):
                detail.setdefault("unresolved", []).append("u^2 = q with q not a square in Q[v]")
    return out


def _u_coeffs(gi: MPoly, point: dict) -> list[Poly]:
    """g_i(u, v) at x as a list (by u-degree) of dense polynomials in v."""
    s = gi.substitute(point).embed(("u", "v"))
    out = []
    for cu in s.coefficients_in("u"):
        cu = cu.embed(("v",)) if cu else cu
        out.append(_q([c.constant_value() if c else 0 for c in cu.coefficients_in("v")]) if cu else [])
    return out


# Morin / cross cap


def _free_var_branches(spec: MapSpec, x: list[Fraction]) -> tuple[list[_Branch], dict]:
    """Maps whose source is pass-through coordinates plus one free variable."""
    pt_src = {s for _, s in spec.passthrough}
    free = [i for i in range(spec.source_arity) if i not in pt_src]
    if len(free) != 1:
        raise Unsupported(f"membership needs exactly one free source variable, got {len(free)}")
    fv = spec.source_vars[free[0]]
    for z in spec.zero_slots:
        if x[z] != 0:
            return [], {"zero_slot_nonzero": z}
    point = {spec.source_vars[s]: x[tgt] for tgt, s in spec.passthrough}
    consts = {n: [Fraction(v)] if v else [] for n, v in point.items()}
    pt_tgt = {tgt for tgt, _ in spec.passthrough}
    G: Poly = []
    for i, c in enumerate(spec.components):
        if i in pt_tgt or i in spec.zero_slots:
            continue
        f = dense.sub(_in_var(c.embed(spec.source_vars), fv, point), [x[i]])
        G = dense.gcd(G, f) if (G or f) else []
    if not G:
        raise _Unbounded()
    G = dense.squarefree_part(G)
    detail = {"gcd_degree": len(G) - 1, "free_variable": fv}
    if not _nonconstant(G):
        return [], detail
    return [_Branch("common-root", G, dict(consts, **{fv: [Fraction(0), Fraction(1)]}))], detail


class _Unbounded(Exception):
    pass


# ----------------------------------------------------------------------------
# Theta values


def theta_value(t: SingularityType, x: Sequence) -> Fraction | None:
    """Theta(x) exactly; None if it cannot be evaluated (unsupported Morin type)."""
    x = _spec_point(x)
    if t.family in ("Morin", "CrossCap"):
        try:
            th = factory.morin_theta(t)
        except Unsupported:
            return None
        return th.evaluate(x)
    cs = factory.char_system(t)
    A = _specialize(cs.A, cs.params, x)
    B = _specialize(cs.B, cs.params, x)
    R = dense.resultant(A, B, None, cs.A.declared_degree, cs.B.declared_degree)
    if t.family != "E":
        return R
    r = cs.r.evaluate(x)
    if r:
        return normalize(Fraction(R) / (r * r))
    point = dict(zip(cs.params, x))
    for var in cs.r.free_vars():
        if var == "x0":
            continue
        sub = {k: v for k, v in point.items() if k != var}
        if not cs.r.substitute(sub).drop_unused():
            continue
        th = factory.specialized_theta(t, sub, (var,))
        return th.evaluate([point[var]])
    return None


# ----------------------------------------------------------------------------
# public API


def _branches(t: SingularityType, x: list[Fraction]):
    if t.family in ("A", "D", "E"):
        return _ade_branches(t, x)
    return _free_var_branches(build_map(t), x)


def _witnesses(spec: MapSpec, branches: list[_Branch]) -> list[Witness]:
    out = []
    for br in branches:
        iso = isolate_real_roots(br.poly)
        for root in iso.roots():
            exprs = {n: br.exprs.get(n, []) for n in spec.source_vars}
            if root.is_rational:
                r = root.value
                exprs = {n: _q([dense.evaluate(e, r)]) if e else [] for n, e in exprs.items()}
            else:
                exprs = {n: dense.rem(e, list(root.polynomial)) for n, e in exprs.items()}
            out.append(Witness(tuple(spec.source_vars), root, exprs))
    return out


def _lset_label(t: SingularityType, x: list[Fraction]) -> str | None:
    if t.family == "A" and t.k == 3 and x[1] == 0 and x[2] > 0 and x[0] == x[2] ** 2 / 4:
        return "L-set (t^2/4, 0, t), t > 0"
    if t.family == "CrossCap" or (t.family == "Morin" and t.r == 1):
        if x[-1] < 0 and all(c == 0 for c in x[:-1]):
            return "cross-cap L-set"
    return None


def member(t: SingularityType, x: Sequence) -> MemberVerdict:
    spec = build_map(t)
    if len(x) != spec.target_arity:
        raise ValueError(f"{t.tag} expects {spec.target_arity} coordinates, got {len(x)}")
    x = _spec_point(x)
    try:
        branches, detail = _branches(t, x)
    except _Indeterminate as e:
        return MemberVerdict(BOUNDARY, detail={"locus": "indeterminate", "reason": str(e)})
    except _Unbounded:
        return MemberVerdict(BOUNDARY, detail={"locus": "infinite fibre"})
    ws = _witnesses(spec, branches)
    good = [w for w in ws if verify_witness(spec, x, w)]
    detail["branches"] = sorted({b.name for b in branches})
    detail["real_candidates"] = len(ws)
    if len(good) != len(ws):
        detail["unverified_candidates"] = len(ws) - len(good)
    if good:
        rational = [w for w in good if w.rational() is not None]
        best = rational[0] if rational else good[0]
        return MemberVerdict(MEMBER, best, detail, good)
    if detail.get("unresolved") or detail.get("unverified_candidates"):
        return MemberVerdict(BOUNDARY, detail=dict(detail, locus="indeterminate"))
    th = theta_value(t, x)
    detail["theta"] = None if th is None else str(th)
    if th == 0:
        label = _lset_label(t, x)
        if label:
            detail["locus"] = label
        if t.family in ("A", "D", "E"):
            detail["psc_vanishes"] = _psc_at(t, x) == 0
        return MemberVerdict(ON_ZERO_SET, detail=detail)
    return MemberVerdict(NOT_MEMBER, detail=detail)


def _psc_at(t: SingularityType, x: list[Fraction]):
    cs = factory.char_system(t)
    A = _specialize(cs.A, cs.params, x)
    B = _specialize(cs.B, cs.params, x)
    A += [0] * (cs.A.declared_degree + 1 - len(A))
    B += [0] * (cs.B.declared_degree + 1 - len(B))
    return psc(UPoly.from_scalars("v", A), UPoly.from_scalars("v", B), 1).constant_value()


def preimage_count(t: SingularityType, x: Sequence) -> int | None:
    """Number of real preimages; None for an infinite fibre or an indeterminate case."""
    v = member(t, x)
    if v.status == BOUNDARY:
        return None
    n = len(v.witnesses)
    if t.family in ("A", "D") and n > t.k:
        raise AssertionError(f"{n} preimages exceed the bound {t.k}")
    return n
