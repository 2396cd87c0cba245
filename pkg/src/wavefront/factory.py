"""Characteristic systems and main-analytic polynomials for the standard maps."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra.modular import psc_modular, resultant_modular
from .algebra.mpoly import MPoly, NotDivisible
from .algebra.resultant import psc, resultant
from .algebra.serialize import parse_poly
from .algebra.upoly import UPoly, up_from_mpoly
from .maps import (
    InvalidType, SingularityType, build_map, generating_family, morin_crosscap_permutation,
    x_names,
)


class Unsupported(ValueError):
    pass


class FactoryError(AssertionError):
    """A displayed polynomial disagrees with its recomputation."""


# Weights on (x0, ..., x_{k-1}); the main variable v gets the matching weight.
WEIGHTS = {
    6: (12, 8, 9, 6, 5, 2),
    7: (9, 6, 7, 5, 3, 4, 2),
    8: (15, 10, 12, 9, 6, 7, 4, 1),
}
# As printed for E7; x1 and x2 are swapped relative to the homogeneous grading.
PRINTED_E7_WEIGHTS = (9, 7, 6, 5, 3, 4, 2)
V_WEIGHT = {6: 3, 7: 2, 8: 3}

_A_TEXT = {
    6: "48*v^6 + 4*(12*x3 + x5^3)*v^4 + 8*(3*x2 + x4*x5^2)*v^3"
       " + (4*x1*x5^2 + 5*x4^2*x5 + 12*x3^2)*v^2 + (4*x1*x4*x5 + 12*x2*x3 + x4^3)*v"
       " + x1*x4^2 + 3*x2^2",
    7: "9*v^7 + 21*x6*v^6 + (15*x5 + 16*x6^2)*v^5 + (9*x1 + 27*x4^2 + 22*x5*x6 + 4*x6^3)*v^4"
       " + (12*x1*x6 + 36*x3*x4 + 7*x5^2 + 8*x5*x6^2)*v^3"
       " + (6*x1*x5 + 4*x1*x6^2 + 18*x2*x4 + 12*x3^2 + 5*x5^2*x6)*v^2"
       " + (4*x1*x5*x6 + 12*x2*x3 + x5^3)*v + x1*x5^2 + 3*x2^2",
    8: "75*v^8 + 9*x7^3*v^7 + 3*(30*x4 + 7*x6*x7^2)*v^6"
       " + (60*x3 + x7*(15*x5*x7 + 16*x6^2))*v^5"
       " + (9*x1*x7^2 + 30*x2 + 27*x4^2 + 22*x5*x6*x7 + 4*x6^3)*v^4"
       " + (12*x1*x6*x7 + 36*x3*x4 + 7*x5^2*x7 + 8*x5*x6^2)*v^3"
       " + (6*x1*x5*x7 + 4*x1*x6^2 + 18*x2*x4 + 12*x3^2 + 5*x5^2*x6)*v^2"
       " + (4*x1*x5*x6 + 12*x2*x3 + x5^3)*v + x1*x5^2 + 3*x2^2",
}

_B_TEXT = {
    6: "2*x5*v^5 + 5*x4*v^4 + (8*x1 - 2*x3*x5)*v^3 + (x3*x4 - 4*x2*x5)*v^2"
       " + (-6*x0*x5 + 4*x1*x3 - x2*x4)*v - 3*x0*x4 + 2*x1*x2",
    7: "-3*x4*v^5 - 5*x3*v^4 + (-7*x2 - 2*x3*x6 + 3*x4*x5)*v^3"
       " + (-9*x0 + 6*x1*x4 - 4*x2*x6 + x3*x5)*v^2 + (-6*x0*x6 + 4*x1*x3 - x2*x5)*v"
       " - 3*x0*x5 + 2*x1*x2",
    8: "x7*v^7 + 4*x6*v^6 + (7*x5 - 3*x4*x7)*v^5 + 5*(2*x1 - x3*x7)*v^4"
       " + (-7*x2*x7 - 2*x3*x6 + 3*x4*x5)*v^3 + (-9*x0*x7 + 6*x1*x4 - 4*x2*x6 + x3*x5)*v^2"
       " + (-6*x0*x6 + 4*x1*x3 - x2*x5)*v - 3*x0*x5 + 2*x1*x2",
}

_DELTA_TEXT = {6: "x4 + 2*v*x5", 7: "3*v^2 + 2*x6*v + x5", 8: "3*x7*v^2 + 2*x6*v + x5"}

_R_TEXT = {
    6: "x4^3 + 2*x3*x5^2*x4 - 2*x2*x5^3",
    7: "3*x2^2 + (-6*x4*x5 - 4*x3*x6 + 4*x4*x6^2)*x2 + x5*(4*x3^2 + 3*x4^2*x5 - 4*x3*x4*x6)",
    8: "25*x5^4 - 90*x4*x7*x5^3"
       " + (60*x4*x6^2 + 81*x4^2*x7^2 + 180*x3*x6*x7 + 90*x2*x7^2)*x5^2"
       " + (-80*x3*x6^3 - 240*x2*x6^2*x7 - 108*x3*x4*x6*x7^2 + 108*x3^2*x7^3"
       " - 162*x2*x4*x7^3)*x5"
       " + x2*(80*x6^4 + 108*x4*x6^2*x7^2 - 108*x3*x6*x7^3 + 81*x2*x7^4)",
}

# r = scale * Res_v(g2, delta); for E6 the swapped order Res_v(delta, g2) gives -4*r6.
_R_SCALE = {6: Fraction(1, 4), 7: Fraction(1, 3), 8: 1}

P1_TEXT = "20*x6^3 + (27*x4*x7^2 - 30*x5*x7)*x6 - 27*x3*x7^3"
P2_TEXT = ("40*x6^4 + (54*x4*x7^2 - 120*x5*x7)*x6^2 - 54*x3*x7^3*x6"
           " + 45*x5^2*x7^2 - 81*x4*x5*x7^3 + 81*x2*x7^4")
E7_B_DELTA_FACTOR = "27*x1^2 - 18*x1*x5*x6 + 4*x1*x6^3 + 4*x5^3 - x5^2*x6^2"
E7_S_FACTOR = "(x3 - x4*x6)*(3*x2 - 3*x4*x5 - 2*x3*x6 + 2*x4*x6^2)"
K0_PRINTED = "8*x5^3*u^3 - 4*x0*x5^3 - x4^4 + x4^3*x5"
K1_PRINTED = "24*x5^3*u^2 - 8*x1*x5^3 - 4*x4*x5^3 - x4^3"


def type_weights(t: SingularityType) -> tuple[int, ...]:
    """Weights on x0..x_{k-1} making the family weighted homogeneous."""
    k = t.k
    if t.family == "A":
        return tuple(k + 1 - i for i in range(k))
    if t.family == "D":
        return (2 * k - 2, k) + tuple(2 * k - 2 * i for i in range(2, k))
    if t.family == "E":
        return WEIGHTS[k]
    raise InvalidType("weights are defined for A, D and E types")


def params_of(t: SingularityType) -> tuple[str, ...]:
    return tuple(x_names(t.k))


@dataclass(frozen=True)
class CharSystem:
    type: SingularityType
    params: tuple[str, ...]
    A: UPoly
    B: UPoly
    B0: UPoly | None = None
    delta: MPoly | None = None          # over (v,) + params
    r: MPoly | None = None              # over params
    g: tuple[MPoly, ...] = ()           # over (u, v) + params
    aux: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def full_vars(self) -> tuple[str, ...]:
        return ("u", "v") + self.params

    @property
    def weights(self) -> tuple[int, ...]:
        return type_weights(self.type)

    def u_formula(self) -> tuple[MPoly, MPoly] | None:
        """(numerator, denominator) over (v,) + params giving u on the delta != 0 branch."""
        t = self.type
        vv = ("v",) + self.params
        if t.family == "E":
            # g2 = (g2 at u=0) + u*delta
            num = -self.g[2].substitute({"u": 0})
            return num.embed(vv), self.delta
        if t.family == "D":
            x1 = MPoly.var(vv, "x1")
            return (x1.scale(-t.sign), MPoly.var(vv, "v").scale(2))
        return None


def _gamma(t: SingularityType) -> tuple[list[MPoly], MPoly]:
    """gamma_0..2 over (v,)+params, and delta, from the map components."""
    spec = build_map(t)
    params = params_of(t)
    full = ("u", "v") + params
    vv = ("v",) + params
    u = MPoly.var(full, "u")
    v = MPoly.var(full, "v")
    delta = parse_poly(_DELTA_TEXT[t.k], full)
    G = [c.embed(full) - MPoly.var(full, f"x{i}") for i, c in enumerate(spec.components[:3])]
    g0 = G[0] - (u ** 3).scale(2) - u * v * delta
    g1 = G[1] + (u * u).scale(3)
    g2 = G[2] + u * delta
    return [g.embed(vv) for g in (g0, g1, g2)], delta.embed(vv)


def appendixC_build(g0: MPoly, g1: MPoly, g2: MPoly, delta: MPoly, v: str = "v") -> tuple[MPoly, MPoly]:
    """alpha = 3*g2^2 - delta^2*g1 and beta = 2*g1*g2 + 3*g0*delta + 3*v*g2*delta.

    Here u satisfies u*delta = -g2 and 3*u^2 = g1; eliminating u from
    2*u^3 + u*v*delta = g0 gives beta.
    """
    vv = MPoly.var(g0.vars, v)
    alpha = (g2 * g2).scale(3) - delta * delta * g1
    beta = (g1 * g2).scale(2) + (g0 * delta).scale(3) + (vv * g2 * delta).scale(3)
    return alpha, beta


def _vpoly(text: str, params: Sequence[str]) -> UPoly:
    vv = ("v",) + tuple(params)
    return up_from_mpoly(parse_poly(text, vv), "v", params)


def _a_char(t: SingularityType) -> CharSystem:
    params = params_of(t)
    F = generating_family(t).F
    A = up_from_mpoly(F, "v", params)
    return CharSystem(t, params, A, A.derivative())


def d_type_A(k: int, sign: int) -> UPoly:
    """v^k + x_{k-1}v^{k-1} + ... + x2*v^2 + x0*v - sign*x1^2/4 (no x1*v term)."""
    params = tuple(x_names(k))
    vv = ("v",) + params
    v = MPoly.var(vv, "v")
    A = v ** k + MPoly.var(vv, "x0") * v - (MPoly.var(vv, "x1") ** 2).scale(Fraction(sign, 4))
    for i in range(2, k):
        A = A + MPoly.var(vv, f"x{i}") * v ** i
    return up_from_mpoly(A, "v", params)


def _d_char(t: SingularityType) -> CharSystem:
    params = params_of(t)
    vv = ("v",) + params
    F = generating_family(t).F
    # v*F(u(v), v) with u(v) = -sign*x1/(2v): the u-terms collapse to -sign*x1^2/(4v).
    rest = F.substitute({"u": 0}).embed(vv)
    A_mp = MPoly.var(vv, "v") * rest - (MPoly.var(vv, "x1") ** 2).scale(Fraction(t.sign, 4))
    A = up_from_mpoly(A_mp, "v", params)
    if A != d_type_A(t.k, t.sign):
        raise FactoryError(f"{t}: A^x from the family disagrees with the closed form")
    delta = MPoly.var(vv, "v")
    return CharSystem(t, params, A, A.derivative(), delta=delta,
                      r=MPoly.constant(params, 1))


def _e_char(t: SingularityType) -> CharSystem:
    k = t.k
    params = params_of(t)
    full = ("u", "v") + params
    vv = ("v",) + params
    A = _vpoly(_A_TEXT[k], params)
    B = _vpoly(_B_TEXT[k], params)
    gam, delta = _gamma(t)
    alpha, beta = appendixC_build(*gam, delta)
    if alpha != A.to_mpoly(vv) or beta != B.to_mpoly(vv):
        raise FactoryError(f"{t}: displayed A^x/B^x disagree with the u-elimination")
    x0 = MPoly.var(params, "x0")
    B0 = B.map_coeffs(lambda c: x0 * c.derivative("x0")).truncated()
    spec = build_map(t)
    g = tuple(MPoly.var(full, f"x{i}") - c.embed(full) for i, c in enumerate(spec.components[:3]))
    r_lit = parse_poly(_R_TEXT[k], params)
    g2v = up_from_mpoly(g[2], "v", ("u",) + params)
    dv = up_from_mpoly(delta.embed(full), "v", ("u",) + params)
    r_res = resultant(g2v, dv).scale(_R_SCALE[k])
    if r_res.embed(("u",) + params) != r_lit.embed(("u",) + params):
        raise FactoryError(f"{t}: r from Res_v(g2, delta) disagrees with the display")
    aux = {}
    if k == 6:
        aux = e6_aux()
    return CharSystem(t, params, A, B, B0, delta, r_lit, g, aux)


def recompute_r(t: SingularityType) -> MPoly:
    """r_k from its defining resultant scale * Res_v(g2, delta)."""
    cs = char_system(t)
    full = cs.full_vars
    rest = ("u",) + cs.params
    g2v = up_from_mpoly(cs.g[2], "v", rest)
    dv = up_from_mpoly(cs.delta.embed(full), "v", rest)
    return resultant(g2v, dv).scale(_R_SCALE[t.k]).embed(rest).drop_unused().embed(cs.params)


_CHAR_CACHE: dict[SingularityType, CharSystem] = {}
_CHAR_LOCK = threading.Lock()


def char_system(t: SingularityType) -> CharSystem:
    with _CHAR_LOCK:
        hit = _CHAR_CACHE.get(t)
    if hit is not None:
        return hit
    if t.family == "A":
        cs = _a_char(t)
    elif t.family == "D":
        cs = _d_char(t)
    elif t.family == "E":
        cs = _e_char(t)
    else:
        raise InvalidType("Morin and cross-cap types have no characteristic system; use morin_theta")
    with _CHAR_LOCK:
        _CHAR_CACHE[t] = cs
    return cs


def clear_fraction(f: MPoly, var: str, num: MPoly, den: MPoly) -> MPoly:
    """den^d * f(var = num/den) with d = deg_var f, as a polynomial."""
    cs = f.coefficients_in(var)
    d = len(cs) - 1
    out = MPoly.zero(f.vars, f.modulus)
    npow = MPoly.constant(f.vars, 1, f.modulus)
    for j, c in enumerate(cs):
        if c:
            out = out + c * npow * den ** (d - j)
        npow = npow * num
    return out


@dataclass(frozen=True)
class E6Aux:
    k0: UPoly           # printed form
    k1: UPoly
    H: MPoly            # Res_u of the printed pair
    k0_derived: UPoly   # -16*x5^4 * g0(u, -x4/(2x5))
    k1_derived: UPoly   # 4*x5 * g1(u, -x4/(2x5))
    H_derived: MPoly


_E6_AUX: list = []


def e6_aux() -> E6Aux:
    if _E6_AUX:
        return _E6_AUX[0]
    params = params_of(SingularityType("E", k=6))
    up = ("u",) + params
    k0 = up_from_mpoly(parse_poly(K0_PRINTED, up), "u", params)
    k1 = up_from_mpoly(parse_poly(K1_PRINTED, up), "u", params)
    full = ("u", "v") + params
    spec = build_map(SingularityType("E", k=6))
    g = [MPoly.var(full, f"x{i}") - c.embed(full) for i, c in enumerate(spec.components[:3])]
    num = -MPoly.var(full, "x4")
    den = MPoly.var(full, "x5").scale(2)
    k0d = clear_fraction(g[0], "v", num, den).scale(Fraction(-1)).embed(up)
    k1d = clear_fraction(g[1], "v", num, den).exact_div(MPoly.var(full, "x5")).embed(up)
    k0d = up_from_mpoly(k0d, "u", params)
    k1d = up_from_mpoly(k1d, "u", params)
    out = E6Aux(k0, k1, resultant(k0, k1), k0d, k1d, resultant(k0d, k1d))
    _E6_AUX.append(out)
    return out


# ----------------------------------------------------------------------------
# Theta


@dataclass(frozen=True)
class ThetaResult:
    type: SingularityType
    theta: MPoly
    R: MPoly
    S: MPoly | None
    r: MPoly
    divided: bool


_THETA_CACHE: dict = {}
_THETA_LOCK = threading.Lock()


def _auto_strategy(cs: CharSystem) -> str:
    if cs.type.family == "E" or cs.A.declared_degree >= 6:
        return "hybrid"
    return "direct"


def compute_R(cs: CharSystem, strategy: str = "auto", budget=None, **kw) -> MPoly:
    if strategy == "auto":
        strategy = _auto_strategy(cs)
    if strategy == "direct":
        return resultant(cs.A, cs.B)
    if strategy in ("bareiss", "prs"):
        return resultant(cs.A, cs.B, method=strategy)
    return resultant_modular(cs.A, cs.B, strategy, budget, weights=cs.weights, **kw)


def compute_S(cs: CharSystem, strategy: str = "auto", budget=None, **kw) -> MPoly:
    if strategy == "auto":
        strategy = _auto_strategy(cs)
    if strategy in ("direct", "bareiss", "prs"):
        return psc(cs.A, cs.B, 1)
    return psc_modular(cs.A, cs.B, 1, strategy, budget, weights=cs.weights, **kw)


def build_theta(t: SingularityType, strategy: str = "auto", budget=None, with_S: bool = True,
                verify: bool = True, **kw) -> ThetaResult:
    """Theta = Res_v(A, B) (A, D types) or Res_v(A, B)/r^2 (E types)."""
    key = (t, with_S)
    with _THETA_LOCK:
        hit = _THETA_CACHE.get(key) or _THETA_CACHE.get((t, True))
    if hit is not None:
        return hit
    cs = char_system(t)
    R = compute_R(cs, strategy, budget, **kw)
    S = None
    if with_S and t.family == "E":
        S = compute_S(cs, strategy, budget, **kw)
    if t.family == "E":
        r2 = cs.r * cs.r
        try:
            theta = R.exact_div(r2)
        except NotDivisible as exc:
            raise FactoryError(f"{t}: r^2 does not divide Res_v(A, B)") from exc
        if verify and theta * r2 != R:
            raise FactoryError(f"{t}: r^2 * Theta != R")
        res = ThetaResult(t, theta, R, S, cs.r, True)
    else:
        res = ThetaResult(t, R, R, S, MPoly.constant(cs.params, 1), False)
    with _THETA_LOCK:
        _THETA_CACHE[key] = res
    return res


def leading_in(f: MPoly, var: str) -> tuple[int, MPoly]:
    cs = f.coefficients_in(var)
    return len(cs) - 1, cs[-1]


def b0_leading_terms(t: SingularityType) -> tuple[MPoly, MPoly]:
    """Res_v(A, B0) and Psc_v(A, B0) for an E type (B0 keeps only the x0 terms of B)."""
    cs = char_system(t)
    return resultant(cs.A, cs.B0), psc(cs.A, cs.B0, 1)


def delta_resultants(t: SingularityType) -> tuple[MPoly, MPoly]:
    """(Res_v(A, delta), Res_v(B, delta)) for an E type."""
    cs = char_system(t)
    d = up_from_mpoly(cs.delta, "v", cs.params)
    return resultant(cs.A, d), resultant(cs.B, d)


def e8_J() -> MPoly:
    """J with Res_v(B, delta_8) = 4*x7*J*r8, by exact division."""
    t = SingularityType("E", k=8)
    cs = char_system(t)
    _, rb = delta_resultants(t)
    return rb.exact_div(MPoly.var(cs.params, "x7").scale(4) * cs.r)


def e7_split_residual() -> MPoly:
    """g2 - (u + x4)*delta7 - 2*Delta*v - x2 + x4*x5; identically zero."""
    t = SingularityType("E", k=7)
    cs = char_system(t)
    full = cs.full_vars
    u, v = MPoly.var(full, "u"), MPoly.var(full, "v")
    x = {n: MPoly.var(full, n) for n in cs.params}
    Delta = x["x3"] - x["x4"] * x["x6"]
    return (cs.g[2] - (u + x["x4"]) * cs.delta.embed(full) - (Delta * v).scale(2)
            - x["x2"] + x["x4"] * x["x5"])


def e7_vhat_identity() -> MPoly:
    """(2*Delta)^2 * delta7(vhat) - r7 with vhat = (x4*x5 - x2)/(2*Delta); zero."""
    t = SingularityType("E", k=7)
    cs = char_system(t)
    vv = ("v",) + cs.params
    x = {n: MPoly.var(vv, n) for n in cs.params}
    num = x["x4"] * x["x5"] - x["x2"]
    den = (x["x3"] - x["x4"] * x["x6"]).scale(2)
    return clear_fraction(cs.delta, "v", num, den).embed(vv) - cs.r.embed(vv)


def e6_division_quotients() -> tuple[MPoly, MPoly]:
    """Exact quotients of 4*x5^6*A - 3*r6^2 and 4*x5^4*B - (x4^2 - 4*x1*x5)*r6 by delta6."""
    t = SingularityType("E", k=6)
    cs = char_system(t)
    vv = ("v",) + cs.params
    x = {n: MPoly.var(vv, n) for n in cs.params}
    r6 = cs.r.embed(vv)
    d = cs.delta
    qa = ((x["x5"] ** 6).scale(4) * cs.A.to_mpoly(vv) - (r6 * r6).scale(3)).exact_div(d)
    qb = ((x["x5"] ** 4).scale(4) * cs.B.to_mpoly(vv)
          - (x["x4"] ** 2 - (x["x1"] * x["x5"]).scale(4)) * r6).exact_div(d)
    return qa, qb


# ----------------------------------------------------------------------------
# Morin


def crosscap_theta(m: int, names: Sequence[str] | None = None) -> MPoly:
    """sum_{i<m} (y_{m-1+i}^2 - y_i^2 * y_{2m-1})^2."""
    names = tuple(names or [f"y{i}" for i in range(1, 2 * m)])
    y = [MPoly.var(names, n) for n in names]
    out = MPoly.zero(names)
    for i in range(1, m):
        term = y[m - 2 + i] ** 2 - y[i - 1] ** 2 * y[2 * m - 2]
        out = out + term * term
    return out


def crosscap_resultant_form() -> MPoly:
    """Res_v(y1*v - y2, v^2 - y3) for the 2-dimensional cross cap."""
    names = ("y1", "y2", "y3")
    tv = ("v",) + names
    a = up_from_mpoly(parse_poly("y1*v - y2", tv), "v", names)
    b = up_from_mpoly(parse_poly("v^2 - y3", tv), "v", names)
    return resultant(a, b)


def h24_pair(names: Sequence[str] = ("y1", "y2", "y3", "y4", "y5")) -> tuple[UPoly, UPoly]:
    names = tuple(names)
    tv = ("t",) + names
    y1, y2, y3, y4, y5 = names
    a = up_from_mpoly(parse_poly(f"-{y4} + {y1}*t + {y2}*t^2", tv), "t", names)
    b = up_from_mpoly(parse_poly(f"-{y5} + {y3}*t + t^3", tv), "t", names)
    return a, b


def morin_theta(t: SingularityType, form: str = "default") -> MPoly:
    """Closed-form Theta for cross caps and the supported Morin maps.

    ``form="resultant"`` gives y2^2 - y1^2*y3 for the 2-dimensional cross cap
    instead of its square.
    """
    if t.family == "CrossCap":
        if form == "resultant":
            if t.m != 2:
                raise Unsupported("the resultant form exists for the 2-dimensional cross cap only")
            return crosscap_resultant_form()
        return crosscap_theta(t.m)
    if t.family != "Morin":
        raise InvalidType("morin_theta needs a Morin or cross-cap type")
    m, n, r = t.m, t.n, t.r
    names = tuple(f"y{i}" for i in range(1, n + 1))
    if r == 1:
        c = n - m + 1
        base = crosscap_theta(c) if not (c == 2 and form == "resultant") else crosscap_resultant_form()
        _, tgt = morin_crosscap_permutation(m, n)
        rename = {f"y{j + 1}": names[tgt[j]] for j in range(2 * c - 1)}
        return _rename(base, rename, names)
    if r == 2 and n == m + 1 and m in (4, 5):
        if m == 4:
            a, b = h24_pair(names)
            return resultant(a, b)
        # Morin(5,6,2) is h24 with x4 passed through: the target slot y4 is free.
        sub = ("y1", "y2", "y3", "y5", "y6")
        a, b = h24_pair(sub)
        return resultant(a, b).embed(names)
    raise Unsupported(f"no closed-form Theta for Morin{(m, n, r)}")


def morin_S(t: SingularityType) -> MPoly:
    if t.family == "Morin" and (t.m, t.n, t.r) == (4, 5, 2):
        return psc(*h24_pair(), 1)
    if t.family == "CrossCap" and t.m == 2:
        names = ("y1", "y2", "y3")
        tv = ("v",) + names
        a = up_from_mpoly(parse_poly("y1*v - y2", tv), "v", names)
        b = up_from_mpoly(parse_poly("v^2 - y3", tv), "v", names)
        return psc(a, b, 1)
    raise Unsupported("Psc is defined here for h24 and the 2-dimensional cross cap")


def _rename(f: MPoly, mapping: dict[str, str], target: Sequence[str]) -> MPoly:
    renamed = tuple(mapping.get(v, v) for v in f.vars)
    return MPoly(renamed, dict(f.terms), f.modulus, _trusted=True).embed(target)


def suspended_theta(theta: MPoly, spec) -> MPoly:
    """Theta(x)^2 + |z|^2 for a suspended map spec."""
    if spec.suspended_from is None:
        return theta
    tgt = spec.target_vars
    out = theta.embed(tgt)
    out = out * out
    for i in spec.zero_slots:
        z = MPoly.var(tgt, tgt[i])
        out = out + z * z
    return out


# ----------------------------------------------------------------------------
# specialization: R, S, Theta at a partially numeric point


def _specialize_pair(t: SingularityType, point: dict, keep: Sequence[str], modulus: int | None = None):
    cs = char_system(t)
    keep = tuple(keep)
    A = cs.A.specialize(point, keep)
    B = cs.B.specialize(point, keep)
    if modulus is not None:
        A, B = A.reduce(modulus), B.reduce(modulus)
    return cs, A, B


def specialized_R(t: SingularityType, point: dict, keep: Sequence[str] = (), modulus: int | None = None) -> MPoly:
    """Res_v(A, B) with the parameters in ``point`` fixed first (formal degrees kept)."""
    _, A, B = _specialize_pair(t, point, keep, modulus)
    return resultant(A, B)


def specialized_S(t: SingularityType, point: dict, keep: Sequence[str] = (), modulus: int | None = None) -> MPoly:
    _, A, B = _specialize_pair(t, point, keep, modulus)
    return psc(A, B, 1)


def specialized_theta(t: SingularityType, point: dict, keep: Sequence[str] = ()) -> MPoly:
    """Theta at a partial point, as R(point) / r(point)^2 (exact)."""
    cs = char_system(t)
    R = specialized_R(t, point, keep)
    if t.family != "E":
        return R
    r = cs.r.substitute(point).embed(tuple(keep))
    if not r:
        raise ZeroDivisionError("r vanishes at the sampling point")
    return R.exact_div(r * r)
