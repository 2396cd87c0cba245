"""Sylvester matrices, resultants and principal subresultant coefficients.

Layout: the first ``deg(b)`` rows carry the shifted coefficients of ``a``
(highest power first), the remaining ``deg(a)`` rows those of ``b``.  With
this layout ``Res(x*v - y, v^2 - z) = y^2 - z*x^2``.
"""

from __future__ import annotations

from typing import Sequence

from . import dense
from .mpoly import MPoly
from .upoly import UPoly

BAREISS_MAX = 14


class ResultantError(ValueError):
    pass


def _check_pair(a: UPoly, b: UPoly) -> None:
    if a.var != b.var:
        raise ResultantError(f"main variables differ: {a.var} vs {b.var}")
    if a.params != b.params or a.modulus != b.modulus:
        raise ResultantError("coefficient rings differ")
    if a.declared_degree < 1 or b.declared_degree < 1:
        raise ResultantError("declared degrees must be at least 1")
    if a.is_zero() and b.is_zero():
        raise ResultantError("both polynomials are zero")


def subresultant_matrix(a: UPoly, b: UPoly, j: int = 0) -> list[list[MPoly]]:
    """Square matrix whose determinant is the j-th principal subresultant coefficient.

    Rows are ``v^(m-j-1) a, ..., a, v^(n-j-1) b, ..., b``; columns are the powers
    ``v^(n+m-j-1)`` down to ``v^j``.  ``j = 0`` gives the Sylvester matrix.
    """
    n, m = a.declared_degree, b.declared_degree
    if not 0 <= j < min(n, m) + 1:
        raise ResultantError(f"subresultant index {j} out of range")
    size = n + m - 2 * j
    zero = MPoly.zero(a.params, a.modulus)
    top = n + m - j - 1
    rows = []
    for poly, shifts in ((a, m - j), (b, n - j)):
        for i in range(shifts - 1, -1, -1):
            row = []
            for col in range(size):
                c = top - col - i
                row.append(poly.coeffs[c] if 0 <= c <= poly.declared_degree else zero)
            rows.append(row)
    return rows


def sylvester(a: UPoly, b: UPoly) -> list[list[MPoly]]:
    _check_pair(a, b)
    return subresultant_matrix(a, b, 0)


def bareiss_det(matrix: Sequence[Sequence[MPoly]]) -> MPoly:
    """Fraction-free Gaussian elimination; every division is exact."""
    n = len(matrix)
    if n == 0:
        raise ResultantError("empty matrix")
    m = [list(r) for r in matrix]
    proto = m[0][0]
    one = MPoly.constant(proto.vars, 1, proto.modulus)
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            piv = None
            best = None
            for i in range(k + 1, n):
                if m[i][k] and (best is None or len(m[i][k]) < best):
                    piv, best = i, len(m[i][k])
            if piv is None:
                return MPoly.zero(proto.vars, proto.modulus)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            mik = rowi[k]
            for j in range(k + 1, n):
                t = pk * rowi[j]
                if mik and rowk[j]:
                    t = t - mik * rowk[j]
                if prev is not one and t:
                    t = t.exact_div(prev)
                rowi[j] = t
            rowi[k] = MPoly.zero(proto.vars, proto.modulus)
        prev = pk
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def _pseudo_rem(f: list[MPoly], g: list[MPoly]) -> list[MPoly]:
    """prem(f, g) = lc(g)^(deg f - deg g + 1) * f mod g, coefficient lists low-to-high."""
    f = list(f)
    df, dg = len(f) - 1, len(g) - 1
    lc = g[-1]
    for _ in range(df - dg + 1):
        if len(f) - 1 < dg:
            f = [c * lc for c in f]
            continue
        top = f[-1]
        shift = len(f) - 1 - dg
        f = [c * lc for c in f[:-1]]
        if top:
            for i in range(dg):
                if g[i]:
                    f[shift + i] = f[shift + i] - top * g[i]
    while f and not f[-1]:
        f.pop()
    return f


def _prs_resultant(a: list[MPoly], b: list[MPoly]) -> MPoly:
    """Subresultant PRS for lists with nonzero leading coefficients."""
    proto = a[0]
    one = MPoly.constant(proto.vars, 1, proto.modulus)
    A, B = a, b
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
    g = one
    h = one
    while len(B) > 1:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _pseudo_rem(A, B)
        if not R:
            return MPoly.zero(proto.vars, proto.modulus)
        A = B
        div = g * h ** delta
        B = [c.exact_div(div) if c else c for c in R]
        g = A[-1]
        if delta == 0:
            h = h
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))
    da = len(A) - 1
    lb = B[0]
    if da == 0:
        res = h
    elif da == 1:
        res = lb
    else:
        res = (lb ** da).exact_div(h ** (da - 1))
    return -res if s < 0 else res


def _strip_formal(a: UPoly, b: UPoly):
    """Apply the vanishing-leading-coefficient rule until both leads are nonzero.

    Returns ``(factor, a_coeffs, b_coeffs)`` with Res(a, b) = factor * Res(a', b')
    where a', b' have nonzero leading coefficients, or ``None`` as the first
    entry when the resultant is forced to vanish.
    """
    fa = list(a.coeffs)
    fb = list(b.coeffs)
    proto = fa[0]
    factor = MPoly.constant(proto.vars, 1, proto.modulus)
    while True:
        if len(fa) == 1 or len(fb) == 1:
            return factor, fa, fb
        if not fb[-1]:
            if not fa[-1]:
                return None, fa, fb
            factor = factor * fa[-1]
            fb.pop()
            continue
        if not fa[-1]:
            m = len(fb) - 1
            factor = factor * fb[-1]
            if m % 2:
                factor = -factor
            fa.pop()
            continue
        return factor, fa, fb


def resultant(a: UPoly, b: UPoly, method: str = "auto") -> MPoly:
    """Res_v(a, b) for the declared degrees.

    ``method`` is ``"bareiss"``, ``"prs"`` or ``"auto"`` (Bareiss up to 14x14).
    """
    _check_pair(a, b)
    proto = a.coeffs[0]
    if method == "auto":
        method = "bareiss" if a.declared_degree + b.declared_degree <= BAREISS_MAX else "prs"
    if not a.params and method != "bareiss":
        p = a.modulus
        val = dense.resultant([c.constant_value() for c in a.coeffs],
                              [c.constant_value() for c in b.coeffs], p,
                              a.declared_degree, b.declared_degree)
        return MPoly.constant(proto.vars, val, p)
    factor, fa, fb = _strip_formal(a, b)
    if factor is None:
        return MPoly.zero(proto.vars, proto.modulus)
    if len(fa) == 1:
        return factor * fa[0] ** (len(fb) - 1)
    if len(fb) == 1:
        return factor * fb[0] ** (len(fa) - 1)
    if method == "bareiss":
        core = bareiss_det(subresultant_matrix(UPoly(a.var, fa), UPoly(b.var, fb), 0))
    elif method == "prs":
        core = _prs_resultant(fa, fb)
    else:
        raise ValueError(f"unknown method {method!r}")
    return factor * core


def _minor_det(a: UPoly, b: UPoly, j: int) -> MPoly:
    mat = subresultant_matrix(a, b, j)
    if not mat:
        return MPoly.constant(a.params, 1, a.modulus)
    return bareiss_det(mat)


def subresultant_chain(a: UPoly, b: UPoly) -> list[MPoly]:
    """[Res^(0), ..., Res^(k)] with k = min(deg a, deg b); an empty minor is 1."""
    _check_pair(a, b)
    k = min(a.declared_degree, b.declared_degree)
    return [resultant(a, b)] + [_minor_det(a, b, j) for j in range(1, k + 1)]


def psc(a: UPoly, b: UPoly, j: int = 1) -> MPoly:
    """Principal subresultant coefficient Res^(j); ``j = 1`` is Psc."""
    _check_pair(a, b)
    if j == 0:
        return resultant(a, b)
    if j > min(a.declared_degree, b.declared_degree):
        raise ResultantError("subresultant index beyond min(deg a, deg b)")
    return _minor_det(a, b, j)


def psc1(a: UPoly, b: UPoly) -> MPoly:
    return psc(a, b, 1)
