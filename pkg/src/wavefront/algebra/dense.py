"""Dense univariate arithmetic on coefficient lists (lowest degree first).

Two coefficient domains are supported: exact rationals (``p is None``) and
GF(p) with ints in ``[0, p)``.  Lists are kept trimmed (no trailing zeros)
except where noted; the zero polynomial is ``[]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rational import normalize


def trim(f: Sequence) -> list:
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def _red(c, p):
    return c % p if p is not None else c


def degree(f: Sequence) -> int:
    return len(trim(f)) - 1


def add(f, g, p=None) -> list:
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]
    if p is not None:
        out = [c % p for c in out]
    return trim(out)


def sub(f, g, p=None) -> list:
    return add(f, [-c for c in g], p)


def mul(f, g, p=None) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    if p is not None:
        out = [c % p for c in out]
    return trim(out)


def scale(f, c, p=None) -> list:
    return trim([_red(a * c, p) for a in f])


def _inv(c, p):
    if p is None:
        return Fraction(1) / c
    return pow(c, -1, p)


def divmod_(f, g, p=None) -> tuple[list, list]:
    f = trim(f)
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return [], f
    inv = _inv(g[-1], p)
    r = list(f)
    q = [0] * (len(f) - len(g) + 1)
    dg = len(g) - 1
    for i in range(len(f) - len(g), -1, -1):
        c = r[i + dg]
        if not c:
            continue
        c = _red(c * inv, p)
        q[i] = c
        for j in range(dg + 1):
            r[i + j] = _red(r[i + j] - c * g[j], p)
    if p is None:
        q = [normalize(c) for c in q]
        r = [normalize(c) for c in r]
    return trim(q), trim(r[:dg] if dg else [])


def rem(f, g, p=None) -> list:
    return divmod_(f, g, p)[1]


def monic(f, p=None) -> list:
    f = trim(f)
    if not f:
        return f
    inv = _inv(f[-1], p)
    out = [_red(c * inv, p) for c in f]
    if p is None:
        out = [normalize(c) for c in out]
    return out


def gcd(f, g, p=None) -> list:
    """Monic gcd; gcd(0, 0) raises."""
    f, g = trim(f), trim(g)
    if not f and not g:
        raise ValueError("gcd of two zero polynomials")
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def xgcd(f, g, p=None) -> tuple[list, list, list]:
    """(d, s, t) with s*f + t*g = d and d the monic gcd."""
    r0, r1 = trim(f), trim(g)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        raise ValueError("gcd of two zero polynomials")
    inv = _inv(r0[-1], p)
    return monic(r0, p), scale(s0, inv, p), scale(t0, inv, p)


def inverse_mod(a, m, p=None) -> list:
    """a^-1 modulo m; raises ZeroDivisionError when gcd(a, m) != 1."""
    d, s, _ = xgcd(rem(a, m, p), m, p)
    if len(d) != 1:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return rem(s, m, p)


def derivative(f, p=None) -> list:
    return trim([_red(i * c, p) for i, c in enumerate(f)][1:])


def evaluate(f, x, p=None):
    acc = 0
    for c in reversed(f):
        acc = _red(acc * x + c, p)
    return normalize(acc) if p is None else acc


def resultant(f, g, p=None, df: int | None = None, dg: int | None = None):
    """Res(f, g) with formal degrees ``df``, ``dg`` (defaults: actual degrees).

    Uses the Euclidean recurrence over the field; the formal degrees matter only
    through the vanishing-leading-coefficient rule.
    """
    f, g = list(f), list(g)
    df = len(trim(f)) - 1 if df is None else df
    dg = len(trim(g)) - 1 if dg is None else dg
    f += [0] * (df + 1 - len(f))
    g += [0] * (dg + 1 - len(g))
    f, g = f[:df + 1], g[:dg + 1]
    if df < 0 or dg < 0:
        return 0
    sign = 1
    factor = 1
    # Strip formal leading zeros: Res(f,g) = lc(f) * Res(f, g_hat) when g's
    # formal leading coefficient vanishes, and (-1)**dg * lc(g) * Res(f_hat, g)
    # in the mirror case.
    while True:
        if df == 0:
            out = _red(factor * sign * f[0] ** dg, p)
            return normalize(out) if p is None else out
        if dg == 0:
            out = _red(factor * sign * g[0] ** df, p)
            return normalize(out) if p is None else out
        if not g[dg]:
            if not f[df]:
                return 0
            factor = _red(factor * f[df], p)
            g = g[:dg]
            dg -= 1
            continue
        if not f[df]:
            if dg % 2:
                sign = -sign
            factor = _red(factor * g[dg], p)
            f = f[:df]
            df -= 1
            continue
        break
    res = _euclid_resultant(f, g, p)
    out = _red(factor * sign * res, p)
    return normalize(out) if p is None else out


def _euclid_resultant(f, g, p):
    """Res for polynomials whose leading coefficients are nonzero."""
    res = 1
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return _red(res * g[0] ** df if p is None else res * pow(g[0], df, p), p)
        r = rem(f, g, p)
        if not r:
            return 0
        dr = len(r) - 1
        if df % 2 and dg % 2:
            res = -res
        lc = g[-1]
        res = _red(res * (lc ** (df - dr) if p is None else pow(lc, df - dr, p)), p)
        f, g = g, r


def squarefree_part(f, p=None) -> list:
    f = trim(f)
    if len(f) <= 1:
        return monic(f, p) if f else f
    d = derivative(f, p)
    if not d:
        return monic(f, p)
    g = gcd(f, d, p)
    return monic(divmod_(f, g, p)[0], p)


def compose_linear(f, a, b, p=None) -> list:
    """f(a*x + b)."""
    out: list = []
    for c in reversed(trim(f)):
        out = add(mul(out, [b, a], p), [c], p)
    return out


def discriminant(f, p=None):
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f) for the actual degree n."""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(f, derivative(f, p), p, n, n - 1)
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    if p is None:
        return normalize(Fraction(s * r) / f[-1])
    return s * r * pow(f[-1], -1, p) % p
