"""Sparse multivariate polynomials over Q or GF(p).

Monomials are packed into Python integers so that exponent vectors add by
integer addition and the graded lexicographic order (x0 < x1 < ...) is the
integer order of the packed keys.  Slot ``i`` holds the exponent of ``x_i``;
the total degree sits above all slots.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .rational import Scalar, normalize, reduce_mod

SLOT_BITS = 16
MAX_EXPONENT = (1 << (SLOT_BITS - 1)) - 1
_SLOT_MASK = (1 << SLOT_BITS) - 1


class ArityMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def _guard_mask(n: int) -> int:
    g = 1 << (SLOT_BITS - 1)
    mask = 0
    for i in range(n):
        mask |= g << (i * SLOT_BITS)
    return mask


def pack(exps: Sequence[int]) -> int:
    key = 0
    deg = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (i * SLOT_BITS)
        deg += e
    return key | (deg << (len(exps) * SLOT_BITS))


def unpack(key: int, n: int) -> tuple[int, ...]:
    return tuple((key >> (i * SLOT_BITS)) & _SLOT_MASK for i in range(n))


def key_degree(key: int, n: int) -> int:
    return key >> (n * SLOT_BITS)


def exponent(key: int, i: int) -> int:
    return (key >> (i * SLOT_BITS)) & _SLOT_MASK


def divides(small: int, big: int, n: int) -> bool:
    d = big - small
    return d >= 0 and not (d & _guard_mask(n))


class MPoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to coefficients.

    ``modulus`` is ``None`` for rational coefficients, or a prime ``p`` in which
    case every coefficient is an int in ``[1, p)``.
    """

    __slots__ = ("vars", "terms", "modulus", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[int, Scalar] | None = None,
                 modulus: int | None = None, *, _trusted: bool = False):
        self.vars = tuple(vars)
        self.modulus = modulus
        self._hash = None
        if _trusted:
            self.terms = terms if terms is not None else {}
            return
        clean: dict[int, Scalar] = {}
        if terms:
            if modulus is None:
                for k, c in terms.items():
                    c = normalize(c)
                    if c:
                        clean[k] = c
            else:
                for k, c in terms.items():
                    c = reduce_mod(c, modulus)
                    if c:
                        clean[k] = c
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, vars: Sequence[str], modulus: int | None = None) -> "MPoly":
        return cls(vars, {}, modulus, _trusted=True)

    @classmethod
    def constant(cls, vars: Sequence[str], c, modulus: int | None = None) -> "MPoly":
        return cls(vars, {pack([0] * len(vars)): c}, modulus)

    @classmethod
    def var(cls, vars: Sequence[str], name: str, modulus: int | None = None) -> "MPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {pack(e): 1}, modulus, _trusted=True)

    @classmethod
    def gens(cls, vars: Sequence[str], modulus: int | None = None) -> list["MPoly"]:
        return [cls.var(vars, v, modulus) for v in vars]

    @classmethod
    def from_terms(cls, vars: Sequence[str], items: Iterable[tuple[Scalar, Sequence[int]]],
                   modulus: int | None = None) -> "MPoly":
        acc: dict[int, Scalar] = {}
        n = len(vars)
        for c, e in items:
            if len(e) != n:
                raise ArityMismatch(f"monomial of length {len(e)} for arity {n}")
            k = pack(e)
            acc[k] = acc.get(k, 0) + c
        return cls(vars, acc, modulus)

    def _new(self, terms: dict) -> "MPoly":
        return MPoly(self.vars, terms, self.modulus, _trusted=True)

    # basic queries -------------------------------------------------------
    @property
    def arity(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, 0)

    def items(self):
        """(exponent tuple, coefficient) pairs in descending canonical order."""
        n = self.arity
        for k in sorted(self.terms, reverse=True):
            yield unpack(k, n), self.terms[k]

    def leading_key(self) -> int:
        return max(self.terms)

    def leading_term(self) -> tuple[tuple[int, ...], Scalar]:
        k = max(self.terms)
        return unpack(k, self.arity), self.terms[k]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return key_degree(max(self.terms), self.arity)

    def degree(self, var: str | int) -> int:
        i = self._index(var)
        if not self.terms:
            return -1
        return max(exponent(k, i) for k in self.terms)

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(i) for i in range(self.arity))

    def free_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if self.terms and self.degree(i) > 0)

    def _index(self, var: str | int) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.arity:
                raise ArityMismatch(f"variable index {var} out of range")
            return var
        try:
            return self.vars.index(var)
        except ValueError:
            raise ArityMismatch(f"unknown variable {var!r}") from None

    def _check(self, other: "MPoly") -> None:
        if self.vars != other.vars:
            raise ArityMismatch(f"variable lists differ: {self.vars} vs {other.vars}")
        if self.modulus != other.modulus:
            raise ArityMismatch("coefficient rings differ")

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.constant(self.vars, other, self.modulus)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "MPoly":
        other = self._lift(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        p = self.modulus
        for k, c in small.items():
            s = out.get(k, 0) + c
            if p is not None:
                s %= p
            if s:
                out[k] = normalize(s) if p is None else s
            else:
                out.pop(k, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        p = self.modulus
        if p is None:
            return self._new({k: -c for k, c in self.terms.items()})
        return self._new({k: p - c for k, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MPoly":
        return self._lift(other) - self

    def scale(self, c) -> "MPoly":
        p = self.modulus
        if p is not None:
            c = reduce_mod(c, p)
            if not c:
                return self._new({})
            return self._new({k: v * c % p for k, v in self.terms.items()})
        c = normalize(c)
        if not c:
            return self._new({})
        if c == 1:
            return self
        if isinstance(c, int) and all(isinstance(v, int) for v in self.terms.values()):
            return self._new({k: v * c for k, v in self.terms.items()})
        return self._new({k: normalize(v * c) for k, v in self.terms.items()})

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return self._new({})
        out: dict[int, Scalar] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        p = self.modulus
        if p is None:
            if all(type(c) is int for c in out.values()):
                return self._new({k: c for k, c in out.items() if c})
            return self._new({k: normalize(c) for k, c in out.items() if c})
        res = {}
        for k, c in out.items():
            c %= p
            if c:
                res[k] = c
        return self._new(res)

    def __rmul__(self, other) -> "MPoly":
        return self.scale(other)

    def __pow__(self, e: int) -> "MPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = MPoly.constant(self.vars, 1, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return (self.vars == other.vars and self.modulus == other.modulus
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.terms.get(0, 0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, self.modulus, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .serialize import to_text
        return f"MPoly({to_text(self)!r})"

    def __str__(self) -> str:
        from .serialize import to_text
        return to_text(self)

    # exact division ------------------------------------------------------
    def exact_div(self, g: "MPoly") -> "MPoly":
        """Quotient ``q`` with ``self == q*g``; raises NotDivisible otherwise."""
        self._check(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self._new({})
        n = self.arity
        p = self.modulus
        lk = max(g.terms)
        lc = g.terms[lk]
        if p is None:
            inv = None if lc in (1, -1) else Fraction(1, 1) / lc
        else:
            inv = pow(lc, -1, p)
        rest = [(k, c) for k, c in g.terms.items() if k != lk]
        rem = dict(self.terms)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quot: dict[int, Scalar] = {}
        while heap:
            k = -heapq.heappop(heap)
            c = rem.pop(k, 0)
            if not c:
                continue
            if not divides(lk, k, n):
                raise NotDivisible("nonzero remainder in multivariate division")
            qk = k - lk
            if p is not None:
                qc = c * inv % p
            elif inv is None:
                qc = c * lc
            else:
                qc = normalize(c * inv)
            quot[qk] = qc
            for dk, dc in rest:
                t = qk + dk
                if t in rem:
                    s = rem[t] - qc * dc
                    if p is not None:
                        s %= p
                    rem[t] = s
                else:
                    s = -qc * dc
                    if p is not None:
                        s %= p
                    rem[t] = s
                    heapq.heappush(heap, -t)
        return self._new(quot)

    def divides_exactly(self, f: "MPoly") -> bool:
        try:
            f.exact_div(self)
        except NotDivisible:
            return False
        return True

    # calculus and substitution --------------------------------------------
    def derivative(self, var: str | int) -> "MPoly":
        i = self._index(var)
        n = self.arity
        step = (1 << (i * SLOT_BITS)) + (1 << (n * SLOT_BITS))
        out = {}
        p = self.modulus
        for k, c in self.terms.items():
            e = exponent(k, i)
            if e:
                d = c * e
                if p is not None:
                    d %= p
                if d:
                    out[k - step] = d
        return self._new(out)

    def evaluate(self, point: Sequence) -> Scalar:
        """Exact value at a full point (one entry per variable)."""
        if len(point) != self.arity:
            raise ArityMismatch(f"point of length {len(point)} for arity {self.arity}")
        p = self.modulus
        if p is None:
            pt = [normalize(x) for x in point]
        else:
            pt = [reduce_mod(x, p) for x in point]
        powers: list[dict[int, Scalar]] = [dict() for _ in pt]
        total: Scalar = 0
        n = self.arity
        for k, c in self.terms.items():
            term = c
            for i in range(n):
                e = exponent(k, i)
                if e:
                    cache = powers[i]
                    v = cache.get(e)
                    if v is None:
                        v = pt[i] ** e if p is None else pow(pt[i], e, p)
                        cache[e] = v
                    term = term * v
                    if p is not None:
                        term %= p
            total += term
        if p is not None:
            return total % p
        return normalize(total)

    def evaluate_mod(self, point: Sequence, p: int):
        from .rational import PrimeField
        return PrimeField(p, self.reduce(p).evaluate(point))

    def reduce(self, p: int) -> "MPoly":
        """Image in GF(p)[x]."""
        if self.modulus == p:
            return self
        if self.modulus is not None:
            raise ValueError("already reduced modulo a different prime")
        return MPoly(self.vars, {k: reduce_mod(c, p) for k, c in self.terms.items()}, p)

    def lift_symmetric(self) -> "MPoly":
        """Integer polynomial from GF(p) coefficients in the symmetric range."""
        p = self.modulus
        if p is None:
            return self
        h = p // 2
        return MPoly(self.vars, {k: (c - p if c > h else c) for k, c in self.terms.items()})

    def substitute(self, values: Mapping[str, object]) -> "MPoly":
        """Replace some variables by scalars or MPolys (over the same variable list)."""
        idx = {self._index(v): val for v, val in values.items()}
        n = self.arity
        scalar_idx = {i: v for i, v in idx.items() if not isinstance(v, MPoly)}
        poly_idx = {i: v for i, v in idx.items() if isinstance(v, MPoly)}
        p = self.modulus
        out: dict[int, Scalar] = {}
        poly_terms: list[tuple[tuple[int, ...], Scalar]] = []
        for k, c in self.terms.items():
            e = list(unpack(k, n))
            coef = c
            for i, val in scalar_idx.items():
                if e[i]:
                    coef = coef * (val ** e[i] if p is None else pow(reduce_mod(val, p), e[i], p))
                    e[i] = 0
            if poly_idx and any(e[i] for i in poly_idx):
                poly_terms.append((tuple(e), coef))
                continue
            nk = pack(e)
            out[nk] = out.get(nk, 0) + coef
        result = MPoly(self.vars, out, p)
        if poly_terms:
            cache: dict[tuple[int, int], MPoly] = {}
            for e, coef in poly_terms:
                rest = list(e)
                factor = MPoly.constant(self.vars, coef, p)
                for i, val in poly_idx.items():
                    if rest[i]:
                        key = (i, rest[i])
                        if key not in cache:
                            cache[key] = val ** rest[i]
                        factor = factor * cache[key]
                        rest[i] = 0
                factor = factor * MPoly(self.vars, {pack(rest): 1}, p, _trusted=True)
                result = result + factor
        return result

    def embed(self, vars: Sequence[str]) -> "MPoly":
        """Re-express over another variable list containing every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        n = self.arity
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append(vars.index(v))
            else:
                pos.append(None)
        out = {}
        m = len(vars)
        for k, c in self.terms.items():
            e = unpack(k, n)
            ne = [0] * m
            for i, ei in enumerate(e):
                if ei:
                    if pos[i] is None:
                        raise ArityMismatch(f"variable {self.vars[i]!r} is used but not in target list")
                    ne[pos[i]] = ei
            out[pack(ne)] = c
        return MPoly(vars, out, self.modulus, _trusted=True)

    def drop_unused(self, keep: Iterable[str] = ()) -> "MPoly":
        keep = set(keep)
        used = [v for i, v in enumerate(self.vars) if v in keep or (self.terms and self.degree(i) > 0)]
        return self.embed(used)

    def coefficients_in(self, var: str | int) -> list["MPoly"]:
        """Coefficients c_0..c_d with self = sum c_j var^j; same variable list."""
        i = self._index(var)
        n = self.arity
        d = self.degree(i)
        if d < 0:
            return [self._new({})]
        buckets: list[dict[int, Scalar]] = [dict() for _ in range(d + 1)]
        unit = (1 << (i * SLOT_BITS)) + (1 << (n * SLOT_BITS))
        for k, c in self.terms.items():
            e = exponent(k, i)
            buckets[e][k - e * unit] = c
        return [self._new(b) for b in buckets]

    def content(self) -> Scalar:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        from math import gcd, lcm
        if self.modulus is not None:
            raise ValueError("content is defined over Q only")
        if not self.terms:
            return 0
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return normalize(Fraction(num, den))

    def is_integral(self) -> bool:
        return self.modulus is None and all(isinstance(c, int) for c in self.terms.values())

    def weighted_degree(self, weights: Sequence[int]):
        from .weights import weighted_degree
        return weighted_degree(self, weights)


def poly_from_dense(vars: Sequence[str], var: str, coeffs: Sequence[MPoly]) -> MPoly:
    """Sum of coeffs[j] * var^j."""
    x = MPoly.var(vars, var, coeffs[0].modulus if coeffs else None)
    acc = MPoly.zero(vars, x.modulus)
    power = MPoly.constant(vars, 1, x.modulus)
    for j, c in enumerate(coeffs):
        if j:
            power = power * x
        if c:
            acc = acc + c * power
    return acc
