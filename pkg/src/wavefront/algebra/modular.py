"""Modular determinant and resultant pipeline.

Three strategies compute the same polynomial determinant:

* ``hybrid``: evaluate the matrix mod p at grid points with numpy, take batched
  determinants, Newton-interpolate on a lower set (shrunk by weighted
  homogeneity when weights are supplied), and combine primes by CRT.
* ``crt-primes``: symbolic fraction-free elimination over GF(p)[x] for each
  prime, then CRT coefficient by coefficient.
* ``evaluate-interpolate``: exact integer determinants at integer grid points
  and exact rational Newton interpolation; no primes involved.

The number of primes follows from a rigorous bound on the coefficients of the
determinant, the interpolation support from per-variable degree bounds (sum
over rows of the largest entry degree) and, when available, a weight grading.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .lowerset import LowerSet, build_lower_set, interpolate
from .mpoly import MPoly, SLOT_BITS, exponent, pack
from .rational import primes_below
from .resultant import bareiss_det, subresultant_matrix, ResultantError
from .upoly import UPoly

STRATEGIES = ("evaluate-interpolate", "crt-primes", "hybrid")
PRIME_START = 1 << 31
BATCH = 16384


class BudgetExceeded(RuntimeError):
    pass


class UnluckyPrimeExhaustion(RuntimeError):
    pass


class Budget:
    """Wall-clock allowance in seconds; ``None`` means unlimited."""

    def __init__(self, seconds: float | None = None):
        self.seconds = seconds
        self.start = time.monotonic()

    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def check(self, what: str = "") -> None:
        if self.seconds is not None and self.elapsed() > self.seconds:
            raise BudgetExceeded(f"budget of {self.seconds:.1f}s exceeded {what}".strip())


def _as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


# ----------------------------------------------------------------------------
# matrix analysis


@dataclass
class MatrixPlan:
    vars: tuple[str, ...]
    entries: list[MPoly]                  # distinct nonzero integer entries
    layout: list[list[int]]               # entry index per cell, -1 for zero
    row_scale: list[int]                  # denominators cleared per row
    bounds: tuple[int, ...]               # per-variable degree bound of det
    coeff_bound: int                      # |coefficient| bound of the scaled det
    grading: tuple[int, ...] | None = None   # weights when the matrix is graded
    wdeg: int | None = None               # weighted degree of the det
    interp_vars: list[int] = field(default_factory=list)
    dropped: int | None = None

    @property
    def size(self) -> int:
        return len(self.layout)


def _l1(f: MPoly) -> int:
    return sum(abs(int(c)) for c in f.terms.values())


def analyze(matrix: Sequence[Sequence[MPoly]], weights: Sequence[int] | None = None) -> MatrixPlan:
    n = len(matrix)
    if n == 0 or any(len(r) != n for r in matrix):
        raise ResultantError("matrix must be square and nonempty")
    proto = matrix[0][0]
    vars = proto.vars
    if proto.modulus is not None:
        raise ResultantError("modular pipeline expects rational input")
    scaled_rows = []
    row_scale = []
    for row in matrix:
        den = 1
        for f in row:
            for c in f.terms.values():
                if isinstance(c, Fraction):
                    den = math.lcm(den, c.denominator)
        row_scale.append(den)
        scaled_rows.append([f.scale(den) if den != 1 else f for f in row])
    entries: list[MPoly] = []
    index: dict[int, int] = {}
    layout = []
    for row in scaled_rows:
        lr = []
        for f in row:
            if not f:
                lr.append(-1)
                continue
            key = id(f)
            if key not in index:
                index[key] = len(entries)
                entries.append(f)
            lr.append(index[key])
        layout.append(lr)
    nv = len(vars)
    degs = [e.degrees() for e in entries]
    bounds = []
    for v in range(nv):
        by_rows = sum(max((degs[i][v] for i in r if i >= 0), default=0) for r in layout)
        by_cols = sum(max((degs[layout[r][c]][v] for r in range(n) if layout[r][c] >= 0), default=0)
                      for c in range(n))
        bounds.append(min(by_rows, by_cols))
    norms = [_l1(e) for e in entries]
    rb = math.prod(sum(norms[i] for i in r if i >= 0) for r in layout)
    cb = math.prod(sum(norms[layout[r][c]] for r in range(n) if layout[r][c] >= 0) for c in range(n))
    plan = MatrixPlan(vars, entries, layout, row_scale, tuple(bounds), min(rb, cb))
    if weights is not None:
        _grade(plan, tuple(weights))
    _choose_interp_vars(plan)
    return plan


def _grade(plan: MatrixPlan, weights: tuple[int, ...]) -> None:
    """Find row/column shifts with wdeg(entry) = rho_r + kappa_c, if they exist."""
    from .weights import weighted_degree, Homogeneous
    if len(weights) != len(plan.vars):
        raise ValueError("weights must match the parameter variables")
    wd = []
    for e in plan.entries:
        h = weighted_degree(e, weights)
        if not isinstance(h, Homogeneous):
            return
        wd.append(h.degree)
    n = plan.size
    rho: list[int | None] = [None] * n
    kappa: list[int | None] = [None] * n
    for start in range(n):
        if rho[start] is not None:
            continue
        rho[start] = 0
        stack = [("r", start)]
        while stack:
            kind, i = stack.pop()
            if kind == "r":
                for c in range(n):
                    k = plan.layout[i][c]
                    if k < 0:
                        continue
                    want = wd[k] - rho[i]
                    if kappa[c] is None:
                        kappa[c] = want
                        stack.append(("c", c))
                    elif kappa[c] != want:
                        return
            else:
                for r in range(n):
                    k = plan.layout[r][i]
                    if k < 0:
                        continue
                    want = wd[k] - kappa[i]
                    if rho[r] is None:
                        rho[r] = want
                        stack.append(("r", r))
                    elif rho[r] != want:
                        return
    if any(k is None for k in kappa):
        return
    plan.grading = weights
    plan.wdeg = sum(rho) + sum(kappa)


def _choose_interp_vars(plan: MatrixPlan) -> None:
    live = [i for i, b in enumerate(plan.bounds) if b > 0]
    plan.interp_vars = live
    plan.dropped = None
    if plan.grading is not None and live:
        w = plan.grading
        drop = min(live, key=lambda i: (w[i], -plan.bounds[i]))
        plan.dropped = drop
        plan.interp_vars = [i for i in live if i != drop]


def support(plan: MatrixPlan) -> LowerSet:
    bounds = [plan.bounds[i] for i in plan.interp_vars]
    if plan.dropped is None:
        return build_lower_set(bounds)
    w = [plan.grading[i] for i in plan.interp_vars]
    return build_lower_set(bounds, w, plan.wdeg)


def primes_needed(plan: MatrixPlan) -> int:
    """Smallest k with prod of k primes below 2^31 exceeding 2*bound."""
    target = 2 * plan.coeff_bound + 1
    return max(1, math.ceil(target.bit_length() / 30.9))


# ----------------------------------------------------------------------------
# batched arithmetic mod p


def _powmod_vec(x: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(x)
    base = x % p
    while e:
        if e & 1:
            result = result * base % p
        e >>= 1
        if e:
            base = base * base % p
    return result


def batch_det_mod(M: np.ndarray, p: int) -> np.ndarray:
    """Determinants of a stack of matrices mod p (p < 2^31); M is modified."""
    B, n, _ = M.shape
    num = np.ones(B, dtype=np.int64)
    den = np.ones(B, dtype=np.int64)
    neg = np.zeros(B, dtype=bool)
    dead = np.zeros(B, dtype=bool)
    rows = np.arange(B)
    for k in range(n):
        nz = M[:, k:, k] != 0
        has = nz.any(axis=1)
        dead |= ~has
        piv = np.argmax(nz, axis=1) + k
        swap = np.nonzero(has & (piv != k))[0]
        if swap.size:
            pr = piv[swap]
            tmp = M[swap, k, :].copy()
            M[swap, k, :] = M[swap, pr, :]
            M[swap, pr, :] = tmp
            neg[swap] ^= True
        pk = np.where(has, M[:, k, k], 1)
        num = num * pk % p
        if k + 1 < n:
            den = den * _powmod_vec(pk, n - k - 1, p) % p
            sub = M[:, k + 1:, k + 1:]
            left = M[:, k + 1:, k][:, :, None]
            top = M[:, k, k + 1:][:, None, :]
            M[:, k + 1:, k + 1:] = (pk[:, None, None] * sub % p - left * top % p) % p
    det = num * _powmod_vec(den, p - 2, p) % p
    det = np.where(neg, (p - det) % p, det)
    det[dead] = 0
    del rows
    return det


class _EntryEvaluator:
    """Vectorized evaluation of the distinct matrix entries mod p."""

    def __init__(self, plan: MatrixPlan, p: int):
        self.plan = plan
        self.p = p
        nv = len(plan.vars)
        self.terms = []
        for e in plan.entries:
            ts = []
            for k, c in e.terms.items():
                ex = [(i, exponent(k, i)) for i in range(nv) if exponent(k, i)]
                ts.append((int(c) % p, ex))
            self.terms.append(ts)

    def __call__(self, coords: dict[int, np.ndarray], count: int) -> list[np.ndarray]:
        p = self.p
        cache: dict[tuple[int, int], np.ndarray] = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                if e == 1:
                    cache[key] = coords[i] % p
                else:
                    half = power(i, e // 2)
                    val = half * half % p
                    if e % 2:
                        val = val * power(i, 1) % p
                    cache[key] = val
            return cache[key]

        out = []
        for ts in self.terms:
            acc = np.zeros(count, dtype=np.int64)
            for c, ex in ts:
                t = np.full(count, c, dtype=np.int64)
                for i, e in ex:
                    if i in coords:
                        t = t * power(i, e) % p
                acc = (acc + t) % p
            out.append(acc)
        return out


def _nodes(plan: MatrixPlan, p: int) -> list[np.ndarray]:
    return [np.arange(2, plan.bounds[i] + 3, dtype=np.int64) % p for i in plan.interp_vars]


def _image_mod_p(plan: MatrixPlan, ls: LowerSet, p: int, budget: Budget,
                 checkpoint: "_Checkpoint | None" = None) -> np.ndarray:
    nodes = _nodes(plan, p)
    evaluator = _EntryEvaluator(plan, p)
    n = plan.size
    N = ls.size
    values = np.zeros(N, dtype=np.int64)
    done = checkpoint.load(p) if checkpoint else {}
    for start in range(0, N, BATCH):
        stop = min(N, start + BATCH)
        if start in done and len(done[start]) == stop - start:
            values[start:stop] = done[start]
            continue
        budget.check("while evaluating")
        idx = ls.exps[start:stop]
        cnt = stop - start
        coords = {}
        for j, v in enumerate(plan.interp_vars):
            coords[v] = nodes[j][idx[:, j]]
        if plan.dropped is not None:
            coords[plan.dropped] = np.ones(cnt, dtype=np.int64)
        for v in range(len(plan.vars)):
            if v not in coords:
                coords[v] = np.zeros(cnt, dtype=np.int64)
        vals = evaluator(coords, cnt)
        M = np.zeros((cnt, n, n), dtype=np.int64)
        for r, row in enumerate(plan.layout):
            for c, k in enumerate(row):
                if k >= 0:
                    M[:, r, c] = vals[k]
        values[start:stop] = batch_det_mod(M, p)
        if checkpoint:
            checkpoint.write(p, start, values[start:stop])
    budget.check("after evaluation")
    return interpolate(ls, nodes, values, p)


class _Checkpoint:
    """Append-only JSON lines: one line per (prime, batch of evaluation points)."""

    def __init__(self, path: str, signature: str):
        self.path = path
        self.signature = signature
        self._cache: dict[int, dict[int, list[int]]] | None = None

    def _read(self):
        if self._cache is not None:
            return self._cache
        self._cache = {}
        if os.path.exists(self.path):
            with open(self.path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    if rec.get("job") != self.signature:
                        continue
                    self._cache.setdefault(rec["prime"], {})[rec["start"]] = rec["residues"]
        return self._cache

    def load(self, p: int) -> dict[int, list[int]]:
        return self._read().get(p, {})

    def write(self, p: int, start: int, residues: np.ndarray) -> None:
        rec = {"job": self.signature, "prime": p, "start": start,
               "residues": [int(x) for x in residues]}
        with open(self.path, "a") as fh:
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


# ----------------------------------------------------------------------------
# reconstruction


def _garner(images: list[np.ndarray], primes: list[int]) -> list[int]:
    """Symmetric-range CRT of coefficient vectors."""
    k = len(primes)
    digits = [images[0] % primes[0]]
    for i in range(1, k):
        pi = primes[i]
        acc = images[i] % pi
        for j in range(i):
            inv = pow(primes[j], -1, pi)
            acc = (acc - digits[j] % pi) % pi * inv % pi
        digits.append(acc)
    nz = np.zeros(len(images[0]), dtype=bool)
    for d in digits:
        nz |= d != 0
    M = math.prod(primes)
    half = M // 2
    out = [0] * len(images[0])
    radices = [1]
    for p in primes[:-1]:
        radices.append(radices[-1] * p)
    cols = [d.tolist() for d in digits]
    for idx in np.nonzero(nz)[0].tolist():
        v = 0
        for j in range(k):
            dj = cols[j][idx]
            if dj:
                v += dj * radices[j]
        out[idx] = v - M if v > half else v
    return out


def _assemble(plan: MatrixPlan, ls: LowerSet, coeffs: Sequence) -> MPoly:
    nv = len(plan.vars)
    terms: dict[int, object] = {}
    exps = ls.exps.tolist()
    for row, c in zip(exps, coeffs):
        if not c:
            continue
        e = [0] * nv
        for j, v in enumerate(plan.interp_vars):
            e[v] = row[j]
        if plan.dropped is not None:
            w = plan.grading
            rest = plan.wdeg - sum(w[v] * e[v] for v in plan.interp_vars)
            q, r = divmod(rest, w[plan.dropped])
            if r or q < 0 or q > plan.bounds[plan.dropped]:
                raise ArithmeticError("interpolated term violates the weight grading")
            e[plan.dropped] = q
        terms[pack(e)] = c
    scale = math.prod(plan.row_scale)
    f = MPoly(plan.vars, terms)
    if scale != 1:
        f = f.scale(Fraction(1, scale))
    return f


def _prime_stream(plan: MatrixPlan, avoid: Sequence[MPoly], primes: Sequence[int] | None):
    source = primes if primes is not None else primes_below(PRIME_START)
    for p in source:
        if any(f and all(int(c) % p == 0 for c in f.terms.values()) for f in avoid):
            continue
        yield p


def det_modular(matrix: Sequence[Sequence[MPoly]], strategy: str = "hybrid", budget=None,
                weights: Sequence[int] | None = None, avoid: Sequence[MPoly] = (),
                primes: Sequence[int] | None = None, workers: int = 1,
                checkpoint: str | None = None) -> MPoly:
    """Determinant of a matrix of integer (or rational) MPolys by a modular strategy.

    ``avoid`` lists polynomials whose vanishing mod p marks a prime as unlucky.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    budget = _as_budget(budget)
    plan = analyze(matrix, weights)
    if strategy == "evaluate-interpolate":
        return _det_exact(plan, budget)
    k = primes_needed(plan)
    stream = _prime_stream(plan, avoid, primes)
    chosen = []
    for p in stream:
        chosen.append(p)
        if len(chosen) == k:
            break
    if len(chosen) < k:
        raise UnluckyPrimeExhaustion(f"needed {k} primes, found {len(chosen)}")
    if strategy == "crt-primes":
        return _det_crt_symbolic(plan, chosen, budget)
    ls = support(plan)
    sig = None
    ck = None
    if checkpoint:
        sig = _signature(plan)
        ck = _Checkpoint(checkpoint, sig)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            images = list(pool.map(lambda p: _image_mod_p(plan, ls, p, budget, ck), chosen))
    else:
        images = [_image_mod_p(plan, ls, p, budget, ck) for p in chosen]
    coeffs = _garner(images, chosen)
    return _assemble(plan, ls, coeffs)


def _signature(plan: MatrixPlan) -> str:
    import hashlib
    from .serialize import to_text
    h = hashlib.sha256()
    h.update(repr(plan.vars).encode())
    for row in plan.layout:
        h.update(repr(row).encode())
    for e in plan.entries:
        h.update(to_text(e).encode())
    h.update(repr((plan.grading, plan.wdeg, plan.bounds)).encode())
    return h.hexdigest()[:16]


def _det_crt_symbolic(plan: MatrixPlan, primes: list[int], budget: Budget) -> MPoly:
    images = []
    for p in primes:
        budget.check("before a prime")
        red = [e.reduce(p) for e in plan.entries]
        zero = MPoly.zero(plan.vars, p)
        mat = [[red[k] if k >= 0 else zero for k in row] for row in plan.layout]
        images.append(bareiss_det(mat))
    keys = sorted(set().union(*(f.terms for f in images)))
    vecs = [np.array([f.terms.get(k, 0) for k in keys], dtype=np.int64) for f in images]
    coeffs = _garner(vecs, primes) if keys else []
    terms = {k: c for k, c in zip(keys, coeffs) if c}
    f = MPoly(plan.vars, terms)
    scale = math.prod(plan.row_scale)
    return f.scale(Fraction(1, scale)) if scale != 1 else f


def _int_det(rows: list[list[int]]) -> int:
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri = m[i]
            rk = m[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - mik * rk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def _det_exact(plan: MatrixPlan, budget: Budget) -> MPoly:
    ls = support(plan)
    nodes = [np.arange(2, plan.bounds[i] + 3, dtype=np.int64) for i in plan.interp_vars]
    nv = len(plan.vars)
    values = []
    for row in ls.exps.tolist():
        if len(values) % 256 == 0:
            budget.check("while evaluating exactly")
        pt = [0] * nv
        for j, v in enumerate(plan.interp_vars):
            pt[v] = int(nodes[j][row[j]])
        if plan.dropped is not None:
            pt[plan.dropped] = 1
        vals = [e.evaluate(pt) for e in plan.entries]
        mat = [[vals[k] if k >= 0 else 0 for k in r] for r in plan.layout]
        values.append(_int_det(mat))
    coeffs = _interpolate_exact(ls, nodes, values)
    return _assemble(plan, ls, coeffs)


def _interpolate_exact(ls: LowerSet, nodes: list[np.ndarray], values: list[int]) -> list:
    c = np.empty(len(values), dtype=object)
    c[:] = [Fraction(v) for v in values]
    for d in range(ls.dim):
        e = ls.exps[:, d]
        top = int(e.max()) if ls.size else 0
        if top == 0:
            continue
        prev = ls.shift_index(d, -1)
        nd = [int(x) for x in nodes[d][:top + 1]]
        for j in range(1, top + 1):
            sel = np.nonzero(e >= j)[0]
            ed = e[sel]
            dif = np.array([Fraction(1, nd[a] - nd[a - j]) for a in ed.tolist()], dtype=object)
            c[sel] = (c[sel] - c[prev[sel]]) * dif
    for d in range(ls.dim):
        e = ls.exps[:, d]
        top = int(e.max()) if ls.size else 0
        if top == 0:
            continue
        nd = [int(x) for x in nodes[d][:top + 1]]
        S = [[0] * (top + 1) for _ in range(top + 1)]
        S[0][0] = 1
        for k in range(1, top + 1):
            a = nd[k - 1]
            for i in range(k + 1):
                S[k][i] = (S[k - 1][i - 1] if i else 0) - a * (S[k - 1][i] if i < k else 0)
        nxt = ls.shift_index(d, 1)
        out = c.copy()
        cur = np.arange(ls.size)
        active = np.arange(ls.size)
        for s in range(1, top + 1):
            cur = nxt[cur]
            keep = cur >= 0
            if not keep.any():
                break
            cur = cur[keep]
            active = active[keep]
            ea = e[active].tolist()
            fac = np.array([S[a + s][a] for a in ea], dtype=object)
            out[active] = out[active] + c[cur] * fac
        c = out
    result = []
    for x in c.tolist():
        if isinstance(x, Fraction) and x.denominator != 1:
            raise ArithmeticError("non-integral interpolated coefficient")
        result.append(int(x))
    return result


# ----------------------------------------------------------------------------
# resultants


def infer_main_weight(a: UPoly, b: UPoly, weights: Sequence[int]) -> int | None:
    """Weight of the main variable making a and b weighted homogeneous, if any."""
    from .weights import weighted_degree, Homogeneous
    cands = set()
    for poly in (a, b):
        pts = []
        for j, c in enumerate(poly.coeffs):
            if c:
                h = weighted_degree(c, weights)
                if not isinstance(h, Homogeneous):
                    return None
                pts.append((j, h.degree))
        for (j1, d1), (j2, d2) in zip(pts, pts[1:]):
            q, r = divmod(d1 - d2, j2 - j1)
            if r:
                return None
            cands.add(q)
    if len(cands) > 1:
        return None
    return cands.pop() if cands else None


def resultant_modular(a: UPoly, b: UPoly, strategy: str = "hybrid", budget=None,
                      weights: Sequence[int] | None = None, **kw) -> MPoly:
    """Res_v(a, b) for integer-coefficient inputs, identical to the direct resultant."""
    from .resultant import _check_pair
    _check_pair(a, b)
    mat = subresultant_matrix(a, b, 0)
    return det_modular(mat, strategy, budget, weights, avoid=(a.leading(), b.leading()), **kw)


def psc_modular(a: UPoly, b: UPoly, j: int = 1, strategy: str = "hybrid", budget=None,
                weights: Sequence[int] | None = None, **kw) -> MPoly:
    from .resultant import _check_pair
    _check_pair(a, b)
    mat = subresultant_matrix(a, b, j)
    if not mat:
        return MPoly.constant(a.params, 1)
    return det_modular(mat, strategy, budget, weights, avoid=(a.leading(), b.leading()), **kw)
