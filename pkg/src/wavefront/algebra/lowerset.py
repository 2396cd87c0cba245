"""Multivariate Newton interpolation mod p on downward-closed exponent sets.

A lower set L of exponent vectors paired with tensor-grid nodes is unisolvent
for polynomials supported on L.  Divided differences taken one dimension at
a time give the Newton coefficients; the conversion back to monomials is also
done one dimension at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class LowerSet:
    exps: np.ndarray          # (N, d) int64, sorted by mixed-radix key
    bounds: tuple[int, ...]   # per-dimension maximum exponent
    keys: np.ndarray
    strides: np.ndarray

    @property
    def size(self) -> int:
        return int(self.exps.shape[0])

    @property
    def dim(self) -> int:
        return int(self.exps.shape[1])

    def shift_index(self, d: int, step: int) -> np.ndarray:
        """Index of alpha + step*e_d for every alpha, or -1 when outside the set."""
        target = self.keys + step * self.strides[d]
        pos = np.searchsorted(self.keys, target)
        pos = np.minimum(pos, self.size - 1)
        ok = self.keys[pos] == target
        e = self.exps[:, d] + step
        ok &= (e >= 0) & (e <= self.bounds[d])
        return np.where(ok, pos, -1)


def build_lower_set(bounds, weights=None, limit: int | None = None) -> LowerSet:
    """{e : e_i <= bounds[i], sum w_i e_i <= limit} (the weight constraint is optional)."""
    bounds = tuple(int(b) for b in bounds)
    d = len(bounds)
    if weights is None or limit is None:
        weights = (0,) * d
        limit = 0
    weights = tuple(int(w) for w in weights)
    exps = np.zeros((1, 0), dtype=np.int64)
    wsum = np.zeros(1, dtype=np.int64)
    for i in range(d):
        if weights[i] > 0:
            cap = np.minimum(bounds[i], (limit - wsum) // weights[i])
        else:
            cap = np.full_like(wsum, bounds[i])
        counts = cap + 1
        counts = np.maximum(counts, 0)
        total = int(counts.sum())
        rep = np.repeat(np.arange(exps.shape[0]), counts)
        starts = np.cumsum(counts) - counts
        e = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
        exps = np.concatenate([exps[rep], e[:, None]], axis=1)
        wsum = wsum[rep] + weights[i] * e
    strides = np.ones(d, dtype=np.int64)
    for i in range(d - 2, -1, -1):
        strides[i] = strides[i + 1] * (bounds[i + 1] + 1)
    keys = exps @ strides if d else np.zeros(exps.shape[0], dtype=np.int64)
    return LowerSet(exps, bounds, keys, strides)


def _inv_table(nodes: np.ndarray, p: int) -> np.ndarray:
    n = len(nodes)
    tab = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i != j:
                tab[i, j] = pow(int(nodes[i] - nodes[j]) % p, -1, p)
    return tab


def _newton_basis_table(nodes: np.ndarray, p: int) -> np.ndarray:
    """S[k, i] = coefficient of x^i in prod_{t<k} (x - nodes[t]) mod p."""
    n = len(nodes)
    S = np.zeros((n, n), dtype=np.int64)
    S[0, 0] = 1
    for k in range(1, n):
        a = int(nodes[k - 1]) % p
        S[k, 1:k + 1] = S[k - 1, 0:k]
        S[k, 0:k] = (S[k, 0:k] - a * S[k - 1, 0:k]) % p
    return S


def interpolate(ls: LowerSet, nodes: list[np.ndarray], values: np.ndarray, p: int) -> np.ndarray:
    """Monomial coefficients (aligned with ``ls.exps``) of the interpolant mod p.

    ``values[k]`` is the value at the grid point ``(nodes[i][ls.exps[k, i]])_i``.
    """
    c = np.asarray(values, dtype=np.int64) % p
    for d in range(ls.dim):
        e = ls.exps[:, d]
        top = int(e.max()) if ls.size else 0
        if top == 0:
            continue
        prev = ls.shift_index(d, -1)
        inv = _inv_table(nodes[d][:top + 1], p)
        for j in range(1, top + 1):
            sel = np.nonzero(e >= j)[0]
            ed = e[sel]
            diff = (c[sel] - c[prev[sel]]) % p
            c[sel] = diff * inv[ed, ed - j] % p
    for d in range(ls.dim):
        e = ls.exps[:, d]
        top = int(e.max()) if ls.size else 0
        if top == 0:
            continue
        S = _newton_basis_table(nodes[d][:top + 1], p)
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
            ea = e[active]
            out[active] = (out[active] + c[cur] * S[ea + s, ea]) % p
        c = out
    return c
