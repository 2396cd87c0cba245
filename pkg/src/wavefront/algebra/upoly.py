"""Dense univariate polynomials with a declared formal degree."""

from __future__ import annotations

from typing import Sequence

from .mpoly import MPoly, ArityMismatch, poly_from_dense


class UPoly:
    """``sum coeffs[j] * var**j`` with ``len(coeffs) == declared_degree + 1``.

    The coefficients are MPoly over a shared parameter variable list.  The
    leading coefficient may be zero: the declared degree is what Sylvester
    matrices and resultants see.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Sequence[MPoly], declared_degree: int | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("a UPoly needs at least one coefficient")
        params = coeffs[0].vars
        mod = coeffs[0].modulus
        for c in coeffs:
            if not isinstance(c, MPoly):
                raise TypeError("UPoly coefficients must be MPoly")
            if c.vars != params or c.modulus != mod:
                raise ArityMismatch("UPoly coefficients must share variables and ring")
        if var in params:
            raise ValueError(f"main variable {var!r} also appears among the parameters")
        if declared_degree is not None:
            if declared_degree < len(coeffs) - 1:
                if any(c for c in coeffs[declared_degree + 1:]):
                    raise ValueError("nonzero coefficient above the declared degree")
                coeffs = coeffs[:declared_degree + 1]
            else:
                coeffs += [MPoly.zero(params, mod)] * (declared_degree + 1 - len(coeffs))
        self.var = var
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_scalars(cls, var: str, values: Sequence, params: Sequence[str] = (),
                     modulus: int | None = None) -> "UPoly":
        return cls(var, [MPoly.constant(params, c, modulus) for c in values])

    @property
    def declared_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def params(self) -> tuple[str, ...]:
        return self.coeffs[0].vars

    @property
    def modulus(self) -> int | None:
        return self.coeffs[0].modulus

    def leading(self) -> MPoly:
        return self.coeffs[-1]

    def actual_degree(self) -> int:
        for j in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[j]:
                return j
        return -1

    def is_zero(self) -> bool:
        return self.actual_degree() < 0

    def truncated(self) -> "UPoly":
        """Drop vanishing leading coefficients (declared degree = actual degree)."""
        d = max(self.actual_degree(), 0)
        return UPoly(self.var, self.coeffs[:d + 1])

    def with_degree(self, d: int) -> "UPoly":
        return UPoly(self.var, self.coeffs, d)

    def derivative(self) -> "UPoly":
        if self.declared_degree == 0:
            return UPoly(self.var, [MPoly.zero(self.params, self.modulus)])
        return UPoly(self.var, [c.scale(j) for j, c in enumerate(self.coeffs) if j >= 1])

    def to_mpoly(self, vars: Sequence[str] | None = None) -> MPoly:
        if vars is None:
            vars = self.params + (self.var,)
        vars = tuple(vars)
        return poly_from_dense(vars, self.var, [c.embed(vars) for c in self.coeffs])

    def map_coeffs(self, fn) -> "UPoly":
        return UPoly(self.var, [fn(c) for c in self.coeffs], self.declared_degree)

    def substitute(self, values) -> "UPoly":
        return self.map_coeffs(lambda c: c.substitute(values))

    def specialize(self, point: dict, keep: Sequence[str] = ()) -> "UPoly":
        """Substitute scalars for parameters and shrink the parameter list to ``keep``."""
        keep = tuple(keep)
        return self.map_coeffs(lambda c: c.substitute(point).embed(keep))

    def reduce(self, p: int) -> "UPoly":
        return self.map_coeffs(lambda c: c.reduce(p))

    def evaluate(self, x) -> MPoly:
        acc = MPoly.zero(self.params, self.modulus)
        for c in reversed(self.coeffs):
            acc = acc * x + c if isinstance(x, MPoly) else acc.scale(x) + c
        return acc

    def scalars(self) -> list:
        """Coefficients as scalars; every coefficient must be constant."""
        return [c.constant_value() for c in self.coeffs]

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self) -> str:
        return f"UPoly({self.var!r}, deg={self.declared_degree}, {self.to_mpoly()})"


def up_from_mpoly(f: MPoly, main_var: str, params: Sequence[str] | None = None) -> UPoly:
    """Collect ``f`` in ``main_var``; coefficients live over the remaining variables."""
    if main_var not in f.vars:
        raise ArityMismatch(f"{main_var!r} is not a variable of the polynomial")
    if params is None:
        params = tuple(v for v in f.vars if v != main_var)
    coeffs = [c.embed(params) for c in f.coefficients_in(main_var)]
    return UPoly(main_var, coeffs)


def up_derivative(a: UPoly) -> UPoly:
    return a.derivative()


def up_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd of two fully specialized UPolys over Q."""
    from . import dense
    g = dense.gcd(a.scalars(), b.scalars())
    return UPoly.from_scalars(a.var, g)
