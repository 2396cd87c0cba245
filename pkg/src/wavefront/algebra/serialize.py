"""Canonical text and JSON forms for MPoly."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Sequence

from .mpoly import MPoly, pack
from .rational import format_rational, normalize


def _monomial_text(exps: Sequence[int], vars: Sequence[str]) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def text_items(f: MPoly):
    """Terms for display: exponent vectors in descending lex order, x0 most significant."""
    return sorted(f.items(), key=lambda t: t[0], reverse=True)


def to_text(f: MPoly) -> str:
    """Terms in descending canonical order, e.g. ``27*x0^2 + 4*x1^3``."""
    if f.is_zero():
        return "0"
    out = []
    for exps, c in text_items(f):
        neg = c < 0 if f.modulus is None else False
        mag = -c if neg else c
        mono = _monomial_text(exps, f.vars)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def to_json_obj(f: MPoly) -> dict:
    terms = []
    for exps, c in text_items(f):
        c = Fraction(c)
        terms.append([c.numerator, c.denominator, list(exps)])
    obj = {"vars": list(f.vars), "terms": terms}
    if f.modulus is not None:
        obj["modulus"] = f.modulus
    return obj


def to_json(f: MPoly) -> str:
    return json.dumps(to_json_obj(f), separators=(",", ":"))


def from_json_obj(obj: dict) -> MPoly:
    vars = obj["vars"]
    items = [(Fraction(num, den), e) for num, den, e in obj["terms"]]
    return MPoly.from_terms(vars, items, obj.get("modulus"))


def from_json(text: str) -> MPoly:
    return from_json_obj(json.loads(text))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


class _Parser:
    """Recursive-descent parser for sums of products with integer powers."""

    def __init__(self, text: str, vars: Sequence[str], modulus: int | None):
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", int(num)))
            elif name is not None:
                self.toks.append(("name", name))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0
        self.vars = tuple(vars)
        self.modulus = modulus

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r}, got {t[1]!r}")

    def parse(self) -> MPoly:
        if not self.toks:
            raise ParseError("empty expression")
        f = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near token {self.i}")
        return f

    def expr(self) -> MPoly:
        kind, val = self.peek()
        sign = 1
        if (kind, val) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "+"):
                self.take()
                acc = acc + self.term()
            elif (kind, val) == ("op", "-"):
                self.take()
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> MPoly:
        acc = self.power()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.power()
            elif (kind, val) == ("op", "/"):
                self.take()
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    raise ParseError("division only by nonzero constants")
                acc = acc.scale(Fraction(1) / Fraction(d.constant_value()))
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> MPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return base ** val
        return base

    def atom(self) -> MPoly:
        kind, val = self.take()
        if kind == "num":
            return MPoly.constant(self.vars, val, self.modulus)
        if kind == "name":
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r}")
            return MPoly.var(self.vars, val, self.modulus)
        if (kind, val) == ("op", "("):
            f = self.expr()
            self.expect(")")
            return f
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, vars: Sequence[str] | None = None, modulus: int | None = None) -> MPoly:
    """Parse canonical text, general arithmetic text, or the JSON form.

    Without ``vars`` the variables are collected from the text and sorted
    naturally (``x2`` before ``x10``).
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        f = from_json(stripped)
        return f.embed(vars) if vars is not None else f
    if vars is None:
        names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", stripped)), key=natural_key)
        vars = names
    return _Parser(stripped, vars, modulus).parse()


def natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]
