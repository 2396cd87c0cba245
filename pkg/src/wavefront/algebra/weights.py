"""Weight systems and weighted homogeneity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .mpoly import MPoly, exponent


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class Homogeneous:
    degree: int


@dataclass(frozen=True)
class NotHomogeneous:
    degrees: tuple[int, ...]


def term_weights(f: MPoly, weights: Sequence[int]) -> set[int]:
    n = f.arity
    return {sum(w * exponent(k, i) for i, w in enumerate(weights) if w) for k in f.terms}


def weighted_degree(f: MPoly, weights) -> Homogeneous | NotHomogeneous:
    if isinstance(weights, WeightSystem):
        weights = weights.weights
    weights = tuple(weights)
    if len(weights) != f.arity:
        raise ValueError(f"{len(weights)} weights for {f.arity} variables")
    if f.is_zero():
        raise ValueError("weighted degree of the zero polynomial is undefined")
    degs = term_weights(f, weights)
    if len(degs) == 1:
        return Homogeneous(degs.pop())
    return NotHomogeneous(tuple(sorted(degs)))
