"""Seeded random elements for the property suites."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .graded import basis_of_D_degree
from .semigroup import WeightSystem
from .weyl import WeylElement


def random_coefficient(rng: random.Random) -> Fraction:
    c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return c or Fraction(1)


@lru_cache(maxsize=None)
def _basis_keys(weights: tuple[int, ...], k: int, order_bound: int):
    return tuple(next(iter(m.terms)) for m in basis_of_D_degree(WeightSystem(weights), k, order_bound))


def random_homogeneous(w: WeightSystem, k: int, order_bound: int, rng: random.Random, terms: int = 4) -> WeylElement:
    """A random element of weighted degree ``k``; zero only if that graded piece is empty."""
    keys = _basis_keys(w.weights, k, order_bound)
    if not keys:
        return WeylElement.zero(w.nvars)
    chosen = rng.sample(keys, min(terms, len(keys)))
    return WeylElement(w.nvars, {key: random_coefficient(rng) for key in chosen})


def random_element(nvars: int, rng: random.Random, max_exp: int = 2, terms: int = 3) -> WeylElement:
    """A random element with every exponent at most ``max_exp``."""
    out = {}
    for _ in range(terms):
        alpha = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        beta = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        out[(alpha, beta)] = random_coefficient(rng)
    return WeylElement(nvars, out)
