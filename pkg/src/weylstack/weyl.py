"""The graded Weyl algebra and the modules it acts on.

Elements are kept in normal order: every monomial is ``x^alpha d^beta`` with
all ``x`` to the left of all ``d``.  Products are normal-ordered with the
closed form

    d_i^s x_i^t = sum_k k! C(s,k) C(t,k) x_i^(t-k) d_i^(s-k),

applied variable by variable (distinct indices commute).  Coefficients are
exact: Fractions, or ``RatFunc`` elements of Q(lam) when a generic twist is
involved.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

from .exceptions import ZeroElement
from .scalars import RatFunc, scalar_str
from .semigroup import WeightSystem

Key = tuple  # (alpha, beta), each a tuple of nonnegative ints


def _scalar(c):
    return Fraction(c) if isinstance(c, int) else c


def _accumulate(out: dict, key, c) -> None:
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def deglex_key(key: Key):
    alpha, beta = key
    return (sum(alpha) + sum(beta), alpha + beta)


class WeylElement:
    """A finite sum ``sum c x^alpha d^beta`` in normal order with ``nvars`` pairs of generators."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Key, object] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for (alpha, beta), c in items:
            alpha, beta = tuple(alpha), tuple(beta)
            if len(alpha) != nvars or len(beta) != nvars:
                raise ValueError(f"exponent length mismatch for {nvars} variables")
            if min(alpha + beta, default=0) < 0:
                raise ValueError("negative exponent in Weyl monomial")
            _accumulate(clean, (alpha, beta), _scalar(c))
        self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "WeylElement":
        return cls(nvars)

    @classmethod
    def const(cls, c, nvars: int) -> "WeylElement":
        z = (0,) * nvars
        return cls(nvars, {(z, z): c})

    @classmethod
    def monomial(cls, alpha, beta, c=1) -> "WeylElement":
        return cls(len(alpha), {(tuple(alpha), tuple(beta)): c})

    @classmethod
    def x(cls, i: int, nvars: int) -> "WeylElement":
        e = tuple(int(j == i) for j in range(nvars))
        return cls(nvars, {(e, (0,) * nvars): 1})

    @classmethod
    def d(cls, i: int, nvars: int) -> "WeylElement":
        e = tuple(int(j == i) for j in range(nvars))
        return cls(nvars, {((0,) * nvars, e): 1})

    # container protocol

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: deglex_key(kv[0]), reverse=True)

    def coefficient(self, alpha, beta):
        return self._terms.get((tuple(alpha), tuple(beta)), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not other:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # arithmetic

    def _check(self, other: "WeylElement"):
        if other.nvars != self.nvars:
            raise ValueError(f"cannot combine elements in {self.nvars} and {other.nvars} variables")

    def __add__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.const(other, self.nvars)
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _accumulate(out, k, c)
        return WeylElement(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.nvars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.const(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "WeylElement":
        if not c:
            return WeylElement(self.nvars)
        return WeylElement(self.nvars, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(_scalar(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(_scalar(other))
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in the Weyl algebra")
        out = WeylElement.const(1, self.nvars)
        for _ in range(e):
            out = out * self
        return out

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"WeylElement({self})"


def _monomial_str(alpha, beta) -> str:
    factors = []
    for name, exps in (("x", alpha), ("d", beta)):
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"{name}{i}")
            elif e > 1:
                factors.append(f"{name}{i}^{e}")
    return " ".join(factors)


def format_element(a: WeylElement) -> str:
    """Print in the ``c*x0^a0 .. d0^b0 ..`` grammar, DegLex-descending."""
    if not a:
        return "0"
    out = []
    for (alpha, beta), c in a.sorted_items():
        mono = _monomial_str(alpha, beta)
        negative = isinstance(c, Fraction) and c < 0
        mag = -c if negative else c
        if not mono:
            body = scalar_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{scalar_str(mag)}*{mono}"
        if not out:
            out.append("-" + body if negative else body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


# products


@lru_cache(maxsize=None)
def _dx_swap(s: int, t: int) -> tuple[tuple[int, int, int], ...]:
    """``d^s x^t`` as triples (x-exponent, d-exponent, integer coefficient)."""
    return tuple((t - k, s - k, factorial(k) * comb(s, k) * comb(t, k)) for k in range(min(s, t) + 1))


@lru_cache(maxsize=200_000)
def _monomial_product(alpha, beta, gamma, delta) -> tuple:
    per_var = []
    for i in range(len(alpha)):
        per_var.append([(alpha[i] + xe, de + delta[i], c) for xe, de, c in _dx_swap(beta[i], gamma[i])])
    out = []
    for combo in itertools.product(*per_var):
        coeff = 1
        for _, _, c in combo:
            coeff *= c
        out.append(((tuple(t[0] for t in combo), tuple(t[1] for t in combo)), coeff))
    return tuple(out)


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    a._check(b)
    out: dict = {}
    for (alpha, beta), c1 in a._terms.items():
        for (gamma, delta), c2 in b._terms.items():
            c = c1 * c2
            for key, k in _monomial_product(alpha, beta, gamma, delta):
                _accumulate(out, key, c * k)
    return WeylElement(a.nvars, out)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return multiply(a, b) - multiply(b, a)


def euler_field(w: WeightSystem) -> WeylElement:
    """``E = sum_i d_i x_i d_i``."""
    n = w.nvars
    terms = {}
    for i, d in enumerate(w.weights):
        e = tuple(int(j == i) for j in range(n))
        terms[(e, e)] = d
    return WeylElement(n, terms)


# grading


def monomial_degree(key: Key, w: WeightSystem) -> int:
    alpha, beta = key
    return sum(d * (a - b) for d, a, b in zip(w.weights, alpha, beta))


def multidegree(key: Key) -> tuple[int, ...]:
    alpha, beta = key
    return tuple(a - b for a, b in zip(alpha, beta))


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    element: WeylElement


def graded_components(a: WeylElement, w: WeightSystem) -> dict[int, GradedPiece]:
    buckets: dict[int, dict] = {}
    for key, c in a.items():
        buckets.setdefault(monomial_degree(key, w), {})[key] = c
    return {k: GradedPiece(k, WeylElement(a.nvars, t)) for k, t in sorted(buckets.items())}


def homogeneous_degree(a: WeylElement, w: WeightSystem) -> int | None:
    """The degree of ``a`` if it is homogeneous and nonzero, else None."""
    degs = {monomial_degree(k, w) for k in a._terms}
    return degs.pop() if len(degs) == 1 else None


def order(a: WeylElement) -> int:
    """Order in the derivatives: the largest ``|beta|`` over the terms."""
    if not a:
        raise ZeroElement("the zero operator has no order")
    return max(sum(beta) for _, beta in a._terms)


# actions


def _falling(x, k: int):
    out = 1
    for j in range(k):
        out *= x - j
    return out


def apply_to_polynomial(a: WeylElement, f: Mapping[tuple, object]) -> dict:
    """Natural action on ``K[x]``; polynomials are dicts ``alpha -> coefficient``."""
    out: dict = {}
    for (alpha, beta), c in a._terms.items():
        for gamma, fc in f.items():
            coeff = c * fc
            for b, g in zip(beta, gamma):
                if b > g:
                    coeff = 0
                    break
                coeff *= _falling(g, b)
            if coeff:
                _accumulate(out, tuple(g - b + al for al, b, g in zip(alpha, beta, gamma)), coeff)
    return out


class DeltaElement:
    """Element ``f(d) . delta`` of the delta-module, stored as ``beta -> coefficient``."""

    __slots__ = ("nvars", "poly")

    def __init__(self, nvars: int, poly: Mapping[tuple, object] = ()):
        self.nvars = nvars
        clean: dict = {}
        for beta, c in dict(poly).items():
            _accumulate(clean, tuple(beta), _scalar(c))
        self.poly = clean

    @classmethod
    def delta(cls, nvars: int) -> "DeltaElement":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, beta, c=1) -> "DeltaElement":
        return cls(len(beta), {tuple(beta): c})

    def __bool__(self):
        return bool(self.poly)

    def __eq__(self, other):
        if not isinstance(other, DeltaElement):
            return NotImplemented
        return self.nvars == other.nvars and self.poly == other.poly

    def __add__(self, other):
        out = dict(self.poly)
        for k, c in other.poly.items():
            _accumulate(out, k, c)
        return DeltaElement(self.nvars, out)

    def scale(self, c) -> "DeltaElement":
        return DeltaElement(self.nvars, {k: c * v for k, v in self.poly.items()})

    def __repr__(self):
        body = " + ".join(f"{scalar_str(c)}*[{_monomial_str((0,) * self.nvars, b) or '1'}]" for b, c in sorted(self.poly.items()))
        return f"DeltaElement({body or '0'})"


def delta_action(a: WeylElement, v: DeltaElement) -> DeltaElement:
    """``d_i`` multiplies by the variable ``d_i``; ``x_i`` acts as ``-d/d(d_i)``."""
    out: dict = {}
    for (alpha, beta), c in a._terms.items():
        for gamma, vc in v.poly.items():
            shifted = tuple(b + g for b, g in zip(beta, gamma))
            coeff = c * vc
            for al, s in zip(alpha, shifted):
                if al > s:
                    coeff = 0
                    break
                coeff *= (-1) ** al * _falling(s, al)
            if coeff:
                _accumulate(out, tuple(s - al for al, s in zip(alpha, shifted)), coeff)
    return DeltaElement(v.nvars, out)


def delta_eigenvalue(beta, w: WeightSystem) -> int:
    """E-eigenvalue of ``d^beta . delta``."""
    return -w.weight_sum - sum(b * d for b, d in zip(beta, w.weights))


class FormalMonomialElement:
    """``sum c x^(base + m)`` over integer offsets ``m``; ``base`` is a rational vector."""

    __slots__ = ("base", "offsets")

    def __init__(self, base, offsets: Mapping[tuple, object] = ()):
        self.base = tuple(Fraction(a) for a in base)
        clean: dict = {}
        for m, c in dict(offsets).items():
            _accumulate(clean, tuple(int(x) for x in m), _scalar(c))
        self.offsets = clean

    @classmethod
    def generator(cls, base) -> "FormalMonomialElement":
        return cls(base, {(0,) * len(base): 1})

    @property
    def nvars(self) -> int:
        return len(self.base)

    def exponent(self, m) -> tuple[Fraction, ...]:
        return tuple(a + k for a, k in zip(self.base, m))

    def __bool__(self):
        return bool(self.offsets)

    def __eq__(self, other):
        if not isinstance(other, FormalMonomialElement):
            return NotImplemented
        return self.base == other.base and self.offsets == other.offsets

    def __add__(self, other):
        if other.base != self.base:
            raise ValueError("formal monomials from different base exponents")
        out = dict(self.offsets)
        for k, c in other.offsets.items():
            _accumulate(out, k, c)
        return FormalMonomialElement(self.base, out)

    def scale(self, c) -> "FormalMonomialElement":
        return FormalMonomialElement(self.base, {k: c * v for k, v in self.offsets.items()})

    def __repr__(self):
        parts = [f"{scalar_str(c)}*x^{list(map(str, self.exponent(m)))}" for m, c in sorted(self.offsets.items())]
        return f"FormalMonomialElement({' + '.join(parts) or '0'})"


def formal_action(a: WeylElement, v: FormalMonomialElement) -> FormalMonomialElement:
    """``x_i`` raises exponent i; ``d_i`` multiplies by the exponent and lowers it."""
    out: dict = {}
    for (alpha, beta), c in a._terms.items():
        for m, vc in v.offsets.items():
            coeff = c * vc
            for a_i, b in zip(v.exponent(m), beta):
                coeff *= _falling(a_i, b)
                if not coeff:
                    break
            if coeff:
                _accumulate(out, tuple(k - b + al for k, al, b in zip(m, alpha, beta)), coeff)
    return FormalMonomialElement(v.base, out)


def formal_eigenvalue(exponent, w: WeightSystem):
    """E-eigenvalue of the formal monomial ``x^exponent``."""
    return sum(d * a for d, a in zip(w.weights, exponent))
