"""Arithmetic of the numerical semigroup generated by a weight system.

The semigroup is the set of nonnegative integer combinations of the weights
``d_0 <= ... <= d_n``.  Membership and the Frobenius number are computed from
the Apery set with respect to the smallest weight (a shortest-path problem on
the residues modulo ``d_0``), which keeps every query pseudo-polynomial in the
smallest weight instead of in the queried integer.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import NamedTuple, Sequence

from .exceptions import InvalidWeights, NotCoprime


@dataclass(frozen=True)
class WeightSystem:
    """Positive weights ``d_0 <= ... <= d_n`` with ``n >= 1``.

    Input order is irrelevant: the weights are stored sorted, so two systems
    with the same multiset of weights compare equal.
    """

    weights: tuple[int, ...]

    def __post_init__(self):
        try:
            ws = tuple(sorted(int(d) for d in self.weights))
        except (TypeError, ValueError) as exc:
            raise InvalidWeights(f"weights must be integers: {self.weights!r}") from exc
        if len(ws) < 2:
            raise InvalidWeights("need at least two weights (dimension >= 2)")
        if ws[0] < 1:
            raise InvalidWeights(f"weights must be positive: {ws}")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def of(cls, *weights: int) -> "WeightSystem":
        return cls(tuple(weights))

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @cached_property
    def gcd(self) -> int:
        return reduce(math.gcd, self.weights)

    @cached_property
    def weight_sum(self) -> int:
        return sum(self.weights)

    @property
    def max_weight(self) -> int:
        return self.weights[-1]

    @cached_property
    def _apery(self) -> tuple[list[int], list[tuple[int, ...]]]:
        return _apery_set(tuple(d // self.gcd for d in self.weights))

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)

    def __str__(self):
        return "(" + ",".join(map(str, self.weights)) + ")"


def _apery_set(ws: tuple[int, ...]) -> tuple[list[int], list[tuple[int, ...]]]:
    """Smallest semigroup element in each residue class mod ``ws[0]``.

    ``ws`` must be coprime.  Returns the minima and one representation of each.
    """
    m = ws[0]
    dist = [math.inf] * m
    pred: list[tuple[int, int] | None] = [None] * m
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        dcur, r = heapq.heappop(heap)
        if dcur > dist[r]:
            continue
        for i, d in enumerate(ws[1:], start=1):
            s = (r + d) % m
            if dcur + d < dist[s]:
                dist[s] = dcur + d
                pred[s] = (r, i)
                heapq.heappush(heap, (dist[s], s))
    reps = []
    for r in range(m):
        b = [0] * len(ws)
        cur = r
        while pred[cur] is not None:
            prev, i = pred[cur]
            b[i] += 1
            cur = prev
        reps.append(tuple(b))
    return [int(x) for x in dist], reps


def gcd_all(w: WeightSystem) -> int:
    return w.gcd


def represent(w: WeightSystem, k: int) -> tuple[int, ...] | None:
    """A vector ``b >= 0`` with ``sum(b_i d_i) == k``, or None if k is a gap."""
    if k < 0 or k % w.gcd:
        return None
    k //= w.gcd
    apery, reps = w._apery
    m = w.weights[0] // w.gcd
    r = k % m
    if k < apery[r]:
        return None
    b = list(reps[r])
    b[0] += (k - apery[r]) // m
    return tuple(b)


def is_member(w: WeightSystem, k: int) -> bool:
    """True iff ``k`` is a nonnegative integer combination of the weights."""
    return represent(w, k) is not None


def _require_coprime(w: WeightSystem) -> None:
    if w.gcd != 1:
        raise NotCoprime(f"weights {w} have gcd {w.gcd}; the semigroup has infinitely many gaps")


def frobenius(w: WeightSystem) -> int:
    """Largest integer outside the semigroup; -1 when some weight equals 1."""
    _require_coprime(w)
    apery, _ = w._apery
    return max(apery) - w.weights[0]


def gaps(w: WeightSystem) -> list[int]:
    _require_coprime(w)
    return [k for k in range(frobenius(w) + 1) if not is_member(w, k)]


def is_well_formed(w: WeightSystem) -> bool:
    """Every n of the n+1 weights are jointly coprime."""
    ws = w.weights
    return all(reduce(math.gcd, ws[:j] + ws[j + 1:]) == 1 for j in range(len(ws)))


def is_delta_weight(w: WeightSystem, lam) -> bool:
    """Whether ``lam`` is an E-eigenvalue of the delta-module, i.e. lies in -sum(d) - A.

    ``lam`` may be a ``Twist``, an int, or a Fraction; generic twists are never
    weights of the delta-module.
    """
    value = getattr(lam, "value", lam)
    if value is None:
        return False
    value = Fraction(value)
    if value.denominator != 1:
        return False
    return is_member(w, -int(value) - w.weight_sum)


class MixedSignRep(NamedTuple):
    coeffs: tuple[int, ...]
    degenerate: bool


def _ext_gcd_all(c: Sequence[int]) -> tuple[int, list[int]]:
    g, coeffs = c[0], [1] + [0] * (len(c) - 1)
    for j in range(1, len(c)):
        # Bezout for (g, c_j), then fold into the running coefficients
        old_r, r = g, c[j]
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        g = old_r
        coeffs = [x * old_s for x in coeffs]
        coeffs[j] = old_t
    return g, coeffs


def mixed_sign_rep(c: Sequence[int]) -> MixedSignRep:
    """Integers ``r`` with ``r_0 <= 0``, ``r_1.. >= 0`` and ``sum(r_i c_i) == gcd(c)``.

    Starts from an extended-Euclid relation and shifts it by multiples of
    ``-l/c_0 * c_0 + l/c_i * c_i = 0`` (``l = lcm(c)``) until the tail is
    nonnegative; each tail entry ends up in ``[0, l/c_i)``.  A single
    generator has only the representation ``(1,)``, returned flagged degenerate.
    """
    c = [int(x) for x in c]
    if not c or any(x < 1 for x in c):
        raise ValueError("need a nonempty list of positive integers")
    g, s = _ext_gcd_all(c)
    if len(c) == 1:
        return MixedSignRep((1,), True)
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), c)
    r = list(s)
    for i in range(1, len(c)):
        step = lcm // c[i]
        t = -(r[i] // step)  # brings r[i] into [0, step)
        r[i] += t * step
        r[0] -= t * (lcm // c[0])
    if r[0] > 0:
        # only possible when c_0 == g and the tail vanished
        r[1] += lcm // c[1]
        r[0] -= lcm // c[0]
    assert sum(ri * ci for ri, ci in zip(r, c)) == g
    return MixedSignRep(tuple(r), False)


@dataclass(frozen=True)
class SemigroupTable:
    """Membership flags and representations for ``0..bound``, built by a plain DP."""

    weights: WeightSystem
    bound: int
    member: tuple[bool, ...] = field(repr=False)
    representation: dict[int, tuple[int, ...]] = field(repr=False)

    def __contains__(self, k: int) -> bool:
        return 0 <= k <= self.bound and self.member[k]


def default_table_bound(w: WeightSystem) -> int:
    bound = 4 * w.weight_sum
    if w.gcd == 1:
        bound = max(bound, frobenius(w) + 1)
    return bound


def semigroup_table(w: WeightSystem, bound: int | None = None) -> SemigroupTable:
    if bound is None:
        bound = default_table_bound(w)
    reps: dict[int, tuple[int, ...]] = {0: (0,) * w.nvars}
    for k in range(1, bound + 1):
        for i, d in enumerate(w.weights):
            prev = reps.get(k - d)
            if prev is not None:
                b = list(prev)
                b[i] += 1
                reps[k] = tuple(b)
                break
    member = tuple(k in reps for k in range(bound + 1))
    return SemigroupTable(w, bound, member, reps)
