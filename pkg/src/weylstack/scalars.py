"""Exact scalars: rationals and the rational-function field Q(lam).

A generic twist is modelled as a transcendental ``lam`` over Q, so every
computation that is uniform in the twist runs over ``Q(lam)``.  Univariate
polynomials are tuples of Fractions, lowest degree first, without trailing
zeros.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

Poly = tuple  # tuple[Fraction, ...], low degree first

_ZERO: Poly = ()
_ONE: Poly = (Fraction(1),)


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return _trim([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return _ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and r:
        c = r[-1] / lead
        shift = len(r) - len(b)
        q[shift] = c
        for j, y in enumerate(b):
            r[shift + j] -= c * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return _trim(q), _trim(r)


def _monic(a: Poly) -> Poly:
    return tuple(c / a[-1] for c in a) if a else a


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _monic(a)


def _peval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pstr(p: Poly, var: str) -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


class RatFunc:
    """Element of Q(lam), kept reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=_ZERO, den=_ONE, *, _reduced=False):
        if not _reduced:
            num, den = _trim(num), _trim(den)
            if not den:
                raise ZeroDivisionError("zero denominator")
            if not num:
                den = _ONE
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = tuple(c / lead for c in num)
                    den = tuple(c / lead for c in den)
        self.num = num
        self.den = den

    @classmethod
    def lam(cls) -> "RatFunc":
        return cls((Fraction(0), Fraction(1)), _ONE, _reduced=True)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls((c,) if c else _ZERO, _ONE, _reduced=True)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        return NotImplemented

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(_padd(self.num, o.num), self.den)
        return RatFunc(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return RatFunc()
        if self.is_polynomial() and o.is_polynomial():
            return RatFunc(_pmul(self.num, o.num), _ONE, _reduced=True)
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(lam)")
        return RatFunc(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def evaluate(self, x) -> Fraction:
        """Specialise ``lam`` to the rational ``x``."""
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at lam = {x}")
        return _peval(self.num, x) / d

    def __str__(self):
        if self.is_polynomial():
            return _pstr(self.num, "lam")
        return f"({_pstr(self.num, 'lam')})/({_pstr(self.den, 'lam')})"

    def __repr__(self):
        return f"RatFunc({self})"


def is_zero(c) -> bool:
    return not c


def scalar_str(c) -> str:
    """Printable form of a coefficient; compound expressions get parentheses."""
    if isinstance(c, RatFunc):
        if c.is_constant():
            return str(c.constant_value())
        return f"({c})"
    return str(c)


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@total_ordering
@dataclass(frozen=True)
class Twist:
    """The twist ``lam``: an exact rational, or the generic (non-integral) class.

    ``value is None`` encodes the generic class.  It is integral for no
    purpose and is realised in linear algebra as the transcendental ``lam``.
    """

    value: Fraction | None

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def generic(cls) -> "Twist":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "Twist":
        text = str(text).strip()
        if text.lower() == "generic":
            return cls.generic()
        m = _RATIONAL_RE.match(text)
        if not m or (m.group(2) is not None and int(m.group(2)) == 0):
            raise ValueError(f"twist must be 'p/q' or 'generic', got {text!r}")
        return cls(Fraction(int(m.group(1)), int(m.group(2) or 1)))

    @property
    def is_generic(self) -> bool:
        return self.value is None

    @property
    def is_integer(self) -> bool:
        return self.value is not None and self.value.denominator == 1

    def scalar(self):
        """The twist as a field element: a Fraction, or ``lam`` in Q(lam)."""
        return RatFunc.lam() if self.value is None else self.value

    def field_one(self):
        return RatFunc.const(1) if self.value is None else Fraction(1)

    def __str__(self):
        return "generic" if self.value is None else str(self.value)

    def _key(self):
        return (1, 0) if self.value is None else (0, self.value)

    def __lt__(self, other):
        return self._key() < other._key()


def as_twist(lam) -> Twist:
    if isinstance(lam, Twist):
        return lam
    if isinstance(lam, str):
        return Twist.parse(lam)
    return Twist(lam)
