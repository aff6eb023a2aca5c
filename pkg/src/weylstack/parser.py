"""Parser for the plain-text Weyl grammar.

Accepted syntax: sums and differences of products, where factors are integer
or ``p/q`` literals, generators ``x<i>`` and ``d<i>`` (``d<i>`` is the
derivative in ``x<i>``), ``E`` (the Euler field, needs weights), ``lam`` (the
generic twist), parenthesised subexpressions and commutators ``[a, b]``.
``^`` takes a nonnegative integer exponent.  Juxtaposition multiplies, so the
printer's ``x0^2 d0`` re-parses.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exceptions import WeylParseError
from .scalars import RatFunc
from .semigroup import WeightSystem
from .weyl import WeylElement, commutator, euler_field

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)(\d*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(1) if m.group(1) else (m.start(2) if m.group(2) else m.start(4))
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            name, idx = m.group(2), m.group(3)
            tokens.append(("name", (name, int(idx) if idx else None), start))
        elif m.group(4) and not m.group(4).isspace():
            sym = m.group(4)
            if sym not in "+-*/^()[],":
                raise WeylParseError(f"unexpected character {sym!r}", start)
            tokens.append(("sym", sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def _max_index(tokens) -> int:
    idx = -1
    for kind, val, _ in tokens:
        if kind == "name" and val[1] is not None:
            idx = max(idx, val[1])
    return idx


class _Parser:
    def __init__(self, text: str, weights: WeightSystem | None, nvars: int | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.weights = weights
        needed = _max_index(self.tokens) + 1
        if nvars is None:
            nvars = weights.nvars if weights is not None else max(needed, 1)
        if needed > nvars:
            raise WeylParseError(f"generator index {needed - 1} out of range for {nvars} variables", 0)
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, sym):
        kind, val, pos = self.advance()
        if kind != "sym" or val != sym:
            raise WeylParseError(f"expected {sym!r}", pos)

    def parse(self) -> WeylElement:
        value = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise WeylParseError("unexpected trailing input", pos)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def _starts_atom(self, tok) -> bool:
        kind, val, _ = tok
        return kind in ("num", "name") or (kind == "sym" and val in "([")

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            kind, val, pos = tok
            if kind == "sym" and val == "*":
                self.advance()
                value = value * self.unary()
            elif kind == "sym" and val == "/":
                self.advance()
                divisor = self.unary()
                value = value.scale(1 / self._as_scalar(divisor, pos))
            elif self._starts_atom(tok):
                value = value * self.unary()
            else:
                return value

    def _as_scalar(self, a: WeylElement, pos):
        zero = (0,) * self.nvars
        if any(key != (zero, zero) for key, _ in a.items()):
            raise WeylParseError("division by a non-scalar", pos)
        c = a.coefficient(zero, zero)
        if not c:
            raise WeylParseError("division by zero", pos)
        return c

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "sym" and val == "-":
            self.advance()
            return -self.unary()
        if kind == "sym" and val == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.advance()
            kind, exp, pos = self.advance()
            if kind != "num":
                raise WeylParseError("exponent must be a nonnegative integer", pos)
            return base ** exp
        return base

    def atom(self):
        kind, val, pos = self.advance()
        n = self.nvars
        if kind == "num":
            return WeylElement.const(Fraction(val), n)
        if kind == "name":
            name, idx = val
            if name == "x" and idx is not None:
                return WeylElement.x(idx, n)
            if name == "d" and idx is not None:
                return WeylElement.d(idx, n)
            if name == "E" and idx is None:
                if self.weights is None:
                    raise WeylParseError("E needs a weight system", pos)
                return euler_field(self.weights)
            if name == "lam" and idx is None:
                return WeylElement.const(RatFunc.lam(), n)
            raise WeylParseError(f"unknown symbol {name}{'' if idx is None else idx}", pos)
        if kind == "sym" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "sym" and val == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return commutator(a, b)
        if kind == "end":
            raise WeylParseError("unexpected end of input", pos)
        raise WeylParseError(f"unexpected {val!r}", pos)


def parse_element(text: str, weights: WeightSystem | None = None, nvars: int | None = None) -> WeylElement:
    """Parse ``text`` into a normal-ordered element.

    ``nvars`` defaults to the number of weights, or else to one more than the
    largest generator index that occurs.
    """
    return _Parser(text, weights, nvars).parse()
