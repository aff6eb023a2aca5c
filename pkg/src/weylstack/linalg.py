"""Dense exact linear algebra over Q or Q(lam).

Entries are any field elements supporting ``+ - * /`` and truthiness
(``Fraction``, ``RatFunc``).  Matrices are lists of rows.  Nothing here
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def rref(rows: list[list], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                row_r = m[r]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], row_r)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(matrix: list[list], ncols: int, one=Fraction(1)) -> list[list]:
    """Basis of ``{v : matrix v = 0}``; ``one`` fixes the field of the free entries."""
    zero = one - one
    if not matrix:
        return [[one if j == i else zero for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(matrix, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, p in zip(red, pivots):
            if row[free]:
                v[p] = -row[free]
        basis.append(v)
    return basis


def transpose(matrix: list[list], nrows: int, ncols: int) -> list[list]:
    """``matrix`` has ``nrows`` rows of length ``ncols``; also valid when ``nrows == 0``."""
    return [[matrix[i][j] for i in range(nrows)] for j in range(ncols)]


class EchelonSpan:
    """Incrementally maintained span of vectors, kept in echelon form."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, list] = {}  # pivot column -> row with 1 at pivot

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: list) -> list:
        v = list(v)
        for p in sorted(self._rows):
            if v[p]:
                f = v[p]
                row = self._rows[p]
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def add(self, v: list) -> bool:
        """Insert ``v``; return False when it already lies in the span."""
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv if x else x for x in v]
        for q, row in self._rows.items():
            if row[p]:
                f = row[p]
                self._rows[q] = [a - f * b if b else a for a, b in zip(row, v)]
        self._rows[p] = v
        return True

    def contains(self, v: list) -> bool:
        return not any(self.reduce(v))


def solve(columns: list[list], target: list, one=Fraction(1)):
    """Coefficients ``c`` with ``sum c_j columns[j] == target``, or None if inconsistent."""
    zero = one - one
    n = len(columns)
    if n == 0:
        return [] if not any(target) else None
    dim = len(target)
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(dim)]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    sol = [zero] * n
    for row, p in zip(red, pivots):
        sol[p] = row[n]
    return sol


# Fraction-free rank over Q(lam) for matrices whose entries are polynomials in lam.

def _to_int_row(row) -> list[tuple[int, ...]]:
    """Scale a row of Q[lam] entries to Z[lam]; entries become int coefficient tuples."""
    polys = []
    den = 1
    for x in row:
        coeffs = _poly_coeffs(x)
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        polys.append(coeffs)
    return [_int_trim([int(c * den) for c in p]) for p in polys]


def _poly_coeffs(x) -> tuple:
    num = getattr(x, "num", None)
    if num is not None:
        if len(x.den) != 1:
            raise ValueError("entry is not a polynomial in lam")
        return num
    x = Fraction(x)
    return (x,) if x else ()


def _int_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _imul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _isub(a, b):
    n = max(len(a), len(b))
    return _int_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _iexact_div(a, b):
    """Quotient of integer polynomials known to divide exactly."""
    if len(b) == 1:
        d = b[0]
        return tuple(x // d for x in a)
    r = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(q) - 1, -1, -1):
        c = r[shift + len(b) - 1] // lead
        q[shift] = c
        if c:
            for j, y in enumerate(b):
                r[shift + j] -= c * y
    return _int_trim(q)


def polynomial_rank(matrix: list[list], ncols: int) -> int:
    """Rank over Q(lam) of a matrix with entries in Q[lam], by Bareiss elimination in Z[lam]."""
    m = [_to_int_row(r) for r in matrix]
    m = [r for r in m if any(r)]
    if not m:
        return 0
    prev = (1,)
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        row_r = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            row_i = m[i]
            new = [()] * ncols
            for j in range(col + 1, ncols):
                a, b = row_i[j], row_r[j]
                if not b or not f:
                    if a:
                        new[j] = _iexact_div(_imul(p, a), prev)
                elif not a:
                    new[j] = _iexact_div(_imul(f, b), prev)
                    new[j] = tuple(-x for x in new[j])
                else:
                    new[j] = _iexact_div(_isub(_imul(p, a), _imul(f, b)), prev)
            m[i] = new
        prev = p
        r += 1
        if r == len(m):
            break
    return r
