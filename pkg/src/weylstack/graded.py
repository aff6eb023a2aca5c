"""Windowed linear algebra over the graded pieces of D and D/D(E - lam).

Two independent routes decide membership in the left ideal ``D(E - lam)``:

* ``reduce_mod_euler`` searches for a cofactor ``b`` with ``b (E - lam) = a``
  by solving a linear system over the monomials of bounded order;
* ``euler_normal_form`` divides by ``E - lam`` with respect to its leading
  monomial ``x_n d_n``.  The remainder is supported on monomials with
  ``alpha_n == 0`` or ``beta_n == 0`` and is zero exactly for ideal members.

Everything else (the Koszul maps and their windowed kernels and homology)
runs on normal forms.  Right multiplication by ``E - lam`` and left
multiplication by ``x_i`` are homogeneous for the Z^(n+1) multigrading
``x_i -> e_i``, ``d_i -> -e_i``, so every computation splits into small
blocks indexed by a multidegree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exceptions import NotHomogeneous, WindowTooSmall
from .linalg import EchelonSpan, nullspace, polynomial_rank, rank, solve
from .scalars import Twist, as_twist
from .semigroup import WeightSystem, is_member
from .weyl import (
    WeylElement,
    deglex_key,
    euler_field,
    format_element,
    graded_components,
    homogeneous_degree,
    multidegree,
    order,
)


@dataclass(frozen=True)
class Window:
    """Truncation of the graded pieces: a degree range and a bound on the d-order."""

    degree_lo: int
    degree_hi: int
    order_bound: int
    padding: int = 0

    def __post_init__(self):
        if self.degree_lo > self.degree_hi:
            raise ValueError(f"empty degree range [{self.degree_lo}, {self.degree_hi}]")
        if self.order_bound < 0 or self.padding < 0:
            raise ValueError("order bound and padding must be nonnegative")

    @property
    def degrees(self) -> range:
        return range(self.degree_lo, self.degree_hi + 1)

    def to_dict(self) -> dict:
        return {
            "degree_lo": self.degree_lo,
            "degree_hi": self.degree_hi,
            "order_bound": self.order_bound,
            "padding": self.padding,
        }


def default_window(w: WeightSystem, order_bound: int = 4) -> Window:
    s = w.weight_sum
    return Window(-2 * s, 2 * s, order_bound, w.max_weight)


# graded ring A = K[x_0..x_n]


@lru_cache(maxsize=None)
def _hilbert_table(weights: tuple[int, ...], upto: int) -> tuple[int, ...]:
    counts = [1] + [0] * upto
    for d in weights:
        for k in range(d, upto + 1):
            counts[k] += counts[k - d]
    return tuple(counts)


def hilbert_dim(w: WeightSystem, k: int) -> int:
    """Number of monomials ``x^alpha`` with ``sum(alpha_i d_i) == k``."""
    if k < 0:
        return 0
    size = max(64, 1 << k.bit_length())
    return _hilbert_table(w.weights, size)[k]


def twisted_sheaf_sections(w: WeightSystem, k: int) -> int:
    """Dimension of the global sections of O(k) in its own twist, i.e. ``dim A_k``."""
    return hilbert_dim(w, k)


def _compositions(total: int, weights: tuple[int, ...]):
    """All ``alpha >= 0`` with ``sum(alpha_i weights_i) == total``."""
    if not weights:
        if total == 0:
            yield ()
        return
    d, rest = weights[0], weights[1:]
    for a in range(total // d + 1):
        for tail in _compositions(total - a * d, rest):
            yield (a,) + tail


def _bounded_vectors(nvars: int, bound: int):
    """All ``beta >= 0`` of length ``nvars`` with ``|beta| <= bound``."""
    for total in range(bound + 1):
        for cut in itertools.combinations(range(total + nvars - 1), nvars - 1):
            parts, prev = [], -1
            for c in cut:
                parts.append(c - prev - 1)
                prev = c
            parts.append(total + nvars - 2 - prev)
            yield tuple(parts)


def basis_of_D_degree(w: WeightSystem, k: int, order_bound: int) -> list[WeylElement]:
    """Normal-ordered monomials of weighted degree ``k`` and d-order at most ``order_bound``."""
    keys = []
    for beta in _bounded_vectors(w.nvars, order_bound):
        target = k + sum(b * d for b, d in zip(beta, w.weights))
        if target < 0:
            continue
        for alpha in _compositions(target, w.weights):
            keys.append((alpha, beta))
    keys.sort(key=deglex_key)
    return [WeylElement.monomial(a, b) for a, b in keys]


# the quotient D / D(E - lam)


def euler_minus(w: WeightSystem, lam) -> WeylElement:
    lam = as_twist(lam)
    return euler_field(w) - WeylElement.const(lam.scalar(), w.nvars)


@lru_cache(maxsize=500_000)
def _nf_monomial(weights: tuple[int, ...], lam: Twist, alpha: tuple, beta: tuple) -> tuple:
    n = len(weights) - 1
    if alpha[n] == 0 or beta[n] == 0:
        return (((alpha, beta), lam.field_one()),)
    # x^a d^b (E - lam) = sum_i d_i x^(a+e_i) d^(b+e_i) + (sum_j d_j b_j - lam) x^a d^b,
    # solved for the i = n term.
    a1 = alpha[:n] + (alpha[n] - 1,)
    b1 = beta[:n] + (beta[n] - 1,)
    scale = -1 / Fraction(weights[n])
    out: dict = {}

    def add(key_items, c):
        for key, v in key_items:
            t = out.get(key)
            t = c * v if t is None else t + c * v
            if t:
                out[key] = t
            else:
                out.pop(key, None)

    for i in range(n):
        ai = a1[:i] + (a1[i] + 1,) + a1[i + 1:]
        bi = b1[:i] + (b1[i] + 1,) + b1[i + 1:]
        add(_nf_monomial(weights, lam, ai, bi), scale * weights[i])
    shift = sum(d * b for d, b in zip(weights, b1)) - lam.scalar()
    if shift:
        add(_nf_monomial(weights, lam, a1, b1), scale * shift)
    return tuple(out.items())


def euler_normal_form(a: WeylElement, w: WeightSystem, lam) -> WeylElement:
    """Canonical representative of ``a`` modulo the left ideal ``D(E - lam)``."""
    lam = as_twist(lam)
    out: dict = {}
    for (alpha, beta), c in a.items():
        for key, v in _nf_monomial(w.weights, lam, alpha, beta):
            t = out.get(key)
            t = c * v if t is None else t + c * v
            if t:
                out[key] = t
            else:
                out.pop(key, None)
    return WeylElement(w.nvars, out)


@dataclass(frozen=True, eq=False)
class DQuotientResidue:
    """The class ``rep + D(E - lam)`` in D/D(E - lam)."""

    rep: WeylElement
    twist: Twist
    weights: WeightSystem

    @classmethod
    def of(cls, rep: WeylElement, w: WeightSystem, lam) -> "DQuotientResidue":
        return cls(rep, as_twist(lam), w)

    def normal_form(self) -> WeylElement:
        return euler_normal_form(self.rep, self.weights, self.twist)

    def is_zero(self) -> bool:
        return not self.normal_form()

    def _same_space(self, other: "DQuotientResidue"):
        if other.twist != self.twist or other.weights != self.weights:
            raise ValueError("residues live in different quotients")

    def __eq__(self, other):
        if not isinstance(other, DQuotientResidue):
            return NotImplemented
        self._same_space(other)
        return not euler_normal_form(self.rep - other.rep, self.weights, self.twist)

    __hash__ = None

    def __add__(self, other):
        self._same_space(other)
        return DQuotientResidue(self.rep + other.rep, self.twist, self.weights)

    def __sub__(self, other):
        self._same_space(other)
        return DQuotientResidue(self.rep - other.rep, self.twist, self.weights)

    def __neg__(self):
        return DQuotientResidue(-self.rep, self.twist, self.weights)

    def __rmul__(self, left):
        """Left D-module action (or a scalar)."""
        return DQuotientResidue(left * self.rep, self.twist, self.weights)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return f"[{format_element(self.normal_form())}]"

    __repr__ = __str__


@dataclass(frozen=True)
class EulerReduction:
    residue: DQuotientResidue
    in_ideal: bool
    cofactor: WeylElement | None
    order_bound: int


def reduce_mod_euler(a: WeylElement, w: WeightSystem, lam, win: Window) -> EulerReduction:
    """Search for ``b`` of order < ``win.order_bound`` with ``b (E - lam) == a``.

    A found cofactor is an exact certificate.  ``in_ideal`` False only says no
    cofactor of that order exists; since leading monomials multiply, that is
    conclusive once ``win.order_bound`` exceeds the order of ``a``.
    """
    lam = as_twist(lam)
    residue = DQuotientResidue(a, lam, w)
    if not a:
        return EulerReduction(residue, True, WeylElement.zero(w.nvars), win.order_bound)
    k = homogeneous_degree(a, w)
    if k is None:
        raise NotHomogeneous(f"element mixes degrees {sorted(graded_components(a, w))}")
    if win.order_bound == 0:
        return EulerReduction(residue, False, None, win.order_bound)
    em = euler_minus(w, lam)
    wanted = {multidegree(key) for key, _ in a.items()}
    cofactors = [b for b in basis_of_D_degree(w, k, win.order_bound - 1)
                 if multidegree(next(iter(b.terms))) in wanted]
    products = [b * em for b in cofactors]
    index: dict = {}
    for p in products:
        for key, _ in p.items():
            index.setdefault(key, len(index))
    for key, _ in a.items():
        if key not in index:
            index.setdefault(key, len(index))
    one = lam.field_one()
    zero = one - one

    def coords(el):
        v = [zero] * len(index)
        for key, c in el.items():
            v[index[key]] = c
        return v

    sol = solve([coords(p) for p in products], coords(a), one)
    if sol is None:
        return EulerReduction(residue, False, None, win.order_bound)
    cof = WeylElement(w.nvars, {})
    for c, b in zip(sol, cofactors):
        if c:
            cof = cof + b.scale(c)
    return EulerReduction(residue, True, cof, win.order_bound)


# Koszul maps


def koszul_phi1(m: DQuotientResidue) -> tuple[DQuotientResidue, ...]:
    """``m -> (x_i m)_i``."""
    n = m.weights.nvars
    return tuple(WeylElement.x(i, n) * m for i in range(n))


def koszul_pairs(nvars: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(nvars), 2))


def koszul_phi2(ms) -> dict[tuple[int, int], DQuotientResidue]:
    """``(m_i) -> (x_i0 m_i1 - x_i1 m_i0)`` over pairs ``i0 < i1``."""
    ms = tuple(ms)
    n = len(ms)
    if n != ms[0].weights.nvars:
        raise ValueError(f"expected {ms[0].weights.nvars} components, got {n}")
    return {
        (i0, i1): WeylElement.x(i0, n) * ms[i1] - WeylElement.x(i1, n) * ms[i0]
        for i0, i1 in koszul_pairs(n)
    }


@lru_cache(maxsize=None)
def _normal_basis(nvars: int, nu: tuple[int, ...], bound: int) -> tuple:
    """Normal-form monomials of multidegree ``nu`` and d-order at most ``bound``."""
    base_beta = tuple(max(0, -v) for v in nu)
    slack = bound - sum(base_beta)
    if slack < 0:
        return ()
    keys = []
    last = nvars - 1
    for extra in _bounded_vectors(nvars, slack):
        beta = tuple(b + e for b, e in zip(base_beta, extra))
        alpha = tuple(v + b for v, b in zip(nu, beta))
        if alpha[last] and beta[last]:
            continue
        keys.append((alpha, beta))
    keys.sort(key=deglex_key)
    return tuple(keys)


def _shift(nu, *idx):
    nu = list(nu)
    for i in idx:
        nu[i] += 1
    return tuple(nu)


def _multidegrees(w: WeightSystem, s: int, bound: int):
    """Multidegrees ``mu`` of weighted degree ``s`` whose source or middle block can be nonzero."""
    ws = w.weights
    lo = -(bound + 1)

    def rec(i, remaining, neg, prefix):
        if i == len(ws) - 1:
            if remaining % ws[i]:
                return
            v = remaining // ws[i]
            if v < lo:
                return
            if neg + max(0, -v) > 2 * bound + 2:
                return
            yield prefix + (v,)
            return
        rest_min = sum(lo * d for d in ws[i + 1:])
        hi = (remaining - rest_min) // ws[i]
        for v in range(lo, hi + 1):
            nneg = neg + max(0, -v)
            if nneg > 2 * bound + 2:
                continue
            yield from rec(i + 1, remaining - v * ws[i], nneg, prefix + (v,))

    for mu in rec(0, s, 0, ()):
        if _normal_basis(w.nvars, mu, bound) or any(
            _normal_basis(w.nvars, _shift(mu, i), bound) for i in range(w.nvars)
        ):
            yield mu


@dataclass
class _Block:
    mu: tuple
    source: tuple
    middle: list
    target: list
    phi1: list  # rows indexed by middle, columns by source
    phi2: list  # rows indexed by target, columns by middle


def _build_block(w: WeightSystem, lam: Twist, mu: tuple, bound: int) -> _Block:
    n = w.nvars
    one = lam.field_one()
    zero = one - one
    source = _normal_basis(n, mu, bound)
    middle = [(i, key) for i in range(n) for key in _normal_basis(n, _shift(mu, i), bound)]
    pairs = koszul_pairs(n)
    target = [(p, key) for p in pairs for key in _normal_basis(n, _shift(mu, *p), bound)]
    mid_index = {entry: j for j, entry in enumerate(middle)}
    tgt_index = {entry: j for j, entry in enumerate(target)}

    def times_x(i, key):
        alpha, beta = key
        return _nf_monomial(w.weights, lam, _shift(alpha, i), beta)

    phi1 = [[zero] * len(source) for _ in middle]
    for col, key in enumerate(source):
        for i in range(n):
            for k2, c in times_x(i, key):
                phi1[mid_index[(i, k2)]][col] += c
    phi2 = [[zero] * len(middle) for _ in target]
    for col, (i, key) in enumerate(middle):
        for j in range(n):
            if j == i:
                continue
            pair, sign = ((j, i), 1) if j < i else ((i, j), -1)
            for k2, c in times_x(j, key):
                phi2[tgt_index[(pair, k2)]][col] += sign * c
    return _Block(mu, source, middle, target, phi1, phi2)


def _vector_to_tuple(middle, vec, nvars) -> tuple[WeylElement, ...]:
    comps = [dict() for _ in range(nvars)]
    for (i, key), c in zip(middle, vec):
        if c:
            comps[i][key] = c
    return tuple(WeylElement(nvars, t) for t in comps)


@dataclass
class KoszulBlockReport:
    degree: int
    source_dim: int = 0
    middle_dim: int = 0
    ker_phi1: int = 0
    ker_phi2: int = 0
    im_phi1: int = 0
    homology: int = 0
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "source_dim": self.source_dim,
            "middle_dim": self.middle_dim,
            "ker_phi1": self.ker_phi1,
            "ker_phi2": self.ker_phi2,
            "im_phi1": self.im_phi1,
            "homology": self.homology,
            "witnesses": [[format_element(c) for c in wv] for wv in self.witnesses],
        }


@dataclass
class ClassCertificate:
    """Decision for one tuple ``(m_i)``: is it a Koszul cocycle, and is it a coboundary?"""

    vector: tuple
    in_ker_phi2: bool
    in_image_phi1: bool
    order_bound: int
    note: str

    @property
    def nonzero_class(self) -> bool:
        return self.in_ker_phi2 and not self.in_image_phi1

    def to_dict(self) -> dict:
        return {
            "vector": [format_element(c) for c in self.vector],
            "in_ker_phi2": self.in_ker_phi2,
            "in_image_phi1": self.in_image_phi1,
            "nonzero_class": self.nonzero_class,
            "order_bound": self.order_bound,
            "note": self.note,
        }


@dataclass
class KoszulReport:
    weights: WeightSystem
    twist: Twist
    window: Window
    blocks: dict[int, KoszulBlockReport]
    two_weight_class: ClassCertificate | None = None

    @property
    def ker_phi1_dim(self) -> int:
        return sum(b.ker_phi1 for b in self.blocks.values())

    @property
    def homology_dim(self) -> int:
        return sum(b.homology for b in self.blocks.values())

    @property
    def witness_vectors(self) -> list:
        return [v for b in self.blocks.values() for v in b.witnesses]

    @property
    def vanishing_status(self) -> str:
        # a nonzero class survives to the full module; vanishing only holds up to the order bound
        return "certified-nonzero" if self.homology_dim else "window-relative"

    def to_dict(self) -> dict:
        return {
            "weights": list(self.weights.weights),
            "twist": str(self.twist),
            "window": self.window.to_dict(),
            "ker_phi1_dim": self.ker_phi1_dim,
            "homology_dim": self.homology_dim,
            "status": self.vanishing_status,
            "blocks": [b.to_dict() for _, b in sorted(self.blocks.items())],
            "two_weight_class": None if self.two_weight_class is None else self.two_weight_class.to_dict(),
        }


def _check_window(w: WeightSystem, win: Window):
    if win.padding < w.max_weight:
        raise WindowTooSmall(f"padding {win.padding} < max weight {w.max_weight}")


def koszul_block(w: WeightSystem, lam, degree: int, order_bound: int, *, witnesses: bool = True) -> KoszulBlockReport:
    """Kernel and homology dimensions of the Koszul complex in one weighted degree.

    ``degree`` is the degree of the source ``m`` of ``phi_1``; the middle
    components ``m_i`` then have degree ``degree + d_i`` in D.
    """
    lam = as_twist(lam)
    one = lam.field_one()
    rep = KoszulBlockReport(degree)
    for mu in _multidegrees(w, degree, order_bound):
        blk = _build_block(w, lam, mu, order_bound)
        rk = polynomial_rank if lam.is_generic else rank
        r1 = rk(blk.phi1, len(blk.source)) if blk.middle else 0
        r2 = rk(blk.phi2, len(blk.middle)) if blk.target else 0
        k2 = len(blk.middle) - r2
        rep.source_dim += len(blk.source)
        rep.middle_dim += len(blk.middle)
        rep.ker_phi1 += len(blk.source) - r1
        rep.ker_phi2 += k2
        rep.im_phi1 += r1
        h = k2 - r1
        rep.homology += h
        if h and witnesses:
            span = EchelonSpan(len(blk.middle))
            for col in range(len(blk.source)):
                span.add([row[col] for row in blk.phi1])
            for vec in nullspace(blk.phi2, len(blk.middle), one):
                if span.add(vec):
                    rep.witnesses.append(_vector_to_tuple(blk.middle, vec, w.nvars))
    return rep


def two_weight_class_vector(w: WeightSystem) -> tuple[WeylElement, WeylElement]:
    """``(-d_1 d1, d_0 d0)`` for a two-weight system."""
    if w.nvars != 2:
        raise ValueError("the two-variable Koszul class needs exactly two weights")
    d0, d1 = w.weights
    return (WeylElement.d(1, 2).scale(Fraction(-d1)), WeylElement.d(0, 2).scale(Fraction(d0)))


def koszul_class_certificate(w: WeightSystem, lam, vector, order_bound: int | None = None) -> ClassCertificate:
    """Decide whether ``vector`` is a cocycle and whether it is a coboundary.

    ``phi_1`` never raises the order of a normal form, and ``x_0`` maps normal
    monomials injectively to normal monomials, so a cocycle of order ``B`` is
    a coboundary iff it is the image of something of order at most ``B``.
    Testing at any bound >= the order of the vector is therefore conclusive.
    """
    lam = as_twist(lam)
    n = w.nvars
    residues = tuple(DQuotientResidue(v, lam, w) for v in vector)
    nfs = [r.normal_form() for r in residues]
    in_ker = all(c.is_zero() for c in koszul_phi2(residues).values())
    nonzero = [x for x in nfs if x]
    vec_order = max((order(x) for x in nonzero), default=0)
    bound = vec_order if order_bound is None else max(order_bound, vec_order)
    # split by source multidegree; phi_1 is multihomogeneous
    pieces: dict[tuple, dict] = {}
    for i, el in enumerate(nfs):
        for key, c in el.items():
            mu = multidegree(key)
            mu = mu[:i] + (mu[i] - 1,) + mu[i + 1:]
            pieces.setdefault(mu, {})[(i, key)] = c
    in_image = True
    one = lam.field_one()
    zero = one - one
    for mu, coeffs in pieces.items():
        blk = _build_block(w, lam, mu, bound)
        target = [coeffs.get(entry, zero) for entry in blk.middle]
        columns = [[row[col] for row in blk.phi1] for col in range(len(blk.source))]
        if solve(columns, target, one) is None:
            in_image = False
            break
    note = (
        f"image of phi_1 searched over sources of order <= {bound}; "
        f"vector order {vec_order}, so the search is exhaustive"
    )
    return ClassCertificate(tuple(nfs), in_ker, in_image, bound, note)


def koszul_homology_window(w: WeightSystem, lam, win: Window, *, witnesses: bool = True) -> KoszulReport:
    """Hom and Ext^1 of the residue field into D/D(E - lam), degree by degree in ``win``."""
    _check_window(w, win)
    lam = as_twist(lam)
    blocks = {s: koszul_block(w, lam, s, win.order_bound, witnesses=witnesses) for s in win.degrees}
    report = KoszulReport(w, lam, win, blocks)
    if w.n == 1:
        report.two_weight_class = koszul_class_certificate(w, lam, two_weight_class_vector(w), win.order_bound)
    return report


def ext1_nonvanishing_expected(w: WeightSystem, lam) -> bool:
    """Closed-form prediction for two weights: Ext^1 is nonzero iff lam lies in the semigroup.

    In multidegree ``(-b_0, -b_1)`` the complex reduces to the Koszul complex
    of two linear forms in one variable over K[theta_1]; they share a root
    exactly when ``lam == d_0 (b_0 - 1) + d_1 (b_1 - 1)``.
    """
    lam = as_twist(lam)
    if w.n != 1:
        return False
    return lam.is_integer and is_member(w, int(lam.value))
