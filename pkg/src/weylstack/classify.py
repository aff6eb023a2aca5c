"""Decision procedure for the global-sections functor of a twisted weighted projective stack.

Given weights and a twist, ``classify`` reports whether exactness is
guaranteed (the twist avoids the E-weights ``-sum(d) - A`` of the
delta-module), whether the kernel of global sections is trivial (gcd 1 and
twist non-integral or in ``A``), and what that means for the two
equivalences.  Every nonzero-kernel verdict carries a concrete witness
module that ``verify_witness`` checks independently.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import NoWitnessApplicable, VerificationFailed
from .graded import Window, default_window, hilbert_dim
from .scalars import Twist, as_twist
from .semigroup import WeightSystem, is_delta_weight, is_member, is_well_formed
from .weyl import (
    DeltaElement,
    FormalMonomialElement,
    WeylElement,
    apply_to_polynomial,
    delta_action,
    euler_field,
    formal_action,
    formal_eigenvalue,
)


class Exactness(str, enum.Enum):
    GUARANTEED = "Guaranteed"
    NOT_GUARANTEED = "NotGuaranteedByPaper"


class Kernel(str, enum.Enum):
    ZERO = "Zero"
    NONZERO = "NonzeroWitness"
    UNKNOWN = "UnknownByPaper"


class StackEquivalence(str, enum.Enum):
    YES = "Yes"
    QUOTIENT_ONLY = "QuotientEquivalenceOnly"
    NO = "No"
    OUTSIDE_SCOPE = "OutsidePaperScope"


class Pushforward(str, enum.Enum):
    YES = "Yes"
    NOT_WELL_FORMED = "NotWellFormed"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class KernelWitness:
    """A nonzero module with no global sections.

    ``kind`` is ``"TwistingSheaf"`` (the sheaf O(k), ``degree`` = k) or
    ``"FractionalModule"`` (generated by the formal monomial ``x^base``).
    """

    kind: str
    degree: int | None = None
    base: tuple[Fraction, ...] | None = None
    verification_window: Window | None = None

    def describe(self) -> str:
        if self.kind == "TwistingSheaf":
            return f"TwistingSheaf({self.degree})"
        return "FractionalModule(" + ", ".join(map(str, self.base)) + ")"

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "TwistingSheaf":
            out["degree"] = self.degree
        else:
            out["base_exponent"] = [str(a) for a in self.base]
        return out


@dataclass
class WitnessVerification:
    witness: KernelWitness
    checks: list[str] = field(default_factory=list)
    eigenvalues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return True  # failures raise VerificationFailed

    def to_dict(self) -> dict:
        return {"witness": self.witness.to_dict(), "checks": list(self.checks)}


@dataclass
class DeltaCertificate:
    twist: Twist
    order_bound: int
    found: bool
    witness_beta: tuple | None
    eigenvalues: list[int]
    conclusive: bool
    formula: bool

    @property
    def agrees(self) -> bool:
        return self.found == self.formula or not self.conclusive

    def to_dict(self) -> dict:
        return {
            "order_bound": self.order_bound,
            "found": self.found,
            "witness_beta": None if self.witness_beta is None else list(self.witness_beta),
            "conclusive": self.conclusive,
            "formula": self.formula,
        }


@dataclass
class Classification:
    weights: WeightSystem
    twist: Twist
    exactness: Exactness
    kernel: Kernel
    stack_equivalence: StackEquivalence
    pushforward_equivalence: Pushforward
    n_caveat: bool
    witness: KernelWitness | None = None
    verification: WitnessVerification | None = None
    exactness_certificate: DeltaCertificate | None = None

    def to_dict(self) -> dict:
        caveats = []
        if self.n_caveat:
            caveats.append("n=1: the equivalence argument needs at least three weights")
        if self.exactness is Exactness.NOT_GUARANTEED:
            caveats.append("twist is an E-weight of the delta-module; exactness is not established")
        if self.pushforward_equivalence is Pushforward.NOT_WELL_FORMED:
            caveats.append("weights are not well-formed: dropping one weight leaves a common factor")
        if self.kernel is Kernel.UNKNOWN:
            caveats.append("gcd > 1 with a generic twist: the witness needs a concrete exponent")
        return {
            "weights": list(self.weights.weights),
            "twist": str(self.twist),
            "exactness": self.exactness.value,
            "kernel": self.kernel.value,
            "equivalences": {
                "stack": self.stack_equivalence.value,
                "pushforward": self.pushforward_equivalence.value,
            },
            "witnesses": [] if self.witness is None else [self.witness.to_dict()],
            "witness_verified": None if self.verification is None else self.verification.ok,
            "exactness_certificate": None if self.exactness_certificate is None
            else self.exactness_certificate.to_dict(),
            "n_caveat": self.n_caveat,
            "caveats": caveats,
        }


def _kernel_verdict(w: WeightSystem, lam: Twist) -> Kernel:
    if w.gcd == 1:
        if not lam.is_integer or is_member(w, int(lam.value)):
            return Kernel.ZERO
        return Kernel.NONZERO
    return Kernel.UNKNOWN if lam.is_generic else Kernel.NONZERO


def make_witness(w: WeightSystem, lam, win: Window | None = None) -> KernelWitness:
    """The module exhibiting a nonzero kernel: O(lam), or ``D x_0^((lam-1)/d_0)`` when gcd > 1."""
    lam = as_twist(lam)
    win = win or default_window(w)
    verdict = _kernel_verdict(w, lam)
    if verdict is not Kernel.NONZERO:
        raise NoWitnessApplicable(f"kernel verdict for {w}, lam={lam} is {verdict.value}")
    if w.gcd == 1:
        return KernelWitness("TwistingSheaf", degree=int(lam.value), verification_window=win)
    base = ((lam.value - 1) / w.weights[0],) + (Fraction(0),) * w.n
    return KernelWitness("FractionalModule", base=base, verification_window=win)


def _verify_twisting_sheaf(wit: KernelWitness, w: WeightSystem, win: Window) -> WitnessVerification:
    k = wit.degree
    rep = WitnessVerification(wit)
    if is_member(w, k):
        raise VerificationFailed(f"{k} lies in the semigroup: O({k}) has global sections", degree=k)
    if hilbert_dim(w, k) != 0:
        raise VerificationFailed(f"dim A_{k} = {hilbert_dim(w, k)} != 0", degree=k)
    rep.checks.append(f"dim A_{k} = 0")
    # 1 spans A[k] in degree -k and is E-fixed, matching eigenvalue (-k) + k
    one = {(0,) * w.nvars: Fraction(1)}
    if apply_to_polynomial(euler_field(w), one):
        raise VerificationFailed("E does not kill the constant section")
    nonzero = next(t for t in itertools.count(max(k + 1, 0)) if hilbert_dim(w, t) > 0)
    rep.checks.append(f"dim A_{nonzero} = {hilbert_dim(w, nonzero)} != 0")
    return rep


def _verify_fractional(wit: KernelWitness, w: WeightSystem, lam: Twist, win: Window) -> WitnessVerification:
    rep = WitnessVerification(wit)
    if w.gcd == 1:
        raise VerificationFailed("fractional witness needs gcd > 1")
    g = w.gcd
    E = euler_field(w)
    gens = [WeylElement.x(i, w.nvars) for i in range(w.nvars)] + [WeylElement.d(i, w.nvars) for i in range(w.nvars)]
    start = (0,) * w.nvars
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        m, depth = frontier.popleft()
        v = FormalMonomialElement(wit.base, {m: 1})
        ev = formal_eigenvalue(v.exponent(m), w)
        if formal_action(E, v) != v.scale(ev):
            raise VerificationFailed(f"x^{v.exponent(m)} is not an E-eigenvector", eigenvalue=ev)
        shift = ev - lam.value
        if shift.denominator != 1:
            raise VerificationFailed(f"eigenvalue {ev} not in lam + Z", eigenvalue=ev)
        if int(shift) % g != g - 1:
            raise VerificationFailed(f"eigenvalue {ev} not congruent to lam - 1 mod {g}", eigenvalue=ev)
        if shift == 0:
            raise VerificationFailed("module meets degree 0", degree=0, eigenvalue=ev)
        rep.eigenvalues.append(ev)
        if depth == win.order_bound:
            continue
        for gen in gens:
            out = formal_action(gen, v)
            for m2 in out.offsets:
                if m2 not in seen:
                    seen.add(m2)
                    frontier.append((m2, depth + 1))
    rep.checks.append(f"generator nonzero; {len(seen)} monomials within {win.order_bound} steps")
    rep.checks.append(f"all E-weights are lam - 1 mod {g}, none equals lam")
    return rep


def verify_witness(wit: KernelWitness, w: WeightSystem, lam, win: Window | None = None) -> WitnessVerification:
    """Independently re-check a witness; raises ``VerificationFailed`` on any violation."""
    lam = as_twist(lam)
    win = win or wit.verification_window or default_window(w)
    if wit.kind == "TwistingSheaf":
        return _verify_twisting_sheaf(wit, w, win)
    if wit.kind == "FractionalModule":
        if lam.is_generic:
            raise VerificationFailed("fractional witness needs a concrete twist")
        return _verify_fractional(wit, w, lam, win)
    raise VerificationFailed(f"unknown witness kind {wit.kind!r}")


def delta_exactness_certificate(w: WeightSystem, lam, win: Window | None = None) -> DeltaCertificate:
    """Look for ``lam`` among the E-eigenvalues of ``d^beta . delta`` with ``|beta| <= order bound``.

    A miss is conclusive when every representation of ``-lam - sum(d)`` would
    fit in the order bound, i.e. when that integer is at most ``bound * d_0``.
    """
    from .graded import _bounded_vectors

    lam = as_twist(lam)
    win = win or default_window(w)
    bound = win.order_bound
    E = euler_field(w)
    eigenvalues = set()
    hit = None
    for beta in _bounded_vectors(w.nvars, bound):
        v = DeltaElement.monomial(beta)
        image = delta_action(E, v)
        if len(image.poly) != 1 or beta not in image.poly:
            raise VerificationFailed(f"d^{beta} delta is not an E-eigenvector")
        ev = image.poly[beta]
        eigenvalues.add(int(ev))
        if hit is None and not lam.is_generic and ev == lam.value:
            hit = beta
    formula = is_delta_weight(w, lam)
    if hit is not None or not lam.is_integer:
        conclusive = True
    else:
        gap = -int(lam.value) - w.weight_sum
        conclusive = gap < 0 or gap <= bound * w.weights[0]
    return DeltaCertificate(lam, bound, hit is not None, hit, sorted(eigenvalues), conclusive, formula)


def classify(w: WeightSystem, lam, *, verify: bool = True) -> Classification:
    lam = as_twist(lam)
    delta = is_delta_weight(w, lam)
    exactness = Exactness.NOT_GUARANTEED if delta else Exactness.GUARANTEED
    kernel = _kernel_verdict(w, lam)
    if exactness is Exactness.NOT_GUARANTEED:
        stack = StackEquivalence.OUTSIDE_SCOPE
    elif kernel is Kernel.ZERO:
        stack = StackEquivalence.YES if w.n >= 2 else StackEquivalence.OUTSIDE_SCOPE
    elif w.gcd > 1:
        stack = StackEquivalence.NO
    else:
        stack = StackEquivalence.QUOTIENT_ONLY
    if stack is StackEquivalence.YES:
        push = Pushforward.YES if is_well_formed(w) else Pushforward.NOT_WELL_FORMED
    else:
        push = Pushforward.NOT_APPLICABLE
    result = Classification(w, lam, exactness, kernel, stack, push, n_caveat=w.n == 1)
    if kernel is Kernel.NONZERO:
        result.witness = make_witness(w, lam)
        if verify:
            result.verification = verify_witness(result.witness, w, lam)
    if verify:
        win = default_window(w)
        if lam.is_integer:
            gap = -int(lam.value) - w.weight_sum
            needed = -(-gap // w.weights[0]) if gap > 0 else 0
            win = Window(win.degree_lo, win.degree_hi, max(win.order_bound, min(needed, 12)), win.padding)
        result.exactness_certificate = delta_exactness_certificate(w, lam, win)
    return result
