"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 violated precondition
(non-coprime weights for gap queries, too-small window), 4 failed check.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import __version__
from .classify import Exactness, classify, delta_exactness_certificate
from .exceptions import InvalidWeights, NotCoprime, VerificationFailed, WeylParseError, WindowTooSmall
from .graded import (
    DQuotientResidue,
    Window,
    _bounded_vectors,
    default_window,
    ext1_nonvanishing_expected,
    koszul_class_certificate,
    koszul_homology_window,
    koszul_phi1,
    koszul_phi2,
)
from .parser import parse_element
from .sampling import random_element, random_homogeneous
from .scalars import Twist
from .semigroup import WeightSystem, frobenius, gaps, is_delta_weight, is_member, represent
from .weyl import DeltaElement, commutator, delta_action, euler_field, format_element

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_VERIFY = 0, 2, 3, 4

SUITES = ("euler", "delta", "koszul", "witnesses", "all")


@dataclass
class RunConfig:
    weights: WeightSystem
    twist: Twist
    window: Window
    output: str = "text"
    seed: int = 0


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    counterexample: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


class InputError(Exception):
    pass


def parse_weights(text: str) -> WeightSystem:
    try:
        return WeightSystem(tuple(int(t) for t in text.split(",")))
    except (ValueError, InvalidWeights) as exc:
        raise InputError(f"bad --weights {text!r}: {exc}") from None


def parse_twist(text: str) -> Twist:
    try:
        return Twist.parse(text)
    except ValueError as exc:
        raise InputError(f"bad --twist {text!r}: {exc}") from None


def build_config(args) -> RunConfig:
    w = parse_weights(args.weights)
    lam = parse_twist(args.twist)
    base = default_window(w, args.order_bound)
    try:
        win = Window(
            base.degree_lo if args.degree_lo is None else args.degree_lo,
            base.degree_hi if args.degree_hi is None else args.degree_hi,
            args.order_bound,
            base.padding if args.padding is None else args.padding,
        )
    except ValueError as exc:
        raise InputError(f"bad window: {exc}") from None
    return RunConfig(w, lam, win, args.output, args.seed)


# verification suites


def suite_euler(cfg: RunConfig, rng: random.Random, samples: int = 60) -> list[Check]:
    w = cfg.weights
    E = euler_field(w)
    bad = None
    roundtrip_bad = None
    for _ in range(samples):
        k = rng.randint(-8, 8)
        a = random_homogeneous(w, k, min(cfg.window.order_bound, 4), rng)
        if commutator(E, a) != a.scale(k):
            bad = bad or f"k={k}: {format_element(a)}"
        if parse_element(format_element(a), w) != a:
            roundtrip_bad = roundtrip_bad or format_element(a)
    return [
        Check("euler-grading", bad is None, f"[E, a] = k a on {samples} random homogeneous elements", bad),
        Check("printer-roundtrip", roundtrip_bad is None, "printed elements re-parse to themselves", roundtrip_bad),
    ]


def suite_delta(cfg: RunConfig, rng: random.Random) -> list[Check]:
    w = cfg.weights
    bound = cfg.window.order_bound
    E = euler_field(w)
    top = -w.weight_sum
    low = top - bound * w.weights[0]
    found = set()
    bad = None
    for beta in _bounded_vectors(w.nvars, bound):
        v = DeltaElement.monomial(beta)
        image = delta_action(E, v)
        ev = image.poly.get(beta)
        if image != v.scale(ev or 0) or ev is None:
            bad = bad or f"d^{list(beta)} delta"
            continue
        found.add(int(ev))
    formula = {v for v in range(low, top + 1) if is_member(w, top - v)}
    in_range = {v for v in found if low <= v <= top}
    checks = [
        Check("delta-eigenvectors", bad is None, f"every d^beta delta with |beta| <= {bound} is an E-eigenvector", bad),
        Check(
            "delta-weights",
            in_range == formula,
            f"E-weights in [{low}, {top}] equal -{w.weight_sum} - A there ({len(formula)} values)",
            None if in_range == formula else str(sorted(in_range ^ formula)),
        ),
    ]
    disagree = [v for v in found if not is_delta_weight(w, v)]
    checks.append(Check("delta-formula", not disagree, "is_delta_weight accepts every enumerated weight",
                        None if not disagree else str(sorted(disagree)[:5])))
    cert = delta_exactness_certificate(w, cfg.twist, cfg.window)
    checks.append(Check(
        "delta-certificate",
        cert.agrees,
        f"lam={cfg.twist}: found={cert.found}, formula={cert.formula}, conclusive={cert.conclusive}",
        None if cert.agrees else str(cfg.twist),
    ))
    return checks


def suite_koszul(cfg: RunConfig, rng: random.Random, samples: int = 20) -> list[Check]:
    w, lam = cfg.weights, cfg.twist
    bad = None
    for _ in range(samples):
        m = DQuotientResidue(random_element(w.nvars, rng), lam, w)
        if any(not c.is_zero() for c in koszul_phi2(koszul_phi1(m)).values()):
            bad = bad or format_element(m.rep)
    checks = [Check("koszul-complex", bad is None, f"phi2 . phi1 = 0 on {samples} random residues", bad)]
    report = koszul_homology_window(w, lam, cfg.window)
    checks.append(Check("hom-vanishing", report.ker_phi1_dim == 0,
                        f"ker phi1 has dimension {report.ker_phi1_dim} in the window"))
    uncertified = None
    for vec in report.witness_vectors:
        cert = koszul_class_certificate(w, lam, vec)
        if not cert.nonzero_class:
            uncertified = uncertified or "(" + ", ".join(format_element(c) for c in vec) + ")"
    checks.append(Check("homology-witnesses", uncertified is None,
                        f"homology {report.homology_dim} ({report.vanishing_status}); each witness re-certified",
                        uncertified))
    if w.n == 1:
        predicted = ext1_nonvanishing_expected(w, lam)
        ok = (report.homology_dim > 0) <= predicted
        checks.append(Check("homology-closed-form", ok,
                            f"nonzero homology only when lam lies in the semigroup (predicted {predicted})"))
        pc = report.two_weight_class
        checks.append(Check(
            "two-weight-class",
            True,
            "(" + ", ".join(format_element(c) for c in pc.vector) + f"): in ker phi2 = {pc.in_ker_phi2}, "
            f"in image phi1 = {pc.in_image_phi1}",
        ))
    else:
        checks.append(Check("homology-vanishing", report.homology_dim == 0,
                            f"Ext^1 vanishes in the window at order <= {cfg.window.order_bound}"))
    for vec in report.witness_vectors:
        checks.append(Check("homology-witness", True, "(" + ", ".join(format_element(c) for c in vec) + ")"))
    return checks


def suite_witnesses(cfg: RunConfig, rng: random.Random) -> list[Check]:
    w = cfg.weights
    twists = [cfg.twist] + [Twist(k) for k in cfg.window.degrees]
    failures = []
    disagreements = []
    verified = 0
    for lam in twists:
        try:
            c = classify(w, lam)
        except VerificationFailed as exc:
            failures.append(f"lam={lam}: {exc}")
            continue
        if c.witness is not None:
            verified += 1
        cert = c.exactness_certificate
        formula = is_delta_weight(w, lam)
        if (c.exactness is Exactness.NOT_GUARANTEED) != formula or (cert.conclusive and cert.found != formula):
            disagreements.append(str(lam))
    return [
        Check("witness-verification", not failures, f"{verified} witnesses verified over {len(twists)} twists",
              failures[0] if failures else None),
        Check("exactness-agreement", not disagreements,
              "classifier, delta enumeration and semigroup formula agree",
              ", ".join(disagreements) or None),
    ]


def run_suite(cfg: RunConfig, suite: str) -> list[Check]:
    names = SUITES[:-1] if suite == "all" else (suite,)
    checks = []
    for name in names:
        rng = random.Random(f"{cfg.seed}:{name}")
        checks.extend(globals()[f"suite_{name}"](cfg, rng))
    return checks


# output


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _text_lines(doc: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def _render(doc: dict, args) -> str:
    if args.output == "json":
        return _dump(doc)
    return "\n".join(_text_lines(doc)) + "\n"


# commands


def cmd_classify(args) -> int:
    cfg = build_config(args)
    result = classify(cfg.weights, cfg.twist)
    _emit(_render(result.to_dict(), args), args)
    return EXIT_OK


def cmd_semigroup(args) -> int:
    w = parse_weights(args.weights)
    doc: dict = {"weights": list(w.weights), "query": args.query}
    if args.query == "frobenius":
        doc["result"] = frobenius(w)
    elif args.query == "gaps":
        doc["result"] = gaps(w)
    else:
        if args.k is None:
            raise InputError("member needs an integer argument")
        rep = represent(w, args.k)
        doc["k"] = args.k
        doc["result"] = rep is not None
        doc["representation"] = None if rep is None else list(rep)
    if args.output == "json":
        _emit(_dump(doc), args)
    else:
        _emit(f"{doc['result']}\n", args)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = build_config(args)
    checks = run_suite(cfg, args.suite)
    passed = all(c.passed for c in checks)
    doc = {
        "suite": args.suite,
        "weights": list(cfg.weights.weights),
        "twist": str(cfg.twist),
        "seed": cfg.seed,
        "window": cfg.window.to_dict(),
        "passed": passed,
        "checks": [c.to_dict() for c in checks],
    }
    if args.output == "json":
        _emit(_dump(doc), args)
    else:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}"
                 + (f" [counterexample: {c.counterexample}]" if c.counterexample else "") for c in checks]
        lines.append("all checks passed" if passed else "some checks failed")
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_weyl_eval(args) -> int:
    w = parse_weights(args.weights) if args.weights else None
    value = parse_element(args.expr, w)
    text = format_element(value)
    if args.output == "json":
        _emit(_dump({"input": args.expr, "result": text}), args)
    else:
        _emit(text + "\n", args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    config = argparse.ArgumentParser(add_help=False, parents=[common])
    config.add_argument("--weights", required=True, help="comma-separated positive integers, e.g. 2,3")
    config.add_argument("--twist", default="0", help='rational "p/q" or "generic"')
    config.add_argument("--degree-lo", type=int)
    config.add_argument("--degree-hi", type=int)
    config.add_argument("--order-bound", type=int, default=4)
    config.add_argument("--padding", type=int)
    config.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="weylstack", description="Twisted D-modules on weighted projective stacks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[config], help="decide exactness, kernel and equivalence")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("semigroup", parents=[common], help="semigroup queries")
    p.add_argument("--weights", required=True)
    p.add_argument("query", choices=("frobenius", "gaps", "member"))
    p.add_argument("k", nargs="?", type=int)
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("verify", parents=[config], help="run a property suite")
    p.add_argument("suite", choices=SUITES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("weyl-eval", parents=[common], help="normal-order a Weyl algebra expression")
    p.add_argument("expr")
    p.add_argument("--weights", help="needed when the expression uses E")
    p.set_defaults(func=cmd_weyl_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, WeylParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotCoprime, WindowTooSmall) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
