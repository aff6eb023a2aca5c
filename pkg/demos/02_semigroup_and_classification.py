# Which twists give an equivalence?  Sweep a few weight systems.
#
# Run with:  python demos/02_semigroup_and_classification.py

from weylstack import WeightSystem
from weylstack.classify import classify
from weylstack.scalars import Twist
from weylstack.semigroup import frobenius, gaps, is_well_formed

for w in (WeightSystem.of(1, 1, 1), WeightSystem.of(2, 3, 5), WeightSystem.of(1, 2, 2), WeightSystem.of(3, 6, 9)):
    header = f"weights {w}: gcd {w.gcd}, well-formed {is_well_formed(w)}"
    if w.gcd == 1:
        header += f", Frobenius {frobenius(w)}, gaps {gaps(w)}"
    print(header)
    row = []
    for lam in [Twist(k) for k in range(-12, 6)] + [Twist.generic()]:
        c = classify(w, lam)
        mark = {"Yes": "Y", "QuotientEquivalenceOnly": "q", "No": "n", "OutsidePaperScope": "."}
        row.append(f"{lam}:{mark[c.stack_equivalence.value]}")
    print("   ", " ".join(row))
    print()

# Witnesses behind the nonzero-kernel verdicts.
for w, lam in [(WeightSystem.of(2, 3), 1), (WeightSystem.of(2, 4), 3)]:
    c = classify(w, lam)
    print(w, "lam =", lam, "->", c.witness.describe())
    for line in c.verification.checks:
        print("   ", line)
