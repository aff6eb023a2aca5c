# The Koszul complex of D/D(E - lam) for two weights versus three.
#
# With two weights, Ext^1 is nonzero exactly when lam lies in the
# semigroup; at lam = 0 the class is represented by (-d_1 d1, d_0 d0).
# With three weights everything vanishes inside the window.
#
# Run with:  python demos/03_koszul_two_weights.py

from weylstack import WeightSystem
from weylstack.graded import Window, ext1_nonvanishing_expected, koszul_homology_window
from weylstack.weyl import format_element

w = WeightSystem.of(2, 3)
for lam in (0, 1, 2, 3, 5):
    rep = koszul_homology_window(w, lam, Window(-16, 0, 4, 3))
    found = [s for s, b in sorted(rep.blocks.items()) if b.homology]
    print(f"lam={lam}: homology {rep.homology_dim} in degrees {found}, predicted nonzero: {ext1_nonvanishing_expected(w, lam)}")
    for vec in rep.witness_vectors:
        print("    witness (", ", ".join(format_element(c) for c in vec), ")")

pc = koszul_homology_window(w, 0, Window(-5, -5, 2, 3)).two_weight_class
print("class at lam=0:", pc.to_dict())

w3 = WeightSystem.of(1, 2, 3)
rep = koszul_homology_window(w3, 0, Window(-6, 6, 3, 3))
print(f"\nweights {w3}: ker phi1 {rep.ker_phi1_dim}, homology {rep.homology_dim} ({rep.vanishing_status})")
