# A short walk through the graded Weyl algebra.
#
# Run with:  python demos/01_weyl_algebra_tour.py

from weylstack import WeightSystem, commutator, euler_field
from weylstack.parser import parse_element
from weylstack.weyl import apply_to_polynomial, format_element, graded_components

w = WeightSystem.of(2, 3)
E = euler_field(w)
print("weights", w, " Euler field:", format_element(E))

# Moving d0 past x0^2 produces the lower order correction.
a = parse_element("d0 * x0^2", w)
print("d0 * x0^2 =", format_element(a))

# Generators are eigenvectors of ad(E), with their degree as eigenvalue.
for text in ("x0", "x1", "d0", "d1", "x1 d0", "x0^3 d1^2"):
    el = parse_element(text, w)
    print(f"[E, {text}] = {format_element(commutator(E, el))}")

# A mixed element splits into graded pieces.
mixed = parse_element("x0 + x1 d0 + d1 + 7", w)
for k, piece in graded_components(mixed, w).items():
    print(f"  degree {k:>2}: {format_element(piece.element)}")

# Euler's identity on a weighted homogeneous polynomial of degree 6.
f = {(3, 0): 1, (0, 2): -2}
print("E(x0^3 - 2 x1^2) =", apply_to_polynomial(E, f))
