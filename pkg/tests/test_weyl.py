import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import act, monomials_up_to
from weylstack.exceptions import ZeroElement
from weylstack.sampling import random_homogeneous
from weylstack.semigroup import WeightSystem, is_member
from weylstack.weyl import (
    DeltaElement,
    FormalMonomialElement,
    WeylElement,
    apply_to_polynomial,
    commutator,
    delta_action,
    delta_eigenvalue,
    euler_field,
    formal_action,
    formal_eigenvalue,
    format_element,
    graded_components,
    homogeneous_degree,
    multiply,
    order,
)

W = WeightSystem.of
x = WeylElement.x
d = WeylElement.d


@st.composite
def elements(draw, nvars=2, max_exp=3, max_terms=3):
    keys = st.tuples(
        st.tuples(*[st.integers(0, max_exp)] * nvars),
        st.tuples(*[st.integers(0, max_exp)] * nvars),
    )
    terms = draw(st.dictionaries(keys, st.integers(-4, 4).map(Fraction), max_size=max_terms))
    return WeylElement(nvars, terms)


def test_defining_relations():
    assert d(0, 1) * x(0, 1) == x(0, 1) * d(0, 1) + WeylElement.const(1, 1)
    assert format_element(d(0, 1) * x(0, 1) ** 2) == "x0^2 d0 + 2*x0"
    assert format_element(x(0, 1) * d(0, 1)) == "x0 d0"
    assert commutator(x(0, 2), x(1, 2)) == 0
    assert commutator(d(0, 2), x(1, 2)) == 0


def test_euler_examples():
    w = W(2, 3)
    E = euler_field(w)
    assert format_element(euler_field(W(1, 1))) == "x0 d0 + x1 d1"
    assert format_element(E) == "2*x0 d0 + 3*x1 d1"
    assert commutator(E, x(0, 2)) == x(0, 2).scale(2)
    assert commutator(E, d(1, 2)) == d(1, 2).scale(-3)
    assert homogeneous_degree(E, w) == 0


def test_graded_components_examples():
    pieces = graded_components(x(0, 2) + d(1, 2), W(1, 1))
    assert {k: p.element for k, p in pieces.items()} == {1: x(0, 2), -1: d(1, 2)}
    a = x(1, 2) * d(0, 2)
    assert list(graded_components(a, W(2, 3))) == [1]
    assert commutator(euler_field(W(2, 3)), a) == a
    assert graded_components(WeylElement.zero(2), W(2, 3)) == {}


def test_order_examples():
    assert order(x(0, 2) ** 3) == 0
    assert order(euler_field(W(1, 1))) == 1
    assert order(d(0, 2) * d(1, 2) ** 2) == 3
    with pytest.raises(ZeroElement):
        order(WeylElement.zero(2))


def test_polynomial_action_examples():
    assert apply_to_polynomial(d(0, 2), {(3, 0): 1}) == {(2, 0): 3}
    assert apply_to_polynomial(euler_field(W(2, 3)), {(1, 1): 1}) == {(1, 1): 5}
    assert apply_to_polynomial(x(0, 2) * d(1, 2), {(1, 0): 1}) == {}


@settings(max_examples=200, deadline=None)
@given(elements(), elements())
def test_product_is_composition(a, b):
    ab = multiply(a, b)
    for f in monomials_up_to(2, 6):
        poly = {f: Fraction(1)}
        assert act(ab.terms, poly) == act(a.terms, act(b.terms, poly))
        assert apply_to_polynomial(ab, poly) == act(ab.terms, poly)


@settings(max_examples=100, deadline=None)
@given(elements(nvars=3, max_exp=2), elements(nvars=3, max_exp=2), elements(nvars=3, max_exp=2))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([W(1, 1), W(2, 3), W(1, 2, 3), W(2, 3, 5)]), st.integers(-8, 8), st.integers(0, 2**32))
def test_euler_grading(w, k, seed):
    a = random_homogeneous(w, k, 4, random.Random(seed))
    assert commutator(euler_field(w), a) == a.scale(k)
    if a:
        assert homogeneous_degree(a, w) == k


def test_delta_module_examples():
    w = W(1, 1, 1)
    delta = DeltaElement.delta(3)
    assert not delta_action(x(0, 3), delta)
    assert delta_action(euler_field(w), delta) == delta.scale(-3)
    assert delta_action(x(0, 3), DeltaElement.monomial((1, 0, 0))) == delta.scale(-1)


@pytest.mark.parametrize("w", [W(1, 1), W(2, 3), W(1, 2, 3), W(2, 3, 5)], ids=str)
def test_delta_eigenvectors(w):
    from weylstack.graded import _bounded_vectors

    E = euler_field(w)
    for beta in _bounded_vectors(w.nvars, 5):
        v = DeltaElement.monomial(beta)
        ev = delta_eigenvalue(beta, w)
        assert delta_action(E, v) == v.scale(ev)
        assert is_member(w, -ev - w.weight_sum)


def test_delta_module_relations():
    # the action is a module action: (ab).v == a.(b.v)
    rng = random.Random(7)
    from weylstack.sampling import random_element

    for _ in range(40):
        a, b = random_element(2, rng), random_element(2, rng)
        v = DeltaElement(2, {(rng.randint(0, 3), rng.randint(0, 3)): 1})
        assert delta_action(a * b, v) == delta_action(a, delta_action(b, v))


def test_formal_examples():
    w = W(2, 4)
    gen = FormalMonomialElement.generator((1, 0))
    assert formal_action(d(0, 2), gen) == FormalMonomialElement((1, 0), {(-1, 0): 1})
    lam = Fraction(3)
    base = ((lam - 1) / 2, 0)
    g = FormalMonomialElement.generator(base)
    assert formal_action(euler_field(w), g) == g.scale(lam - 1)
    zero = FormalMonomialElement.generator((0, 0))
    assert not formal_action(d(0, 2), zero)


def test_formal_module_action_and_coset_closure():
    w = W(3, 6, 9)
    base = (Fraction(-2, 9), Fraction(0), Fraction(1, 2))
    v = FormalMonomialElement.generator(base)
    rng = random.Random(11)
    gens = [x(i, 3) for i in range(3)] + [d(i, 3) for i in range(3)]
    E = euler_field(w)
    for _ in range(10_000):
        out = formal_action(rng.choice(gens), v)
        if out:
            v = FormalMonomialElement(base, {m: 1 for m in out.offsets})
        (m,) = v.offsets
        assert v.base == base and all(isinstance(k, int) for k in m)
    ev = formal_eigenvalue(v.exponent(m), w)
    assert formal_action(E, v) == v.scale(ev)
    from weylstack.sampling import random_element

    for _ in range(30):
        a, b = random_element(3, rng), random_element(3, rng)
        assert formal_action(a * b, v) == formal_action(a, formal_action(b, v))


def _min_parts(weights, upto):
    best = {0: 0}
    for v in range(1, upto + 1):
        options = [best[v - d] + 1 for d in weights if v - d in best]
        if options:
            best[v] = min(options)
    return best


@pytest.mark.parametrize("w", [W(1, 1), W(2, 3), W(1, 2, 3), W(2, 3, 5), W(3, 5, 7)], ids=str)
@pytest.mark.parametrize("bound", [3, 6, 8])
def test_delta_weights_are_short_representations(w, bound):
    """Weights of d^beta delta with |beta| <= B are -sum(d) - v for v needing at most B generators."""
    from weylstack.graded import _bounded_vectors

    top = -w.weight_sum
    found = {delta_eigenvalue(beta, w) for beta in _bounded_vectors(w.nvars, bound)}
    parts = _min_parts(w.weights, bound * w.max_weight)
    assert found == {top - v for v, p in parts.items() if p <= bound}
