import random

import pytest
from hypothesis import given, settings, strategies as st

from weylstack.exceptions import WeylParseError
from weylstack.parser import parse_element
from weylstack.sampling import random_element, random_homogeneous
from weylstack.scalars import RatFunc
from weylstack.semigroup import WeightSystem
from weylstack.weyl import WeylElement, euler_field, format_element


def test_examples():
    w = WeightSystem.of(2, 3)
    assert format_element(parse_element("[E, x0]", w)) == "2*x0"
    assert format_element(parse_element("[E, d1]", w)) == "-3*d1"
    assert format_element(parse_element("d0 * x0^2")) == "x0^2 d0 + 2*x0"
    assert format_element(parse_element("x0 * x1 - x1 * x0")) == "0"
    assert parse_element("E", w) == euler_field(w)
    assert parse_element("(x0 + 1)/2 - 1/2") == WeylElement.x(0, 1).scale(1 / 2)
    assert parse_element("lam x0", nvars=1) == WeylElement.x(0, 1).scale(RatFunc.lam())


@pytest.mark.parametrize("text, position", [
    ("x0 +* 2", 4),
    ("x0 + ", 5),
    ("x0 ^ d0", 5),
    ("[x0, d0", 7),
    ("y0", 0),
    ("x0 $ 1", 3),
    ("x0 / d0", 3),
])
def test_errors_report_position(text, position):
    with pytest.raises(WeylParseError) as info:
        parse_element(text)
    assert info.value.position == position
    assert f"at position {position}" in str(info.value)


def test_e_needs_weights():
    with pytest.raises(WeylParseError):
        parse_element("E")


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 3))
def test_round_trip(seed, nvars):
    a = random_element(nvars, random.Random(seed), max_exp=3, terms=4)
    assert parse_element(format_element(a), nvars=nvars) == a


def test_round_trip_homogeneous():
    rng = random.Random(3)
    w = WeightSystem.of(2, 3, 5)
    for k in range(-6, 7):
        a = random_homogeneous(w, k, 3, rng)
        assert parse_element(format_element(a), w) == a
