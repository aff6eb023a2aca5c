"""Exact computations with the graded Weyl algebra of a weighted projective stack."""

from .scalars import RatFunc, Twist
from .semigroup import (
    WeightSystem,
    frobenius,
    gaps,
    gcd_all,
    is_delta_weight,
    is_member,
    is_well_formed,
    mixed_sign_rep,
)
from .weyl import (
    DeltaElement,
    FormalMonomialElement,
    WeylElement,
    commutator,
    euler_field,
    multiply,
)

__version__ = "0.1.0"
