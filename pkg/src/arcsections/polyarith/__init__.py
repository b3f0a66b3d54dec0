"""Exact polynomial arithmetic over the rationals."""

from fractions import Fraction as Rational

from .mpoly import MPoly, CANONICAL_ORDER, sort_vars
from .parse import parse_poly, ParseError, UnknownVariableError
from .algebra import (
    resultant,
    discriminant_z,
    initial_form,
    substitute,
    gcd,
    squarefree_decomposition,
    squarefree_part,
)
from .roots import (
    ComplexBox,
    univariate_roots,
    split_rational_roots,
    polished_roots,
    DegenerateLeadingCoefficient,
)

__all__ = [
    "Rational", "MPoly", "CANONICAL_ORDER", "sort_vars",
    "parse_poly", "ParseError", "UnknownVariableError",
    "resultant", "discriminant_z", "initial_form", "substitute", "gcd",
    "squarefree_decomposition", "squarefree_part",
    "ComplexBox", "univariate_roots", "split_rational_roots", "polished_roots",
    "DegenerateLeadingCoefficient",
]
