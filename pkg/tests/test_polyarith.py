"""Exact polynomial arithmetic; sympy and numpy serve as independent oracles."""

from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from arcsections.polyarith import (
    ComplexBox,
    DegenerateLeadingCoefficient,
    MPoly,
    ParseError,
    UnknownVariableError,
    discriminant_z,
    gcd,
    initial_form,
    parse_poly,
    resultant,
    squarefree_part,
    substitute,
    univariate_roots,
)

X, Y, Z, T = (MPoly.var(v) for v in "xyzt")
SX, SY, SZ, ST = sp.symbols("x y z t")


def to_sympy(f: MPoly):
    syms = [sp.Symbol(v) for v in f.vars]
    if f.is_zero():
        return sp.Integer(0)
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * sp.prod([s ** k for s, k in zip(syms, e)])
                         for e, c in f.terms.items()))


def from_sympy(expr, variables=("x", "y", "z", "t")):
    return parse_poly(str(sp.expand(expr)).replace("**", "^"), variables)


# -- parsing and printing ----------------------------------------------------------

def test_parse_ex71_has_three_terms():
    f = parse_poly("z^4 - 4*x*z + 3*y^2")
    assert len(f.terms) == 3
    assert f.vars == ("x", "y", "z")


def test_parse_zero():
    assert parse_poly("0").is_zero()


def test_parse_expands_difference_of_squares():
    assert parse_poly("(y^3-x^2)*(y^3+x^2)") == parse_poly("y^6 - x^4")


@pytest.mark.parametrize("src", ["z^4-4*x*z+3*y^2", "3/4*x^2*y - 1/3*z + 7", "(x+y)^5 - x*y*z^2",
                                 "-x", "2/6*x^3"])
def test_parse_print_parse_identity(src):
    f = parse_poly(src)
    assert parse_poly(f.to_str()) == f
    assert parse_poly(f.to_str()).to_str() == f.to_str()


def test_canonical_text_is_grlex_with_rational_coefficients():
    f = parse_poly("1/2*x + y^2 - 3*x*z^2 + 4/6")
    assert f.to_str() == "-3*x*z^2 + y^2 + 1/2*x + 2/3"


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("x + * y")
    assert exc.value.position == 4


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly("x + w")


def test_negative_exponent_rejected():
    with pytest.raises(ParseError):
        parse_poly("x^-1")


# -- substitution ------------------------------------------------------------------

def test_substitute_cumulative_chart_map():
    f = parse_poly("z^4-4*x*z+3*y^2")
    g = substitute(f, {"x": X ** 2 * Y ** 3, "y": X * Y ** 2, "z": Z})
    assert g == parse_poly("z^4 - 4*x^2*y^3*z + 3*x^2*y^4")


def test_substitute_identity():
    f = parse_poly("z^4-4*x*z+3*y^2")
    assert substitute(f, {"x": X, "y": Y, "z": Z}) == f


def test_substitute_first_blowup_chart():
    # DERIVED (sympy expand): y^6 - x^4 under x -> xy, y -> x is x^6 - x^4 y^4
    g = substitute(parse_poly("y^6-x^4"), {"x": X * Y, "y": X})
    assert g == parse_poly("x^6 - x^4*y^4")
    assert to_sympy(g) == sp.expand((SY ** 6 - SX ** 4).subs({SX: SX * SY, SY: SX}, simultaneous=True))


def test_substitute_missing_variable():
    with pytest.raises(Exception):
        substitute(parse_poly("x+y"), {"x": X})


# -- discriminants ---------------------------------------------------------------

def test_discriminant_ex71_is_unit_times_product():
    f = parse_poly("z^4-4*x*z+3*y^2")
    delta, unit = discriminant_z(f, "z")
    target = parse_poly("(y^3-x^2)*(y^3+x^2)")
    # DERIVED: sympy discriminant is -6912*(x^2-y^3)*(x^2+y^3)
    assert unit * delta == from_sympy(sp.discriminant(to_sympy(f), SZ)).with_vars(delta.vars)
    assert unit == Fraction(-6912)
    ratio = None
    for e, c in target.with_vars(delta.vars).terms.items():
        r = delta.terms[e] / c
        assert ratio is None or ratio == r
        ratio = r
    assert len(delta.terms) == len(target.terms)


def test_discriminant_normalization_positive_lex_leading():
    delta, _ = discriminant_z(parse_poly("z^4-4*x*z+3*y^2"), "z")
    lead = max(delta.terms)
    assert delta.terms[lead] > 0
    assert delta.content() == 1


@pytest.mark.parametrize("g", ["x^3+y^2", "x*y - y^5", "x^2 + 3*y"])
def test_discriminant_of_quadratic_is_4g(g):
    G = parse_poly(g)
    delta, unit = discriminant_z(Z ** 2 - G, "z")
    assert (unit * delta).with_vars(("x", "y")) == (G * 4).with_vars(("x", "y"))


@pytest.mark.parametrize("p", ["x*y", "x^2 - y^3", "x + y^4"])
def test_discriminant_of_pure_cubic(p):
    P = parse_poly(p)
    delta, unit = discriminant_z(Z ** 3 - P, "z")
    assert (unit * delta).with_vars(("x", "y")) == (P * P * -27).with_vars(("x", "y"))


def test_discriminant_constant_in_var_rejected():
    with pytest.raises(ValueError):
        discriminant_z(parse_poly("x^2+y"), "z")


def test_resultant_matches_sympy():
    f = parse_poly("z^3 - x*z + y^2")
    g = parse_poly("2*z^2 + x^2*z - y")
    r = resultant(f, g, "z")
    assert to_sympy(r) == sp.expand(sp.resultant(to_sympy(f), to_sympy(g), SZ))


def proportional(a: MPoly, b: MPoly) -> bool:
    a, b = a.with_vars(("x", "y")), b.with_vars(("x", "y"))
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    e = next(iter(a.terms))
    if e not in b.terms:
        return False
    return a * b.terms[e] == b * a.terms[e]


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_discriminant_of_product_vanishes_on_factor_loci(a, b):
    f = Z ** 2 + X * a[0] + Y * a[1] + X * Y * a[2]
    g = Z + X * b[0] + Y * b[1] + X * X
    D_fg, u_fg = discriminant_z(f * g, "z")
    D_f, u_f = discriminant_z(f, "z")
    R = resultant(f, g, "z")
    # disc(fg) = disc(f) disc(g) res(f,g)^2 and disc of a linear g is 1
    assert proportional(D_fg * u_fg, D_f * u_f * R * R)
    for piece in (D_f, R):
        if not piece.is_constant():
            assert gcd(D_fg, piece).degree() == piece.primitive().degree()


# -- initial forms -----------------------------------------------------------------

def test_initial_form_ex71():
    assert initial_form(parse_poly("z^4-4*x*z+3*y^2")) == parse_poly("3*y^2-4*x*z")


def test_initial_form_homogeneous_is_itself():
    f = parse_poly("x^3 - 2*x*y*z + z^3")
    assert initial_form(f) == f


def test_initial_form_four_lines():
    assert initial_form(parse_poly("z^3-(x-y)*(x+y)*(x-2*y)*(x+2*y)")) == parse_poly("z^3")


def test_initial_form_zero_rejected():
    with pytest.raises(ValueError):
        initial_form(MPoly.const(0))


# -- squarefree decomposition ------------------------------------------------------

def test_squarefree_cube():
    sq, prof = squarefree_part(parse_poly("z^3", ("t", "z")), "z")
    assert sq == parse_poly("z", ("t", "z"))
    assert prof == [3]


def test_squarefree_already_squarefree():
    f = parse_poly("(y^3-x^2)*(y^3+x^2)", ("x", "y"))
    sq, prof = squarefree_part(f, "y")
    assert sq in (f.primitive(), -f.primitive())
    assert prof == [1]
    # DERIVED: gcd(f, f_y) computed by sympy is constant
    assert sp.gcd(to_sympy(f), sp.diff(to_sympy(f), SY)).is_number


def test_squarefree_visible_factorization():
    sq, prof = squarefree_part(parse_poly("z^2*(z-t)", ("t", "z")), "z")
    assert sq == parse_poly("z*(z-t)", ("t", "z"))
    assert prof == [2, 1]


# -- ring axioms -------------------------------------------------------------------

coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def small_poly(draw):
    n = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, 2)) for _ in range(3))
        terms[e] = draw(coef)
    return MPoly(terms, ("x", "y", "z"))


@settings(max_examples=40, deadline=None)
@given(small_poly(), small_poly(), small_poly())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert (a - a).is_zero()
    assert all(v != 0 for v in (a * b).terms.values())


@settings(max_examples=25, deadline=None)
@given(small_poly(), small_poly(), small_poly())
def test_substitution_respects_composition(f, g, h):
    sigma = {"x": g, "y": h, "z": X + Y}
    tau = {"x": Y * Y, "y": X - Z, "z": Z * 2}
    lhs = substitute(substitute(f, sigma), tau)
    comp = {k: substitute(v, tau) for k, v in sigma.items()}
    assert lhs == substitute(f, comp)


@settings(max_examples=15, deadline=None)
@given(small_poly(), small_poly())
def test_products_match_sympy(a, b):
    assert to_sympy(a * b) == sp.expand(to_sympy(a) * to_sympy(b))


# -- univariate roots ---------------------------------------------------------------

def test_roots_z2_minus_1():
    boxes = univariate_roots([-1, 0, 1])
    assert [round(b.re, 12) for b in boxes] == [-1.0, 1.0]


def test_roots_of_ex71_disk_fiber_match_companion_matrix():
    coeffs = [Fraction(3, 64), Fraction(-1, 8), 0, 0, 1]
    boxes = univariate_roots(coeffs)
    assert len(boxes) == 4 and all(b.multiplicity == 1 for b in boxes)
    eig = np.linalg.eigvals(np.array([[0, 0, 0, -3 / 64], [1, 0, 0, 1 / 8], [0, 1, 0, 0], [0, 0, 1, 0]]))
    for z in eig:
        assert any(b.contains(z, 1e-12) for b in boxes)


def test_roots_triple_zero():
    boxes = univariate_roots([0, 0, 0, 1])
    assert sum(b.multiplicity for b in boxes) == 3
    assert boxes[0].center == 0


def test_roots_degenerate_leading_coefficient():
    with pytest.raises(DegenerateLeadingCoefficient):
        univariate_roots([1, 1, 1e-320])


def test_complex_box_radius_invariant():
    with pytest.raises(ValueError):
        ComplexBox(0.0, 0.0, -1.0)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=3, max_size=7).filter(lambda c: c[-1] != 0))
def test_vieta_sum_and_product(coeffs):
    boxes = univariate_roots(coeffs)
    d = len(coeffs) - 1
    assert sum(b.multiplicity for b in boxes) == d
    rad = sum(b.radius * b.multiplicity for b in boxes)
    s = sum(b.center * b.multiplicity for b in boxes)
    assert abs(s - (-coeffs[-2] / coeffs[-1])) <= 10 * rad + 1e-9
    prod = np.prod([b.center ** b.multiplicity for b in boxes])
    scale = 1 + max(abs(b.center) for b in boxes) ** d
    assert abs(prod - (-1) ** d * coeffs[0] / coeffs[-1]) <= 10 * d * rad * scale + 1e-8
