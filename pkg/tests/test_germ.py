"""Plane curve germs: Newton polygons, Puiseux branches, branch counts."""

from fractions import Fraction

import pytest

from arcsections.germ import (
    NotZFiniteError,
    PlaneCurveGerm,
    branch_count,
    branch_degrees,
    fast_path_irreducible,
    is_irreducible_germ,
    newton_polygon,
    puiseux_branches,
)
from arcsections.monodromy import germ_monodromy
from arcsections.polyarith import parse_poly, substitute


def germ(src, reduced=False, t="t", z="z"):
    return PlaneCurveGerm(parse_poly(src, (t, z)), t, z, reduced)


def test_newton_polygon_cusp():
    poly = newton_polygon(germ("z^2 - t^3"))
    assert len(poly.segments) == 1
    seg = poly.segments[0]
    assert {seg.start, seg.end} == {(2, 0), (0, 3)}
    assert seg.interior_points == 0


def test_newton_polygon_z3_t4():
    poly = newton_polygon(germ("z^3 - t^4"))
    assert len(poly.segments) == 1
    assert {poly.segments[0].start, poly.segments[0].end} == {(3, 0), (0, 4)}
    assert poly.segments[0].interior_points == 0


def test_newton_polygon_ex71_disk_fiber():
    # support (4,0), (1,3), (0,4): one edge (4,0)-(0,4) through (1,3), with (2,2), (3,1) on it
    poly = newton_polygon(germ("z^4 - 1/8*t^3*z + 3/64*t^4"))
    assert len(poly.segments) == 1
    seg = poly.segments[0]
    assert {seg.start, seg.end} == {(4, 0), (0, 4)}
    assert seg.lattice_length == 4
    assert seg.interior_points == 3


@pytest.mark.parametrize("src,expected", [
    ("z^3 - t^4", (1, [1])),
    ("z^3 - 12*t^6 - 40*t^8 - 12*t^10", (3, [1, 1, 1])),
    ("z^4 - 1/8*t^3*z + 3/64*t^4", (4, [1, 1, 1, 1])),
    ("z^2 - t^3", (1, [1])),
    ("z^4 - 1/8*t^2*z + 3/64*t^2", (2, [1, 1])),
    ("z^2*(z-t)", (2, [2, 1])),
    ("z^3", (1, [3])),
])
def test_branch_count(src, expected):
    assert branch_count(germ(src)) == expected


@pytest.mark.parametrize("src,reduced,expected", [
    ("z^2 - t^3", False, True),
    ("z^4 - 1/8*t^2*z + 3/64*t^2", False, False),
    ("z^3", True, True),
    ("z^3", False, False),
    ("z - t", False, True),
])
def test_is_irreducible(src, reduced, expected):
    assert is_irreducible_germ(germ(src, reduced)) is expected


def test_branches_of_cusp_discriminant_factor():
    # y^3 - x^2 as a germ in (x, y): one branch x = t^3, y = t^2
    g = PlaneCurveGerm(parse_poly("y^3 - x^2", ("x", "y")), "x", "y")
    (b,) = puiseux_branches(g, Fraction(4))
    assert b.ramification_index == 3
    assert b.exponents[0] == Fraction(2, 3)
    x, y = b.parametrization("s")
    assert x.degree() == 3 and y.degree() == 2 and len(y.terms) == 1
    assert substitute(parse_poly("y^3 - x^2", ("x", "y")), {"x": x, "y": y}).is_zero()


def test_branches_of_ex71_discriminant():
    g = PlaneCurveGerm(parse_poly("(y^3-x^2)*(y^3+x^2)", ("x", "y")), "x", "y")
    branches = puiseux_branches(g, Fraction(4))
    assert len(branches) == 2
    assert all(b.ramification_index == 3 for b in branches)


def test_smooth_germ_single_branch():
    (b,) = puiseux_branches(germ("z - t"), Fraction(3))
    assert b.ramification_index == 1


def test_not_z_finite():
    with pytest.raises(NotZFiniteError):
        germ("t*z")


@pytest.mark.parametrize("src", [
    "z^3 - t^4", "z^4 - 1/8*t^3*z + 3/64*t^4", "(z^2-t^3)*(z^2+t^3+t^4)", "z^2 - t^2 - t^5",
    "(z-t)^2*(z+t^2)", "z^3 - t^5 - t^7",
])
def test_residual_order_exceeds_truncation(src):
    g = germ(src)
    for b in puiseux_branches(g, Fraction(5)):
        assert b.residual_order(g) > b.truncation_order


@pytest.mark.parametrize("src", [
    "z^3 - t^4", "z^4 - 1/8*t^3*z + 3/64*t^4", "(z^2-t^3)*(z^2+t^3+t^4)", "z^2*(z-t)",
    "z^5 - t^2", "(z^2-t^3)^2 - t^7",
])
def test_ramification_times_multiplicity_sums_to_degree(src):
    g = germ(src)
    assert sum(e * m for e, m in branch_degrees(g)) == g.weierstrass_degree


@pytest.mark.parametrize("src", ["z^2 - t^3", "z^3 - t^4", "z^5 - t^2", "z^4 - t^7", "z^3 - t^5 - t^7"])
def test_fast_path_agrees_with_tracking(src):
    g = germ(src)
    assert fast_path_irreducible(g)
    perm, _ = germ_monodromy(g)
    assert len(perm.cycle_type()) == 1


@pytest.mark.parametrize("src", [
    "z^2 - t^3", "z^3 - 12*t^6 - 40*t^8 - 12*t^10", "z^4 - 1/8*t^3*z + 3/64*t^4",
    "z^4 - 1/8*t^2*z + 3/64*t^2", "(z^2-t^3)*(z^2+t^3+t^4)", "(z^2-t^3)^2 - t^7",
])
def test_cycle_count_equals_branch_count(src):
    g = germ(src)
    perm, _ = germ_monodromy(g)
    assert len(perm.cycle_type()) == branch_count(g)[0]
