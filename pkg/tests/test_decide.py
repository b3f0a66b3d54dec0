"""Projection setup, tangent-cone screening, sections, witnesses and the decision."""

from fractions import Fraction

import pytest

from arcsections.decide import (
    _binary_squarefree,
    Arc,
    ProjectionError,
    analyze,
    arc_section,
    cone_discriminant_check,
    delta_tangent_form,
    generic_directions,
    screen_discriminant_branches,
    setup_projection,
    straight_arc,
    tangent_cone_screen,
    totally_reducible_arc,
)
from arcsections.germ import PlaneCurveGerm, branch_count
from arcsections.polyarith import MPoly, initial_form, parse_poly, substitute

from conftest import EX71, FOUR_LINES, PLANE_QUARTIC, SUSPENSION

T = MPoly.var("t")


def arc(x, y):
    return Arc.exact(parse_poly(x, ("t",)), parse_poly(y, ("t",)), "user", "t")


# -- setup ----------------------------------------------------------------------------

def test_setup_ex71(ex71_setup):
    assert (ex71_setup.d, ex71_setup.m, ex71_setup.transverse) == (4, 2, False)
    assert ex71_setup.d > ex71_setup.m


def test_setup_suspension(suspension_setup):
    # the cone z^2 = 0 does not contain (0:0:1), so this projection is transverse
    assert (suspension_setup.d, suspension_setup.m, suspension_setup.transverse) == (2, 2, True)


def test_setup_four_lines(four_lines_setup):
    assert (four_lines_setup.d, four_lines_setup.m, four_lines_setup.transverse) == (3, 3, True)


def test_transverse_implies_d_equals_m():
    for src, direction in [(EX71, (1, 2, 3)), (PLANE_QUARTIC, (1, 0, 2)), (FOUR_LINES, (1, 1, 1))]:
        s = setup_projection(parse_poly(src), direction)
        if s.transverse:
            assert s.d == s.m
        else:
            assert s.d > s.m


def test_adapted_equation_is_z_finite():
    s = setup_projection(parse_poly(EX71), (1, 2, 3))
    assert not s.F_adapted.partial_evaluate({"x": 0, "y": 0}).is_zero()


def test_line_on_surface_rejected():
    with pytest.raises(ProjectionError):
        setup_projection(parse_poly("x*z + y^2"), "z")


def test_surface_through_origin_required():
    with pytest.raises(ProjectionError):
        setup_projection(parse_poly("z^2 + 1"), "z")


def test_zero_direction_rejected():
    with pytest.raises(ProjectionError):
        setup_projection(parse_poly(EX71), (0, 0, 0))


# -- tangent cone --------------------------------------------------------------------

def test_cone_conic():
    tc = tangent_cone_screen(parse_poly(EX71))
    assert tc.form == parse_poly("3*y^2-4*x*z")
    assert tc.classification == "conic"


def test_cone_single_line():
    assert tangent_cone_screen(parse_poly("z^3 - x^4 - y^5")).classification == "single-line"


def test_cone_concurrent_lines():
    tc = tangent_cone_screen(parse_poly("x*y*(x-y) + z^4"))
    assert tc.classification == "concurrent-lines"
    assert tc.admissible_lines[0]["vertex"] == ["0", "0", "1"]


def test_plane_quartic_has_no_admissible_line():
    tc = tangent_cone_screen(parse_poly(PLANE_QUARTIC))
    assert tc.classification == "no-admissible-line"
    assert tc.certified
    assert "24 of 24" in tc.notes[0]


def test_fermat_quartic_hyperflexes():
    # the Fermat quartic has 12 hyperflexes
    tc = tangent_cone_screen(parse_poly("x^4+y^4+z^4"))
    assert tc.classification == "max-contact-curve"
    assert len(tc.admissible_lines) == 12
    assert all(a["contact"] == 4 for a in tc.admissible_lines)


def test_smooth_cubic_flexes():
    tc = tangent_cone_screen(parse_poly("x^3+y^3+z^3"))
    assert tc.classification == "max-contact-curve"
    assert len(tc.admissible_lines) == 9


def test_cuspidal_cubic_cone():
    tc = tangent_cone_screen(parse_poly("y^2*z - x^3 + x^4"))
    assert tc.classification == "reducible-with-common-point"
    assert any(a["singular_point"] for a in tc.admissible_lines)


# -- cone versus discriminant ----------------------------------------------------------

def test_cone_discriminant_smooth_conic():
    rep = cone_discriminant_check(setup_projection(parse_poly("z^2+x^2+y^2+y^3"), "z"))
    assert rep.applicable and rep.exact_equal and rep.agree
    assert rep.delta_directions == ["(1:0-1i)", "(1:0+1i)"]
    assert rep.pencil_directions == rep.delta_directions


def test_cone_discriminant_not_applicable_for_lines():
    rep = cone_discriminant_check(setup_projection(parse_poly(FOUR_LINES), "z"))
    assert not rep.applicable


def test_cone_discriminant_ex71_is_computed(ex71_setup):
    rep = cone_discriminant_check(ex71_setup)
    assert rep.applicable
    assert rep.delta_directions == ["(0:1)"]
    assert "tangent cone" in rep.hypothesis


# -- sections ---------------------------------------------------------------------------

def test_section_multiple_line(four_lines_setup):
    rep = arc_section(four_lines_setup, arc("t", "t"))
    assert rep.inside_discriminant
    assert rep.branch_count == 1 and rep.multiplicities == [3]
    assert rep.reduced_irreducible and not rep.irreducible


def test_section_axis_arc_four_lines(four_lines_setup):
    rep = arc_section(four_lines_setup, arc("0", "t"))
    assert rep.germ.equation == parse_poly("z^3 - 4*t^4", ("t", "z"))
    assert rep.irreducible


def test_section_contact_arc_three_components(four_lines_setup):
    rep = arc_section(four_lines_setup, arc("t-t^3", "t+t^3"))
    assert rep.germ.equation == parse_poly("z^3 - 12*t^6 - 40*t^8 - 12*t^10", ("t", "z"))
    assert rep.branch_count == 3


def test_section_suspension_diagonal(suspension_setup):
    rep = arc_section(suspension_setup, arc("t", "2*t"))
    assert rep.germ.equation == parse_poly("z^2 - 9*t^3", ("t", "z"))
    assert rep.irreducible


def test_section_suspension_cusp_arc(suspension_setup):
    assert arc_section(suspension_setup, arc("t^3", "t^2")).branch_count == 2


def test_arc_must_pass_through_origin(four_lines_setup):
    with pytest.raises(ValueError):
        arc_section(four_lines_setup, arc("1+t", "t"))


def test_non_injective_arc_rejected(four_lines_setup):
    with pytest.raises(ValueError):
        arc_section(four_lines_setup, arc("t^2", "t^4"))


@pytest.mark.parametrize("src", [EX71, "z^2+x^2+y^2+y^3"])
def test_two_cone_points_on_the_plane_give_reducible_sections(src):
    # the plane through the projection line and the arc tangent meets the cone twice
    setup = setup_projection(parse_poly(src), "z")
    C = initial_form(setup.F_adapted)
    X, Z = MPoly.var("x"), MPoly.var("z")
    for a, b in generic_directions(setup, 5, 11):
        on_plane = substitute(C, {"x": X * a, "y": X * b, "z": Z})
        assert _binary_squarefree(on_plane, "x", "z").degree() >= 2
        rep = arc_section(setup, straight_arc((a, b)), with_branches=False)
        assert rep.branch_count >= 2


# -- generic, totally reducible, witnesses ------------------------------------------------

def test_generic_directions_avoid_delta_tangents(ex71_setup):
    T0 = delta_tangent_form(ex71_setup)
    for a, b in generic_directions(ex71_setup, 5, 0):
        assert T0.evaluate({"x": a, "y": b}) != 0


@pytest.mark.parametrize("fixture,d", [("suspension_setup", 2), ("four_lines_setup", 3), ("ex71_setup", 4)])
def test_totally_reducible(fixture, d, request):
    setup = request.getfixturevalue(fixture)
    arc_, sec = totally_reducible_arc(setup)
    assert sec.branch_count == d
    germ = PlaneCurveGerm(sec.germ.equation, "t", "z")
    assert branch_count(germ) == (d, [1] * d)


def test_witness_is_tangent_to_delta_when_cone_is_not_lines():
    setup = setup_projection(parse_poly("z^2-x*y-x^3"), "z")
    assert tangent_cone_screen(setup.F).classification == "conic"
    v = analyze(setup)
    assert v.exists_irreducible == "yes"
    (w,) = v.witnesses
    a, b = w.tangent_direction()
    assert delta_tangent_form(setup).evaluate({"x": a, "y": b}) == 0
    assert arc_section(setup, w).irreducible


def test_numeric_witness_at_irrational_crossing():
    setup = setup_projection(parse_poly("z^2+x^2+y^2+y^3"), "z")
    v = analyze(setup)
    assert v.exists_irreducible == "yes"
    (w,) = v.witnesses
    assert not w.is_exact
    x1, y1 = complex(w.numeric[0][1]), complex(w.numeric[1][1])
    # tangent to the discriminant: (1 : +-i)
    assert abs(abs(y1 / x1) - 1) < 1e-12 and abs((y1 / x1).real) < 1e-12


# -- the decision -------------------------------------------------------------------------

def test_analyze_ex71(ex71_setup):
    v = analyze(ex71_setup)
    assert v.exists_irreducible == "no"
    assert len(v.crossings) == 4
    for r in v.crossings:
        assert r.monodromy.commute
        assert not r.group.has_transitive
    assert v.totally_reducible_witness is not None


def test_analyze_ex71_without_pruning_same_verdict(ex71_setup):
    assert analyze(ex71_setup, prune=False).exists_irreducible == "no"


def test_analyze_four_lines(four_lines_setup):
    v = analyze(four_lines_setup)
    assert v.exists_irreducible == "yes"
    assert all(arc_section(four_lines_setup, w).irreducible for w in v.witnesses)


def test_analyze_suspension(suspension_setup):
    v = analyze(suspension_setup)
    assert v.exists_irreducible == "yes"
    assert v.witnesses[0].provenance == "generic"


def test_analyze_workers_same_result(ex71_setup):
    a = analyze(ex71_setup, workers=1, generic_first=False).to_dict()
    b = analyze(ex71_setup, workers=3, generic_first=False).to_dict()
    assert a == b


# -- branch screening ---------------------------------------------------------------------

def test_screen_ex71_branches(ex71_setup):
    rows = screen_discriminant_branches(ex71_setup)
    assert len(rows) == 2
    for r in rows:
        assert r.section.inside_discriminant
        assert r.section.branch_count == 3 and r.section.multiplicities == [2, 1, 1]
        assert r.prunable


def test_screen_four_lines_multiple_line(four_lines_setup):
    rows = screen_discriminant_branches(four_lines_setup)
    assert len(rows) == 4
    for r in rows:
        assert (r.section.branch_count, r.section.multiplicities) == (1, [3])
        assert not r.prunable


def test_screen_smooth_delta_double_line():
    rows = screen_discriminant_branches(setup_projection(parse_poly("z^2-x"), "z"))
    (r,) = rows
    assert r.arc.x.is_zero()
    assert (r.section.branch_count, r.section.multiplicities) == (1, [2])
    assert r.section.reduced_irreducible
