"""Embedded resolution of the discriminant curve."""

from fractions import Fraction

import pytest

from arcsections.polyarith import MPoly, parse_poly, substitute
from arcsections.resolve import (
    CenterNotOnCurve,
    DepthCapExceeded,
    UnsupportedCenterError,
    blowup,
    certify_bidisk,
    enumerate_crossings,
    resolve_embedded,
)

UV = ("u", "v")


def uv(src):
    return parse_poly(src, UV)


def proportional(a: MPoly, b: MPoly) -> bool:
    a, b = a.with_vars(UV), b.with_vars(UV)
    e = next(iter(a.terms))
    return e in b.terms and a * b.terms[e] == b * a.terms[e]


def delta_xy(src):
    return parse_poly(src, ("x", "y"))


# Figure labels are written in the chart's own coordinates; u plays x and v plays y.
FIG1 = {
    "0.v": "v^4*(v-u^2)*(v+u^2)",
    "0.v.u": "v^4*u^6*(v-u)*(v+u)",
    "0.v.u.u": "v^4*u^12*(v-1)*(v+1)",
}


def test_ex71_tree_reproduces_figure(ex71_tree):
    charts = {c.id: c for c in ex71_tree.charts}
    for cid, label in FIG1.items():
        assert proportional(charts[cid].total_transform, uv(label)), cid
    # last chart of the example: map (x^2 y^3, x y^2)
    last = charts["0.v.u.v"]
    assert [m.to_str() for m in last.map_to_base] == ["u^2*v^3", "u*v^2"]
    assert proportional(last.total_transform, uv("u^6*v^12*(u^2-1)"))


def test_ex71_three_exceptional_two_branches(ex71_tree):
    assert ex71_tree.exceptional_count() == 3
    assert ex71_tree.strict_branch_count() == 2


def test_ex71_four_crossings(ex71_tree):
    xs = ex71_tree.crossings
    assert len(xs) == 4
    pairs = sorted(tuple(sorted(d.label for d in x.branch_pair)) for x in xs)
    assert pairs == [("D1", "E3"), ("D1", "E3"), ("E1", "E3"), ("E2", "E3")]


def test_ex71_featured_crossing_disks(ex71_tree):
    (x,) = [x for x in ex71_tree.crossings if x.chart_id == "0.v.u.v"]
    assert x.point == (0, 0)
    assert x.disk_radii == (Fraction(1, 2), Fraction(1, 2))
    assert x.basepoint == (Fraction(1, 2), Fraction(1, 2))


def test_pullback_consistency(ex71_tree):
    delta = ex71_tree.delta
    for chart in ex71_tree.charts:
        pulled = substitute(delta.with_vars(("x", "y")),
                            {"x": chart.map_to_base[0], "y": chart.map_to_base[1]})
        assert proportional(pulled, chart.total_transform), chart.id


def test_exceptional_multiplicity_is_parent_order(ex71_tree):
    charts = {c.id: c for c in ex71_tree.charts}
    for parent_id, center, children in ex71_tree.edges:
        parent = charts[parent_id]
        shifted = substitute(parent.total_transform, {"u": MPoly.var("u") + center[0],
                                                      "v": MPoly.var("v") + center[1]})
        order = shifted.order()
        for cid in children:
            newest = charts[cid].exceptional()[0]
            assert newest.multiplicity == order


def test_divisor_product_matches_total_transform(ex71_tree):
    for chart in ex71_tree.leaves():
        prod = MPoly.const(1)
        for d in chart.divisors:
            prod = prod * d.equation ** d.multiplicity
        assert proportional(prod, chart.total_transform), chart.id


def test_blowup_example_first_chart():
    tree = resolve_embedded(delta_xy("(y^3-x^2)*(y^3+x^2)"))
    root = tree.chart("0")
    cu, cv = blowup(root, (Fraction(0), Fraction(0)), "E1")
    assert proportional(cv.total_transform, uv(FIG1["0.v"]))
    assert [m.to_str() for m in cv.map_to_base] == ["u*v", "v"]
    assert [m.to_str() for m in cu.map_to_base] == ["u", "u*v"]


def test_blowup_center_off_curve():
    tree = resolve_embedded(delta_xy("x*y"))
    with pytest.raises(CenterNotOnCurve):
        blowup(tree.chart("0"), (Fraction(1), Fraction(1)), "E1")


def test_smooth_curve_needs_no_blowup():
    tree = resolve_embedded(delta_xy("y-x^2"))
    assert len(tree.charts) == 1
    assert tree.crossings == []


def test_coordinate_cross():
    tree = resolve_embedded(delta_xy("x*y"))
    assert len(tree.charts) == 1
    (x,) = tree.crossings
    assert x.point == (0, 0)
    assert x.disk_radii == (Fraction(1, 2), Fraction(1, 2))


def test_cusp_resolution():
    tree = resolve_embedded(delta_xy("x^2-y^3"))
    assert tree.exceptional_count() == 3
    assert len(tree.crossings) == 3


def test_irrational_simple_points_become_numeric_crossings():
    tree = resolve_embedded(delta_xy("y^2-2*x^2"))
    assert len(tree.crossings) == 2
    assert not any(x.exact for x in tree.crossings)
    for x in tree.crossings:
        assert abs(abs(complex(x.point[1])) - 2 ** 0.5) < 1e-12


def test_irrational_multiple_center_is_reported():
    with pytest.raises(UnsupportedCenterError) as exc:
        resolve_embedded(delta_xy("(y^2-2*x^2)^2+x^5"))
    assert "v^2 - 2" in str(exc.value)


def test_depth_cap():
    with pytest.raises(DepthCapExceeded):
        resolve_embedded(delta_xy("y^2-x^9"), depth_cap=2)


def test_bidisks_are_certified(ex71_tree):
    for x in ex71_tree.crossings:
        chart = ex71_tree.chart(x.chart_id)
        assert certify_bidisk(chart, x.point, x.exact, x.branch_pair, x.frame, *x.disk_radii)
        # a bidisk reaching the other crossing points on E3 is rejected
        if x.chart_id == "0.v.u.u":
            assert not certify_bidisk(chart, x.point, x.exact, x.branch_pair, x.frame,
                                      Fraction(2), Fraction(2))


def test_enumerate_crossings_is_reproducible(ex71_tree):
    again = enumerate_crossings(ex71_tree)
    assert [x.to_dict() for x in again] == [x.to_dict() for x in ex71_tree.crossings]


def test_tree_serialization(ex71_tree):
    d = ex71_tree.to_dict()
    assert [c["id"] for c in d["charts"]][0] == "0"
    assert all(isinstance(c["total_transform"], str) for c in d["charts"])
    assert len(d["crossings"]) == 4
