"""Root tracking, crossing permutations, transversal and generic monodromy, braids."""

from fractions import Fraction

import pytest

from arcsections.decide import generic_directions, setup_projection
from arcsections.group import Permutation
from arcsections.monodromy import (
    LoopSpec,
    LoopTouchesDiscriminant,
    compute_braid,
    crossing_monodromies,
    generic_monodromy,
    run_loop,
    track_loop,
    transversal_monodromy,
)
from arcsections.monodromy import _kernel_py, tracking
from arcsections.polyarith import MPoly, parse_poly
from arcsections.resolve import resolve_embedded

S = MPoly.var("s").with_vars(("s",))
UNIT_T = LoopSpec.make({"t": S}, 0, 1, "s", "t")


def fam(src):
    return parse_poly(src, ("t", "z"))


def test_ex71_disk_family_trivial():
    perm, cert = track_loop(fam("z^4 - 1/8*t^3*z + 3/64*t^4"), UNIT_T)
    assert perm.is_identity()
    assert cert.max_step_ratio < 1 / 3


def test_ex71_second_disk_family_double_transposition():
    perm, _ = track_loop(fam("z^4 - 1/8*t^2*z + 3/64*t^2"), UNIT_T)
    assert perm.cycle_type() == (2, 2)


def test_square_root_transposition():
    perm, _ = track_loop(fam("z^2 - t"), UNIT_T)
    assert perm == Permutation((1, 0))


def test_loop_touching_discriminant():
    with pytest.raises(LoopTouchesDiscriminant):
        track_loop(fam("z^2 - t + 1"), UNIT_T)


def test_labels_sorted_by_real_then_imaginary():
    res = run_loop(fam("z^4 - 1/8*t^2*z + 3/64*t^2"), UNIT_T)
    keys = [(z.real, z.imag) for z in res.roots]
    assert keys == sorted(keys)


def test_halving_step_gives_identical_permutation():
    F = fam("z^4 - 1/8*t^2*z + 3/64*t^2")
    a, _ = track_loop(F, UNIT_T, h0=tracking.DEFAULT_H0)
    b, _ = track_loop(F, UNIT_T, h0=tracking.DEFAULT_H0 / 2)
    assert a == b


def test_python_and_compiled_kernels_agree(ex71_setup, ex71_tree):
    from arcsections.monodromy.crossing import _chart_loop
    for x in ex71_tree.crossings:
        loop = _chart_loop(ex71_tree.chart(x.chart_id), x, 2)
        a = run_loop(ex71_setup.F_adapted, loop, d=4, delta=ex71_tree.delta, kernel=_kernel_py)
        b = run_loop(ex71_setup.F_adapted, loop, d=4, delta=ex71_tree.delta)
        assert a.permutation == b.permutation


# -- crossings ----------------------------------------------------------------------

def test_ex71_crossings(ex71_setup, ex71_tree):
    types = []
    featured = None
    for x in ex71_tree.crossings:
        m = crossing_monodromies(ex71_setup.F_adapted, ex71_tree, x, d=ex71_setup.d)
        assert m.commute
        assert all(c.max_step_ratio < 1 / 3 for c in m.certificates)
        types.append(m.P2.cycle_type())
        if x.chart_id == "0.v.u.v":
            featured = m
    assert sorted(types) == sorted([(2, 2), (2, 1, 1), (2, 1, 1), (3, 1)])
    assert featured.P1.is_identity()
    assert featured.P2.cycle_type() == (2, 2)


def test_axis_crossing_square_root():
    tree = resolve_embedded(parse_poly("x*y", ("x", "y")))
    (x,) = tree.crossings
    m = crossing_monodromies(parse_poly("z^2-x"), tree, x)
    by_label = {x.branch_pair[0].equation.to_str(): m.P1, x.branch_pair[1].equation.to_str(): m.P2}
    assert by_label["u"] == Permutation((1, 0))
    assert by_label["v"].is_identity()


def test_braid_at_featured_crossing(ex71_setup, ex71_tree):
    (x,) = [x for x in ex71_tree.crossings if x.chart_id == "0.v.u.v"]
    m = crossing_monodromies(ex71_setup.F_adapted, ex71_tree, x, d=4, braids=True)
    w1, w2 = m.braids
    assert w2.permutation() == m.P2
    assert w1.permutation() == m.P1


# -- transversal monodromy ------------------------------------------------------------

def test_transversal_strict_branch_matches_crossings(ex71_setup, ex71_tree):
    F = ex71_setup.F_adapted
    perms = transversal_monodromy(F, ex71_tree, "D1", d=4, positions=2)
    assert len({p.cycle_type() for p in perms}) == 1
    at_crossings = []
    for x in ex71_tree.crossings:
        labels = [d.label for d in x.branch_pair]
        if "D1" in labels:
            m = crossing_monodromies(F, ex71_tree, x, d=4)
            at_crossings.append((m.P1, m.P2)[labels.index("D1")].cycle_type())
    assert set(at_crossings) == {perms[0].cycle_type()}


def test_transversal_exceptional_cycle_types(ex71_setup, ex71_tree):
    F = ex71_setup.F_adapted
    for label in ("E1", "E2", "E3"):
        perms = transversal_monodromy(F, ex71_tree, label, d=4, positions=2)
        assert len({p.cycle_type() for p in perms}) == 1, label
    # the divisor with trivial permutation
    assert transversal_monodromy(F, ex71_tree, "E3", d=4)[0].is_identity()


def test_transversal_generic_disk_square_root():
    # small disk {y = 1/4, |x| = 1/2} transverse to the discriminant x(1+y) = 0
    F = parse_poly("z^2 - x*(1+y)")
    loop = LoopSpec.make({"x": S, "y": MPoly.const(Fraction(1, 4)).with_vars(("s",))}, 0,
                         Fraction(1, 2), "s", "disk")
    perm, _ = track_loop(F, loop, delta=parse_poly("x*(1+y)", ("x", "y")))
    assert perm == Permutation((1, 0))


# -- generic monodromy ----------------------------------------------------------------

def test_generic_four_lines_axis_direction(four_lines_setup):
    perm, _, _ = generic_monodromy(four_lines_setup.F_adapted, (0, 1), four_lines_setup.delta, 3)
    assert perm.cycle_type() == (3,)


def test_generic_ex71_not_a_four_cycle(ex71_setup):
    for a, b in generic_directions(ex71_setup, 5, 0):
        perm, _, _ = generic_monodromy(ex71_setup.F_adapted, (a, b), ex71_setup.delta, 4)
        assert len(perm.cycle_type()) >= 2


def test_generic_square_root():
    perm, _, _ = generic_monodromy(parse_poly("z^2-x"), (1, 0))
    assert perm == Permutation((1, 0))


def test_generic_cycle_type_stable_across_directions(ex71_setup, four_lines_setup, suspension_setup):
    for setup in (ex71_setup, four_lines_setup, suspension_setup):
        types = {generic_monodromy(setup.F_adapted, dirn, setup.delta, setup.d)[0].cycle_type()
                 for dirn in generic_directions(setup, 5, 3)}
        assert len(types) == 1


# -- braids ---------------------------------------------------------------------------

def test_braid_double_transposition_family():
    word, perm = compute_braid(fam("z^4 - 1/8*t^2*z + 3/64*t^2"), UNIT_T)
    assert word.permutation() == perm
    assert perm.cycle_type() == (2, 2)
    # the figure's braid (s0 s2 s1)^2
    assert word.to_str() == "s0 s2 s1 s0 s2 s1"


def test_braid_square_root():
    word, _ = compute_braid(fam("z^2 - t"), UNIT_T)
    assert word.to_str() == "s0"


def test_braid_constant_roots():
    word, perm = compute_braid(fam("(z-1)*(z-2)*(z+3) + 0*t"), UNIT_T)
    assert word.to_str() == "1"
    assert perm.is_identity()
