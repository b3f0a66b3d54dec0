"""Permutations and the groups generated by two meridians."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcsections.group import Permutation, generated_group, is_transitive, orbits


def P(text, d=4):
    return Permutation.from_cycles(text, d)


def test_cycle_notation_roundtrip():
    p = P("(1,4)(2,3)")
    assert p.to_cycle_str() == "(1,4)(2,3)"
    assert P("()").to_cycle_str() == "()"
    assert p.images == (3, 2, 1, 0)


def test_invalid_permutation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_trivial_and_double_transposition():
    rep = generated_group(P("()"), P("(1,4)(2,3)"))
    assert len(rep.elements) == 2
    assert rep.has_transitive is False
    assert rep.witness is None


def test_four_cycle_witness():
    rep = generated_group(P("()"), P("(1,2,3,4)"))
    assert rep.has_transitive
    assert rep.witness == P("(1,2,3,4)")
    assert rep.witness_exponents == (0, 1)


def test_klein_four_group():
    rep = generated_group(P("(1,2)(3,4)"), P("(1,3)(2,4)"))
    # DERIVED by hand: {id, (12)(34), (13)(24), (14)(23)}
    assert sorted(e.to_cycle_str() for e in rep.elements) == sorted(
        ["()", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"])
    assert rep.has_transitive is False
    assert rep.group_transitive is True


@pytest.mark.parametrize("text,expected", [("(1,2,3,4)", True), ("(1,4)(2,3)", False), ("(1,4,2)", False)])
def test_is_transitive(text, expected):
    assert is_transitive(P(text)) is expected


def test_witness_equals_word():
    p1, p2 = P("(1,2)(3,4)"), P("(1,3,2,4)")
    rep = generated_group(p1, p2)
    if rep.witness is not None:
        a, b = rep.witness_exponents
        assert (p1 ** a).then(p2 ** b) == rep.witness


def test_noncommuting_bfs_closure():
    rep = generated_group(P("(1,2)"), P("(1,2,3,4)"))
    assert not rep.commuting
    assert len(rep.elements) == 24
    assert rep.has_transitive
    assert rep.witness_exponents is None


def test_cap_reports_unknown():
    rep = generated_group(P("(1,2)", 6), P("(1,2,3,4,5,6)", 6), cap=10)
    assert rep.capped
    assert rep.has_transitive in (True, None)


def test_orbits():
    assert sorted(map(sorted, orbits([P("(1,2)"), P("(3,4)")]))) == [[0, 1], [2, 3]]


perm_strategy = st.integers(2, 6).flatmap(lambda d: st.permutations(list(range(d))).map(tuple))


def bfs_size(gens):
    ident = Permutation.identity(gens[0].degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for el in frontier:
            for g in gens:
                h = el.then(g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


@settings(max_examples=40, deadline=None)
@given(perm_strategy, st.integers(1, 5), st.integers(0, 5))
def test_commuting_enumeration_matches_bfs(images, k1, k2):
    # powers of a common permutation always commute
    base = Permutation(images)
    p1, p2 = base ** k1, base ** k2
    rep = generated_group(p1, p2)
    assert rep.commuting
    assert len(rep.elements) == bfs_size([p1, p2])


def test_commuting_disjoint_cycles_size():
    p1, p2 = P("(1,2)", 5), P("(3,4,5)", 5)
    rep = generated_group(p1, p2)
    assert len(rep.elements) == 6 == bfs_size([p1, p2])


@settings(max_examples=30, deadline=None)
@given(perm_strategy, perm_strategy, st.randoms(use_true_random=False))
def test_transitivity_invariant_under_conjugation(a, b, rnd):
    if len(a) != len(b):
        return
    p1, p2 = Permutation(a), Permutation(b)
    c = list(range(len(a)))
    rnd.shuffle(c)
    conj = Permutation(tuple(c))
    r1 = generated_group(p1, p2)
    r2 = generated_group(p1.conjugate(conj), p2.conjugate(conj))
    assert r1.has_transitive == r2.has_transitive
    assert r1.cycle_type_census == r2.cycle_type_census


def test_deterministic_element_order():
    a = generated_group(P("(1,2)"), P("(2,3,4)")).elements
    b = generated_group(P("(1,2)"), P("(2,3,4)")).elements
    assert a == b
