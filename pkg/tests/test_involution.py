from __future__ import annotations

from fractions import Fraction

import pytest

from parcr.errors import NotInvolutive, NotIsometric, NotRootPreserving
from parcr.involution import (
    ChamberKind,
    RootKind,
    automorphism_group,
    chamber_kind,
    classify_root,
    identity_involution,
    involution_from_images,
    involution_from_map,
    involutions,
    parse_matrix_form,
    root_partition,
    to_shorthand,
)
from parcr.rootsys import build_root_system

from helpers import basis_chamber, root


def _apply(m, v):
    return tuple(sum(Fraction(x) * y for x, y in zip(row, v)) for row in m)


def test_su12_involution_is_valid():
    a2 = build_root_system("A2")
    s = involution_from_map(a2, "e1->-e3, e2->-e2, e3->-e1")
    assert s(root(a2, "e1-e2")) == root(a2, "e2-e3")
    assert classify_root(a2, s, root(a2, "e1-e3")) is RootKind.REAL


def test_b2_swap_is_valid():
    b2 = build_root_system("B2")
    s = involution_from_map(b2, "e1->-e2, e2->-e1")
    assert s(root(b2, "e1")) == root(b2, "-e2")
    assert involution_from_map(b2, "e1<->-e2") == s


def test_three_cycle_is_not_involutive():
    a2 = build_root_system("A2")
    with pytest.raises(NotInvolutive):
        involution_from_map(a2, "e1->e2, e2->e3, e3->e1")


def test_non_isometric_and_non_root_preserving_maps_are_rejected():
    b2 = build_root_system("B2")
    with pytest.raises(NotIsometric):
        involution_from_map(b2, [[0, Fraction(1, 2)], [2, 0]])
    a2 = build_root_system("A2")
    with pytest.raises(NotRootPreserving):
        # reflection in e1-e2-e3: orthogonal and involutive, but not root preserving
        third = Fraction(1, 3)
        involution_from_map(a2, [[third, 2 * third, 2 * third],
                                 [2 * third, third, -2 * third],
                                 [2 * third, -2 * third, third]])


def test_c3_classification_example():
    c3 = build_root_system("C3")
    s = involution_from_map(c3, "e1<->-e3, e2->-e2")
    assert classify_root(c3, s, root(c3, "e1-e3")) is RootKind.REAL
    assert classify_root(c3, s, root(c3, "2e2")) is RootKind.IMAGINARY
    m = s.matrix
    assert _apply(m, (0, 4, 0)) == (0, -4, 0)


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "F4"])
def test_minus_identity_makes_every_root_imaginary(name):
    rs = build_root_system(name)
    s = involution_from_map(rs, "-id")
    assert root_partition(s)[RootKind.IMAGINARY] == frozenset(range(len(rs)))


def test_canonical_chamber_kinds_for_su12():
    a2 = build_root_system("A2")
    s = involution_from_map(a2, "e1->-e3, e2->-e2, e3->-e1")
    assert ChamberKind.S in chamber_kind(a2, s, a2.canonical_chamber)
    cv = basis_chamber(a2, ["e1-e3", "e3-e2"])
    assert chamber_kind(a2, s, cv) == {ChamberKind.V}


def test_all_real_basis_is_both_kinds():
    a3 = build_root_system("A3")
    s = identity_involution(a3)
    assert chamber_kind(a3, s, a3.canonical_chamber) == {ChamberKind.S, ChamberKind.V}


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "C3", "G2", "D4", "B2+B2"])
def test_involution_invariants_over_the_whole_family(name):
    rs = build_root_system(name)
    invs = involutions(rs)
    assert identity_involution(rs) in invs
    for s in invs:
        part = root_partition(s)
        assert sum(len(v) for v in part.values()) == len(rs)
        assert len(part[RootKind.COMPLEX]) % 2 == 0
        for a in range(len(rs)):
            assert s(rs.neg[a]) == rs.neg[s(a)]
            assert classify_root(rs, s, a) is classify_root(rs, s, rs.neg[a])
            assert s(s(a)) == a
            if a in part[RootKind.COMPLEX]:
                assert s(a) != a and s(a) in part[RootKind.COMPLEX]
            for b in range(len(rs)):
                assert rs.gram[s(a), s(b)] == rs.gram[a, b]
        m = s.matrix
        for r in rs.roots:
            assert _apply(m, _apply(m, r)) == tuple(Fraction(x) for x in r)


@pytest.mark.parametrize("name,order", [("A2", 12), ("B3", 48), ("G2", 12), ("D4", 1152)])
def test_automorphism_group_order(name, order):
    assert len(automorphism_group(build_root_system(name))) == order


def test_images_round_trip_and_shorthand():
    b3 = build_root_system("B3")
    s = involution_from_map(b3, "e1->-e1, e2<->-e3")
    assert involution_from_images(b3, s.images) == s
    assert involution_from_map(b3, to_shorthand(s)) == s
    with pytest.raises(NotInvolutive):
        perm = list(range(len(b3)))
        perm[0], perm[1], perm[2] = perm[1], perm[2], perm[0]
        involution_from_images(b3, perm)


def test_matrix_form_accepts_rationals():
    f4 = build_root_system("F4")
    text = "4: 1/2 1/2 1/2 1/2  1/2 1/2 -1/2 -1/2  1/2 -1/2 1/2 -1/2  1/2 -1/2 -1/2 1/2"
    m = parse_matrix_form(f4, text)
    s = involution_from_map(f4, m)
    assert all(s(s(a)) == a for a in range(len(f4)))
