from __future__ import annotations

import itertools

import pytest

from parcr.crinv import is_one_nondegenerate
from parcr.errors import NotInScope
from parcr.orders import (
    INF,
    contact_order,
    contact_order_root,
    depth,
    h_index,
    h_index_table,
    levi_order,
    levi_order_bound,
    levi_order_root,
    levi_sequence,
    lowest_root_indices,
    mu_index,
    sweep_pairs,
    verify_bounds,
)
from parcr.involution import ChamberKind, identity_involution
from parcr.parabolic import CrPair, find_fit_chamber, parabolic_from_weights
from parcr.rootsys import build_root_system, extreme_roots

import oracles
from helpers import (
    B3_MAX,
    B4_ORD,
    C3_DEPTH,
    C4_DEPTH,
    E332,
    F4_BASIS,
    F4_MAX,
    F4_NONMAX,
    SU12,
    basis_chamber,
    cross_pair,
    root,
    weight_pair,
)


def _pairs(name):
    return [p for _, _, p in sweep_pairs(build_root_system(name))]


def _orders(p, names):
    return {n: levi_order_root(p, root(p.rs, n)) for n in names}


# -- frozen worked examples --------------------------------------------------------


def test_b3_maximal_parabolic_orders():
    p = weight_pair(*B3_MAX)
    names = ["e1", "e1+e2", "e1+e3", "e2+e3"]
    assert _orders(p, names) == {"e1": 2, "e1+e2": 3, "e1+e3": 1, "e2+e3": 2}
    for n in names:
        assert levi_order_root(p, root(p.rs, n)) == oracles.levi_order_oracle(p, root(p.rs, n))


def test_f4_maximal_example_orders():
    p = weight_pair(*F4_MAX)
    assert _orders(p, ["e1+e2", "e1+e4"]) == {"e1+e2": 3, "e1+e4": 2}


def test_f4_non_maximal_example_order():
    p = weight_pair(*F4_NONMAX)
    assert _orders(p, ["e2+e4"]) == {"e2+e4": 3}
    assert oracles.levi_order_oracle(p, root(p.rs, "e2+e4")) == 3


def test_b4_example_order():
    p = weight_pair(*B4_ORD)
    assert _orders(p, ["e1+e3"]) == {"e1+e3": 3}


def test_pair_level_levi_orders():
    p, _ = cross_pair(*SU12)
    assert levi_order(p).value == 1
    p, _ = cross_pair(*E332)
    rep = levi_order(p)
    assert rep.value == INF and rep.kernel
    rs = build_root_system("B3")
    tr = CrPair(rs, identity_involution(rs), parabolic_from_weights(rs, (1, 1, 0)))
    rep = levi_order(tr)
    assert rep.value == 0 and rep.vacuous and not rep.kernel


def test_out_of_scope_roots_raise():
    p, _ = cross_pair(*SU12)
    inside = p.both
    a = next(iter(inside))
    with pytest.raises(NotInScope):
        levi_order_root(p, a)
    with pytest.raises(NotInScope):
        contact_order_root(p, a)
    with pytest.raises(NotInScope):
        levi_sequence(p, a)


# -- H-index and depth -------------------------------------------------------------


def test_c3_depth_example():
    p = weight_pair(*C3_DEPTH)
    assert h_index(p, root(p.rs, "-2e1")) == 1
    assert h_index(p, root(p.rs, "-2e2")) == 3
    assert depth(p) == 3


def test_c4_depth_example():
    p = weight_pair(*C4_DEPTH)
    assert h_index(p, root(p.rs, "-2e1")) == 1
    assert h_index(p, root(p.rs, "-2e2")) == 1
    assert depth(p) == 2
    cv = basis_chamber(p.rs, ["-e1+e2", "e1-e3", "e3+e4", "-2e4"])
    assert lowest_root_indices(p, cv) == [1]
    assert lowest_root_indices(p, p.rs.canonical_chamber) == [1]


@pytest.mark.parametrize("m,lowest", [(2, 1), (3, 3)])
def test_paired_basis_depth(m, lowest):
    n = 2 * m
    inv = ", ".join(f"e{2 * i - 1}<->e{2 * i}" for i in range(1, m + 1))
    p, c = cross_pair(f"A{n - 1}", inv, list(range(1, n, 2)))
    assert depth(p) == m
    assert h_index(p, root(p.rs, f"e{n}-e1")) == lowest
    assert lowest_root_indices(p, c) == [lowest]


def test_b2_plus_b2_depth():
    p, c = cross_pair("B2+B2", "e1<->-e4, e2<->e3", [2, 3])
    assert depth(p) == 3
    assert lowest_root_indices(p, c) == [3, 1]


# -- contact order -----------------------------------------------------------------


def test_contact_order_examples():
    p, _ = cross_pair(*E332)
    assert levi_order(p).value == INF
    assert contact_order(p)[0] == 2
    p, _ = cross_pair(*SU12)
    assert contact_order(p)[0] == 1


def test_b3_maximal_contact_order_frozen():
    p = weight_pair(*B3_MAX)
    value, per = contact_order(p)
    assert value == 3
    assert value == max(oracles.contact_order_oracle(p, a) for a in per)
    assert not is_one_nondegenerate(p)


# -- oracle agreement over sweeps ---------------------------------------------------


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "C3", "G2"])
def test_orders_match_oracles(name):
    for p in _pairs(name):
        for a in p.q_sqc:
            assert levi_order_root(p, a) == oracles.levi_order_oracle(p, a)
            if a in p.q.qr:
                assert levi_order_root(p, a) in (1, INF)
        for a in p.union - p.both:
            assert contact_order_root(p, a) == oracles.contact_order_oracle(p, a)
        assert list(h_index_table(p)) == oracles.h_index_oracle(p)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2"])
def test_minimal_levi_sequences_are_permutation_invariant(name):
    m = None
    for p in _pairs(name):
        m = m or oracles.Model(p.rs)
        steps, mid, sink = p.qc_sq, p.q_sqc, p.qc_sqc
        for a in p.q_sqc:
            seq = levi_sequence(p, a)
            if seq is None:
                continue
            assert len(seq) == levi_order_root(p, a)
            for perm in set(itertools.permutations(seq)):
                cur = a
                for i, b in enumerate(perm):
                    assert b in steps
                    cur = m.sum_id(cur, b)
                    assert cur is not None
                    assert cur in (sink if i == len(perm) - 1 else mid)


@pytest.mark.parametrize("name", ["A3", "B3", "C3"])
def test_h_index_monotone_under_isotropy_addition(name):
    for p in _pairs(name):
        table = h_index_table(p)
        rs = p.rs
        for a in range(len(rs)):
            for b in p.both:
                t = rs.sum_table[a][b]
                if t >= 0:
                    assert table[t] <= table[a]


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2"])
def test_finite_levi_order_is_bounded_by_index(name):
    rs = build_root_system(name)
    mu = [mu_index(rs, a) for a in range(len(rs))]
    for p in _pairs(name):
        for a, v in levi_order(p).per_root.items():
            if v != INF:
                assert v <= mu[a]


# -- index mu ------------------------------------------------------------------


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2"])
def test_mu_matches_brute_force(name):
    rs = build_root_system(name)
    for a in range(len(rs)):
        assert mu_index(rs, a) == oracles.mu_oracle(rs, a)


def test_mu_spot_values():
    a3 = build_root_system("A3")
    assert {mu_index(a3, a) for a in range(len(a3))} == {2}
    a1 = build_root_system("A1")
    assert mu_index(a1, 0) == 0
    g2 = build_root_system("G2")
    assert mu_index(g2, root(g2, "e2+e3-2e1")) == 4
    b3 = build_root_system("B3")
    assert mu_index(b3, root(b3, "-e1")) == 3
    assert mu_index(b3, root(b3, "-e1-e2")) == 4


def test_mu_g2_short_frozen_from_brute_force():
    g2 = build_root_system("G2")
    a = root(g2, "e2-e1")
    assert oracles.mu_oracle(g2, a) == 3
    assert mu_index(g2, a) == 3


# -- bound verification ----------------------------------------------------------


def test_levi_order_bounds_by_type():
    assert levi_order_bound(build_root_system("A3")) == 2
    assert levi_order_bound(build_root_system("B2")) == 2
    assert levi_order_bound(build_root_system("C4")) == 2
    assert levi_order_bound(build_root_system("B3")) == 3
    assert levi_order_bound(build_root_system("G2")) == 3
    assert levi_order_bound(build_root_system("B2+B2")) is None


def test_verify_bounds_on_c4_example():
    p = weight_pair(*C4_DEPTH)
    rep = verify_bounds(p)
    assert rep.ok, rep.failures()
    assert rep.depth == 2
    assert rep.depth <= rep.lowest["S"][0] + 2


def test_verify_bounds_runs_the_expected_checks():
    p = weight_pair(*B3_MAX)
    rep = verify_bounds(p)
    assert rep.ok
    names = {c.name for c in rep.checks}
    assert {"levi_order_type_bound", "contact_le_levi", "depth_preserved_by_levi_reduction"} <= names
