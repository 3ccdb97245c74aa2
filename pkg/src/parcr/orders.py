"""Levi order, contact order, H-index (depth) and the admissible-sequence index.

All orders are shortest-path lengths on root graphs; ``INF`` marks an
unreachable target.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .crinv import (
    is_fundamental,
    is_levi_nondegenerate,
    is_totally_complex,
    is_weakly_integrable,
    levi_nondeg_reduction,
)
from .errors import NotInScope
from .involution import ChamberKind, Involution, involutions
from .parabolic import CrPair, find_fit_chamber, admissible_chambers, parabolic_from_crosses
from .rootsys import ABSENT, Chamber, RootSystem, extreme_roots

INF = math.inf
Order = float  # an int or INF


def fmt_order(x) -> object:
    return "inf" if x == INF else int(x)


# -- Levi order --------------------------------------------------------------


def _levi_bfs(pair: CrPair, a: int) -> Tuple[Order, Optional[List[int]]]:
    rs = pair.rs
    dom, steps, sink = pair.q_sqc, sorted(pair.qc_sq), pair.qc_sqc
    parent: Dict[int, Tuple[int, int]] = {a: (-1, -1)}
    queue = deque([(a, 0)])
    while queue:
        g, d = queue.popleft()
        row = rs.sum_table[g]
        for b in steps:
            t = row[b]
            if t == ABSENT:
                continue
            if t in sink:
                seq = [b]
                x = g
                while parent[x][0] != -1:
                    seq.append(parent[x][1])
                    x = parent[x][0]
                return d + 1, seq[::-1]
            if t in dom and t not in parent:
                parent[t] = (g, b)
                queue.append((t, d + 1))
    return INF, None


def levi_sequence(pair: CrPair, a: int) -> Optional[List[int]]:
    """A minimal Levi sequence (beta_1, ..., beta_q) for a, or None."""
    if a not in pair.q_sqc:
        raise NotInScope(f"{pair.rs.label(a)} is not in Q n s(Q^c)")
    return _levi_bfs(pair, a)[1]


def levi_order_root(pair: CrPair, a: int) -> Order:
    """Least q with a + beta_1 + ... + beta_q in Q^c n s(Q^c), beta_i in Q^c n s(Q)."""
    if a not in pair.q_sqc:
        raise NotInScope(f"{pair.rs.label(a)} is not in Q n s(Q^c)")
    value = _levi_bfs(pair, a)[0]
    if a in pair.q.qr and value not in (1, INF):
        raise AssertionError("a root of Q^r n s(Q^c) must have Levi order 1 or infinity")
    return value


@dataclass(frozen=True)
class LeviOrderReport:
    value: Order
    per_root: Dict[int, Order]
    kernel: FrozenSet[int]
    isotropy: FrozenSet[int]
    vacuous: bool


def levi_order(pair: CrPair) -> LeviOrderReport:
    """Supremum of the root Levi orders; kernel = roots of infinite order."""
    per = {a: levi_order_root(pair, a) for a in sorted(pair.q_sqc)}
    kernel = frozenset(a for a, v in per.items() if v == INF)
    value = max(per.values()) if per else 0
    return LeviOrderReport(value, per, kernel, pair.both, not per)


# -- contact order -------------------------------------------------------------


def contact_order_root(pair: CrPair, a: int) -> Order:
    """Least m with [Y_m, ... [Y_1, X_a]] in a root space of Q^c n s(Q^c), Y_i root vectors of Q u s(Q).

    A step g + (-g) lands in the Cartan part along the coroot of g; the next step from
    there reaches any b of Q u s(Q) with (g|b) != 0.
    """
    rs = pair.rs
    dom = pair.union - pair.both
    if a not in dom:
        raise NotInScope(f"{rs.label(a)} is not in (Q u sQ) minus (Q n sQ)")
    gens = sorted(pair.union)
    sink = pair.qc_sqc
    n = len(rs)
    # states 0..n-1 are roots, n + g is the Cartan element along the coroot of g
    dist = {a: 0}
    queue = deque([a])
    while queue:
        g = queue.popleft()
        if g >= n:
            h = g - n
            targets = [b for b in gens if rs.gram[h][b] != 0]
        else:
            row = rs.sum_table[g]
            targets = [row[b] for b in gens if row[b] != ABSENT]
            if rs.neg[g] in pair.union:
                targets.append(n + min(g, rs.neg[g]))
        for t in targets:
            if t in dist:
                continue
            if t < n and t in sink:
                return dist[g] + 1
            dist[t] = dist[g] + 1
            queue.append(t)
    return INF


def contact_order(pair: CrPair) -> Tuple[Order, Dict[int, Order]]:
    dom = sorted(pair.union - pair.both)
    per = {a: contact_order_root(pair, a) for a in dom}
    return (max(per.values()) if per else 0), per


# -- H-index and depth -----------------------------------------------------------


def h_index_table(pair: CrPair) -> Tuple[Order, ...]:
    """nu(alpha) for every root: BFS from Q u s(Q) adding roots of Q u s(Q)."""
    rs = pair.rs
    gens = sorted(pair.union)
    dist = {a: 1 for a in gens}
    frontier = list(gens)
    d = 1
    while frontier:
        d += 1
        nxt = []
        for g in frontier:
            row = rs.sum_table[g]
            for b in gens:
                t = row[b]
                if t != ABSENT and t not in dist:
                    dist[t] = d
                    nxt.append(t)
        frontier = nxt
    return tuple(dist.get(a, INF) for a in range(len(rs)))


def h_index(pair: CrPair, a: int) -> Order:
    return h_index_table(pair)[a]


def depth(pair: CrPair) -> Order:
    """Supremum of the H-index over all roots."""
    value = max(h_index_table(pair))
    if (value != INF) != is_fundamental(pair):
        raise AssertionError("finite depth must coincide with fundamental")
    return value


def lowest_root_indices(pair: CrPair, c: Chamber) -> List[Order]:
    """nu(gamma_{C,h}) for each irreducible component h."""
    table = h_index_table(pair)
    return [table[g] for _, g in extreme_roots(pair.rs, c)]


# -- admissible sequences ----------------------------------------------------------


def rad_add(rs: RootSystem, a: int) -> List[int]:
    """Roots beta with a + beta a root."""
    row = rs.sum_table[a]
    return [b for b in range(len(rs)) if row[b] != ABSENT]


def mu_index(rs: RootSystem, a: int) -> int:
    """Maximal length of an admissible sequence for a.

    Sequences may repeat roots; every sub-sum of two or more terms must avoid
    Rad u {0}, and a plus every nonempty sub-sum must be a root other than a.
    """
    vecs = rs.roots
    index = rs.index
    va = vecs[a]
    cands = rad_add(rs, a)
    best = 0

    def ok_with(sums: List[Tuple[int, ...]], b: int) -> Optional[List[Tuple[int, ...]]]:
        vb = vecs[b]
        new = []
        for s in sums:
            t = tuple(x + y for x, y in zip(s, vb))
            if t in index or not any(t):
                return None
            r = tuple(x + y for x, y in zip(va, t))
            if r not in index or r == va:
                return None
            new.append(t)
        return new

    def extend(start: int, sums: List[Tuple[int, ...]], length: int) -> None:
        nonlocal best
        best = max(best, length)
        for k in range(start, len(cands)):
            b = cands[k]
            new = ok_with(sums, b)
            if new is None:
                continue
            extend(k, sums + [vecs[b]] + new, length + 1)

    extend(0, [], 0)
    return best


# -- bounds ------------------------------------------------------------------


def levi_order_bound(rs: RootSystem) -> Optional[int]:
    """Bound on finite Levi orders for an irreducible system (None if not covered)."""
    if not rs.irreducible:
        return None
    t, n = rs.components[0]
    if t == "A" or t == "C" or (t == "B" and n == 2):
        return 2
    if t in "BDFG":
        return 3
    return None


@dataclass
class BoundCheck:
    name: str
    holds: bool
    detail: str = ""
    witness: Tuple = ()


@dataclass
class BoundReport:
    levi: LeviOrderReport
    contact: Order
    depth: Order
    h_index: Tuple[Order, ...]
    lowest: Dict[str, List[Order]]
    checks: List[BoundCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> List[BoundCheck]:
        return [c for c in self.checks if not c.holds]


def verify_bounds(pair: CrPair, chamber_budget: int = 2000) -> BoundReport:
    """Evaluate every order and depth bound on a single pair."""
    rs = pair.rs
    lev = levi_order(pair)
    con, con_per = contact_order(pair)
    table = h_index_table(pair)
    dep = max(table)
    c_s = find_fit_chamber(pair, ChamberKind.S)
    c_v = find_fit_chamber(pair, ChamberKind.V)
    lows = {
        "S": [table[g] for _, g in extreme_roots(rs, c_s)],
        "V": [table[g] for _, g in extreme_roots(rs, c_v)],
    }
    rep = BoundReport(lev, con, dep, table, lows)
    add = rep.checks.append

    bound = levi_order_bound(rs)
    if bound is not None:
        bad = [a for a, v in lev.per_root.items() if v != INF and v > bound]
        add(BoundCheck("levi_order_type_bound", not bad, f"finite orders <= {bound}",
                       tuple((rs.label(a), levi_sequence(pair, a)) for a in bad)))

    if is_weakly_integrable(pair):
        bad = [a for a, v in lev.per_root.items() if v != INF and v > 2]
        add(BoundCheck("weakly_integrable_order_le_2", not bad, "",
                       tuple(rs.label(a) for a in bad)))

    bad = [a for a in lev.per_root if con_per[a] > lev.per_root[a]]
    add(BoundCheck("contact_le_levi", not bad, "", tuple(rs.label(a) for a in bad)))
    if lev.value != INF and lev.value <= 2:
        bad = [a for a in lev.per_root if con_per[a] != lev.per_root[a]]
        add(BoundCheck("contact_eq_levi_at_order_le_2", con == lev.value and not bad,
                       f"contact {fmt_order(con)} vs levi {fmt_order(lev.value)}",
                       tuple(rs.label(a) for a in bad)))

    fundamental = is_fundamental(pair)
    if rs.irreducible and fundamental and not is_totally_complex(pair):
        add(BoundCheck("contact_finite", con != INF, f"contact {fmt_order(con)}"))

    if fundamental:
        enum = admissible_chambers(pair, chamber_budget)
        worst = None
        for c in enum.chambers:
            lows_c = [table[g] for _, g in extreme_roots(rs, c)]
            for a in range(len(rs)):
                h = rs.component_of[a]
                if table[a] > lows_c[h] + 2:
                    worst = (rs.label(a), c.simple)
                    break
            if worst:
                break
        add(BoundCheck("depth_le_lowest_plus_2", worst is None, "", worst or ()))
        if is_levi_nondegenerate(pair) and rs.irreducible:
            add(BoundCheck("depth_le_lowest_S_plus_1", dep <= lows["S"][0] + 1,
                           f"depth {fmt_order(dep)} vs nu(gamma_S) {fmt_order(lows['S'][0])}"))
        viol = None
        for c in enum.chambers:
            lows_c = [table[g] for _, g in extreme_roots(rs, c)]
            for h in range(len(rs.components)):
                if not lows["V"][h] <= lows_c[h] <= lows["S"][h]:
                    viol = (h, c.simple)
        add(BoundCheck("lowest_root_S_V_extremal", viol is None, "", viol or ()))

    levi = levi_nondeg_reduction(pair)
    dep_red = max(h_index_table(levi.output_pair))
    add(BoundCheck("depth_preserved_by_levi_reduction", dep_red == dep,
                   f"{fmt_order(dep)} vs {fmt_order(dep_red)}"))
    return rep


def sweep_pairs(rs: RootSystem, budget: int = 10_000) -> Iterator[Tuple[Tuple[int, ...], Involution, CrPair]]:
    """All (crosses, involution) pairs on the canonical chamber."""
    c = rs.canonical_chamber
    invs = involutions(rs, budget)
    for mask in range(1 << rs.rank):
        phi = tuple(k + 1 for k in range(rs.rank) if mask >> k & 1)
        q = parabolic_from_crosses(rs, c, [c.simple[k - 1] for k in phi])
        for inv in invs:
            yield phi, inv, CrPair(rs, inv, q)
