"""Pair-level invariants of (Q, s): classification, reductions, foliations,
dimensions and the Weyl-orbit scan."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field, fields
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded
from .involution import ChamberKind
from .parabolic import (
    CrPair,
    Ids,
    ParabolicSet,
    additive_closure,
    crosses,
    find_fit_chamber,
    is_closed,
    parabolic_from_crosses,
)
from .rootsys import ABSENT, Chamber, apply_to_chamber, reflect_chamber, support, weyl_group


@dataclass(frozen=True)
class Dims:
    """Root-level dimensions; the Cartan rank cancels and is omitted."""

    dim_r: int
    cr_dim: int
    cr_codim: int


def dims(pair: CrPair) -> Dims:
    n = len(pair.rs)
    return Dims(n - len(pair.both), len(pair.q_sqc), len(pair.qc_sqc))


# -- single predicates -------------------------------------------------------


def is_trivial(pair: CrPair) -> bool:
    return len(pair.q.members) == len(pair.rs)


def is_totally_real(pair: CrPair) -> bool:
    return pair.sq == pair.q.members


def is_totally_complex(pair: CrPair) -> bool:
    return len(pair.union) == len(pair.rs)


def is_integrable(pair: CrPair) -> bool:
    return is_closed(pair.rs, pair.union)


def is_fundamental(pair: CrPair) -> bool:
    """Q u s(Q) generates every root."""
    return len(additive_closure(pair.rs, pair.union)) == len(pair.rs)


def is_one_nondegenerate(pair: CrPair) -> bool:
    """Every alpha in Q minus s(Q) has a sum alpha + s(beta) outside Q u s(Q)."""
    table = pair.rs.sum_table
    for a in pair.q_sqc:
        row = table[a]
        if not any(row[b] != ABSENT and row[b] not in pair.union for b in pair.sq):
            return False
    return True


def phi_signs(pair: CrPair, c: Chamber) -> Tuple[Ids, Ids]:
    """(Phi^{s,+}, Phi^{s,-}): crossed roots with C-positive / C-negative conjugate."""
    phi = crosses(pair.q, c)
    plus = frozenset(a for a in phi if pair.s(a) in c.positive)
    return plus, phi - plus


def is_levi_nondegenerate(pair: CrPair) -> bool:
    """On a V-fit chamber, s maps every crossed root to a positive root."""
    c = find_fit_chamber(pair, ChamberKind.V)
    _, minus = phi_signs(pair, c)
    return not minus


def is_polarized(pair: CrPair) -> bool:
    return pair.inv.image_set(pair.q.qr) == pair.q.qr


def maximality_violations(pair: CrPair, c: Chamber) -> List[int]:
    """Crossed roots with positive conjugate whose conjugate's support meets
    another crossed root; c must be S-fit."""
    phi = crosses(pair.q, c)
    plus, _ = phi_signs(pair, c)
    rs = pair.rs
    return sorted(a for a in plus if not (support(rs, c, pair.s(a)) & phi) <= {a})


def is_maximal(pair: CrPair) -> bool:
    c = find_fit_chamber(pair, ChamberKind.S)
    return not maximality_violations(pair, c)


def is_weakly_integrable(pair: CrPair) -> bool:
    """Differences of roots of Q^n n s(Q^c) stay in (Q n sQ) u Q^n u s(Q^n)."""
    rs = pair.rs
    dom = sorted(pair.q.qn & pair.sqc)
    allowed = pair.both | pair.q.qn | pair.sqn
    for a in dom:
        row = rs.sum_table[a]
        for b in dom:
            d = row[rs.neg[b]]
            if d != ABSENT and d not in allowed:
                return False
    return True


def is_minimal_type(pair: CrPair) -> bool:
    return (pair.q.qn & pair.sqc) <= pair.imaginary_roots


def real_simple_ideals(pair: CrPair) -> List[FrozenSet[int]]:
    """Root sets of the s-orbits of irreducible components."""
    rs = pair.rs
    rep = {h: rs.component_roots(h)[0] for h in range(len(rs.components))}
    seen, out = set(), []
    for h in range(len(rs.components)):
        if h in seen:
            continue
        k = rs.component_of[pair.s(rep[h])]
        orbit = {h, k}
        seen |= orbit
        out.append(frozenset(a for a in range(len(rs)) if rs.component_of[a] in orbit))
    return out


def is_contact_nondegenerate(pair: CrPair) -> bool:
    """Fundamental and not totally complex on every real simple ideal."""
    rs = pair.rs
    for ideal in real_simple_ideals(pair):
        part = pair.union & ideal
        if len(part) == len(ideal):
            return False
        if additive_closure(rs, part) != ideal:
            return False
    return True


@dataclass(frozen=True)
class Classification:
    trivial: Optional[bool]
    totally_real: Optional[bool]
    totally_complex: Optional[bool]
    fundamental: Optional[bool]
    integrable: Optional[bool]
    one_nondegenerate: Optional[bool]
    levi_nondegenerate: Optional[bool]
    polarized: Optional[bool]
    maximal: Optional[bool]
    weakly_integrable: Optional[bool]
    minimal_type: Optional[bool]
    contact_nondegenerate: Optional[bool]
    dims: Dims

    def flags(self) -> Dict[str, Optional[bool]]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "dims"}


def classify(pair: CrPair) -> Classification:
    return Classification(
        trivial=is_trivial(pair),
        totally_real=is_totally_real(pair),
        totally_complex=is_totally_complex(pair),
        fundamental=is_fundamental(pair),
        integrable=is_integrable(pair),
        one_nondegenerate=is_one_nondegenerate(pair),
        levi_nondegenerate=is_levi_nondegenerate(pair),
        polarized=is_polarized(pair),
        maximal=is_maximal(pair),
        weakly_integrable=is_weakly_integrable(pair),
        minimal_type=is_minimal_type(pair),
        contact_nondegenerate=is_contact_nondegenerate(pair),
        dims=dims(pair),
    )


# -- reductions --------------------------------------------------------------


@dataclass(frozen=True)
class FibreDescriptor:
    """Nodes kept after erasing Psi and pruning cross-free parts (1-based)."""

    nodes: Tuple[int, ...]
    crosses: Tuple[int, ...]


@dataclass(frozen=True)
class ReductionReport:
    kind: str
    pair: CrPair
    output: ParabolicSet
    chamber: Chamber
    crosses_in: Tuple[int, ...]
    crosses_out: Tuple[int, ...]
    psi: Tuple[int, ...] = ()
    fibre: Optional[FibreDescriptor] = None
    steps: Tuple[int, ...] = ()

    @property
    def output_pair(self) -> CrPair:
        return self.pair.with_q(self.output)

    @property
    def removed(self) -> Tuple[int, ...]:
        return tuple(p for p in self.crosses_in if p not in self.crosses_out)

    @property
    def added(self) -> Tuple[int, ...]:
        return tuple(p for p in self.crosses_out if p not in self.crosses_in)

    @property
    def changed(self) -> bool:
        return self.output != self.pair.q


def _positions(c: Chamber, ids) -> Tuple[int, ...]:
    ids = set(ids)
    return tuple(k + 1 for k, b in enumerate(c.simple) if b in ids)


def _report(kind: str, pair: CrPair, c: Chamber, new_phi, **extra) -> ReductionReport:
    out = parabolic_from_crosses(pair.rs, c, new_phi)
    return ReductionReport(
        kind, pair, out, c, _positions(c, crosses(pair.q, c)), _positions(c, new_phi), **extra
    )


def levi_nondeg_reduction(pair: CrPair, chamber: Optional[Chamber] = None) -> ReductionReport:
    """Largest parabolic between Q and Q u s(Q): keep the crossed roots with
    positive conjugate on a V-fit chamber."""
    c = find_fit_chamber(pair, ChamberKind.V, chamber)
    plus, _ = phi_signs(pair, c)
    return _report("levi", pair, c, plus)


def sigma_extension_oracle(pair: CrPair) -> ParabolicSet:
    """Largest closed set between Q and Q u s(Q), grown one root at a time."""
    rs = pair.rs
    cur = pair.q.members
    changed = True
    while changed:
        changed = False
        for a in sorted(pair.union - cur):
            grown = additive_closure(rs, cur | {a})
            if grown <= pair.union:
                cur = grown
                changed = True
                break
    return ParabolicSet(rs, cur)


def fundamental_psi(pair: CrPair, c: Chamber) -> Ids:
    """Crossed roots of the totally real basis of the fundamental reduction."""
    rs = pair.rs
    phi = crosses(pair.q, c)
    plus, minus = phi_signs(pair, c)
    uncrossed = frozenset(c.simple) - phi
    covered = set()
    for b in uncrossed | minus:
        covered |= support(rs, c, pair.s(b))
    return frozenset(a for a in plus if pair.s(a) in pair.q.qn and a not in covered)


def _fibre(pair: CrPair, c: Chamber, psi: Ids) -> FibreDescriptor:
    rs = pair.rs
    phi = crosses(pair.q, c)
    keep = [b for b in c.simple if b not in psi]
    adj = {b: [x for x in keep if x != b and rs.gram[b, x] != 0] for b in keep}
    seen, nodes = set(), set()
    for b in keep:
        if b in seen:
            continue
        part, stack = {b}, [b]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in part:
                    part.add(y)
                    stack.append(y)
        seen |= part
        if part & phi:
            nodes |= part
    return FibreDescriptor(_positions(c, nodes), _positions(c, nodes & phi))


def fundamental_reduction(pair: CrPair, chamber: Optional[Chamber] = None) -> ReductionReport:
    """Totally real basis Q_Psi of the fundamental reduction, with the fibre diagram.

    Uses the given admissible chamber, or an S-fit one by default.
    """
    if chamber is not None and pair.q.is_admissible(chamber):
        c = chamber
    else:
        c = find_fit_chamber(pair, ChamberKind.S)
    psi = fundamental_psi(pair, c)
    return _report(
        "fundamental", pair, c, psi, psi=_positions(c, psi), fibre=_fibre(pair, c, psi)
    )


def polarization_set(pair: CrPair) -> ParabolicSet:
    """(Q n s(Q)) u Q^n, taken directly."""
    return ParabolicSet(pair.rs, pair.both | pair.q.qn)


def polarize(pair: CrPair) -> ReductionReport:
    """Polarization on an S-fit chamber: add each uncrossed root whose
    conjugate's support meets the crosses."""
    rs = pair.rs
    c = find_fit_chamber(pair, ChamberKind.S)
    phi = crosses(pair.q, c)
    extra = {a for a in c.simple if a not in phi and support(rs, c, pair.s(a)) & phi}
    return _report("polarize", pair, c, phi | extra)


def strengthen_to_maximal(pair: CrPair) -> ReductionReport:
    """Drop violating crossed roots (lowest id first) until maximal."""
    c = find_fit_chamber(pair, ChamberKind.S)
    phi = set(crosses(pair.q, c))
    steps = []
    cur = pair
    while True:
        bad = maximality_violations(cur, c)
        if not bad:
            break
        phi.discard(bad[0])
        steps.append(c.position(bad[0]) + 1)
        cur = pair.with_q(parabolic_from_crosses(pair.rs, c, phi))
    return _report("maximal", pair, c, phi, steps=tuple(steps))


# -- foliations ----------------------------------------------------------------


@dataclass(frozen=True)
class Foliation:
    """A parabolic P in the sandwich, with its crosses on an admissible chamber."""

    crosses: Tuple[int, ...]
    parabolic: ParabolicSet
    chamber: Chamber
    same_isotropy: bool


@dataclass(frozen=True)
class FoliationList:
    chamber: Chamber
    foliations: Tuple[Foliation, ...]
    complete: bool


def in_sandwich(pair: CrPair, p: ParabolicSet) -> bool:
    """Q n s(Q) <= P <= Q u s(Q)."""
    return pair.both <= p.members <= pair.union


def _chambers_inside(pair: CrPair, start: Chamber, ids: Ids, budget: int) -> List[Chamber]:
    """Chambers with every positive root in ids, in breadth-first order from start."""
    seen = {start.positive}
    order, queue, out = [start], deque([start]), []
    while queue:
        c = queue.popleft()
        if c.positive <= ids:
            out.append(c)
        for b in c.simple:
            d = reflect_chamber(c, b)
            if d.positive not in seen:
                seen.add(d.positive)
                if len(seen) > budget:
                    raise BudgetExceeded(f"more than {budget} chambers", out)
                order.append(d)
                queue.append(d)
    return out


def enumerate_foliations(pair: CrPair, budget: int = 4096, weyl_budget: int = 10_000) -> FoliationList:
    """Every parabolic P with Q n s(Q) <= P <= Q u s(Q).

    Each such P is Q_Psi(C) for any chamber C with Rad+(C) <= P, so scanning
    the chambers inside Q u s(Q) and all Psi <= B(C) finds them all. Entries
    are listed from an S-fit chamber outwards; each is checked against the
    sandwich directly and through the nilradical form of the two inclusions.
    """
    rs = pair.rs
    c0 = find_fit_chamber(pair, ChamberKind.S)
    qn_sqn = pair.q.qn & pair.sqn
    qn_or_sqn = pair.q.qn | pair.sqn
    seen = set()
    out: List[Foliation] = []
    for c in _chambers_inside(pair, c0, pair.union, weyl_budget):
        neg = sorted(c.negative)
        for k in range(rs.rank + 1):
            for psi in itertools.combinations(range(rs.rank), k):
                members = c.positive | {
                    a for a in neg if sum(c.coeffs[a][i] for i in psi) >= 0
                }
                if members in seen or not (pair.both <= members <= pair.union):
                    continue
                seen.add(members)
                p = ParabolicSet(rs, members, chamber=c)
                if not (qn_sqn <= p.qn and p.qn <= qn_or_sqn and in_sandwich(pair, p)):
                    raise AssertionError("sandwich tests disagree")
                if len(out) >= budget:
                    return FoliationList(c0, tuple(out), False)
                same = (p.members & pair.inv.image_set(p.members)) == pair.both
                out.append(Foliation(tuple(i + 1 for i in psi), p, c, same))
    return FoliationList(c0, tuple(out), True)


# -- Weyl orbit scan -------------------------------------------------------


@dataclass(frozen=True)
class OrbitEntry:
    q: ParabolicSet
    chamber: Chamber
    crosses: Tuple[int, ...]
    dims: Dims
    minimal_type: bool


@dataclass(frozen=True)
class WeylScanReport:
    group_order: int
    entries: Tuple[OrbitEntry, ...]
    min_dim: int
    minimizers: Tuple[OrbitEntry, ...]

    @property
    def minimizers_of_minimal_type(self) -> bool:
        return all(e.minimal_type for e in self.minimizers)


def weyl_orbit_scan(pair: CrPair, budget: int = 10_000, chamber: Optional[Chamber] = None) -> WeylScanReport:
    """dim_R of (w(Q), s) over the Weyl group, with the minimizers."""
    rs = pair.rs
    group = weyl_group(rs, budget)
    c0 = chamber if chamber is not None and pair.q.is_admissible(chamber) else pair.q.chamber
    phi_pos = _positions(c0, crosses(pair.q, c0))
    found: Dict[FrozenSet[int], OrbitEntry] = {}
    for w in group:
        members = frozenset(w[a] for a in pair.q.members)
        if members in found:
            continue
        cw = apply_to_chamber(c0, w)
        q = ParabolicSet(rs, members, chamber=cw)
        p = pair.with_q(q)
        found[members] = OrbitEntry(q, cw, phi_pos, dims(p), is_minimal_type(p))
    entries = tuple(found[k] for k in sorted(found, key=lambda m: tuple(sorted(m))))
    low = min(e.dims.dim_r for e in entries)
    mins = tuple(e for e in entries if e.dims.dim_r == low)
    return WeylScanReport(len(group), entries, low, mins)
