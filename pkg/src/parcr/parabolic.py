"""Parabolic sets, cross-marked chambers and adapted pairs (Q, s)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import NotAdmissible, NotParabolic
from .involution import ChamberKind, Involution, RootKind, classify_root
from .rootsys import ABSENT, Chamber, RootSystem, reflect_chamber

Ids = FrozenSet[int]


def additive_closure(rs: RootSystem, ids: Iterable[int]) -> Ids:
    """Smallest set containing ids and closed under root sums."""
    result = set(ids)
    frontier = list(result)
    while frontier:
        new = []
        for a in frontier:
            row = rs.sum_table[a]
            for b in list(result):
                c = row[b]
                if c != ABSENT and c not in result:
                    result.add(c)
                    new.append(c)
        frontier = new
    return frozenset(result)


def is_closed(rs: RootSystem, ids: Iterable[int]) -> bool:
    s = set(ids)
    return all(rs.sum_table[a][b] == ABSENT or rs.sum_table[a][b] in s for a in s for b in s)


def _admissible_walk(rs: RootSystem, members: Ids, start: Chamber) -> Chamber:
    """Reflect through simple roots outside Q until Rad+ lies in Q."""
    c = start
    for _ in range(len(rs)):
        bad = [b for b in c.simple if b not in members]
        if not bad:
            return c
        c = reflect_chamber(c, min(bad))
    raise NotParabolic("no admissible chamber found; the set is not parabolic")


class ParabolicSet:
    """A parabolic subset Q of the roots with its gradation chi_Q."""

    def __init__(self, rs: RootSystem, members: Iterable[int], chamber: Optional[Chamber] = None):
        self.rs = rs
        self.members: Ids = frozenset(members)
        m = self.members
        missing = [a for a in range(len(rs)) if a not in m and rs.neg[a] not in m]
        if missing:
            raise NotParabolic(f"neither {rs.label(missing[0])} nor its opposite lies in Q")
        if not is_closed(rs, m):
            raise NotParabolic("Q is not closed under root sums")
        self.qr: Ids = frozenset(a for a in m if rs.neg[a] in m)
        self.qn: Ids = m - self.qr
        self.qc: Ids = frozenset(range(len(rs))) - m
        self.qvee: Ids = self.qr | self.qc
        start = chamber if chamber is not None else rs.canonical_chamber
        self.chamber = _admissible_walk(rs, m, start)
        phi = [k for k, b in enumerate(self.chamber.simple) if b in self.qn]
        self.grad: Tuple[int, ...] = tuple(
            sum(self.chamber.coeffs[a][k] for k in phi) for a in range(len(rs))
        )
        for a in range(len(rs)):
            g = self.grad[a]
            if (g > 0) != (a in self.qn) or (g == 0) != (a in self.qr):
                raise NotParabolic("gradation does not match the decomposition of Q")

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        return isinstance(other, ParabolicSet) and other.rs == self.rs and other.members == self.members

    def __hash__(self) -> int:
        return hash((self.rs, self.members))

    def __repr__(self) -> str:
        return f"ParabolicSet({self.rs.name}, #Q={len(self.members)}, #Qn={len(self.qn)})"

    def is_admissible(self, c: Chamber) -> bool:
        return c.positive <= self.members

    def level(self, k: int) -> Ids:
        return frozenset(a for a, g in enumerate(self.grad) if g == k)


def parabolic_from_weights(rs: RootSystem, w: Sequence) -> ParabolicSet:
    """Q = {alpha : (alpha|w) >= 0} for a vector w in ambient coordinates."""
    fw = [Fraction(x) for x in w]
    if len(fw) != rs.ambient_dim:
        raise ValueError(f"weight has {len(fw)} coordinates, expected {rs.ambient_dim}")
    members = [a for a, r in enumerate(rs.roots) if sum(x * y for x, y in zip(r, fw)) >= 0]
    return ParabolicSet(rs, members)


def parabolic_from_crosses(rs: RootSystem, c: Chamber, phi: Iterable[int]) -> ParabolicSet:
    """Q_Phi = Rad+(C) together with the negative roots whose support avoids Phi."""
    phi = set(phi)
    if not phi <= set(c.simple):
        raise ValueError("crosses must be simple roots of the chamber")
    ks = [k for k, b in enumerate(c.simple) if b in phi]
    members = set(c.positive)
    for a in c.negative:
        if all(c.coeffs[a][k] == 0 for k in ks):
            members.add(a)
    return ParabolicSet(rs, members, chamber=c)


def decompose(q: ParabolicSet) -> Tuple[Ids, Ids, Ids, Ids]:
    """(Q^r, Q^n, Q^c, Q^vee)."""
    return q.qr, q.qn, q.qc, q.qvee


def crosses(q: ParabolicSet, c: Chamber) -> Ids:
    """Phi_C = B(C) n Q^n; the chamber must be admissible."""
    if not q.is_admissible(c):
        raise NotAdmissible(f"{c} is not admissible for Q")
    return frozenset(b for b in c.simple if b in q.qn)


def cross_positions(q: ParabolicSet, c: Chamber) -> Tuple[int, ...]:
    """1-based positions of the crossed nodes."""
    phi = crosses(q, c)
    return tuple(k + 1 for k, b in enumerate(c.simple) if b in phi)


@dataclass(frozen=True, eq=False)
class CrPair:
    """An adapted pair (Q, s)."""

    rs: RootSystem
    inv: Involution
    q: ParabolicSet

    def __post_init__(self):
        if self.inv.rs != self.rs or self.q.rs != self.rs:
            raise ValueError("pair components live on different root systems")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CrPair)
            and other.rs == self.rs
            and other.inv == self.inv
            and other.q == self.q
        )

    def __hash__(self) -> int:
        return hash((self.rs, self.inv.images, self.q.members))

    def __repr__(self) -> str:
        return f"CrPair({self.rs.name}, {self.inv!r}, {self.q!r})"

    def s(self, a: int) -> int:
        return self.inv.images[a]

    def with_q(self, q: ParabolicSet) -> "CrPair":
        return CrPair(self.rs, self.inv, q)

    @cached_property
    def sq(self) -> Ids:
        return self.inv.image_set(self.q.members)

    @cached_property
    def sqc(self) -> Ids:
        return self.inv.image_set(self.q.qc)

    @cached_property
    def sqn(self) -> Ids:
        return self.inv.image_set(self.q.qn)

    @cached_property
    def both(self) -> Ids:
        """Q n s(Q)."""
        return self.q.members & self.sq

    @cached_property
    def union(self) -> Ids:
        """Q u s(Q)."""
        return self.q.members | self.sq

    @cached_property
    def q_sqc(self) -> Ids:
        """Q n s(Q^c): the holomorphic directions outside the isotropy."""
        return self.q.members & self.sqc

    @cached_property
    def qc_sq(self) -> Ids:
        return self.q.qc & self.sq

    @cached_property
    def qc_sqc(self) -> Ids:
        """Q^c n s(Q^c): the transversal directions."""
        return self.q.qc & self.sqc

    @cached_property
    def kinds(self) -> Tuple[RootKind, ...]:
        return tuple(classify_root(self.rs, self.inv, a) for a in range(len(self.rs)))

    def kind(self, a: int) -> RootKind:
        return self.kinds[a]

    @cached_property
    def complex_roots(self) -> Ids:
        return frozenset(a for a, k in enumerate(self.kinds) if k is RootKind.COMPLEX)

    @cached_property
    def imaginary_roots(self) -> Ids:
        return frozenset(a for a, k in enumerate(self.kinds) if k is RootKind.IMAGINARY)

    @cached_property
    def real_roots(self) -> Ids:
        return frozenset(a for a, k in enumerate(self.kinds) if k is RootKind.REAL)


def make_pair(rs: RootSystem, inv: Involution, c: Chamber, phi: Iterable[int]) -> CrPair:
    return CrPair(rs, inv, parabolic_from_crosses(rs, c, phi))


def is_fit(pair: CrPair, c: Chamber, kind: ChamberKind) -> bool:
    """Fit condition on the uncrossed complex simple roots of an admissible chamber."""
    if not pair.q.is_admissible(c):
        return False
    for b in c.simple:
        if b in pair.q.qr and b in pair.complex_roots:
            if (pair.s(b) in c.positive) != (kind is ChamberKind.S):
                return False
    return True


def fit_chamber_kinds(pair: CrPair, c: Chamber) -> FrozenSet[ChamberKind]:
    return frozenset(k for k in ChamberKind if is_fit(pair, c, k))


def find_fit_chamber(pair: CrPair, kind: ChamberKind, start: Optional[Chamber] = None) -> Chamber:
    """Admissible chamber that is S-fit or V-fit, found by the reflection walk
    through offending uncrossed complex simple roots (lowest id first)."""
    if isinstance(kind, str):
        kind = ChamberKind(kind)
    q = pair.q
    c = start if start is not None and q.is_admissible(start) else q.chamber
    want_pos = kind is ChamberKind.S
    for _ in range(len(pair.rs) + 1):
        bad = [
            b for b in c.simple
            if b in q.qr and b in pair.complex_roots and (pair.s(b) in c.positive) != want_pos
        ]
        if not bad:
            return c
        c = reflect_chamber(c, min(bad))
    raise AssertionError("fit-chamber walk did not terminate")


@dataclass(frozen=True)
class ChamberEnumeration:
    chambers: Tuple[Chamber, ...]
    complete: bool


def admissible_chambers(pair_or_q, budget: int = 10_000) -> ChamberEnumeration:
    """Every chamber C with Rad+(C) in Q, by reflecting through uncrossed walls."""
    q = pair_or_q.q if isinstance(pair_or_q, CrPair) else pair_or_q
    start = q.chamber
    seen: Dict[FrozenSet[int], Chamber] = {start.positive: start}
    order = [start]
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for b in c.simple:
            if b not in q.qr:
                continue
            d = reflect_chamber(c, b)
            if d.positive not in seen:
                if len(order) >= budget:
                    return ChamberEnumeration(tuple(order), False)
                seen[d.positive] = d
                order.append(d)
                queue.append(d)
    return ChamberEnumeration(tuple(order), True)


def bigrade(pair: CrPair) -> Dict[Tuple[int, int], Ids]:
    """Q^{p,q} = {alpha : chi(alpha) = p, chi(s alpha) = q}."""
    out: Dict[Tuple[int, int], set] = {}
    g = pair.q.grad
    for a in range(len(pair.rs)):
        out.setdefault((g[a], g[pair.s(a)]), set()).add(a)
    return {k: frozenset(v) for k, v in sorted(out.items())}


def rho_pairing(q: ParabolicSet, a: int) -> Fraction:
    """<rho_Q | alpha> with rho_Q half the sum of Q^n."""
    rs = q.rs
    rho = sum((rs.vectors[b] for b in q.qn), start=0 * rs.vectors[0])
    num = int(2 * (rho @ rs.vectors[a]))
    return Fraction(num, 2 * rs.sq_len(a))
