"""Shared constructors for the worked-example pairs."""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence

from parcr.involution import RootKind, involution_from_map
from parcr.parabolic import CrPair, make_pair, parabolic_from_weights
from parcr.rootsys import Chamber, build_root_system, chamber_from_basis


def basis_chamber(rs, basis: Sequence[str]) -> Chamber:
    return chamber_from_basis(rs, [rs.parse_root(x) for x in basis])


def cross_pair(t: str, inv: str, cross: Iterable[int], basis: Optional[Sequence[str]] = None):
    """Pair given by crossed positions (1-based) on a chamber; returns (pair, chamber)."""
    rs = build_root_system(t)
    c = rs.canonical_chamber if basis is None else basis_chamber(rs, basis)
    s = involution_from_map(rs, inv)
    return make_pair(rs, s, c, [c.simple[k - 1] for k in cross]), c


def weight_pair(t: str, inv: str, w: Sequence) -> CrPair:
    rs = build_root_system(t)
    return CrPair(rs, involution_from_map(rs, inv), parabolic_from_weights(rs, w))


def borel_pair(t: str, inv: str) -> CrPair:
    rs = build_root_system(t)
    c = rs.canonical_chamber
    return make_pair(rs, involution_from_map(rs, inv), c, c.simple)


def labels(rs, ids: Iterable[int]) -> List[str]:
    return sorted(rs.label(a) for a in ids)


def root(rs, text: str) -> int:
    return rs.parse_root(text)


def paint(pair: CrPair, c: Chamber) -> str:
    out = []
    for b in c.simple:
        k = pair.kind(b)
        if k is RootKind.REAL:
            out.append("o")
        elif k is RootKind.IMAGINARY:
            out.append("*")
        else:
            out.append("+" if pair.s(b) in c.positive else "-")
    return "".join(out)


# Worked-example pairs: (type, involution, crosses or weights).
SU12 = ("A2", "e1->-e3, e2->-e2, e3->-e1", [1])
E332 = ("B3", "e2->-e2, e3->-e3", [2, 3])
A3_FUND = ("A3", "e1<->-e3, e2->-e2, e4->-e4", [1, 2])
B4_CHAIN = ("B4", "e3<->-e4", [1, 2, 3, 4])
SU13 = ("A3", "e1<->-e4, e2->-e2, e3->-e3", [2])
SU23 = ("A4", "e1<->-e5, e2<->-e4, e3->-e3", [1, 3])
SU24 = ("A5", "e1<->-e6, e2<->-e5, e3->-e3, e4->-e4", [1, 3, 4])
A6_MIN = ("A6", "e1<->-e7, e2<->-e6, e3->-e3, e4->-e4, e5->-e5", [1, 3, 5])

C3_DEPTH = ("C3", "e1<->-e3", (1, 1, 0))
C4_DEPTH = ("C4", "e1<->e4, e2->-e2, e3->-e3", (2, 2, 1, 0))
B3_MAX = ("B3", "e1->-e1, e2<->-e3", (1, 1, 0))
B4_ORD = ("B4", "e1<->-e2, e3<->-e4", (2, 1, 1, 0))
D4_WI = ("D4", "e1<->-e3, e2<->e4", (1, 1, 0, 0))
B6_MAX = ("B6", "e2->-e2, e4->-e4, e6->-e6", (3, 3, 2, 2, 1, 1))
F4_BASIS = ["e1-e2", "e2-e3", "e3", "1/2(-e1-e2-e3+e4)"]
F4_MAX = ("F4", "e1->-e1, e2<->-e3, e4->-e4", (1, 1, 0, 2))
F4_NONMAX = ("F4", "e1<->-e4, e2<->-e3", (1, 1, 0, 4))
