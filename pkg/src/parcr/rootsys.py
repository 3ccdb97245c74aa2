"""Root systems in exact doubled coordinates.

Every vector is stored as a tuple of integers equal to twice the ambient
coordinates, so half-integer roots of F4 and the E series stay integral.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import BudgetExceeded, InvalidRank, NotABasis, NotARoot, NotRegular

Vec = Tuple[int, ...]
Component = Tuple[str, int]

ABSENT = -1

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _unit(dim: int, i: int, c: int = 2) -> List[int]:
    v = [0] * dim
    v[i] = c
    return v


def _add(*vs: Sequence[int]) -> Vec:
    return tuple(sum(xs) for xs in zip(*vs))


def _neg(v: Sequence[int]) -> Vec:
    return tuple(-x for x in v)


def _pm_pairs(n: int, long_axis: int = 0) -> List[Vec]:
    """All +-e_i +- e_j for i < j, plus +-long_axis * e_i when nonzero."""
    out = []
    for i, j in itertools.combinations(range(n), 2):
        for si, sj in itertools.product((2, -2), repeat=2):
            v = [0] * n
            v[i], v[j] = si, sj
            out.append(tuple(v))
    if long_axis:
        for i in range(n):
            out.append(tuple(_unit(n, i, long_axis)))
            out.append(tuple(_unit(n, i, -long_axis)))
    return out


def _roots_a(n: int) -> Tuple[int, List[Vec]]:
    d = n + 1
    return d, [_add(_unit(d, i), _unit(d, j, -2)) for i in range(d) for j in range(d) if i != j]


def _roots_g2() -> Tuple[int, List[Vec]]:
    out = [_add(_unit(3, i), _unit(3, j, -2)) for i in range(3) for j in range(3) if i != j]
    for i in range(3):
        rest = [k for k in range(3) if k != i]
        v = _add(_unit(3, i, 4), _unit(3, rest[0], -2), _unit(3, rest[1], -2))
        out += [v, _neg(v)]
    return 3, out


def _halves(n: int, keep) -> List[Vec]:
    return [v for v in itertools.product((1, -1), repeat=n) if keep(v)]


def _roots_e(n: int) -> Tuple[int, List[Vec]]:
    if n == 8:
        out = _pm_pairs(8) + _halves(8, lambda v: v.count(1) % 2 == 1)
        return 8, out
    if n == 7:
        out = [_add(_unit(8, i), _unit(8, j, -2)) for i in range(8) for j in range(8) if i != j]
        out += _halves(8, lambda v: v.count(1) == 4)
        return 8, out
    out = [_add(_unit(8, 6), _unit(8, 7, -2)), _add(_unit(8, 7), _unit(8, 6, -2))]
    out += [_add(_unit(8, i), _unit(8, j, -2)) for i in range(6) for j in range(6) if i != j]
    for trio in itertools.combinations(range(6), 3):
        z = tuple(1 if k in trio or k == 6 else -1 for k in range(8))
        out += [z, _neg(z)]
    return 8, out


def _component_roots(letter: str, n: int) -> Tuple[int, List[Vec]]:
    if letter == "A":
        return _roots_a(n)
    if letter == "B":
        return n, _pm_pairs(n, 2)
    if letter == "C":
        return n, _pm_pairs(n, 4)
    if letter == "D":
        return n, _pm_pairs(n)
    if letter == "G":
        return _roots_g2()
    if letter == "F":
        return 4, _pm_pairs(4, 2) + _halves(4, lambda v: True)
    return _roots_e(n)



def _canonical_basis(letter: str, n: int) -> List[str]:
    """Canonical simple roots, written in the vector grammar."""
    if letter == "A":
        return [f"e{i}-e{i + 1}" for i in range(1, n + 1)]
    if letter == "B":
        return [f"e{i}-e{i + 1}" for i in range(1, n)] + [f"e{n}"]
    if letter == "C":
        return [f"e{i}-e{i + 1}" for i in range(1, n)] + [f"2e{n}"]
    if letter == "D":
        return [f"e{i}-e{i + 1}" for i in range(1, n)] + [f"e{n - 1}+e{n}"]
    if letter == "G":
        return ["e2-e3", "-e1-e2+2e3"]
    if letter == "F":
        return ["-e2+e3", "-e1+e2", "e1", "1/2(-e1-e2-e3+e4)"]
    zeta = "1/2(-e1-e2-e3+e4+e5+e6+e7-e8)"
    if n == 6:
        return [f"e{i}-e{i + 1}" for i in range(1, 6)] + [zeta]
    if n == 7:
        return [f"e{i}-e{i + 1}" for i in range(1, 7)] + [zeta]
    return [f"-e{i}+e{i + 1}" for i in range(1, 7)] + ["e1+e2", "1/2(-e1-e2-e3-e4-e5-e6-e7+e8)"]


def parse_components(spec: Union[str, Iterable]) -> Tuple[Component, ...]:
    """Accept "B3", "B2+B2", or an iterable of (letter, rank) pairs."""
    if isinstance(spec, str):
        parts = [p.strip() for p in spec.replace("⊕", "+").split("+") if p.strip()]
        out = []
        for p in parts:
            m = re.fullmatch(r"([A-Ga-g])\s*_?\s*(\d+)", p)
            if not m:
                raise InvalidRank(f"cannot read root system type {p!r}")
            out.append((m.group(1).upper(), int(m.group(2))))
        if not out:
            raise InvalidRank("empty root system type")
        return tuple(out)
    return tuple((str(t).upper(), int(r)) for t, r in spec)


class RootSystem:
    """A finite reduced root system with a fixed lexicographic root order."""

    def __init__(self, components: Sequence[Component]):
        comps = tuple(components)
        if not comps:
            raise InvalidRank("a root system needs at least one component")
        for letter, n in comps:
            if letter not in _RANK_OK or not _RANK_OK[letter](n):
                raise InvalidRank(f"rank {n} is not legal for type {letter}")
        blocks = [_component_roots(t, n) for t, n in comps]
        self.components: Tuple[Component, ...] = comps
        self.offsets: Tuple[int, ...] = tuple(
            itertools.accumulate([0] + [d for d, _ in blocks[:-1]])
        )
        self.ambient_dim: int = sum(d for d, _ in blocks)
        tagged = []
        for h, ((d, vs), off) in enumerate(zip(blocks, self.offsets)):
            for v in vs:
                full = [0] * self.ambient_dim
                full[off:off + d] = v
                tagged.append((tuple(full), h))
        tagged.sort(key=lambda t: t[0])
        self.roots: Tuple[Vec, ...] = tuple(v for v, _ in tagged)
        self.component_of: Tuple[int, ...] = tuple(h for _, h in tagged)
        self.index: Dict[Vec, int] = {v: i for i, v in enumerate(self.roots)}
        self.rank: int = sum(n for _, n in comps)
        self.name: str = "+".join(f"{t}{n}" for t, n in comps)

        arr = np.array(self.roots, dtype=np.int64)
        self.vectors = arr
        self.vectors.setflags(write=False)
        # 4 * (alpha|beta)
        self.gram = arr @ arr.T
        self.gram.setflags(write=False)
        sq = np.diag(self.gram)
        self.cartan_pairing = (2 * self.gram) // sq[None, :]
        self.cartan_pairing.setflags(write=False)
        self.neg: Tuple[int, ...] = tuple(self.index[_neg(v)] for v in self.roots)

        table = []
        for v in self.roots:
            row = []
            for w in self.roots:
                row.append(self.index.get(_add(v, w), ABSENT))
            table.append(tuple(row))
        self.sum_table: Tuple[Tuple[int, ...], ...] = tuple(table)
        self._reflections: Dict[int, Tuple[int, ...]] = {}

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and other.components == self.components

    def __hash__(self) -> int:
        return hash(self.components)

    @property
    def irreducible(self) -> bool:
        return len(self.components) == 1

    def root_id(self, vec: Sequence[int]) -> int:
        try:
            return self.index[tuple(vec)]
        except KeyError:
            raise NotARoot(f"{format_vector(vec)} is not a root of {self.name}") from None

    def parse_root(self, text: str) -> int:
        return self.root_id(parse_vector(text, self.ambient_dim))

    def label(self, a: int) -> str:
        return format_vector(self.roots[a])

    def sq_len(self, a: int) -> int:
        return int(self.gram[a, a])

    def is_long(self, a: int) -> bool:
        h = self.component_of[a]
        longest = max(self.sq_len(b) for b in range(len(self)) if self.component_of[b] == h)
        return self.sq_len(a) == longest

    def component_roots(self, h: int) -> List[int]:
        return [a for a in range(len(self)) if self.component_of[a] == h]

    def reflection(self, b: int) -> Tuple[int, ...]:
        """Root permutation induced by the reflection orthogonal to root b."""
        perm = self._reflections.get(b)
        if perm is None:
            vb = self.vectors[b]
            pair = self.cartan_pairing[:, b]
            images = self.vectors - np.outer(pair, vb)
            perm = tuple(self.index[tuple(int(x) for x in row)] for row in images)
            self._reflections[b] = perm
        return perm

    @property
    def canonical_chamber(self) -> "Chamber":
        ch = getattr(self, "_canonical", None)
        if ch is None:
            basis = []
            for (t, n), off in zip(self.components, self.offsets):
                d = _component_roots(t, n)[0]
                for text in _canonical_basis(t, n):
                    local = parse_vector(text, d)
                    full = [0] * self.ambient_dim
                    full[off:off + d] = local
                    basis.append(self.index[tuple(full)])
            ch = chamber_from_basis(self, basis)
            self._canonical = ch
        return ch


@lru_cache(maxsize=None)
def _build_cached(components: Tuple[Component, ...]) -> RootSystem:
    return RootSystem(components)


def build_root_system(components: Union[str, Iterable]) -> RootSystem:
    """Build (and cache) the root system for a list of (type, rank) pairs."""
    comps = parse_components(components)
    for letter, n in comps:
        if letter not in _RANK_OK or not _RANK_OK[letter](n):
            raise InvalidRank(f"rank {n} is not legal for type {letter}")
    return _build_cached(comps)


def sum_root(rs: RootSystem, a: int, b: int) -> Optional[int]:
    c = rs.sum_table[a][b]
    return None if c == ABSENT else c


def reflect(rs: RootSystem, b: int, x: int) -> int:
    """Id of r_b(x) = x - <x|b> b."""
    return rs.reflection(b)[x]


@dataclass(frozen=True, eq=False)
class Chamber:
    """A Weyl chamber, stored through its ordered basis and positive roots."""

    rs: RootSystem
    simple: Tuple[int, ...]
    positive: frozenset
    coeffs: Tuple[Tuple[int, ...], ...]
    regular: Vec

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chamber)
            and other.rs == self.rs
            and other.simple == self.simple
        )

    def __hash__(self) -> int:
        return hash((self.rs, self.simple))

    def __repr__(self) -> str:
        return f"Chamber({self.rs.name}: {', '.join(self.rs.label(a) for a in self.simple)})"

    @property
    def negative(self) -> frozenset:
        return frozenset(range(len(self.rs))) - self.positive

    def is_positive(self, a: int) -> bool:
        return a in self.positive

    def position(self, a: int) -> int:
        """0-based position of a simple root in the basis."""
        return self.simple.index(a)

    def height(self, a: int) -> int:
        return sum(self.coeffs[a])

    def same_basis_set(self, other: "Chamber") -> bool:
        return set(self.simple) == set(other.simple)


def _positive_closure(rs: RootSystem, basis: Sequence[int]) -> Dict[int, Tuple[int, ...]]:
    """Roots reachable from the basis by adding simple roots, with coefficients."""
    n = len(basis)
    coeffs: Dict[int, Tuple[int, ...]] = {}
    queue = deque()
    for k, b in enumerate(basis):
        c = [0] * n
        c[k] = 1
        coeffs[b] = tuple(c)
        queue.append(b)
    while queue:
        a = queue.popleft()
        for k, b in enumerate(basis):
            s = rs.sum_table[a][b]
            if s != ABSENT and s not in coeffs:
                c = list(coeffs[a])
                c[k] += 1
                coeffs[s] = tuple(c)
                queue.append(s)
    return coeffs


def chamber_from_basis(rs: RootSystem, basis: Sequence[int]) -> Chamber:
    """Chamber whose simple roots are the given ids, in the given order."""
    basis = tuple(int(b) for b in basis)
    if len(basis) != rs.rank or len(set(basis)) != rs.rank:
        raise NotABasis(f"a basis of {rs.name} needs {rs.rank} distinct roots")
    pos = _positive_closure(rs, basis)
    if len(pos) != len(rs) // 2 or any(rs.neg[a] in pos for a in pos):
        raise NotABasis("the given roots are not the simple roots of a chamber")
    mat = rs.vectors[list(basis)]
    for a, c in pos.items():
        if tuple(int(x) for x in np.array(c) @ mat) != rs.roots[a]:
            raise NotABasis("inconsistent coefficients; roots are not independent")
    for k, b in enumerate(basis):
        for a in pos:
            s = rs.sum_table[a][rs.neg[b]] if a != b else ABSENT
            if s != ABSENT and s not in pos:
                raise NotABasis(f"{rs.label(b)} is not simple in the chamber it generates")
    coeffs = [None] * len(rs)
    for a, c in pos.items():
        coeffs[a] = c
        coeffs[rs.neg[a]] = tuple(-x for x in c)
    regular = tuple(int(x) for x in rs.vectors[list(pos)].sum(axis=0))
    return Chamber(rs, basis, frozenset(pos), tuple(coeffs), regular)


def _walk_order(rs: RootSystem, ids: Sequence[int]) -> List[int]:
    """Deterministic Dynkin walk: per component, start at the endpoint with
    the largest vector and go depth first, longer arms first."""
    ids = list(ids)
    adj = {a: [b for b in ids if b != a and rs.gram[a, b] != 0] for a in ids}

    def arm(frm: int, to: int) -> int:
        seen, stack = {frm, to}, [to]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) - 1

    out: List[int] = []
    for h in range(len(rs.components)):
        part = [a for a in ids if rs.component_of[a] == h]
        if not part:
            continue
        ends = [a for a in part if len(adj[a]) <= 1]
        start = max(ends or part, key=lambda a: rs.roots[a])
        seen = {start}

        def visit(a: int) -> None:
            out.append(a)
            nxt = [b for b in adj[a] if b not in seen]
            nxt.sort(key=lambda b: (arm(a, b), rs.roots[b]), reverse=True)
            for b in nxt:
                if b not in seen:
                    seen.add(b)
                    visit(b)

        visit(start)
    return out


def chamber_from_regular(rs: RootSystem, v: Sequence) -> Chamber:
    """Chamber containing the exact vector v (ambient coordinates)."""
    if len(v) != rs.ambient_dim:
        raise NotRegular(f"vector has {len(v)} coordinates, expected {rs.ambient_dim}")
    fv = [Fraction(x) for x in v]
    pos = []
    for a, r in enumerate(rs.roots):
        val = sum(Fraction(x) * y for x, y in zip(r, fv))
        if val == 0:
            raise NotRegular(f"root {rs.label(a)} is orthogonal to the vector")
        if val > 0:
            pos.append(a)
    pset = set(pos)
    simple = [a for a in pos if not any(
        rs.sum_table[a][rs.neg[b]] in pset for b in pos if b != a
    )]
    return chamber_from_basis(rs, _walk_order(rs, simple))


def support(rs: RootSystem, c: Chamber, a: int) -> frozenset:
    """Simple roots with a nonzero coefficient in the expansion of a."""
    return frozenset(b for b, k in zip(c.simple, c.coeffs[a]) if k != 0)


def coefficients(c: Chamber, a: int) -> Tuple[int, ...]:
    return c.coeffs[a]


def extreme_roots(rs: RootSystem, c: Chamber) -> List[Tuple[int, int]]:
    """Per component, the highest root delta and the lowest root -delta."""
    out = []
    for h in range(len(rs.components)):
        delta = max(
            (a for a in c.positive if rs.component_of[a] == h),
            key=lambda a: (c.height(a), rs.roots[a]),
        )
        out.append((delta, rs.neg[delta]))
    return out


def reflect_chamber(c: Chamber, b: int) -> Chamber:
    """Image of the chamber under r_b; the basis keeps its positional order."""
    rs = c.rs
    perm = rs.reflection(b)
    coeffs = [None] * len(rs)
    for a in range(len(rs)):
        coeffs[perm[a]] = c.coeffs[a]
    regular = tuple(int(x) for x in rs.vectors[[perm[a] for a in c.positive]].sum(axis=0))
    return Chamber(
        rs,
        tuple(perm[a] for a in c.simple),
        frozenset(perm[a] for a in c.positive),
        tuple(coeffs),
        regular,
    )


def apply_to_chamber(c: Chamber, perm: Sequence[int]) -> Chamber:
    """Image of a chamber under a root permutation induced by an isometry."""
    rs = c.rs
    coeffs = [None] * len(rs)
    for a in range(len(rs)):
        coeffs[perm[a]] = c.coeffs[a]
    pos = frozenset(perm[a] for a in c.positive)
    regular = tuple(int(x) for x in rs.vectors[sorted(pos)].sum(axis=0))
    return Chamber(rs, tuple(perm[a] for a in c.simple), pos, tuple(coeffs), regular)


def compose(p: Sequence[int], q: Sequence[int]) -> Tuple[int, ...]:
    """p after q."""
    return tuple(p[x] for x in q)


def group_closure(gens: Sequence[Sequence[int]], budget: int) -> List[Tuple[int, ...]]:
    """All products of the generating permutations, breadth first."""
    gens = [tuple(g) for g in gens]
    ident = tuple(range(len(gens[0]))) if gens else ()
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(s, g)
            if h not in seen:
                seen.add(h)
                order.append(h)
                if len(order) > budget:
                    raise BudgetExceeded(f"group has more than {budget} elements", order)
                queue.append(h)
    return order


def weyl_group(rs: RootSystem, budget: int = 10_000) -> List[Tuple[int, ...]]:
    """Weyl group elements as root permutations, identity first."""
    c = rs.canonical_chamber
    return group_closure([rs.reflection(b) for b in c.simple], budget)


def all_chambers(rs: RootSystem, budget: int = 10_000) -> List[Chamber]:
    """Every chamber, reached by reflecting through walls."""
    start = rs.canonical_chamber
    seen = {start.positive: start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for b in c.simple:
            d = reflect_chamber(c, b)
            if d.positive not in seen:
                seen[d.positive] = d
                if len(seen) > budget:
                    raise BudgetExceeded(f"more than {budget} chambers", list(seen.values()))
                queue.append(d)
    return list(seen.values())


_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*e\s*(\d+)\s*")


def _parse_linear(text: str, dim: int) -> List[Fraction]:
    out = [Fraction(0)] * dim
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty vector")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot read vector term at {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing sign before {text[pos:]!r}")
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        k = int(m.group(3))
        if not 1 <= k <= dim:
            raise ValueError(f"coordinate e{k} out of range 1..{dim}")
        out[k - 1] += sign * coef
        pos = m.end()
    return out


def parse_vector(text: str, dim: int) -> Vec:
    """Read forms like "e1-e2", "2e3", "1/2(e1-e2-e3+e4)", "(e1+e2)/2".

    Returns doubled integer coordinates.
    """
    t = text.strip().replace("−", "-").replace("½", "1/2")
    factor = Fraction(1)
    m = re.fullmatch(r"([+-]?\s*\d*(?:/\d+)?)\s*\*?\s*\((.*)\)\s*(?:/\s*(\d+))?", t)
    if m:
        lead = m.group(1).replace(" ", "")
        if lead in ("", "+"):
            factor = Fraction(1)
        elif lead == "-":
            factor = Fraction(-1)
        else:
            factor = Fraction(lead)
        if m.group(3):
            factor /= int(m.group(3))
        t = m.group(2)
    vals = [2 * factor * x for x in _parse_linear(t, dim)]
    if any(x.denominator != 1 for x in vals):
        raise ValueError(f"{text!r} is not a half-integral vector")
    return tuple(int(x) for x in vals)


def format_vector(vec: Sequence[int]) -> str:
    """Inverse of parse_vector for doubled coordinates."""
    vec = [int(x) for x in vec]
    half = any(x % 2 for x in vec)
    parts = []
    for k, x in enumerate(vec, start=1):
        c = x if half else x // 2
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}e{k}")
    if not parts:
        return "0"
    body = "".join(parts)
    if body.startswith("+"):
        body = body[1:]
    return f"1/2({body})" if half else body
