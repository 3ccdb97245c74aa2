"""Involutions of a root system and the real/imaginary/complex partition."""

from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import NotInvolutive, NotIsometric, NotRootPreserving
from .linalg import FracMatrix, has_complement, matrix_from_images
from .rootsys import (
    Chamber,
    RootSystem,
    compose,
    format_vector,
    group_closure,
    parse_vector,
)


class RootKind(Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    COMPLEX = "complex"


class ChamberKind(Enum):
    S = "S"
    V = "V"


class Involution:
    """An isometric involution of the root system, stored as a root permutation.

    The rational matrix on ambient coordinates is kept when given and derived
    on demand otherwise.
    """

    __slots__ = ("rs", "images", "_matrix")

    def __init__(self, rs: RootSystem, images: Sequence[int], matrix: Optional[FracMatrix] = None):
        self.rs = rs
        self.images: Tuple[int, ...] = tuple(images)
        self._matrix = matrix

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __eq__(self, other) -> bool:
        return isinstance(other, Involution) and other.rs == self.rs and other.images == self.images

    def __hash__(self) -> int:
        return hash((self.rs, self.images))

    def __repr__(self) -> str:
        return f"Involution({self.rs.name}: {to_shorthand(self)})"

    @property
    def matrix(self) -> FracMatrix:
        if self._matrix is None:
            self._matrix = matrix_from_images(self.rs, self.images)
        return self._matrix

    def image_set(self, ids: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.images[a] for a in ids)


def _apply(m: Sequence[Sequence[Fraction]], v: Sequence) -> Tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in m)


def _validate_matrix(rs: RootSystem, m: FracMatrix) -> Tuple[int, ...]:
    n = rs.ambient_dim
    if len(m) != n or any(len(row) != n for row in m):
        raise NotInvolutive(f"matrix must be {n}x{n} for {rs.name}")
    imgs = [_apply(m, r) for r in rs.roots]
    for r, w in zip(rs.roots, imgs):
        if _apply(m, w) != tuple(Fraction(x) for x in r):
            raise NotInvolutive(f"s(s({format_vector(r)})) != {format_vector(r)}: map is not an involution")
    basis = rs.canonical_chamber.simple
    for a in basis:
        for b in basis:
            lhs = sum(x * y for x, y in zip(imgs[a], imgs[b]))
            if lhs != int(rs.gram[a, b]):
                raise NotIsometric(
                    f"(s{rs.label(a)}|s{rs.label(b)}) differs from ({rs.label(a)}|{rs.label(b)})"
                )
    out = []
    for r, w in zip(rs.roots, imgs):
        if any(x.denominator != 1 for x in w) or tuple(int(x) for x in w) not in rs.index:
            raise NotRootPreserving(f"s({format_vector(r)}) is not a root")
        out.append(rs.index[tuple(int(x) for x in w)])
    return tuple(out)


_CLAUSE = re.compile(r"^\s*(-?)\s*e(\d+)\s*(<->|->|→|↔)\s*(.+?)\s*$")


def parse_shorthand(rs: RootSystem, text: str) -> FracMatrix:
    """Matrix of a shorthand such as "e1 -> -e3, e2 -> -e2, e3 -> -e1".

    Clauses "ei <-> [-]ej" set both directions; "id" and "-id" are accepted;
    unmentioned basis vectors are fixed.
    """
    n = rs.ambient_dim
    t = text.strip()
    if t in ("id", "identity", ""):
        return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    if t == "-id":
        return tuple(tuple(Fraction(-int(i == j)) for j in range(n)) for i in range(n))
    cols: Dict[int, Tuple[Fraction, ...]] = {}
    for clause in re.split(r"[,;]", t):
        if not clause.strip():
            continue
        m = _CLAUSE.match(clause)
        if not m:
            raise ValueError(f"cannot read involution clause {clause.strip()!r}")
        if m.group(1):
            raise ValueError(f"clause {clause.strip()!r} must start with a basis vector e<i>")
        i = int(m.group(2))
        if not 1 <= i <= n:
            raise ValueError(f"e{i} out of range 1..{n}")
        target = parse_vector(m.group(4), n)
        img = tuple(Fraction(x, 2) for x in target)
        pairs = [(i - 1, img)]
        if m.group(3) in ("<->", "↔"):
            nz = [k for k, x in enumerate(img) if x != 0]
            if len(nz) != 1 or abs(img[nz[0]]) != 1:
                raise ValueError("<-> needs a signed basis vector on the right")
            k = nz[0]
            back = [Fraction(0)] * n
            back[i - 1] = img[k]
            pairs.append((k, tuple(back)))
        for k, v in pairs:
            if k in cols and cols[k] != v:
                raise ValueError(f"e{k + 1} is assigned twice")
            cols[k] = v
    full = [cols.get(k, tuple(Fraction(int(k == j)) for j in range(n))) for k in range(n)]
    return tuple(tuple(full[j][i] for j in range(n)) for i in range(n))


def _as_matrix(spec) -> FracMatrix:
    rows = [tuple(Fraction(x) for x in row) for row in spec]
    return tuple(rows)


def involution_from_map(rs: RootSystem, spec: Union[str, Sequence[Sequence], Dict[int, str]]) -> Involution:
    """Validated involution from a shorthand string, a {i: target} map, or a matrix."""
    if isinstance(spec, str):
        m = parse_shorthand(rs, spec)
    elif isinstance(spec, dict):
        m = parse_shorthand(rs, ", ".join(f"e{i} -> {t}" for i, t in sorted(spec.items())))
    else:
        m = _as_matrix(spec)
    images = _validate_matrix(rs, m)
    return Involution(rs, images, m)


def involution_from_images(rs: RootSystem, images: Sequence[int]) -> Involution:
    """Involution from a root permutation, checked to be involutive and linear."""
    images = tuple(images)
    if any(images[images[a]] != a for a in range(len(rs))):
        raise NotInvolutive("root permutation is not an involution")
    m = matrix_from_images(rs, images)
    if _validate_matrix(rs, m) != images:
        raise NotRootPreserving("root permutation is not induced by a linear map")
    return Involution(rs, images, m)


def identity_involution(rs: RootSystem) -> Involution:
    return Involution(rs, tuple(range(len(rs))))


def classify_root(rs: RootSystem, inv: Involution, a: int) -> RootKind:
    b = inv.images[a]
    if b == a:
        return RootKind.REAL
    if b == rs.neg[a]:
        return RootKind.IMAGINARY
    return RootKind.COMPLEX


def root_partition(inv: Involution) -> Dict[RootKind, FrozenSet[int]]:
    rs = inv.rs
    out: Dict[RootKind, set] = {k: set() for k in RootKind}
    for a in range(len(rs)):
        out[classify_root(rs, inv, a)].add(a)
    return {k: frozenset(v) for k, v in out.items()}


def chamber_kind(rs: RootSystem, inv: Involution, c: Chamber) -> FrozenSet[ChamberKind]:
    """{S} / {V} / both (no complex simple roots) / empty (neither)."""
    cx = [a for a in c.simple if classify_root(rs, inv, a) is RootKind.COMPLEX]
    flags = set()
    if all(inv(a) in c.positive for a in cx):
        flags.add(ChamberKind.S)
    if all(inv(a) not in c.positive for a in cx):
        flags.add(ChamberKind.V)
    return frozenset(flags)


def _signed_perm(m: FracMatrix) -> Optional[List[Tuple[int, int]]]:
    """For a signed permutation matrix, the (sign, target) of each column."""
    n = len(m)
    out = []
    for j in range(n):
        col = [m[i][j] for i in range(n)]
        nz = [i for i, x in enumerate(col) if x != 0]
        if len(nz) != 1 or abs(col[nz[0]]) != 1:
            return None
        out.append((int(col[nz[0]]), nz[0]))
    return out


def _shorthand_of(m: FracMatrix) -> Optional[str]:
    sp = _signed_perm(m)
    if sp is None:
        return None
    clauses = []
    for j, (sign, i) in enumerate(sp):
        if sign == 1 and i == j:
            continue
        clauses.append(f"e{j + 1}->{'-' if sign < 0 else ''}e{i + 1}")
    return ", ".join(clauses) if clauses else "id"


def signed_permutation_form(inv: Involution) -> Optional[str]:
    """Shorthand string when some extension of s is a signed permutation."""
    rs = inv.rs
    candidates = [inv.matrix]
    if has_complement(rs):
        candidates += [matrix_from_images(rs, inv.images, 1), matrix_from_images(rs, inv.images, -1)]
    for m in candidates:
        text = _shorthand_of(m)
        if text is not None:
            return text
    return None


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matrix_form(inv: Involution) -> str:
    m = inv.matrix
    return f"{len(m)}: " + " ".join(_fmt_frac(x) for row in m for x in row)


def to_shorthand(inv: Involution) -> str:
    return signed_permutation_form(inv) or ("matrix " + matrix_form(inv))


def parse_matrix_form(rs: RootSystem, text: str) -> FracMatrix:
    """Read "n: a11 a12 ... ann" (commas or spaces between entries)."""
    head, sep, body = text.partition(":")
    if not sep:
        raise ValueError("matrix form needs '<dim>: <entries>'")
    n = int(head.strip())
    if n != rs.ambient_dim:
        raise ValueError(f"matrix dimension {n} does not match {rs.name} (ambient {rs.ambient_dim})")
    entries = [Fraction(x) for x in re.split(r"[\s,]+", body.strip()) if x]
    if len(entries) != n * n:
        raise ValueError(f"matrix needs {n * n} entries, got {len(entries)}")
    return tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))


def diagram_automorphisms(rs: RootSystem) -> List[Tuple[int, ...]]:
    """Root permutations induced by symmetries of the canonical Dynkin diagram."""
    c = rs.canonical_chamber
    simple = c.simple
    n = len(simple)
    cart = [[int(rs.cartan_pairing[a, b]) for b in simple] for a in simple]
    perms: List[Tuple[int, ...]] = []

    def extend(partial: List[int]) -> None:
        k = len(partial)
        if k == n:
            perms.append(tuple(partial))
            return
        for t in range(n):
            if t in partial:
                continue
            if all(cart[k][j] == cart[t][partial[j]] and cart[j][k] == cart[partial[j]][t] for j in range(k)) \
                    and cart[k][k] == cart[t][t] and rs.sq_len(simple[k]) == rs.sq_len(simple[t]):
                extend(partial + [t])

    extend([])
    out = []
    basis_vecs = [rs.vectors[simple[p]] for p in range(n)]
    for p in perms:
        images = []
        for a in range(len(rs)):
            v = sum(k * basis_vecs[p[j]] for j, k in enumerate(c.coeffs[a]))
            images.append(rs.index[tuple(int(x) for x in v)])
        out.append(tuple(images))
    return out


def automorphism_group(rs: RootSystem, budget: int = 10_000) -> List[Tuple[int, ...]]:
    """Aut(Rad) as root permutations: Weyl group extended by diagram symmetries."""
    gens = [rs.reflection(b) for b in rs.canonical_chamber.simple]
    gens += [p for p in diagram_automorphisms(rs) if p != tuple(range(len(rs)))]
    return group_closure(gens, budget)


def involutions(rs: RootSystem, budget: int = 10_000) -> List[Involution]:
    """All involutions of Rad (identity included), sorted by image tuple."""
    found = sorted(g for g in automorphism_group(rs, budget) if compose(g, g) == tuple(range(len(rs))))
    return [Involution(rs, g) for g in found]
