"""Exact rational linear algebra on doubled coordinates (sympy backed)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

import sympy

from .rootsys import Chamber, RootSystem

FracMatrix = Tuple[Tuple[Fraction, ...], ...]


def _to_fractions(m: sympy.Matrix) -> FracMatrix:
    return tuple(
        tuple(Fraction(int(x.p), int(x.q)) for x in m.row(i)) for i in range(m.rows)
    )


@lru_cache(maxsize=None)
def _frame(rs: RootSystem):
    """Columns: canonical simple roots, then a basis of their orthogonal complement."""
    simple = [list(rs.roots[a]) for a in rs.canonical_chamber.simple]
    s_mat = sympy.Matrix(simple)
    comp = [list(v) for v in s_mat.nullspace()]
    cols = simple + comp
    frame = sympy.Matrix(cols).T
    return frame, frame.inv(), comp


def matrix_from_images(rs: RootSystem, images: Sequence[int], complement_sign: int = 1) -> FracMatrix:
    """Linear map sending each canonical simple root to its image, and acting
    as complement_sign times the identity on the orthogonal complement."""
    frame, inv, comp = _frame(rs)
    cols = [list(rs.roots[images[a]]) for a in rs.canonical_chamber.simple]
    cols += [[complement_sign * x for x in v] for v in comp]
    target = sympy.Matrix(cols).T
    return _to_fractions(target * inv)


def vector_coefficients(c: Chamber, vec: Sequence) -> Tuple[Fraction, ...]:
    """Exact coefficients of a vector in the span of the roots over the basis of c."""
    rs = c.rs
    b = sympy.Matrix([list(rs.roots[a]) for a in c.simple]).T
    v = sympy.Matrix([sympy.Rational(x) for x in vec])
    sol = (b.T * b).inv() * b.T * v
    if b * sol != v:
        raise ValueError("vector is not in the span of the roots")
    return tuple(Fraction(int(x.p), int(x.q)) for x in sol)


def has_complement(rs: RootSystem) -> bool:
    return bool(_frame(rs)[2])
