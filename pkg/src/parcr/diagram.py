"""Cross-marked painted diagrams: data model, text grammar and renderers.

Text grammar, one ``key: value`` per line, ``#`` starts a comment::

    type: B3
    basis: e1-e2, e2-e3, e3            # optional, canonical chamber by default
    involution: e2 -> -e3, e3 -> -e2   # or  matrix: 3: 1 0 0 0 0 -1 0 -1 0
    cross: 2,3                         # or  weights: 1, 1, 0
    paint: + * *                       # optional, checked against the involution
    arrows: none                       # optional, checked against the involution

The involution and the crosses carry the meaning; paint and arrows only
validate. Paint tokens: ``o`` real, ``*`` imaginary, ``@`` imaginary with the
noncompact mark, ``+`` / ``-`` complex with positive / negative conjugate
(the circle glyphs are accepted too).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    InvalidRank,
    NotABasis,
    NotAdmissible,
    NotARoot,
    NotInvolutive,
    NotIsometric,
    NotRootPreserving,
    SpecSyntaxError,
    ValidationError,
)
from .involution import (
    Involution,
    RootKind,
    classify_root,
    involution_from_map,
    parse_matrix_form,
    parse_shorthand,
    to_shorthand,
)
from .parabolic import CrPair, cross_positions, parabolic_from_crosses, parabolic_from_weights
from .rootsys import Chamber, RootSystem, build_root_system, chamber_from_basis, parse_vector

GRAMMAR = """\
spec grammar (one 'key: value' per line, '#' starts a comment):
  type: B3                             root system, e.g. A4, G2, B2+B2
  basis: e1-e2, e2-e3, e3              optional; canonical chamber by default
  involution: e2 -> -e3, e3 -> -e2     clauses 'e<i> -> vector', 'e<i> <-> [-]e<j>', or 'id'
  matrix: 3: 1 0 0 0 0 -1 0 -1 0       alternative to involution (row-major, rationals allowed)
  cross: 2,3                           1-based crossed nodes, or 'none'
  weights: 1, 1, 0                     alternative to cross: Q = {a : (a|w) >= 0}
  paint: + * *                         optional check; o real, * imaginary, @ noncompact,
                                       + / - complex with positive / negative conjugate
  arrows: 1-4, 2-3                     optional check of the conjugation arrows
"""


class Paint(Enum):
    REAL = "o"
    IMAGINARY = "*"
    COMPLEX_POS = "+"
    COMPLEX_NEG = "-"

    @property
    def glyph(self) -> str:
        return _GLYPHS[self]


_GLYPHS = {
    Paint.REAL: "○",
    Paint.IMAGINARY: "●",
    Paint.COMPLEX_POS: "⊕",
    Paint.COMPLEX_NEG: "⊖",
}
NONCOMPACT_TOKEN = "@"
NONCOMPACT_GLYPH = "⊛"

_TOKENS = {
    "o": (Paint.REAL, False), "○": (Paint.REAL, False),
    "*": (Paint.IMAGINARY, False), "●": (Paint.IMAGINARY, False),
    "@": (Paint.IMAGINARY, True), "⊛": (Paint.IMAGINARY, True),
    "+": (Paint.COMPLEX_POS, False), "⊕": (Paint.COMPLEX_POS, False),
    "-": (Paint.COMPLEX_NEG, False), "⊖": (Paint.COMPLEX_NEG, False),
}


@dataclass(frozen=True)
class Bond:
    """Dynkin bond between 1-based nodes i < j; ``toward`` is the shorter end."""

    i: int
    j: int
    multiplicity: int
    toward: Optional[int]


@dataclass(frozen=True)
class CrossMarkedDiagram:
    type: str
    components: Tuple[Tuple[str, int], ...]
    basis: Tuple[str, ...]
    involution: str
    paint: Tuple[Paint, ...]
    noncompact: FrozenSet[int]
    crosses: Tuple[int, ...]
    arrows: Tuple[Tuple[int, int], ...]
    bonds: Tuple[Bond, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def paint_tokens(self) -> Tuple[str, ...]:
        return tuple(
            NONCOMPACT_TOKEN if k + 1 in self.noncompact else p.value
            for k, p in enumerate(self.paint)
        )

    def paint_glyphs(self) -> Tuple[str, ...]:
        return tuple(
            NONCOMPACT_GLYPH if k + 1 in self.noncompact else p.glyph
            for k, p in enumerate(self.paint)
        )


@dataclass(frozen=True)
class ParsedSpec:
    pair: CrPair
    chamber: Chamber
    noncompact: FrozenSet[int] = frozenset()

    def diagram(self) -> CrossMarkedDiagram:
        return diagram_of(self.pair, self.chamber, self.noncompact)


# -- derived decorations -------------------------------------------------------


def node_paint(pair: CrPair, c: Chamber, a: int) -> Paint:
    kind = classify_root(pair.rs, pair.inv, a)
    if kind is RootKind.REAL:
        return Paint.REAL
    if kind is RootKind.IMAGINARY:
        return Paint.IMAGINARY
    return Paint.COMPLEX_POS if pair.s(a) in c.positive else Paint.COMPLEX_NEG


def certified_arrows(pair: CrPair, c: Chamber) -> Tuple[Tuple[int, int], ...]:
    """Pairs (i, j) of complex nodes with s(alpha_i) = +-alpha_j modulo the
    other simple roots, in both directions."""
    simple = c.simple
    n = len(simple)

    def links(i: int, j: int) -> bool:
        co = c.coeffs[pair.s(simple[i])]
        return co[i] == 0 and abs(co[j]) == 1

    cx = [k for k in range(n) if classify_root(pair.rs, pair.inv, simple[k]) is RootKind.COMPLEX]
    out = []
    for x in cx:
        for y in cx:
            if x < y and links(x, y) and links(y, x):
                out.append((x + 1, y + 1))
    return tuple(out)


def bonds_of(rs: RootSystem, c: Chamber) -> Tuple[Bond, ...]:
    simple = c.simple
    out = []
    for x in range(len(simple)):
        for y in range(x + 1, len(simple)):
            a, b = simple[x], simple[y]
            m = int(rs.cartan_pairing[a, b]) * int(rs.cartan_pairing[b, a])
            if m == 0:
                continue
            la, lb = rs.sq_len(a), rs.sq_len(b)
            toward = None if la == lb else (y + 1 if la > lb else x + 1)
            out.append(Bond(x + 1, y + 1, m, toward))
    return tuple(out)


def diagram_of(pair: CrPair, chamber: Optional[Chamber] = None,
               noncompact: Iterable[int] = ()) -> CrossMarkedDiagram:
    """Painted, cross-marked diagram of the pair on an admissible chamber.

    ``noncompact`` lists 1-based imaginary nodes that carry the opaque mark.
    """
    rs = pair.rs
    c = chamber if chamber is not None else pair.q.chamber
    if not pair.q.is_admissible(c):
        raise NotAdmissible(f"{c} is not admissible for Q")
    paint = tuple(node_paint(pair, c, a) for a in c.simple)
    nc = frozenset(int(k) for k in noncompact)
    for k in nc:
        if not 1 <= k <= len(paint) or paint[k - 1] is not Paint.IMAGINARY:
            raise ValueError(f"noncompact mark on node {k}, which is not imaginary")
    return CrossMarkedDiagram(
        type=rs.name,
        components=rs.components,
        basis=tuple(rs.label(a) for a in c.simple),
        involution=to_shorthand(pair.inv),
        paint=paint,
        noncompact=nc,
        crosses=cross_positions(pair.q, c),
        arrows=certified_arrows(pair, c),
        bonds=bonds_of(rs, c),
    )


# -- parsing -----------------------------------------------------------------

_KEYS = ("type", "basis", "involution", "matrix", "cross", "weights", "paint", "arrows")
_LINE = re.compile(r"^(\s*)([A-Za-z_]+)\s*:\s?")


@dataclass
class _Field:
    value: str
    line: int
    column: int


def _split_fields(text: str) -> Tuple[Dict[str, _Field], int]:
    fields: Dict[str, _Field] = {}
    lines = text.splitlines()
    for no, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = _LINE.match(body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise SpecSyntaxError("expected 'key: value'", no, col)
        key = m.group(2).lower()
        if key not in _KEYS:
            raise SpecSyntaxError(f"unknown key {key!r}; expected one of {', '.join(_KEYS)}", no,
                                  len(m.group(1)) + 1)
        if key in fields:
            raise SpecSyntaxError(f"duplicate key {key!r}", no, len(m.group(1)) + 1)
        value = body[m.end():]
        lead = len(value) - len(value.lstrip())
        fields[key] = _Field(value.strip(), no, m.end() + lead + 1)
    return fields, len(lines) + 1


def _int_list(f: _Field, what: str) -> List[int]:
    v = f.value.strip().strip("{}()[]").strip()
    if v.lower() in ("", "none", "-"):
        return []
    out = []
    for m in re.finditer(r"[^,\s]+", v):
        tok = m.group(0)
        if not tok.isdigit():
            raise SpecSyntaxError(f"{what}: expected a node number, got {tok!r}", f.line,
                                  f.column + f.value.find(tok))
        out.append(int(tok))
    return out


def _parse_arrows(f: _Field) -> List[Tuple[int, int]]:
    v = f.value.strip()
    if v.lower() in ("", "none", "-"):
        return []
    out = []
    for part in v.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*(?:<->|↔|-)\s*(\d+)\s*", part)
        if not m:
            raise SpecSyntaxError(f"arrows: cannot read {part.strip()!r}; use 'i-j'", f.line,
                                  f.column + max(f.value.find(part.strip()), 0))
        i, j = int(m.group(1)), int(m.group(2))
        out.append((min(i, j), max(i, j)))
    return out


def _parse_paint(f: _Field) -> List[Tuple[Paint, bool]]:
    out = []
    for k, ch in enumerate(f.value):
        if ch in " ,\t":
            continue
        if ch not in _TOKENS:
            raise SpecSyntaxError(f"paint: unknown token {ch!r}", f.line, f.column + k)
        out.append(_TOKENS[ch])
    return out


def parse_spec(text: str) -> ParsedSpec:
    """Validated pair and chamber from the text grammar."""
    fields, end = _split_fields(text)
    if "type" not in fields:
        raise SpecSyntaxError("missing 'type:' line", end)
    ft = fields["type"]
    try:
        rs = build_root_system(ft.value)
    except InvalidRank as e:
        raise SpecSyntaxError(str(e), ft.line, ft.column) from None

    if "basis" in fields:
        fb = fields["basis"]
        ids = []
        for m in re.finditer(r"[^,]+", fb.value):
            tok = m.group(0).strip()
            try:
                vec = parse_vector(tok, rs.ambient_dim)
            except ValueError as e:
                raise SpecSyntaxError(f"basis: {e}", fb.line, fb.column + m.start()) from None
            try:
                ids.append(rs.root_id(vec))
            except NotARoot as e:
                raise ValidationError(str(e), fb.line, "basis") from None
        try:
            chamber = chamber_from_basis(rs, ids)
        except NotABasis as e:
            raise ValidationError(str(e), fb.line, "basis") from None
    else:
        chamber = None

    if ("involution" in fields) == ("matrix" in fields):
        line = fields["matrix"].line if "matrix" in fields else end
        raise SpecSyntaxError("give exactly one of 'involution:' or 'matrix:'", line)
    if "involution" in fields:
        fi = fields["involution"]
        try:
            m = parse_shorthand(rs, fi.value)
        except ValueError as e:
            raise SpecSyntaxError(f"involution: {e}", fi.line, fi.column) from None
    else:
        fi = fields["matrix"]
        try:
            m = parse_matrix_form(rs, fi.value)
        except (ValueError, ArithmeticError) as e:
            raise SpecSyntaxError(f"matrix: {e}", fi.line, fi.column) from None
    try:
        inv = involution_from_map(rs, m)
    except (NotInvolutive, NotIsometric, NotRootPreserving) as e:
        raise ValidationError(str(e), fi.line, "involution") from None

    if ("cross" in fields) == ("weights" in fields):
        line = fields["weights"].line if "weights" in fields else end
        raise SpecSyntaxError("give exactly one of 'cross:' or 'weights:'", line)
    if "cross" in fields:
        fc = fields["cross"]
        c = chamber if chamber is not None else rs.canonical_chamber
        pos = _int_list(fc, "cross")
        bad = [p for p in pos if not 1 <= p <= rs.rank]
        if bad:
            raise ValidationError(f"cross node {bad[0]} out of range 1..{rs.rank}", fc.line, "cross")
        q = parabolic_from_crosses(rs, c, [c.simple[p - 1] for p in pos])
    else:
        fw = fields["weights"]
        parts = [p for p in re.split(r"[,\s]+", fw.value.strip().strip("()[]")) if p]
        try:
            w = [Fraction(p) for p in parts]
        except (ValueError, ZeroDivisionError):
            raise SpecSyntaxError("weights: expected rational numbers", fw.line, fw.column) from None
        if len(w) != rs.ambient_dim:
            raise ValidationError(f"weights need {rs.ambient_dim} coordinates, got {len(w)}",
                                  fw.line, "weights")
        q = parabolic_from_weights(rs, w)
        if chamber is None:
            c = q.chamber
        elif q.is_admissible(chamber):
            c = chamber
        else:
            raise ValidationError("the basis is not admissible for the weight parabolic",
                                  fields["basis"].line, "admissible")
    pair = CrPair(rs, inv, q)

    noncompact: FrozenSet[int] = frozenset()
    if "paint" in fields:
        fp = fields["paint"]
        given = _parse_paint(fp)
        if len(given) != rs.rank:
            raise ValidationError(f"paint has {len(given)} tokens, expected {rs.rank}", fp.line, "paint")
        for k, ((p, _), a) in enumerate(zip(given, c.simple), start=1):
            want = node_paint(pair, c, a)
            if p is not want:
                raise ValidationError(
                    f"node {k} ({rs.label(a)}) painted {p.value!r}, the involution gives {want.value!r}",
                    fp.line, "paint")
        noncompact = frozenset(k for k, (_, nc) in enumerate(given, start=1) if nc)
    if "arrows" in fields:
        fa = fields["arrows"]
        given_arrows = sorted(set(_parse_arrows(fa)))
        want_arrows = list(certified_arrows(pair, c))
        if given_arrows != want_arrows:
            raise ValidationError(
                f"arrows {_fmt_arrows(given_arrows)} differ from the certified pairs {_fmt_arrows(want_arrows)}",
                fa.line, "arrows")
    return ParsedSpec(pair, c, noncompact)


def parse_json(data: Any) -> ParsedSpec:
    """ParsedSpec from the JSON form produced by emit(..., "json")."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        lines = [f"type: {data['type']}", "basis: " + ", ".join(data["basis"])]
        inv = data["involution"]
        lines.append(f"matrix: {inv[len('matrix '):]}" if inv.startswith("matrix ") else f"involution: {inv}")
        lines.append("cross: " + (",".join(str(k) for k in data["crosses"]) or "none"))
        if "paint" in data:
            lines.append("paint: " + " ".join(data["paint"]))
        if "arrows" in data:
            lines.append("arrows: " + _fmt_arrows(data["arrows"]))
    except (KeyError, TypeError) as e:
        raise ValidationError(f"JSON spec is missing a field: {e}", invariant="schema") from None
    return parse_spec("\n".join(lines))


# -- emitters ----------------------------------------------------------------


def _fmt_arrows(arrows: Sequence[Sequence[int]]) -> str:
    return ", ".join(f"{i}-{j}" for i, j in arrows) or "none"


def _bond_glyph(b: Bond) -> str:
    if b.multiplicity == 1:
        return "─"
    right = b.toward == b.j
    return {2: "⇒" if right else "⇐", 3: "⇛" if right else "⇚"}[b.multiplicity]


def drawing(d: CrossMarkedDiagram) -> List[str]:
    """Two-row sketch: nodes with bonds between neighbours, crosses below."""
    by_pair = {(b.i, b.j): b for b in d.bonds}
    glyphs = d.paint_glyphs()
    top, marks, cols = "", "", []
    for k in range(1, d.rank + 1):
        if k > 1:
            b = by_pair.get((k - 1, k))
            top += f" {_bond_glyph(b)} " if b else "   "
        cols.append(len(top))
        top += glyphs[k - 1]
    for k, col in enumerate(cols, start=1):
        marks += " " * (col - len(marks)) + ("×" if k in d.crosses else " ")
    rows = [top, marks.rstrip()]
    extra = [b for b in d.bonds if b.j != b.i + 1]
    if extra:
        rows.append("also bonded: " + ", ".join(f"{b.i}{_bond_glyph(b)}{b.j}" for b in extra))
    if d.arrows:
        rows.append("conjugate: " + ", ".join(f"{i}↔{j}" for i, j in d.arrows))
    return rows


def emit_text(d: CrossMarkedDiagram) -> str:
    out = ["# " + r if r else "#" for r in drawing(d)]
    out.append(f"type: {d.type}")
    out.append("basis: " + ", ".join(d.basis))
    if d.involution.startswith("matrix "):
        out.append("matrix: " + d.involution[len("matrix "):])
    else:
        out.append(f"involution: {d.involution}")
    out.append("cross: " + (",".join(str(k) for k in d.crosses) or "none"))
    out.append("paint: " + " ".join(d.paint_tokens()))
    out.append("arrows: " + _fmt_arrows(d.arrows))
    return "\n".join(out) + "\n"


_DOT_STYLE = {
    Paint.REAL: 'style=solid, label=""',
    Paint.IMAGINARY: 'style=filled, fillcolor=black, label=""',
    Paint.COMPLEX_POS: 'style=solid, label="+"',
    Paint.COMPLEX_NEG: 'style=solid, label="-"',
}


def emit_dot(d: CrossMarkedDiagram) -> str:
    out = [f'digraph "{d.type}" {{', "  rankdir=LR;", "  node [shape=circle, width=0.3, fixedsize=true];"]
    for k, p in enumerate(d.paint, start=1):
        style = _DOT_STYLE[p]
        if k in d.noncompact:
            style = 'style=filled, fillcolor=gray, label="*"'
        cross = ', xlabel="×", peripheries=2' if k in d.crosses else ""
        out.append(f'  n{k} [{style}, tooltip="{d.basis[k - 1]}"{cross}];')
    for b in d.bonds:
        if b.toward is None:
            out.append(f"  n{b.i} -> n{b.j} [dir=none, penwidth={b.multiplicity}];")
        else:
            src, dst = (b.i, b.j) if b.toward == b.j else (b.j, b.i)
            lines = ":".join(["black"] * b.multiplicity)
            out.append(f'  n{src} -> n{dst} [dir=forward, color="{lines}"];')
    for i, j in d.arrows:
        out.append(f"  n{i} -> n{j} [dir=both, style=dashed, constraint=false];")
    out.append("}")
    return "\n".join(out) + "\n"


def to_json_dict(d: CrossMarkedDiagram) -> Dict[str, Any]:
    return {
        "type": d.type,
        "ranks": [[t, n] for t, n in d.components],
        "basis": list(d.basis),
        "involution": d.involution,
        "crosses": list(d.crosses),
        "paint": list(d.paint_tokens()),
        "arrows": [list(a) for a in d.arrows],
        "bonds": [
            {"nodes": [b.i, b.j], "multiplicity": b.multiplicity, "toward": b.toward}
            for b in d.bonds
        ],
    }


def emit_json(d: CrossMarkedDiagram) -> str:
    return json.dumps(to_json_dict(d), sort_keys=True, indent=2) + "\n"


def emit(d: CrossMarkedDiagram, fmt: str = "text") -> str:
    try:
        return {"text": emit_text, "dot": emit_dot, "json": emit_json}[fmt](d)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected text, dot or json") from None


def load_spec(path: str) -> ParsedSpec:
    """Read a .crs text spec or a .json spec from disk."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecSyntaxError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None
        return parse_json(data)
    return parse_spec(text)


def semantic_key(p: ParsedSpec) -> Tuple:
    """What a spec means: root system, involution, Q and the chamber basis."""
    return (p.pair.rs.components, p.pair.inv.images, p.pair.q.members, p.chamber.simple, p.noncompact)
