"""``parcr`` command line: analyses, reductions, orders, scans and rendering.

Exit codes: 0 success, 1 invalid spec, 2 budget exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from .crinv import (
    classify,
    enumerate_foliations,
    fundamental_reduction,
    levi_nondeg_reduction,
    polarize,
    strengthen_to_maximal,
    weyl_orbit_scan,
)
from .diagram import GRAMMAR, ParsedSpec, diagram_of, emit, load_spec, parse_spec, to_json_dict
from .errors import BudgetExceeded, ParcrError, SpecSyntaxError, ValidationError
from .involution import ChamberKind, to_shorthand
from .orders import contact_order, depth, fmt_order, h_index_table, levi_order, sweep_pairs
from .parabolic import find_fit_chamber
from .rootsys import build_root_system, extreme_roots

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# -- command bodies ------------------------------------------------------------


def _diagram_summary(spec: ParsedSpec) -> Dict[str, Any]:
    d = spec.diagram()
    return {"basis": list(d.basis), "crosses": list(d.crosses), "paint": " ".join(d.paint_tokens())}


def cmd_analyze(spec: ParsedSpec, args) -> Dict[str, Any]:
    pair = spec.pair
    cl = classify(pair)
    return {
        "type": pair.rs.name,
        "involution": to_shorthand(pair.inv),
        "diagram": _diagram_summary(spec),
        "dims": {"dim_r": cl.dims.dim_r, "cr_dim": cl.dims.cr_dim, "cr_codim": cl.dims.cr_codim},
        "flags": cl.flags(),
        "levi_order": fmt_order(levi_order(pair).value),
        "contact_order": fmt_order(contact_order(pair)[0]),
        "depth": fmt_order(depth(pair)),
    }


_REDUCERS = {
    "levi": lambda spec: levi_nondeg_reduction(spec.pair, spec.chamber),
    "fundamental": lambda spec: fundamental_reduction(spec.pair, spec.chamber),
    "polarize": lambda spec: polarize(spec.pair),
    "maximal": lambda spec: strengthen_to_maximal(spec.pair),
}


def cmd_reduce(spec: ParsedSpec, args) -> Dict[str, Any]:
    rep = _REDUCERS[args.kind](spec)
    out: Dict[str, Any] = {
        "kind": rep.kind,
        "chamber": [spec.pair.rs.label(a) for a in rep.chamber.simple],
        "crosses_in": list(rep.crosses_in),
        "crosses_out": list(rep.crosses_out),
        "changed": rep.changed,
        "output": to_json_dict(diagram_of(rep.output_pair, rep.chamber)),
    }
    if rep.kind == "fundamental":
        out["psi"] = list(rep.psi)
        out["fibre"] = {"nodes": list(rep.fibre.nodes), "crosses": list(rep.fibre.crosses)}
    if rep.kind == "maximal":
        out["dropped"] = list(rep.steps)
    return out


def cmd_orders(spec: ParsedSpec, args) -> Dict[str, Any]:
    pair = spec.pair
    label = pair.rs.label
    if args.contact:
        sup, per = contact_order(pair)
    else:
        # roots of Q^r have order 1 or inf and are left out of the listing
        rep = levi_order(pair)
        sup = rep.value
        per = {a: v for a, v in rep.per_root.items() if a in pair.q.qn}
    out: Dict[str, Any] = {label(a): fmt_order(v) for a, v in sorted(per.items())}
    out["sup"] = fmt_order(sup)
    return out


def cmd_depth(spec: ParsedSpec, args) -> Dict[str, Any]:
    pair = spec.pair
    rs = pair.rs
    table = h_index_table(pair)
    lows = {}
    for kind in ChamberKind:
        c = find_fit_chamber(pair, kind)
        lows[kind.value] = [fmt_order(table[g]) for _, g in extreme_roots(rs, c)]
    return {
        "depth": fmt_order(depth(pair)),
        "lowest_root_index": lows,
        "h_index": {rs.label(a): fmt_order(v) for a, v in enumerate(table)},
    }


def cmd_foliations(spec: ParsedSpec, args) -> Dict[str, Any]:
    label = spec.pair.rs.label
    fl = enumerate_foliations(spec.pair, args.foliation_budget, args.weyl_budget)
    out = {
        "chamber": [label(a) for a in fl.chamber.simple],
        "foliations": [
            {
                "basis": [label(a) for a in f.chamber.simple],
                "crosses": list(f.crosses),
                "same_isotropy": f.same_isotropy,
            }
            for f in fl.foliations
        ],
    }
    if not fl.complete:
        raise BudgetExceeded(f"more than {args.foliation_budget} foliations", out)
    return out


def cmd_scan_weyl(spec: ParsedSpec, args) -> Dict[str, Any]:
    rep = weyl_orbit_scan(spec.pair, args.weyl_budget, spec.chamber)
    label = spec.pair.rs.label

    def entry(e):
        return {
            "chamber": [label(a) for a in e.chamber.simple],
            "dims": [e.dims.dim_r, e.dims.cr_dim, e.dims.cr_codim],
            "minimal_type": e.minimal_type,
        }

    return {
        "group_order": rep.group_order,
        "orbit_size": len(rep.entries),
        "min_dim_r": rep.min_dim,
        "minimizers": [entry(e) for e in rep.minimizers],
        "minimizers_of_minimal_type": rep.minimizers_of_minimal_type,
    }


SWEEP_COLUMNS = [
    "type", "crosses", "involution", "trivial", "totally_real", "totally_complex", "fundamental",
    "integrable", "one_nondegenerate", "levi_nondegenerate", "polarized", "maximal",
    "weakly_integrable", "minimal_type", "contact_nondegenerate", "dim_r", "cr_dim", "cr_codim",
    "levi_order", "contact_order", "depth",
]


def _cell(v) -> str:
    if v is None:
        return "na"
    if isinstance(v, bool):
        return "1" if v else "0"
    return str(v)


def sweep_csv(type_name: str, budget: int) -> str:
    rs = build_root_system(type_name)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for phi, inv, pair in sweep_pairs(rs, budget):
        cl = classify(pair)
        row = [rs.name, " ".join(map(str, phi)) or "none", to_shorthand(inv)]
        row += [_cell(v) for v in cl.flags().values()]
        row += [cl.dims.dim_r, cl.dims.cr_dim, cl.dims.cr_codim]
        row += [fmt_order(levi_order(pair).value), fmt_order(contact_order(pair)[0]), fmt_order(depth(pair))]
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def cmd_render(spec: ParsedSpec, args) -> str:
    return emit(spec.diagram(), args.format)


# -- output ------------------------------------------------------------------


def _pretty(obj: Any, prefix: str = "") -> List[str]:
    rows: List[str] = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            key = f"{prefix}.{k}" if prefix else str(k)
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                rows += _pretty(v, key)
            else:
                rows.append((key, _scalar(v)))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            rows += _pretty(v, f"{prefix}[{i}]") if isinstance(v, (dict, list)) else [(f"{prefix}[{i}]", _scalar(v))]
    if prefix:
        return rows
    width = max((len(k) for k, _ in rows), default=0)
    return [f"{k.ljust(width)}  {v}" for k, v in rows]


def _is_flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v) or "-"
    if v is None:
        return "n/a"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _dump(obj: Any, pretty: bool) -> str:
    if pretty:
        return "\n".join(_pretty(obj)) + "\n"
    return json.dumps(obj, indent=2) + "\n"


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--inline", metavar="TEXT", help="spec text with '|' between lines")
    common.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    common.add_argument("--weyl-budget", type=int, default=10_000, help="max Weyl group size (default 10000)")
    common.add_argument("--foliation-budget", type=int, default=4096, help="max foliations (default 4096)")

    p = _Parser(prog="parcr", description="Combinatorics of parabolic CR-algebras on root systems.",
                epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sub.add_parser("analyze", parents=[common], help="classification flags, dimensions and orders")
    r = sub.add_parser("reduce", parents=[common], help="Levi, fundamental, polarization or maximal reduction")
    r.add_argument("kind", choices=sorted(_REDUCERS))
    o = sub.add_parser("orders", parents=[common], help="Levi order of each root (or contact order)")
    o.add_argument("--contact", action="store_true", help="report contact orders")
    sub.add_parser("depth", parents=[common], help="H-index table and depth")
    sub.add_parser("foliations", parents=[common], help="parabolics between Q n sQ and Q u sQ")
    s = sub.add_parser("scan", parents=[common], help="Weyl-orbit scan of a spec, or a CSV sweep of a type")
    s.add_argument("mode", choices=["weyl", "sweep"])
    s.add_argument("--type", dest="type_name", help="root system for 'sweep' (or give it as the positional argument)")
    rd = sub.add_parser("render", parents=[common], help="emit the diagram as text, DOT or JSON")
    fmt = rd.add_mutually_exclusive_group()
    for name in ("text", "dot", "json"):
        fmt.add_argument(f"--{name}", dest="format", action="store_const", const=name)
    rd.set_defaults(format="text")
    for cmd in sub.choices.values():
        cmd.add_argument("spec", nargs="?", help="path to a .crs or .json spec")
    return p


_VALUED = ("--inline", "--weyl-budget", "--foliation-budget", "--type")


def _options_last(argv: Sequence[str]) -> List[str]:
    """Move options after the positionals so that 'scan weyl --weyl-budget 5 x.crs' parses."""
    pos: List[str] = []
    opt: List[str] = []
    toks = list(argv)
    k = 0
    while k < len(toks):
        tok = toks[k]
        if tok == "--":
            pos += toks[k + 1:]
            break
        if tok in _VALUED:
            opt += toks[k:k + 2]
            k += 2
            continue
        (opt if tok.startswith("-") and tok != "-" else pos).append(tok)
        k += 1
    return pos + opt


def _load(args) -> ParsedSpec:
    if args.inline is not None:
        if args.spec is not None:
            raise UsageError("give a spec path or --inline, not both")
        return parse_spec(args.inline.replace("|", "\n"))
    if args.spec is None:
        raise UsageError("missing spec path")
    try:
        return load_spec(args.spec)
    except OSError as e:
        raise UsageError(f"cannot read {args.spec}: {e.strerror}") from None


def _diagnostic(e: ParcrError) -> Dict[str, Any]:
    out: Dict[str, Any] = {"error": type(e).__name__, "message": getattr(e, "reason", str(e))}
    for attr in ("line", "column", "invariant"):
        if getattr(e, attr, None) is not None:
            out[attr] = getattr(e, attr)
    return out


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_options_last(sys.argv[1:] if argv is None else argv))
        if args.command == "scan" and args.mode == "sweep":
            type_name = args.type_name or args.spec
            if not type_name:
                raise UsageError("scan sweep needs a root system type, e.g. 'parcr scan sweep B3'")
            stdout.write(sweep_csv(type_name, args.weyl_budget))
            return EXIT_OK
        spec = _load(args)
        if args.command == "render":
            stdout.write(cmd_render(spec, args))
            return EXIT_OK
        handler = {
            "analyze": cmd_analyze,
            "reduce": cmd_reduce,
            "orders": cmd_orders,
            "depth": cmd_depth,
            "foliations": cmd_foliations,
            "scan": cmd_scan_weyl,
        }[args.command]
        stdout.write(_dump(handler(spec, args), args.pretty))
        return EXIT_OK
    except UsageError as e:
        stderr.write(f"parcr: {e}\n\n{parser.format_usage()}\n{GRAMMAR}")
        return EXIT_USAGE
    except BudgetExceeded as e:
        diag = _diagnostic(e)
        if isinstance(e.partial, dict):
            diag["partial"] = e.partial
        stderr.write(json.dumps(diag, indent=2) + "\n")
        return EXIT_BUDGET
    except (SpecSyntaxError, ValidationError, ParcrError) as e:
        stderr.write(json.dumps(_diagnostic(e), indent=2) + "\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
