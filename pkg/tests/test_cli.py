"""Command-line behaviour: exit codes, diagnostics, command outputs, golden files."""

from __future__ import annotations

import csv
import io
import json
import pathlib
import subprocess
import sys

import pytest

from parcr.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_USAGE, SWEEP_COLUMNS, run
from parcr.diagram import GRAMMAR, parse_spec

CORPUS = pathlib.Path(__file__).resolve().parents[1] / "examples" / "corpus"
SPECS = sorted(CORPUS.glob("*.crs"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == EXIT_OK, err
    return json.loads(out)


def spec(name):
    return CORPUS / f"{name}.crs"


# -- exit codes and diagnostics ---------------------------------------------------


def test_no_arguments_is_usage_error():
    code, out, err = call()
    assert code == EXIT_USAGE
    assert out == ""
    assert "usage: parcr" in err and GRAMMAR in err


def test_unknown_command_is_usage_error():
    code, _, err = call("frobnicate", spec("su23"))
    assert code == EXIT_USAGE
    assert "usage: parcr" in err


def test_missing_file_is_usage_error():
    code, _, err = call("analyze", CORPUS / "does-not-exist.crs")
    assert code == EXIT_USAGE
    assert "cannot read" in err


def test_missing_spec_is_usage_error():
    code, _, err = call("analyze")
    assert code == EXIT_USAGE
    assert "missing spec path" in err


def test_inline_and_path_together_is_usage_error():
    code, _, _ = call("analyze", spec("su23"), "--inline", "type: A1|involution: id|cross: 1")
    assert code == EXIT_USAGE


def test_sweep_without_type_is_usage_error():
    code, _, err = call("scan", "sweep")
    assert code == EXIT_USAGE
    assert "root system type" in err


def test_syntax_error_reports_position_as_json():
    code, out, err = call("analyze", "--inline", "type: B2|bogus")
    assert code == EXIT_INVALID
    assert out == ""
    diag = json.loads(err)
    assert diag["error"] == "SpecSyntaxError"
    assert (diag["line"], diag["column"]) == (2, 1)


def test_paint_mismatch_reports_invariant_as_json():
    code, _, err = call("analyze", "--inline", "type: B2|involution: id|cross: 1|paint: - -")
    assert code == EXIT_INVALID
    diag = json.loads(err)
    assert diag["error"] == "ValidationError"
    assert diag["invariant"] == "paint"
    assert diag["line"] == 4


def test_unknown_type_is_invalid_spec():
    code, _, err = call("analyze", "--inline", "type: Q7|involution: id|cross: 1")
    assert code == EXIT_INVALID
    assert "error" in json.loads(err)


def test_weyl_budget_exceeded():
    code, out, err = call("scan", "weyl", "--weyl-budget", "3", spec("sl3r-borel"))
    assert code == EXIT_BUDGET
    assert out == ""
    assert json.loads(err)["error"] == "BudgetExceeded"


def test_foliation_budget_exceeded_reports_partial_list():
    code, _, err = call("foliations", "--foliation-budget", "2", spec("su24"))
    assert code == EXIT_BUDGET
    diag = json.loads(err)
    assert len(diag["partial"]["foliations"]) == 2


def test_options_may_precede_or_follow_positionals():
    a = call("scan", "weyl", "--weyl-budget", "100", spec("sl3r-borel"))
    b = call("scan", "weyl", spec("sl3r-borel"), "--weyl-budget", "100")
    assert a == b and a[0] == EXIT_OK


def test_console_module_entry_point():
    proc = subprocess.run([sys.executable, "-c", "import sys; from parcr.cli import run; sys.exit(run())",
                           "analyze", str(spec("su12-sphere"))], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["type"] == "A2"


# -- command outputs --------------------------------------------------------------


def test_analyze_b3_example():
    doc = call_json("analyze", spec("b3-example"))
    assert doc["type"] == "B3"
    assert doc["diagram"]["crosses"] == [2, 3]
    assert doc["diagram"]["paint"] == "+ * *"
    assert doc["levi_order"] == "inf"
    assert doc["contact_order"] == 2
    assert doc["flags"]["fundamental"] is True
    assert doc["flags"]["levi_nondegenerate"] is False


def test_analyze_su12_dimensions():
    doc = call_json("analyze", spec("su12-sphere"))
    assert doc["dims"] == {"dim_r": 3, "cr_dim": 1, "cr_codim": 1}
    assert doc["levi_order"] == 1
    assert doc["contact_order"] == 1


def test_inline_matches_file():
    text = spec("su23").read_text(encoding="utf-8")
    inline = "|".join(ln for ln in text.splitlines() if ln and not ln.startswith("#"))
    assert call("analyze", "--inline", inline) == call("analyze", spec("su23"))


def test_pretty_output_is_a_table():
    code, out, _ = call("analyze", "--pretty", spec("b3-example"))
    assert code == EXIT_OK
    rows = dict(ln.split(None, 1) for ln in out.splitlines())
    assert rows["levi_order"] == "inf"
    assert rows["flags.fundamental"] == "yes"
    assert rows["diagram.crosses"] == "2 3"


def test_reduce_levi_b4_chain():
    doc = call_json("reduce", "levi", spec("b4-chain"))
    assert doc["crosses_in"] == [1, 2, 3, 4]
    assert doc["crosses_out"] == [1, 2, 3]
    assert doc["changed"] is True
    assert doc["output"]["crosses"] == [1, 2, 3]


def test_reduce_fundamental_b4_after_levi():
    text = "type: B4|involution: e3 <-> -e4|cross: 1,2,3"
    doc = call_json("reduce", "fundamental", "--inline", text)
    assert doc["psi"] == [1, 2]
    assert doc["fibre"] == {"nodes": [3, 4], "crosses": [3]}


def test_reduce_polarize_su23_crosses_every_node():
    doc = call_json("reduce", "polarize", spec("su23"))
    assert doc["crosses_out"] == [1, 2, 3, 4]


def test_reduce_maximal_a6():
    doc = call_json("reduce", "maximal", spec("a6-maximal"))
    assert doc["crosses_in"] == [1, 3, 5]
    assert doc["crosses_out"] == [1, 3]


def test_orders_lists_nilradical_and_sup():
    doc = call_json("orders", spec("b3-max"))
    assert doc == {"e2+e3": 2, "e1": 2, "e1+e3": 1, "e1+e2": 3, "sup": 3}


def test_contact_orders_bounded_by_levi_orders():
    levi = call_json("orders", spec("b3-max"))
    contact = call_json("orders", "--contact", spec("b3-max"))
    assert contact["sup"] <= levi["sup"]
    for root, v in levi.items():
        if root in contact and root != "sup":
            assert contact[root] <= v


def test_depth_c3():
    doc = call_json("depth", spec("c3-depth"))
    assert doc["depth"] == 3
    assert doc["h_index"]["-2e1"] == 1
    assert doc["h_index"]["-2e2"] == 3
    assert doc["lowest_root_index"]["S"] == [3]


def test_foliations_su24_entries():
    doc = call_json("foliations", spec("su24"))
    crosses = [tuple(f["crosses"]) for f in doc["foliations"]]
    assert len(crosses) == len(set(zip(crosses, (tuple(f["basis"]) for f in doc["foliations"]))))
    assert (2, 4) in crosses
    for f in doc["foliations"]:
        assert set(f) == {"basis", "crosses", "same_isotropy"}
        assert len(f["basis"]) == 5


def test_scan_weyl_sl3r():
    doc = call_json("scan", "weyl", spec("sl3r-borel"))
    assert doc["group_order"] == 6
    assert doc["min_dim_r"] == 4
    assert all(m["dims"][0] == 4 for m in doc["minimizers"])


def test_scan_sweep_b2_csv():
    code, out, _ = call("scan", "sweep", "B2")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == SWEEP_COLUMNS
    assert len(rows) == 1 + 24
    assert all(r[0] == "B2" for r in rows[1:])
    assert call("scan", "sweep", "--type", "B2")[1] == out


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_render_round_trips(fmt):
    code, out, _ = call("render", f"--{fmt}", spec("su23"))
    assert code == EXIT_OK
    if fmt == "json":
        doc = json.loads(out)
        assert doc["crosses"] == [1, 3]
    else:
        again = parse_spec(out).diagram()
        assert again == parse_spec(spec("su23").read_text(encoding="utf-8")).diagram()


def test_render_dot():
    code, out, _ = call("render", "--dot", spec("su23"))
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert out.count("dir=both") == 2


def test_render_formats_are_exclusive():
    code, _, _ = call("render", "--dot", "--json", spec("su23"))
    assert code == EXIT_USAGE


# -- golden files -----------------------------------------------------------------


@pytest.mark.parametrize("path", SPECS, ids=[p.stem for p in SPECS])
@pytest.mark.parametrize("tag,argv", [("analyze", ["analyze"]), ("render", ["render", "--json"])])
def test_golden(path, tag, argv):
    code, out, err = call(*argv, path)
    assert code == EXIT_OK, err
    expected = (CORPUS / "golden" / f"{path.stem}.{tag}.json").read_text(encoding="utf-8")
    assert out == expected
