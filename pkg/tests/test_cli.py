import dataclasses
import json

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paper_source import bracket_rows, latex_to_grammar
from twistlab import twistcat as tc
from twistlab import verify as V
from twistlab.cli import EXIT_FAIL, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv, cat=None):
    code = main(list(argv), cat=cat)
    out, err = capsys.readouterr()
    return code, out, err


def test_twist_eq_pprime_rtilde(capsys):
    code, out, _ = run(capsys, "verify", "twist-eq", "--twist", "PprimeRtilde")
    assert code == EXIT_OK
    assert "[PASS] twist-eq" in out


def test_dual_md_matches_source_rows(capsys):
    code, out, _ = run(capsys, "dual", "--r", "Etheta", "--format", "md")
    assert code == EXIT_OK
    printed = {}
    for line in out.splitlines()[2:]:
        _, br, val, _ = line.split("|")
        a, b = br.strip()[1:-1].split(", ")
        printed[(a, b)] = tc.parse_dual_value(val.strip())
    src = bracket_rows("es-dual")
    assert src
    for a, b, tex in src:
        want = tc.parse_dual_value(latex_to_grammar(tex))
        got = printed.get((a, b))
        if got is None:
            got = {k: -v for k, v in printed[(b, a)].items()}
        assert got == want, (a, b)


def test_pencil_solve(capsys):
    code, out, _ = run(capsys, "pencil", "--solve")
    assert code == EXIT_OK
    assert out.strip() == "eta - theta = 0"


def test_pencil_solve_on_the_line(capsys):
    code, out, _ = run(capsys, "pencil", "--solve", "--param", "theta=eta")
    assert code == EXIT_OK
    assert "no constraint" in out


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == EXIT_OK
    for name in V.TWIST_ORDER:
        assert name in out
    code, out, _ = run(capsys, "list", "--format", "json")
    rows = json.loads(out)
    assert {r["kind"] for r in rows} >= {"twist", "table"}


def test_eval_matrix(capsys):
    code, out, _ = run(capsys, "eval", "--expr", "E12*E21 - E21*E12", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["reps"] == ["fund"]


def test_cybe_command(capsys):
    code, out, _ = run(capsys, "cybe", "--r", "Pprime")
    assert code == EXIT_OK and "= 0" in out


# -- exit codes

def test_fail_exit(capsys):
    code, out, _ = run(capsys, "verify", "coproduct-table", "--table", "Pprime", "--format", "text")
    assert code == EXIT_FAIL
    assert out.startswith("FAIL")
    assert "row E31" in out


def test_corrected_table_passes(capsys):
    code, _, _ = run(capsys, "verify", "coproduct-table", "--table", "Pprime", "--corrected")
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["verify", "twist-eq"],
    ["verify", "twist-eq", "--twist", "Nope"],
    ["verify", "twist-eq", "--twist", "j", "--param", "zz=1"],
    ["verify", "twist-eq", "--twist", "Pprime", "--param", "lambda=1"],
    ["verify", "twist-eq", "--twist", "j", "--reps", "adjoint"],
    ["eval", "--expr", "E12 * * E13"],
    ["dual", "--r", "missing"],
])
def test_usage_exit(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert "error" in err


def test_internal_exit(capsys):
    code, out, _ = run(capsys, "verify", "antipode", "--twist", "R", "--format", "text")
    assert code == EXIT_INTERNAL
    assert out.startswith("ERROR")


def test_unwritable_out_is_internal(capsys, tmp_path):
    code, _, err = run(capsys, "list", "--out", str(tmp_path / "no" / "such" / "file"))
    assert code == EXIT_INTERNAL
    assert "cannot write" in err


# -- reports

def test_verify_all_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "all", "--format", "json", "--out", str(a)]) == EXIT_FAIL
    assert main(["verify", "all", "--format", "json", "--out", str(b)]) == EXIT_FAIL
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_json_reports_validate(capsys):
    code, out, _ = run(capsys, "verify", "all", "--format", "json", "--timing")
    doc = json.loads(out)
    assert doc["summary"]["error"] == 0
    assert len(doc["timing"]["elapsed_ms"]) == len(doc["reports"])
    for r in doc["reports"]:
        jsonschema.validate(r, V.REPORT_SCHEMA)
        assert "elapsed_ms" not in r


def test_md_has_one_section_per_check(capsys):
    code, out, _ = run(capsys, "verify", "all", "--format", "md")
    n = len(V.plan(reps=("fund", "dual")))
    assert out.count("\n## [") == n
    assert out.count("## [FAIL]") == 2


def test_fund_dual_flag_adds_reports(capsys):
    code, out, _ = run(capsys, "verify", "all", "--format", "json", "--reps", "fund", "--fund-dual")
    reps = {tuple(r["reps"]) for r in json.loads(out)["reports"]}
    assert ("fund*dual", "fund") in reps


_TWIST_NAMES = st.sampled_from(["j", "Pprime", "R"])


@settings(max_examples=10)
@given(name=_TWIST_NAMES, corrupt=st.booleans())
def test_exit_code_tracks_status(name, corrupt):
    """A corrupted twist makes the twist equation fail and the exit code follow."""
    cat = tc.catalog()
    if corrupt:
        d = cat.twists[name]
        cat = cat.override("twists", name, dataclasses.replace(d, factors_text=("exp(E12 (x) E21)",)))
    code = main(["verify", "twist-eq", "--twist", name, "--format", "json", "--out", "/dev/null"], cat=cat)
    assert code == (EXIT_FAIL if corrupt else EXIT_OK)
