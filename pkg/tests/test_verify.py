import dataclasses
import json

import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlab import twistcat as tc
from twistlab import uexpr as ux
from twistlab import verify as V
from twistlab.scalars import S

cat = tc.catalog()


def ok(report):
    assert report.status == V.PASS, report.to_json()
    return report


def failed(report):
    assert report.status == V.FAIL, report.to_json()
    assert report.witness
    return report


# -- twist equation

@pytest.mark.parametrize("name", V.TWIST_ORDER)
@pytest.mark.parametrize("rep", ["fund", "dual"])
def test_twist_equation_catalog(name, rep):
    rpt = ok(V.check_twist_equation(name, (rep,) * 3))
    assert rpt.details["dims"] == 27


def test_twist_equation_symbolic_lambda():
    rpt = ok(V.check_twist_equation("PprimeRtilde"))
    assert "params" not in rpt.inputs


def test_twist_equation_rejects_non_twist():
    rpt = failed(V.check_twist_equation(ux.parse("exp(E12 (x) E21)")))
    w = rpt.witness
    assert w["kind"] == "matrix-entry" and w["lhs"] != w["rhs"]


def test_twist_equation_rtilde_needs_base():
    # on its own the Reshetikhin factor is a twist too; relative to Pprime it must still pass
    ok(V.check_twist_equation("Rtilde"))
    assert V.check_twist_equation("Rtilde").details["base"] == "Pprime"


# -- normalization

@pytest.mark.parametrize("name", ["Pprime", "R", "Ecan", "PprimeRtilde"])
def test_normalization(name):
    ok(V.check_normalization(name))


def test_normalization_scaled_twist_fails():
    F = ux.mul(ux.const(2), cat.get_twist("j").expr())
    rpt = failed(V.check_normalization(F))
    assert rpt.witness["value"] == "2"


# -- factorizable

@pytest.mark.parametrize("name,side", [("j", "left"), ("j", "right"), ("Ecan", "right"), ("R", "left")])
def test_factorizable(name, side):
    ok(V.check_factorizable(name, side))


def test_factorizable_bad_side_is_error():
    assert V.check_factorizable("j", "middle").status == V.ERROR


# -- R-matrices

@pytest.mark.parametrize("name", V.TWIST_ORDER)
def test_triangular(name):
    ok(V.check_triangular(name))


@pytest.mark.parametrize("name", ["Pprime", "PprimeRtilde", "Ecan", "R"])
def test_qybe(name):
    ok(V.check_qybe(name))


def test_closed_form_R():
    ok(V.check_closed_form_R("Pprime"))
    ok(V.check_closed_form_R("Pprime", ("dual", "dual")))
    assert V.check_closed_form_R("Rtilde").status == V.ERROR


def test_R_of_trivial_twist_is_identity():
    assert V.build_R(ux.parse("1 (x) 1")).is_identity()


# -- coproduct tables

@pytest.mark.parametrize("name", ["PprimeAbelian", "PprimeRtilde", "Ecan", "LE", "LEprime"])
@pytest.mark.parametrize("rep", ["fund", "dual"])
def test_coproduct_tables_pass(name, rep):
    rpt = ok(V.check_coproduct_table(name, (rep, rep)))
    assert set(rpt.details["rows"].values()) == {V.PASS}


def test_pprime_table_fails_only_on_printed_e31():
    for rep in ("fund", "dual"):
        rpt = failed(V.check_coproduct_table("Pprime", (rep, rep)))
        rows = rpt.details["rows"]
        assert [k for k, v in rows.items() if v != V.PASS] == ["E31"]
        assert rpt.witness["where"] == "row E31"
        assert rpt.details["errata"]["E31"]["corrected_row"] == V.PASS
        ok(V.check_coproduct_table("Pprime", (rep, rep), corrected=True))


def test_k_is_primitive_after_pprime():
    rpt = ok(V.check_coproduct_table("PprimeAbelian"))
    assert rpt.details["rows"]["K"] == V.PASS


def test_ecan_table_symbolic_in_xi():
    ok(V.check_coproduct_table("Ecan", params={"xi": S(3) / 7}))


# -- antipode

@pytest.mark.parametrize("name", ["j", "Pprime"])
@pytest.mark.parametrize("rep", ["fund", "dual"])
def test_antipode(name, rep):
    ok(V.check_antipode(name, rep))


def test_antipode_of_trivial_twist():
    rpt = ok(V.check_antipode(ux.parse("1 (x) 1")))
    assert rpt.details["V_is_identity"]


def test_antipode_element_of_jordanian(fund):
    Vm, terms = V.twisted_antipode_element(cat.get_twist("j").expr(), fund)
    assert Vm == fund.identity() - fund("H") @ fund("E13")


# -- classical layer

def test_normalization_constant_is_one():
    assert V.normalization_constant() == 1


@pytest.mark.parametrize("name", ["Pprime", "Etheta", "R"])
def test_dual_tables(name):
    rpt = ok(V.check_dual_table(name))
    assert set(rpt.details["rows"].values()) == {V.PASS}


def test_djr_dual_passes_with_flagged_row():
    rpt = ok(V.check_dual_table("DJR"))
    flagged = rpt.details["flagged"]
    assert list(flagged) == ["[X33, X32]"]
    assert flagged["[X33, X32]"]["computed"] == "(eta - 1)*X32"
    assert flagged["[X33, X32]"]["printed"] == "eta*X23 - X32"


def test_dual_table_missing_row_fails():
    d = cat.dual_table_def("Pprime")
    bad = cat.override("dual_tables", "Pprime", dataclasses.replace(d, rows_text=d.rows_text[1:]))
    rpt = failed(V.check_dual_table("Pprime", cat=bad))
    assert rpt.witness["row"] == "[X11, X13]" and rpt.witness["printed"] == "0"


@pytest.mark.parametrize("name", V.CYBE_ORDER)
def test_cybe(name):
    ok(V.check_cybe(name))


def test_pencil_symbolic():
    rpt = ok(V.check_pencil())
    assert rpt.details["constraints"] == ["eta - theta = 0"]
    assert rpt.details["witness_at_0_1"]["triple"] == ["X11", "X12", "X13"]


def test_pencil_specialisations():
    ok(V.check_pencil({"eta": S(1) / 4, "theta": S(1) / 4}))
    rpt = failed(V.check_pencil({"eta": 0, "theta": 1}))
    assert rpt.witness["kind"] == "jacobiator"


@given(st.fractions(min_value=-3, max_value=3, max_denominator=5))
@settings(max_examples=10)
def test_pencil_diagonal_always_compatible(x):
    ok(V.check_pencil({"eta": S(x), "theta": S(x)}))


def test_similarity_constants():
    rpt = ok(V.check_similarity())
    assert rpt.details["DJ_to_j"] == "1"
    assert rpt.details["DJR_to_Etheta(eta)"] == "-2"


def test_reparametrization():
    ok(V.check_reparametrization())


def test_composite():
    ok(V.check_composite())


def test_involution():
    rpt = ok(V.check_involution())
    sq = rpt.details["phi_squared"]
    assert sq["E12"] == "-1" and sq["E13"] == "1"


def test_xi_identification():
    rpt = ok(V.check_xi_identification())
    assert rpt.details["candidates"] == {"1/2": "match", "1": "differs"}


# -- suite behaviour

@pytest.fixture(scope="module")
def suite():
    return V.run_all(reps=("fund", "dual"))


def test_suite_statuses(suite):
    bad = [(r.check, r.inputs, r.reps) for r in suite if not r.ok]
    assert bad == [("coproduct-table", {"table": "Pprime"}, ["fund", "fund"]),
                   ("coproduct-table", {"table": "Pprime"}, ["dual", "dual"])]
    assert all(r.status != V.ERROR for r in suite)


def test_every_fail_has_witness(suite):
    assert all(r.witness for r in suite if not r.ok)


def test_representation_stability(suite):
    by = {}
    for r in suite:
        if r.reps:
            key = (r.check, json.dumps(r.inputs, sort_keys=True))
            by.setdefault(key, set()).add(r.status)
    assert all(len(s) == 1 for s in by.values())


def test_reports_match_schema(suite):
    for r in suite:
        jsonschema.validate(r.to_json(), V.REPORT_SCHEMA)
        jsonschema.validate(r.to_json(timing=False), V.REPORT_SCHEMA)


def test_pass_reports_dimensions(suite):
    matrix_checks = {"twist-eq", "factorizable", "triangular", "qybe", "closed-form-R",
                     "coproduct-table", "antipode", "composite", "involution"}
    for r in suite:
        if r.ok and r.check in matrix_checks:
            assert "dims" in r.details, r.check


def test_corrupted_catalog_gives_one_new_fail(suite):
    d = cat.dual_table_def("R")
    rows = list(d.rows_text)
    rows[0] = (rows[0][0], rows[0][1], "-2*X12")
    bad = cat.override("dual_tables", "R", dataclasses.replace(d, rows_text=tuple(rows)))
    reports = V.run_all(reps=("fund", "dual"), cat=bad)
    base = {(r.check, json.dumps(r.inputs), tuple(r.reps)) for r in suite if not r.ok}
    new = [r for r in reports if not r.ok and (r.check, json.dumps(r.inputs), tuple(r.reps)) not in base]
    assert len(new) == 1
    assert new[0].check == "dual-table" and new[0].witness


def test_parallel_matches_serial():
    a = [r.to_json(timing=False) for r in V.run_all(reps=("fund",))]
    b = [r.to_json(timing=False) for r in V.run_all(reps=("fund",), jobs=3)]
    assert a == b


def test_markdown_rendering(suite):
    md = V.render_markdown(suite)
    assert md.count("## [FAIL]") == 2
    assert "elapsed" not in md
    assert "elapsed" in V.render_markdown(suite[:1], timing=True)
