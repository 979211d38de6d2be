"""Verification engines.

Every check returns a :class:`Report`.  Matrix identities are decided by
exact equality of sparse matrices over the rational-function field; on
failure the first differing entry in row-major order is the witness, so
reports are deterministic.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import uexpr as ux
from .bialg import (
    BialgError,
    Tensor,
    cybe,
    dual_brackets,
    mixed_jacobiator,
    pencil_solve,
    proportionality,
    r_dj,
    transform,
)
from .liealg import BASIS, SL3_BASIS, LieElement, bracket, exp_ad, generator, span_coordinates
from .matrix import Matrix, MatrixError, kron, permute_legs
from .reps import Representation, rep_by_name
from .scalars import S, Scalar, render_scalar
from .twistcat import (
    Catalog,
    CatalogError,
    TwistDef,
    apply_linear_map,
    catalog,
    involution,
    involution_expr,
)

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass
class Report:
    check: str
    inputs: dict
    status: str
    witness: dict | None = None
    reps: list = field(default_factory=list)
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self, timing: bool = True) -> dict:
        out = {"check": self.check, "inputs": self.inputs, "status": self.status,
               "witness": self.witness, "reps": list(self.reps)}
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        if self.details:
            out["details"] = self.details
        return out

    def title(self) -> str:
        bits = [f"{k}={_fmt_input(v)}" for k, v in self.inputs.items()]
        reps = f" [{', '.join(self.reps)}]" if self.reps else ""
        return f"{self.check}({', '.join(bits)}){reps}"


REPORT_SCHEMA = {
    "type": "object",
    "required": ["check", "inputs", "status", "witness", "reps"],
    "properties": {
        "check": {"type": "string"},
        "inputs": {"type": "object"},
        "status": {"enum": [PASS, FAIL, ERROR]},
        "witness": {"type": ["object", "null"]},
        "reps": {"type": "array", "items": {"type": "string"}},
        "elapsed_ms": {"type": "integer"},
        "details": {"type": "object"},
    },
}


def _fmt_input(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}={x}" for k, x in v.items()) + "}"
    return str(v)


class CheckFailure(Exception):
    """Raised inside a check body to produce a fail report."""

    def __init__(self, witness: dict, details: dict | None = None):
        super().__init__(witness.get("message", "check failed"))
        self.witness = witness
        self.details = details or {}


def _run(check: str, inputs: dict, reps: Sequence[str], body: Callable[[], dict | None]) -> Report:
    t0 = time.perf_counter()
    try:
        details = body() or {}
        status, witness = PASS, None
    except CheckFailure as exc:
        status, witness, details = FAIL, exc.witness, exc.details
    except (CatalogError, ux.ExprError, MatrixError, BialgError, ArithmeticError, ValueError, KeyError) as exc:
        status, details = ERROR, {}
        witness = {"message": f"{type(exc).__name__}: {exc}"}
        extra = getattr(exc, "witness", None)
        if extra is not None:
            witness["detail"] = _jsonable(extra)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return Report(check, inputs, status, witness, list(reps), ms, details)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def _params_json(params) -> dict:
    return {k: render_scalar(S(v)) for k, v in (params or {}).items()}


# ------------------------------------------------------------------ helpers

def _rep(r) -> Representation:
    return r if isinstance(r, Representation) else rep_by_name(r)


def _reps(rs) -> tuple[Representation, ...]:
    if isinstance(rs, (str, Representation)):
        rs = (rs,)
    return tuple(_rep(r) for r in rs)


def _names(reps) -> list[str]:
    return [r.name for r in reps]


def matrix_witness(lhs: Matrix, rhs: Matrix, where: str = "") -> dict | None:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return None
    i, j, a, b = diff
    w = {"kind": "matrix-entry", "entry": [i, j], "lhs": str(a), "rhs": str(b)}
    if where:
        w["where"] = where
    return w


def _require_equal(lhs: Matrix, rhs: Matrix, where: str = "", details=None):
    w = matrix_witness(lhs, rhs, where)
    if w is not None:
        raise CheckFailure(w, details)


def place(m: Matrix, dims: Sequence[int], legs: str) -> Matrix:
    """Put a two-leg matrix on legs 12, 13 or 23 of V1 (x) V2 (x) V3."""
    d1, d2, d3 = dims
    if legs == "12":
        return kron(m, Matrix.identity(d3))
    if legs == "23":
        return kron(Matrix.identity(d1), m)
    if legs == "13":
        return permute_legs(kron(m, Matrix.identity(d2)), (d1, d3, d2), (0, 2, 1))
    raise ValueError(f"unknown leg pair {legs!r}")


def flip(m: Matrix, d1: int, d2: int) -> Matrix:
    """tau: V2 (x) V1 -> V1 (x) V2 conjugation of a matrix given on V2 (x) V1."""
    return permute_legs(m, (d2, d1), (1, 0))


def _twist(twist, params=None, cat: Catalog | None = None):
    """(name, TwistDef or None, F expression, base TwistDef or None)."""
    cat = cat or catalog()
    if isinstance(twist, ux.Node):
        return ux.render(twist), None, twist, None
    tw = twist if isinstance(twist, TwistDef) else cat.get_twist(twist, params)
    base = cat.get_twist(tw.base) if tw.base else None
    return tw.name, tw, tw.expr(), base


def _inv(F: ux.Node, reps) -> Matrix:
    try:
        return ux.eval_expr(ux.inverse_exp_product(F), reps)
    except ux.ExprError:
        return ux.eval_expr(F, reps).inverse()


def _total(F: ux.Node, base: TwistDef | None) -> ux.Node:
    return ux.mul(F, base.expr()) if base is not None else F


def _inputs(name, params, **extra) -> dict:
    out = {"twist": name} if name is not None else {}
    if params:
        out["params"] = _params_json(params)
    out.update(extra)
    return out


# ---------------------------------------------------------- twist equation

def check_twist_equation(twist, reps=("fund", "fund", "fund"), params=None, cat=None) -> Report:
    """F12 (Delta (x) id)(F) = F23 (id (x) Delta)(F); relative to the base coproduct if F has one."""
    reps = _reps(reps)
    if len(reps) == 1:
        reps = reps * 3
    name, tw, F, base = _twist(twist, params, cat)

    def body():
        r1, r2, r3 = reps
        dims = (r1.dim, r2.dim, r3.dim)
        F12 = place(ux.eval_expr(F, (r1, r2)), dims, "12")
        F23 = place(ux.eval_expr(F, (r2, r3)), dims, "23")
        D1 = ux.eval_expr(ux.coproduct0(F, 0), reps)
        D2 = ux.eval_expr(ux.coproduct0(F, 1), reps)
        if base is not None:
            B = base.expr()
            B12 = place(ux.eval_expr(B, (r1, r2)), dims, "12")
            B12i = place(_inv(B, (r1, r2)), dims, "12")
            B23 = place(ux.eval_expr(B, (r2, r3)), dims, "23")
            B23i = place(_inv(B, (r2, r3)), dims, "23")
            D1 = B12 @ D1 @ B12i
            D2 = B23 @ D2 @ B23i
        _require_equal(F12 @ D1, F23 @ D2, "F12 (D(x)id)F vs F23 (id(x)D)F")
        return {"dims": F12.n, "base": base.name} if base else {"dims": F12.n}

    return _run("twist-eq", _inputs(name, params), _names(reps), body)


# ----------------------------------------------------------- normalization

def check_normalization(twist, params=None, cat=None) -> Report:
    name, tw, F, _ = _twist(twist, params, cat)

    def body():
        for leg in (0, 1):
            red = ux.counit(F, leg)
            if red != ux.ONE_NODE:
                raise CheckFailure({"kind": "counit", "leg": leg + 1, "value": ux.render(red),
                                    "expected": "1"})
        return {"legs": [1, 2]}

    return _run("normalization", _inputs(name, params), [], body)


# ----------------------------------------------------- factorizable twists

def check_factorizable(twist, side: str = "left", reps=("fund", "fund", "fund"), params=None, cat=None) -> Report:
    """left: (Delta (x) id)F = F13 F23;  right: (id (x) Delta_F)F = F12 F13."""
    reps = _reps(reps)
    if len(reps) == 1:
        reps = reps * 3
    name, tw, F, base = _twist(twist, params, cat)

    def body():
        if side not in ("left", "right"):
            raise ValueError(f"side must be left or right, not {side!r}")
        r1, r2, r3 = reps
        dims = (r1.dim, r2.dim, r3.dim)
        F13 = place(ux.eval_expr(F, (r1, r3)), dims, "13")
        if side == "left":
            lhs = ux.eval_expr(ux.coproduct0(F, 0), reps)
            rhs = F13 @ place(ux.eval_expr(F, (r2, r3)), dims, "23")
        else:
            F23 = place(ux.eval_expr(F, (r2, r3)), dims, "23")
            F23i = place(_inv(F, (r2, r3)), dims, "23")
            lhs = F23 @ ux.eval_expr(ux.coproduct0(F, 1), reps) @ F23i
            rhs = place(ux.eval_expr(F, (r1, r2)), dims, "12") @ F13
        _require_equal(lhs, rhs, side)
        return {"dims": lhs.n}

    return _run("factorizable", _inputs(name, params, side=side), _names(reps), body)


# --------------------------------------------------------------- R-matrices

def build_R(twist, reps=("fund", "fund"), params=None, cat=None) -> Matrix:
    """R = F21 F^-1 (the base twist, if any, is folded into F)."""
    r1, r2 = _reps(reps) if len(_reps(reps)) == 2 else _reps(reps) * 2
    name, tw, F, base = _twist(twist, params, cat)
    F = _total(F, base)
    F21 = flip(ux.eval_expr(F, (r2, r1)), r1.dim, r2.dim)
    return F21 @ _inv(F, (r1, r2))


def _pair(reps):
    reps = _reps(reps)
    return reps * 2 if len(reps) == 1 else reps


def check_triangular(twist, reps=("fund", "fund"), params=None, cat=None) -> Report:
    reps = _pair(reps)
    name = twist if isinstance(twist, str) else getattr(twist, "name", "expr")

    def body():
        r1, r2 = reps
        R = build_R(twist, reps, params, cat)
        R21 = flip(build_R(twist, (r2, r1), params, cat), r1.dim, r2.dim)
        _require_equal(R21 @ R, Matrix.identity(R.n), "R21 R vs 1")
        return {"dims": R.n}

    return _run("triangular", _inputs(name, params), _names(reps), body)


def check_qybe(twist, reps=("fund", "fund", "fund"), params=None, cat=None) -> Report:
    reps = _reps(reps)
    if len(reps) == 1:
        reps = reps * 3
    name = twist if isinstance(twist, str) else getattr(twist, "name", "expr")

    def body():
        r1, r2, r3 = reps
        dims = (r1.dim, r2.dim, r3.dim)
        R12 = place(build_R(twist, (r1, r2), params, cat), dims, "12")
        R13 = place(build_R(twist, (r1, r3), params, cat), dims, "13")
        R23 = place(build_R(twist, (r2, r3), params, cat), dims, "23")
        _require_equal(R12 @ R13 @ R23, R23 @ R13 @ R12, "R12 R13 R23 vs R23 R13 R12")
        return {"dims": R12.n}

    return _run("qybe", _inputs(name, params), _names(reps), body)


def check_closed_form_R(name: str = "Pprime", reps=("fund", "fund"), cat=None) -> Report:
    reps = _pair(reps)
    cat = cat or catalog()

    def body():
        R = build_R(name, reps, None, cat)
        printed = ux.eval_expr(cat.closed_form_R(name), reps)
        _require_equal(R, printed, "F21 F^-1 vs printed R")
        return {"dims": R.n, "closed_form": ux.render(cat.closed_form_R(name))}

    return _run("closed-form-R", {"twist": name}, _names(reps), body)


# --------------------------------------------------------- coproduct tables

def check_coproduct_table(table: str, reps=("fund", "fund"), params=None, cat=None, corrected: bool = False) -> Report:
    """Each printed row against F Delta0(a) F^-1."""
    reps = _pair(reps)
    cat = cat or catalog()

    def body():
        tab = cat.get_table(table, params)
        tw = cat.get_twist(tab.twist, {k: v for k, v in (params or {}).items()
                                       if k in cat.twists[tab.twist].params})
        F = _total(tw.expr(), cat.get_twist(tw.base) if tw.base else None)
        Fm = ux.eval_expr(F, reps)
        Fi = _inv(F, reps)
        rows, errata, first = {}, {}, None
        for row in tab.rows_spec:
            a = tab.generator_expr(row.key)
            lhs = Fm @ ux.eval_expr(ux.coproduct0(a), reps) @ Fi
            rhs = ux.eval_expr(tab.row_expr(row, corrected), reps)
            w = matrix_witness(lhs, rhs, f"row {row.key}")
            rows[row.key] = PASS if w is None else FAIL
            if w is not None and first is None:
                first = w
            if row.erratum:
                errata[row.key] = {"note": row.erratum}
                if row.corrected and not corrected:
                    alt = ux.eval_expr(tab.row_expr(row, True), reps)
                    errata[row.key]["corrected_row"] = PASS if alt == lhs else FAIL
        details = {"dims": Fm.n, "rows": rows, "twist": tab.twist}
        if errata:
            details["errata"] = errata
        if first is not None:
            raise CheckFailure(first, details)
        return details

    inputs = {"table": table}
    if params:
        inputs["params"] = _params_json(params)
    if corrected:
        inputs["corrected"] = True
    return _run("coproduct-table", inputs, _names(reps), body)


# ----------------------------------------------------------------- antipode

def twisted_antipode_element(F: ux.Node, rep: Representation):
    """rho(V) for V = sum f1 S(f2), plus the Sweedler terms of F and F^-1."""
    terms = ux.sweedler_expand(F, (rep, rep))
    ev = ux.Evaluator((rep,))
    V = Matrix.zeros(rep.dim)
    for c, (f1, f2) in terms:
        V = V + (ev(f1) @ ev(ux.antipode(f2))).scale(c)
    return V, terms


def check_antipode(twist, rep="fund", params=None, cat=None) -> Report:
    """m (S_F (x) id) Delta_F(a) = eps(a) 1 with S_F = V S V^-1, for every E_ij."""
    rep = _rep(rep)
    name, tw, F, base = _twist(twist, params, cat)

    def body():
        Ft = _total(F, base)
        V, fterms = twisted_antipode_element(Ft, rep)
        Vi = V.inverse()
        gterms = ux.sweedler_expand(ux.inverse_exp_product(Ft), (rep, rep))
        ev = ux.Evaluator((rep,))
        zero = Matrix.zeros(rep.dim)
        for a_name in BASIS:
            a = ux.Gen(a_name)
            acc = zero
            for c1, (f1, f2) in fterms:
                for c2, (g1, g2) in gterms:
                    c = c1 * c2
                    for x, y in ((ux.mul(f1, a, g1), ux.mul(f2, g2)), (ux.mul(f1, g1), ux.mul(f2, a, g2))):
                        sx = V @ ev(ux.antipode(x)) @ Vi
                        acc = acc + (sx @ ev(y)).scale(c)
            _require_equal(acc, zero, f"m(S_F(x)id)Delta_F({a_name}) vs eps({a_name})")
        return {"dims": rep.dim, "sweedler_terms": [len(fterms), len(gterms)],
                "V_is_identity": V.is_identity()}

    return _run("antipode", _inputs(name, params), [rep.name], body)


# -------------------------------------------------------------- dual tables

def normalization_constant(cat=None) -> Scalar:
    """kappa fixed by the single row [X13, X31] = X31 of the Pprime dual table."""
    cat = cat or catalog()
    computed = dual_brackets(cat.get_rmatrix("Pprime"), 1).bracket_basis("X13", "X31")
    printed = cat.get_dual_table("Pprime").bracket_basis("X13", "X31")
    return printed["X31"] / computed["X31"]


def check_dual_table(name: str, params=None, cat=None) -> Report:
    cat = cat or catalog()

    def body():
        dt = cat.dual_table_def(name, params)
        rdef = cat.rmatrix_def(dt.rmatrix, params)
        kappa = normalization_constant(cat)
        comp = dual_brackets(rdef.tensor(), kappa)
        printed = dt.table()
        # printed rows in printed order and orientation, then any bracket the table omits
        keys = [(a, b) for a, b, _ in dt.rows_text]
        seen = {frozenset(k) for k in keys}
        keys += [k for k, v in comp.rows() if v and frozenset(k) not in seen]
        rows, flagged, first = {}, {}, None
        for a, b in keys:
            c, p = comp.bracket_basis(a, b), printed.bracket_basis(a, b)
            label = f"[{a}, {b}]"
            if c == p:
                rows[label] = PASS
                continue
            note = dt.suspect.get((a, b)) or dt.suspect.get((b, a))
            info = {"printed": _vec(p, printed.basis), "computed": _vec(c, printed.basis)}
            if note is not None:
                rows[label] = "flagged"
                flagged[label] = dict(info, note=note)
                continue
            rows[label] = FAIL
            if first is None:
                first = dict({"kind": "bracket-row", "row": label}, **info)
        details = {"kappa": str(kappa), "rmatrix": dt.rmatrix, "rows": rows}
        if flagged:
            details["flagged"] = flagged
        if first is not None:
            raise CheckFailure(first, details)
        return details

    inputs = {"table": name}
    if params:
        inputs["params"] = _params_json(params)
    return _run("dual-table", inputs, [], body)


def _vec(v, basis) -> str:
    from .liealg import render_vector
    return render_vector(v, basis)


def check_cybe(name: str, params=None, cat=None) -> Report:
    cat = cat or catalog()

    def body():
        r = cat.get_rmatrix(name, params)
        c = cybe(r)
        if not c.is_zero():
            key, val = c.first_component()
            raise CheckFailure({"kind": "cybe-component", "component": list(key), "value": str(val)})
        return {"components": 729, "skew": r.is_skew()}

    inputs = {"r": name}
    if params:
        inputs["params"] = _params_json(params)
    return _run("cybe", inputs, [], body)


# ------------------------------------------------------------------- pencil

def pencil_tables(cat=None, params=None):
    cat = cat or catalog()
    kappa = normalization_constant(cat)
    p = params or {}
    b1 = dual_brackets(cat.get_rmatrix("DJR", {k: v for k, v in p.items() if k == "eta"}), kappa)
    b2 = dual_brackets(cat.get_rmatrix("Etheta", {k: v for k, v in p.items() if k == "theta"}), kappa)
    return b1, b2


def check_pencil(params=None, cat=None) -> Report:
    """s mu_DJR(eta) + t mu_E'(theta) is Lie for all (s, t) exactly when eta = theta."""

    def body():
        b1, b2 = pencil_tables(cat, params)
        res = pencil_solve(b1, b2)
        details = {"constraints": res.render(), "generators": len(res.generators)}
        if params:
            if res.compatible():
                return details
            triple, val = next(iter(res.components.items()))
            raise CheckFailure({"kind": "jacobiator", "triple": list(triple),
                                "value": {k: str(v) for k, v in val.items()}}, details)
        diag = S("eta") - S("theta")
        for g in res.generators:
            if g.subs({"eta": S("theta")}):
                raise CheckFailure({"kind": "constraint", "generator": str(g),
                                    "message": "does not vanish at eta = theta"}, details)
            q = g / diag
            if not q.is_polynomial():
                raise CheckFailure({"kind": "constraint", "generator": str(g),
                                    "message": "not divisible by eta - theta"}, details)
        if not res.generators:
            raise CheckFailure({"kind": "constraint", "message": "no constraint at all"}, details)
        w1, w2 = pencil_tables(cat, {"eta": 0, "theta": 1})
        mixed = mixed_jacobiator(w1, w2)
        if not mixed:
            raise CheckFailure({"kind": "jacobiator", "message": "no witness at (eta, theta) = (0, 1)"}, details)
        triple, val = next(iter(mixed.items()))
        details["witness_at_0_1"] = {"triple": list(triple), "value": {k: str(v) for k, v in val.items()}}
        return details

    inputs = {"params": _params_json(params)} if params else {}
    return _run("pencil", inputs, [], body)


# --------------------------------------------------------------- similarity

def _similarity(r: Tensor, target: Tensor, label: str) -> dict:
    op = exp_ad(generator("E13"), S("v"))
    diff = transform(op, r) - r
    by_power = diff.coefficient_in("v")
    bad = sorted(k for k, t in by_power.items() if k != 1 and not t.is_zero())
    if bad:
        t = by_power[bad[0]]
        key, val = t.first_component()
        raise CheckFailure({"kind": "tensor-component", "what": f"{label}: v^{bad[0]} coefficient",
                            "component": list(key), "value": str(val)})
    lin = by_power.get(1, Tensor(2))
    c = proportionality(lin, target)
    if c is None or not c:
        key, val = lin.first_component() if not lin.is_zero() else (("-",), "0")
        raise CheckFailure({"kind": "tensor-component", "what": f"{label}: not proportional",
                            "component": list(key), "value": str(val)})
    zero = diff.subs({"v": 0})
    if not zero.is_zero():
        raise CheckFailure({"kind": "tensor-component", "what": f"{label}: nonzero at v = 0"})
    return {"constant": render_scalar(c)}


def check_similarity(cat=None) -> Report:
    """exp(v ad E13) moves r_DJ by v c r_j and r_DJR(eta) by v c' r_E'(eta)."""
    cat = cat or catalog()

    def body():
        d1 = _similarity(r_dj(), cat.get_rmatrix("j"), "r_DJ")
        target = cat.get_rmatrix("Etheta", {"theta": "eta"})
        d2 = _similarity(cat.get_rmatrix("DJR"), target, "r_DJR")
        return {"DJ_to_j": d1["constant"], "DJR_to_Etheta(eta)": d2["constant"]}

    return _run("similarity", {}, [], body)


# ------------------------------------------------------- reparametrization

def _carrier_brackets(tw: TwistDef, alpha, beta) -> dict:
    """Check the four-element carrier (H, A, B, E) has the L(alpha, beta) brackets."""
    H, A, B, E = tw.carrier
    expect = [((H, A), A * alpha, "[H, A]"), ((H, B), B * beta, "[H, B]"), ((H, E), E, "[H, E]"),
              ((A, B), E, "[A, B]"), ((A, E), LieElement(), "[A, E]"), ((B, E), LieElement(), "[B, E]")]
    for (x, y), want, label in expect:
        got = bracket(x, y)
        if got != want:
            raise CheckFailure({"kind": "bracket", "row": label, "computed": str(got), "expected": str(want)})
    return {"carrier": [str(x) for x in tw.carrier]}


def check_reparametrization(cat=None) -> Report:
    cat = cat or catalog()

    def body():
        lam = S("lambda")
        theta = (2 * lam - 1) / 3
        lhs = cat.get_rmatrix("Etheta", {"theta": theta})
        rhs = cat.get_rmatrix("Carrier")
        if lhs != rhs:
            key, val = (lhs - rhs).first_component()
            raise CheckFailure({"kind": "tensor-component", "component": list(key), "value": str(val)})
        if cat.get_rmatrix("Carrier", {"lambda": 0}) != cat.get_rmatrix("Pprime"):
            raise CheckFailure({"kind": "specialisation", "message": "lambda = 0 does not give r_P'"})
        if theta.subs({"lambda": S(1) / 2}):
            raise CheckFailure({"kind": "specialisation", "message": "lambda = 1/2 does not give theta = 0"})
        details = _carrier_brackets(cat.get_twist("PprimeRtilde"), lam, 1 - lam)
        details["theta"] = render_scalar(theta)
        return details

    return _run("reparametrization", {}, [], body)


def check_composite(reps=("fund", "fund"), cat=None) -> Report:
    """Product form of the composite twist equals its single closed form; carrier is L(lambda, 1 - lambda)."""
    reps = _pair(reps)
    cat = cat or catalog()

    def body():
        a = ux.eval_expr(cat.get_twist("PprimeRtilde").expr(), reps)
        b = ux.eval_expr(cat.get_twist("PprimeRtildeClosed").expr(), reps)
        _require_equal(a, b, "product form vs closed form")
        lam = S("lambda")
        details = _carrier_brackets(cat.get_twist("PprimeRtilde"), lam, 1 - lam)
        details["dims"] = a.n
        return details

    return _run("composite", {"twist": "PprimeRtilde"}, _names(reps), body)


# --------------------------------------------------------------- involution

def check_involution(reps=("fund", "fund"), cat=None) -> Report:
    reps = _pair(reps)
    cat = cat or catalog()

    def body():
        phi = involution()
        for i, a in enumerate(BASIS):
            for b in BASIS[i + 1:]:
                lhs = apply_linear_map(phi, bracket(LieElement.basis(a), LieElement.basis(b)))
                rhs = bracket(phi[a], phi[b])
                if lhs != rhs:
                    raise CheckFailure({"kind": "bracket", "row": f"[{a}, {b}]",
                                        "phi_of_bracket": str(lhs), "bracket_of_phi": str(rhs)})
        half = {"lambda": S(1) / 2}
        src = cat.get_twist("LEprime", half)
        dst = cat.get_twist("LE", half)
        imgs = [apply_linear_map(phi, x) for x in src.carrier]
        for x in imgs:
            if span_coordinates(x, dst.carrier) is None:
                raise CheckFailure({"kind": "carrier", "element": str(x), "message": "image outside L(1/2,1/2)"})
        for y in dst.carrier:
            if span_coordinates(y, imgs) is None:
                raise CheckFailure({"kind": "carrier", "element": str(y), "message": "not in the image"})
        Fp, Fe = src.expr(), dst.expr()
        Fe_m, Fe_i = ux.eval_expr(Fe, reps), _inv(Fe, reps)
        for a in SL3_BASIS:
            left = ux.mul(Fp, ux.coproduct0(ux.Gen(a)), ux.inverse_exp_product(Fp))
            lhs = ux.eval_expr(involution_expr(left), reps)
            phi_a = ux.lie_to_expr(apply_linear_map(phi, generator(a)))
            rhs = Fe_m @ ux.eval_expr(ux.coproduct0(phi_a), reps) @ Fe_i
            _require_equal(lhs, rhs, f"generator {a}")
        square = {}
        for a in BASIS:
            sq = apply_linear_map(phi, phi[a])
            c = proportionality_lie(sq, LieElement.basis(a))
            square[a] = str(c) if c is not None else str(sq)
        return {"phi_squared": square, "dims": Fe_m.n}

    return _run("involution", {}, _names(reps), body)


def proportionality_lie(x: LieElement, y: LieElement):
    coords = span_coordinates(x, [y])
    return coords[0] if coords is not None else None


# --------------------------------------------------------- xi identification

def check_xi_identification(reps=("fund", "fund"), candidates=("1/2", "1"), cat=None) -> Report:
    """Compare F_E(xi) with the extended twist at alpha = beta = 1/2 for candidate xi."""
    reps = _pair(reps)
    cat = cat or catalog()

    def body():
        target = ux.eval_expr(cat.get_twist("LE", {"lambda": S(1) / 2}).expr(), reps)
        found = {}
        for c in candidates:
            m = ux.eval_expr(cat.get_twist("Ecan", {"xi": c}).expr(), reps)
            found[c] = "match" if m == target else "differs"
        if "match" not in found.values():
            raise CheckFailure({"kind": "identification", "message": "no candidate xi matches", "candidates": found})
        return {"candidates": found}

    return _run("xi-identification", {}, _names(reps), body)


# ------------------------------------------------------------------ run_all

TWIST_ORDER = ("j", "Ecan", "LE", "LEprime", "Pprime", "Rtilde", "PprimeRtilde", "PprimeRtildeClosed", "R")
TABLE_ORDER = ("Pprime", "PprimeAbelian", "PprimeRtilde", "Ecan", "LE", "LEprime")
DUAL_ORDER = ("Pprime", "Etheta", "R", "DJR")
CYBE_ORDER = ("Pprime", "Etheta", "j", "Carrier")


def _only(params, declared):
    return {k: v for k, v in (params or {}).items() if k in declared} or None


def plan(params=None, reps=("fund",), cat=None) -> list[tuple[Callable, tuple, dict]]:
    """Ordered list of (function, args, kwargs) making up the full suite."""
    cat = cat or catalog()
    jobs: list[tuple[Callable, tuple, dict]] = []

    def add(fn, *args, **kw):
        jobs.append((fn, args, kw))

    three = [r for r in reps if r != "fund*dual"]
    pairs = [(r, "fund") if r == "fund*dual" else (r, r) for r in reps]
    for name in CYBE_ORDER:
        add(check_cybe, name, _only(params, cat.rmatrices[name].params))
    for name in DUAL_ORDER:
        add(check_dual_table, name, _only(params, cat.dual_tables[name].params))
    add(check_pencil)
    for r in three:
        for name in TWIST_ORDER:
            add(check_twist_equation, name, (r, r, r), _only(params, cat.twists[name].params))
    for name in TWIST_ORDER:
        add(check_normalization, name, _only(params, cat.twists[name].params))
    for p in pairs:
        add(check_closed_form_R, "Pprime", p)
        for name in TWIST_ORDER:
            add(check_triangular, name, p, _only(params, cat.twists[name].params))
    for r in three:
        for name in TWIST_ORDER:
            add(check_qybe, name, (r, r, r), _only(params, cat.twists[name].params))
    for p in pairs:
        for name in TABLE_ORDER:
            add(check_coproduct_table, name, p, _only(params, cat.tables[name].params))
    for r in three:
        for name, side in (("j", "left"), ("j", "right"), ("Ecan", "left"), ("Ecan", "right"), ("R", "left")):
            add(check_factorizable, name, side, (r, r, r), _only(params, cat.twists[name].params))
    for r in three:
        for name in ("j", "Pprime"):
            add(check_antipode, name, r)
    for p in pairs:
        add(check_composite, p)
    add(check_reparametrization)
    add(check_similarity)
    for p in pairs:
        add(check_involution, p)
        add(check_xi_identification, p)
    if cat is not catalog():
        jobs = [(fn, args, dict(kw, cat=cat)) for fn, args, kw in jobs]
    return jobs


def _call(job):
    fn, args, kw = job
    return fn(*args, **kw)


def run_all(params=None, reps=("fund",), jobs: int = 1, cat=None) -> list[Report]:
    """Run the suite; report order follows the plan regardless of completion order."""
    todo = plan(params, reps, cat)
    if jobs > 1 and cat is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_call, todo))
    return [_call(j) for j in todo]


CHECKS: dict[str, Callable] = {
    "twist-eq": check_twist_equation,
    "normalization": check_normalization,
    "factorizable": check_factorizable,
    "triangular": check_triangular,
    "qybe": check_qybe,
    "closed-form-R": check_closed_form_R,
    "coproduct-table": check_coproduct_table,
    "antipode": check_antipode,
    "dual-table": check_dual_table,
    "cybe": check_cybe,
    "pencil": check_pencil,
    "similarity": check_similarity,
    "reparametrization": check_reparametrization,
    "composite": check_composite,
    "involution": check_involution,
    "xi-identification": check_xi_identification,
}


# ---------------------------------------------------------------- rendering

def render_markdown(reports: Sequence[Report], timing: bool = False) -> str:
    passed = sum(r.ok for r in reports)
    lines = ["# twistlab verification report", "", f"{passed}/{len(reports)} checks passed.", ""]
    for r in reports:
        badge = {PASS: "PASS", FAIL: "FAIL", ERROR: "ERROR"}[r.status]
        lines.append(f"## [{badge}] {r.title()}")
        lines.append("")
        if timing:
            lines.append(f"- elapsed: {r.elapsed_ms} ms")
        for k, v in r.details.items():
            lines.append(f"- {k}: {_md(v)}")
        if r.witness:
            lines.append(f"- witness: {_md(r.witness)}")
        lines.append("")
    return "\n".join(lines)


def _md(v) -> str:
    if isinstance(v, dict):
        return "; ".join(f"{k}: {_md(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return ", ".join(_md(x) for x in v)
    return f"`{v}`" if isinstance(v, str) and v not in (PASS, FAIL) else str(v)
