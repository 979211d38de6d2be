"""Command-line driver.

Exit codes: 0 all requested checks pass, 1 some check fails, 2 usage error,
3 internal error (a check that could not be evaluated counts as internal).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import uexpr as ux
from . import verify as V
from .bialg import BialgError, cybe, dual_brackets, pencil_solve
from .liealg import render_vector
from .matrix import MatrixError
from .reps import RepresentationError, rep_by_name
from .scalars import ScalarError, parse_binding, render_scalar
from .twistcat import Catalog, CatalogError, catalog

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    command: str
    check: str | None = None
    twist: str | None = None
    table: str | None = None
    r: str | None = None
    side: str = "left"
    params: dict = field(default_factory=dict)
    reps: list[str] = field(default_factory=list)
    fmt: str = "text"
    out: str | None = None
    verbose: int = 0
    jobs: int = 1
    fund_dual: bool = False
    corrected: bool = False
    timing: bool = False
    solve: bool = False
    expr: str | None = None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistlab", description="exact verification of twists and r-matrices for sl(3)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt=("text", "json", "md"), default="text"):
        sp.add_argument("--param", action="append", default=[], metavar="k=v",
                        help="bind a parameter (scalar expression)")
        sp.add_argument("--format", dest="fmt", choices=fmt, default=default)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("-v", "--verbose", action="count", default=0)

    sp = sub.add_parser("list", help="list catalog entries")
    common(sp)

    sp = sub.add_parser("verify", help="run one check, or 'all'")
    sp.add_argument("check", choices=sorted(V.CHECKS) + ["all"])
    sp.add_argument("--twist")
    sp.add_argument("--table")
    sp.add_argument("--r")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.add_argument("--reps", help="comma-separated representations (per leg, or the set for 'all')")
    sp.add_argument("--fund-dual", action="store_true", help="add the 9-dimensional fund*dual to 'all'")
    sp.add_argument("--corrected", action="store_true", help="use corrected forms of flagged table rows")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include a separate timing field")
    common(sp, default="md")

    sp = sub.add_parser("dual", help="dual Lie algebra of a catalog r-matrix")
    sp.add_argument("--r", required=True)
    common(sp)

    sp = sub.add_parser("cybe", help="classical Yang-Baxter tensor of a catalog r-matrix")
    sp.add_argument("--r", required=True)
    common(sp)

    sp = sub.add_parser("pencil", help="compatibility of the DJR and E' dual brackets")
    sp.add_argument("--solve", action="store_true", help="print the reduced constraints")
    common(sp)

    sp = sub.add_parser("eval", help="evaluate an expression in representations")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--reps", default="fund")
    common(sp)
    return p


def parse_config(argv: Sequence[str]) -> CliConfig:
    ns = build_parser().parse_args(list(argv))
    params = {}
    for text in ns.param:
        try:
            k, v = parse_binding(text)
        except ScalarError as exc:
            raise UsageError(f"bad --param {text!r}: {exc}") from None
        params[k] = v
    reps = [r.strip() for r in (getattr(ns, "reps", None) or "").split(",") if r.strip()]
    for r in reps:
        try:
            rep_by_name(r)
        except RepresentationError as exc:
            raise UsageError(str(exc)) from None
    return CliConfig(command=ns.command, check=getattr(ns, "check", None), twist=getattr(ns, "twist", None),
                     table=getattr(ns, "table", None), r=getattr(ns, "r", None),
                     side=getattr(ns, "side", "left"), params=params, reps=reps, fmt=ns.fmt, out=ns.out,
                     verbose=ns.verbose, jobs=getattr(ns, "jobs", 1),
                     fund_dual=getattr(ns, "fund_dual", False), corrected=getattr(ns, "corrected", False),
                     timing=getattr(ns, "timing", False), solve=getattr(ns, "solve", False),
                     expr=getattr(ns, "expr", None))


# -------------------------------------------------------------------- output

def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from None


def emit_report(reports: Sequence[V.Report], fmt: str, path: str | None, timing: bool = False):
    if not reports:
        raise ValueError("no reports to emit")
    if fmt == "json":
        doc = {"summary": _summary(reports), "reports": [r.to_json(timing=False) for r in reports]}
        if timing:
            doc["timing"] = {"elapsed_ms": [r.elapsed_ms for r in reports]}
        text = _dump_json(doc)
    elif fmt == "md":
        text = V.render_markdown(reports, timing=timing)
    else:
        text = "".join(f"{r.status.upper():5} {r.title()}\n" + (f"      witness: {r.witness}\n" if r.witness else "")
                       for r in reports)
    emit(text, path)


def _summary(reports) -> dict:
    out = {V.PASS: 0, V.FAIL: 0, V.ERROR: 0}
    for r in reports:
        out[r.status] += 1
    return out


def exit_code(reports) -> int:
    if any(r.status == V.ERROR for r in reports):
        return EXIT_INTERNAL
    if any(r.status == V.FAIL for r in reports):
        return EXIT_FAIL
    return EXIT_OK


# ------------------------------------------------------------------ commands

def _require(value, flag, check):
    if not value:
        raise UsageError(f"verify {check} needs {flag}")
    return value


def _declared(cat: Catalog, kind: str, name: str, params: dict) -> dict | None:
    store = getattr(cat, kind)
    if name not in store:
        raise UsageError(f"unknown {kind[:-1]} {name!r}; available: {', '.join(store)}")
    bad = [k for k in params if k not in store[name].params]
    if bad:
        raise UsageError(f"{name} has no parameter {bad[0]!r}; parameters: {', '.join(store[name].params) or 'none'}")
    return params or None


def run_verify(cfg: CliConfig, cat: Catalog) -> list[V.Report]:
    c = cfg.check
    use = cat if cat is not catalog() else None
    if c == "all":
        reps = cfg.reps or ["fund", "dual"]
        if cfg.fund_dual and "fund*dual" not in reps:
            reps = reps + ["fund*dual"]
        return V.run_all(cfg.params or None, tuple(reps), jobs=cfg.jobs, cat=use)
    kw = {"cat": use}
    reps = tuple(cfg.reps) if cfg.reps else None
    if c in ("twist-eq", "normalization", "factorizable", "triangular", "qybe", "antipode"):
        name = _require(cfg.twist, "--twist", c)
        p = _declared(cat, "twists", name, cfg.params)
        if c == "normalization":
            return [V.check_normalization(name, p, **kw)]
        if c == "antipode":
            return [V.check_antipode(name, (reps or ("fund",))[0], p, **kw)]
        if c == "factorizable":
            return [V.check_factorizable(name, cfg.side, reps or ("fund",), p, **kw)]
        fn = {"twist-eq": V.check_twist_equation, "triangular": V.check_triangular, "qybe": V.check_qybe}[c]
        return [fn(name, reps or ("fund",), p, **kw)]
    if c == "closed-form-R":
        name = cfg.twist or "Pprime"
        return [V.check_closed_form_R(name, reps or ("fund",), **kw)]
    if c == "coproduct-table":
        name = _require(cfg.table, "--table", c)
        p = _declared(cat, "tables", name, cfg.params)
        return [V.check_coproduct_table(name, reps or ("fund",), p, corrected=cfg.corrected, **kw)]
    if c == "dual-table":
        name = _require(cfg.table or cfg.r, "--table", c)
        p = _declared(cat, "dual_tables", name, cfg.params)
        return [V.check_dual_table(name, p, **kw)]
    if c == "cybe":
        name = _require(cfg.r, "--r", c)
        return [V.check_cybe(name, _declared(cat, "rmatrices", name, cfg.params), **kw)]
    if c == "pencil":
        return [V.check_pencil(cfg.params or None, **kw)]
    if c in ("similarity", "reparametrization"):
        return [V.CHECKS[c](**kw)]
    return [V.CHECKS[c](reps or ("fund",), **kw)]


def cmd_list(cfg: CliConfig, cat: Catalog) -> int:
    rows = cat.listing()
    if cfg.fmt == "json":
        emit(_dump_json(rows), cfg.out)
    elif cfg.fmt == "md":
        lines = ["| kind | signature | tag | description |", "|---|---|---|---|"]
        lines += [f"| {r['kind']} | {r['signature']} | {r['tag']} | {r['description']} |" for r in rows]
        emit("\n".join(lines) + "\n", cfg.out)
    else:
        w = max(len(r["signature"]) for r in rows)
        emit("".join(f"{r['kind']:<9} {r['signature']:<{w}}  [{r['tag']}]  {r['description']}\n" for r in rows),
             cfg.out)
    return EXIT_OK


def cmd_dual(cfg: CliConfig, cat: Catalog) -> int:
    p = _declared(cat, "rmatrices", cfg.r, cfg.params)
    table = dual_brackets(cat.get_rmatrix(cfg.r, p), V.normalization_constant(cat))
    if cfg.fmt == "json":
        emit(_dump_json(table.to_json()), cfg.out)
    elif cfg.fmt == "md":
        lines = ["| bracket | value |", "|---|---|"]
        lines += [f"| [{a}, {b}] | {render_vector(v, table.basis)} |" for (a, b), v in table.rows()]
        emit("\n".join(lines) + "\n", cfg.out)
    else:
        emit("\n".join(table.render_rows()) + "\n", cfg.out)
    return EXIT_OK


def cmd_cybe(cfg: CliConfig, cat: Catalog) -> int:
    p = _declared(cat, "rmatrices", cfg.r, cfg.params)
    t = cybe(cat.get_rmatrix(cfg.r, p))
    if cfg.fmt == "json":
        emit(_dump_json({"r": cfg.r, "zero": t.is_zero(), "tensor": t.to_json()}), cfg.out)
    else:
        emit(("[[r, r]] = 0\n" if t.is_zero() else f"[[r, r]] = {t}\n"), cfg.out)
    return EXIT_OK if t.is_zero() else EXIT_FAIL


def cmd_pencil(cfg: CliConfig, cat: Catalog) -> int:
    if cfg.solve:
        bad = [k for k in cfg.params if k not in ("eta", "theta")]
        if bad:
            raise UsageError(f"pencil has no parameter {bad[0]!r}; parameters: eta, theta")
        b1, b2 = V.pencil_tables(cat, cfg.params or None)
        res = pencil_solve(b1, b2)
        lines = res.render() or ["compatible: no constraint"]
        if cfg.fmt == "json":
            emit(_dump_json({"constraints": res.render(), "compatible": res.compatible()}), cfg.out)
        else:
            emit("\n".join(lines) + "\n", cfg.out)
        return EXIT_OK
    reports = [V.check_pencil(cfg.params or None, cat=cat if cat is not catalog() else None)]
    emit_report(reports, cfg.fmt, cfg.out)
    return exit_code(reports)


def cmd_eval(cfg: CliConfig, cat: Catalog) -> int:
    try:
        e = ux.parse(cfg.expr)
    except ux.ExprParseError as exc:
        raise UsageError(str(exc)) from None
    e = ux.substitute_params(e, cfg.params)
    reps = [rep_by_name(r) for r in (cfg.reps or ["fund"])]
    if e.legs is not None and len(reps) == 1 and e.legs > 1:
        reps = reps * e.legs
    m = ux.eval_expr(e, reps)
    if cfg.fmt == "json":
        emit(_dump_json({"expr": ux.render(e), "reps": [r.name for r in reps], "matrix": m.to_json()}), cfg.out)
    else:
        emit(f"{ux.render(e)}  in  {' (x) '.join(r.name for r in reps)}\n{m}\n", cfg.out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None, cat: Catalog | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    cat = cat or catalog()
    try:
        cfg = parse_config(argv)
        if cfg.command == "list":
            return cmd_list(cfg, cat)
        if cfg.command == "verify":
            reports = run_verify(cfg, cat)
            emit_report(reports, cfg.fmt, cfg.out, cfg.timing)
            return exit_code(reports)
        if cfg.command == "dual":
            return cmd_dual(cfg, cat)
        if cfg.command == "cybe":
            return cmd_cybe(cfg, cat)
        if cfg.command == "pencil":
            return cmd_pencil(cfg, cat)
        return cmd_eval(cfg, cat)
    except UsageError as exc:
        print(f"twistlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatalogError as exc:
        print(f"twistlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ux.ExprError, MatrixError, BialgError, ScalarError, OSError) as exc:
        print(f"twistlab: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - last resort
        print(f"twistlab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
