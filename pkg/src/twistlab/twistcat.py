"""Catalog of named twists, r-matrices, coproduct tables, printed dual tables and maps.

Everything is written down as text in the expression grammar and parsed on
demand, so the catalog reads like the formulas it encodes.  Printed tables
are stored verbatim, including rows later found to disagree with the
computation; such rows carry an erratum note and (where known) a corrected
form, but the printed form stays the default.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from .bialg import Tensor, r_dj, wedge
from .liealg import BASIS, BracketTable, LieElement, bracket, generator
from .scalars import S, Scalar
from . import uexpr as ux

X_BASIS: tuple[str, ...] = tuple("X" + b[1:] for b in BASIS)


class CatalogError(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


def _bindings(params: Mapping[str, object] | None) -> dict[str, Scalar]:
    return {k: S(v) for k, v in (params or {}).items()}


def _specialise_defaults(defaults: Mapping[str, str], bindings: Mapping[str, Scalar]) -> dict[str, Scalar]:
    """Resolve derived parameters (alpha = lambda, ...) and then apply user bindings."""
    out = {k: S(v).subs(bindings) for k, v in defaults.items()}
    out.update({k: v for k, v in bindings.items() if k not in defaults})
    return out


# ------------------------------------------------------------------- twists

@dataclass
class TwistDef:
    name: str
    params: tuple[str, ...]
    factors_text: tuple[str, ...]
    carrier_text: tuple[str, ...]
    description: str
    tag: str
    base: str | None = None
    symbols: Mapping[str, str] = field(default_factory=dict)
    derived: Mapping[str, str] = field(default_factory=dict)
    bindings: Mapping[str, Scalar] = field(default_factory=dict)

    def _symbols(self) -> dict[str, ux.Node]:
        return {k: ux.parse(v) for k, v in self.symbols.items()}

    def _subs(self) -> dict[str, Scalar]:
        return _specialise_defaults(self.derived, self.bindings)

    @property
    def factors(self) -> list[ux.Node]:
        syms = self._symbols()
        subs = self._subs()
        return [ux.substitute_params(ux.parse(t, syms), subs) for t in self.factors_text]

    def expr(self) -> ux.Node:
        return ux.mul(*self.factors)

    def inverse_expr(self) -> ux.Node:
        return ux.inverse_exp_product(self.expr())

    @property
    def carrier(self) -> list[LieElement]:
        subs = self._subs()
        out = []
        for t in self.carrier_text:
            e = ux.substitute_params(ux.parse(t, self._symbols()), subs)
            out.append(expr_to_lie(e))
        return out

    def specialise(self, params: Mapping[str, object] | None) -> "TwistDef":
        b = dict(self.bindings)
        b.update(_bindings(params))
        return replace(self, bindings=b)

    def free_parameters(self) -> list[str]:
        found = set()
        for f in self.factors:
            found.update(ux.parameters(f))
        return sorted(found)

    def signature(self) -> str:
        return f"{self.name}({', '.join(self.params)})" if self.params else self.name


def expr_to_lie(e: ux.Node) -> LieElement:
    """A linear one-leg expression as a Lie element."""
    if isinstance(e, ux.Gen):
        return generator(e.name)
    if isinstance(e, ux.Const) and not e.value:
        return LieElement()
    if isinstance(e, ux.Add):
        out = LieElement()
        for t in e.terms:
            out = out + expr_to_lie(t)
        return out
    if isinstance(e, ux.Mul) and len(e.factors) == 2 and isinstance(e.factors[0], ux.Const):
        return e.factors[0].value * expr_to_lie(e.factors[1])
    raise CatalogError(f"{ux.render(e)} is not a linear combination of generators")


# ----------------------------------------------------------- coproduct tables

@dataclass
class TableRow:
    key: str
    text: str
    erratum: str | None = None
    corrected: str | None = None


@dataclass
class CoproductTable:
    name: str
    twist: str
    params: tuple[str, ...]
    rows_spec: tuple[TableRow, ...]
    description: str
    tag: str
    symbols: Mapping[str, str] = field(default_factory=dict)
    derived: Mapping[str, str] = field(default_factory=dict)
    bindings: Mapping[str, Scalar] = field(default_factory=dict)

    def _symbols(self):
        return {k: ux.parse(v) for k, v in self.symbols.items()}

    def generator_expr(self, key: str) -> ux.Node:
        subs = _specialise_defaults(self.derived, self.bindings)
        return ux.substitute_params(ux.parse(key, self._symbols()), subs)

    def row_expr(self, row: TableRow, corrected: bool = False) -> ux.Node:
        subs = _specialise_defaults(self.derived, self.bindings)
        text = row.corrected if corrected and row.corrected else row.text
        return ux.substitute_params(ux.parse(text, self._symbols()), subs)

    @property
    def rows(self) -> dict[str, ux.Node]:
        return {r.key: self.row_expr(r) for r in self.rows_spec}

    def specialise(self, params) -> "CoproductTable":
        b = dict(self.bindings)
        b.update(_bindings(params))
        return replace(self, bindings=b)


# -------------------------------------------------------------- dual tables

@dataclass
class DualTable:
    name: str
    rmatrix: str
    params: tuple[str, ...]
    rows_text: tuple[tuple[str, str, str], ...]
    description: str
    tag: str
    suspect: Mapping[tuple[str, str], str] = field(default_factory=dict)
    bindings: Mapping[str, Scalar] = field(default_factory=dict)

    def table(self) -> BracketTable:
        t = BracketTable(X_BASIS)
        for a, b, val in self.rows_text:
            vec = parse_dual_value(val)
            vec = {k: v.subs(self.bindings) for k, v in vec.items()}
            t.set(a, b, vec)
        return t

    def rows(self) -> list[tuple[str, str, dict[str, Scalar]]]:
        out = []
        for a, b, val in self.rows_text:
            vec = {k: v.subs(self.bindings) for k, v in parse_dual_value(val).items()}
            out.append((a, b, vec))
        return out

    def specialise(self, params) -> "DualTable":
        b = dict(self.bindings)
        b.update(_bindings(params))
        return replace(self, bindings=b)


def parse_dual_value(text: str) -> dict[str, Scalar]:
    """Parse ``-1/3*(X11 - X33)`` style right-hand sides into {X_ij: Scalar}."""
    syms = {x: ux.Gen("E" + x[1:]) for x in X_BASIS}
    e = ux.parse(text, syms)
    lie = expr_to_lie(e)
    return {"X" + k[1:]: v for k, v in lie.items()}


# ---------------------------------------------------------------- r-matrices

@dataclass
class RMatrixDef:
    name: str
    params: tuple[str, ...]
    build: Callable[[], Tensor]
    description: str
    tag: str
    bindings: Mapping[str, Scalar] = field(default_factory=dict)

    def tensor(self) -> Tensor:
        t = self.build()
        return t.subs(self.bindings) if self.bindings else t

    def specialise(self, params) -> "RMatrixDef":
        b = dict(self.bindings)
        b.update(_bindings(params))
        return replace(self, bindings=b)


def _g(name):
    return generator(name)


def r_pprime() -> Tensor:
    return wedge("E23", "E12") + wedge("E13", _g("E11") + _g("E22") - 2 * _g("E33")).scale(S(1) / 3)


def r_etheta() -> Tensor:
    th = S("theta")
    return (wedge("E23", "E12") + wedge("E13", "H13").scale(S(1) / 2)
            + wedge("E13", _g("H12") - _g("H23")).scale(th / 2))


def r_jordanian() -> Tensor:
    return wedge("H13", "E13") + wedge("E12", "E23").scale(2)


def r_reshetikhin() -> Tensor:
    return wedge("H23", "H12")


def r_djr() -> Tensor:
    return r_dj() + r_reshetikhin().scale(S("eta"))


def r_carrier_wedge() -> Tensor:
    """E23 ^ E12 + E13 ^ (H + lambda K): the wedge form built on the composite carrier."""
    return wedge("E23", "E12") + wedge("E13", _g("H") + S("lambda") * _g("K"))


# ------------------------------------------------------------------ catalog

class Catalog:
    """Immutable-by-convention registry; ``override`` returns a patched copy (used by fixtures)."""

    def __init__(self, twists=None, rmatrices=None, tables=None, dual_tables=None, closed_forms=None):
        self.twists: dict[str, TwistDef] = dict(twists or {})
        self.rmatrices: dict[str, RMatrixDef] = dict(rmatrices or {})
        self.tables: dict[str, CoproductTable] = dict(tables or {})
        self.dual_tables: dict[str, DualTable] = dict(dual_tables or {})
        self.closed_forms: dict[str, tuple[str, str]] = dict(closed_forms or {})

    def _get(self, kind: str, store: dict, name: str):
        try:
            return store[name]
        except KeyError:
            raise CatalogError(f"unknown {kind} {name!r}; available: {', '.join(store)}") from None

    def get_twist(self, name: str, params=None) -> TwistDef:
        tw = self._get("twist", self.twists, name)
        _check_params(tw.name, tw.params, params)
        return tw.specialise(params)

    def get_rmatrix(self, name: str, params=None) -> Tensor:
        return self.rmatrix_def(name, params).tensor()

    def rmatrix_def(self, name: str, params=None) -> RMatrixDef:
        r = self._get("r-matrix", self.rmatrices, name)
        _check_params(r.name, r.params, params)
        return r.specialise(params)

    def get_table(self, name: str, params=None) -> CoproductTable:
        t = self._get("coproduct table", self.tables, name)
        _check_params(t.name, t.params, params)
        return t.specialise(params)

    def get_dual_table(self, name: str, params=None) -> BracketTable:
        return self.dual_table_def(name, params).table()

    def dual_table_def(self, name: str, params=None) -> DualTable:
        t = self._get("dual table", self.dual_tables, name)
        _check_params(t.name, t.params, params)
        return t.specialise(params)

    def closed_form_R(self, name: str) -> ux.Node:
        if name not in self.closed_forms:
            raise CatalogError(f"no closed-form R recorded for {name!r}; available: {', '.join(self.closed_forms)}")
        return ux.parse(self.closed_forms[name][0])

    def override(self, kind: str, name: str, entry) -> "Catalog":
        store = dict(getattr(self, kind))
        store[name] = entry
        new = Catalog(self.twists, self.rmatrices, self.tables, self.dual_tables, self.closed_forms)
        setattr(new, kind, store)
        return new

    def listing(self) -> list[dict]:
        out = []
        for kind, store in (("twist", self.twists), ("rmatrix", self.rmatrices),
                            ("table", self.tables), ("dual", self.dual_tables)):
            for name, entry in store.items():
                sig = f"{name}({', '.join(entry.params)})" if entry.params else name
                out.append({"kind": kind, "name": name, "signature": sig,
                            "tag": entry.tag, "description": entry.description})
        for name, (_, tag) in self.closed_forms.items():
            out.append({"kind": "closed-R", "name": name, "signature": name, "tag": tag,
                        "description": "printed universal R-matrix"})
        return out


def _check_params(name, declared, params):
    for k in (params or {}):
        if k not in declared:
            raise CatalogError(f"{name} has no parameter {k!r}; parameters: {', '.join(declared) or 'none'}")


# abstract carrier generators of L(alpha, beta) inside sl(3)
_L_SYMBOLS = {"H": "H + alpha*K", "A": "E12", "B": "E23", "E": "E13"}
_L_DERIVED = {"alpha": "lambda", "beta": "1 - lambda"}


def _twists() -> dict[str, TwistDef]:
    t = [
        TwistDef("j", (), ("exp(H (x) sigma)",), ("H", "E13"),
                 "jordanian twist on the Borel algebra [H, E13] = E13", "og-twist"),
        TwistDef("Ecan", ("xi",),
                 ("exp(2*xi*E12 (x) E23*exp(-sigma_tilde))", "exp(H13 (x) sigma_tilde)"),
                 ("H13", "E12", "E23", "E13"),
                 "canonical extended twist at N = 3", "twist-sl(N)"),
        TwistDef("LE", ("lambda",), ("exp(A (x) B*exp(-beta*sigma))", "exp(H (x) sigma)"),
                 ("H", "A", "B", "E"),
                 "extended twist Phi_E Phi_j on L(alpha, beta), alpha = lambda, beta = 1 - lambda",
                 "t-ext", symbols=_L_SYMBOLS, derived=_L_DERIVED),
        TwistDef("LEprime", ("lambda",), ("exp(-B (x) A*exp(-alpha*sigma))", "exp(H (x) sigma)"),
                 ("H", "A", "B", "E"),
                 "extended twist Phi_E' Phi_j on L(alpha, beta), alpha = lambda, beta = 1 - lambda",
                 "t-ext-s", symbols=_L_SYMBOLS, derived=_L_DERIVED),
        TwistDef("Pprime", (), ("exp(-E23 (x) E12)", "exp(H (x) sigma)"), ("H", "E12", "E23", "E13"),
                 "peripheric twist on L(0, 1)", "F_P'"),
        TwistDef("Rtilde", ("lambda",), ("exp(lambda*K (x) sigma)",), ("K", "E13"),
                 "Reshetikhin twist applied after Pprime", "F_Rtilde", base="Pprime"),
        TwistDef("PprimeRtilde", ("lambda",),
                 ("exp(lambda*K (x) sigma)", "exp(-E23 (x) E12)", "exp(H (x) sigma)"),
                 ("H + lambda*K", "E12", "E23", "E13"),
                 "composite twist Rtilde(lambda) Pprime", "twistpr"),
        TwistDef("PprimeRtildeClosed", ("lambda",),
                 ("exp(-E23 (x) E12*exp(-lambda*sigma))", "exp((H + lambda*K) (x) sigma)"),
                 ("H + lambda*K", "E12", "E23", "E13"),
                 "single closed form of the composite twist", "twistpr"),
        TwistDef("R", ("eta",), ("exp(eta*H23 (x) H12 - eta*H12 (x) H23)",), ("H12", "H23"),
                 "Reshetikhin twist exp(eta H23 ^ H12)", "F_R"),
    ]
    return {x.name: x for x in t}


def _rmatrices() -> dict[str, RMatrixDef]:
    r = [
        RMatrixDef("Pprime", (), r_pprime, "E23 ^ E12 + 1/3 E13 ^ (E11 + E22 - 2 E33)", "rmat"),
        RMatrixDef("Etheta", ("theta",), r_etheta, "extended family r_E'(theta)", "est-rmat"),
        RMatrixDef("j", (), r_jordanian, "H13 ^ E13 + 2 E12 ^ E23", "r_j"),
        RMatrixDef("DJ", (), r_dj, "Drinfeld-Jimbo r-matrix (Cartan Casimir + 2 sum E_ji (x) E_ij)", "r_DJ"),
        RMatrixDef("R", (), r_reshetikhin, "H23 ^ H12", "r_R"),
        RMatrixDef("DJR", ("eta",), r_djr, "r_DJ + eta H23 ^ H12", "r_DJR"),
        RMatrixDef("Carrier", ("lambda",), r_carrier_wedge, "E23 ^ E12 + E13 ^ (H + lambda K)", "twistpr"),
    ]
    return {x.name: x for x in r}


def _tables() -> dict[str, CoproductTable]:
    pprime = (
        TableRow("H12", "H12 (x) 1 + 1 (x) H12 + H (x) (exp(-sigma) - 1) + E23 (x) E12*exp(-sigma)"),
        TableRow("H13", "H13 (x) 1 + 1 (x) H13 + 2*H (x) (exp(-sigma) - 1) + 2*E23 (x) E12*exp(-sigma)"),
        TableRow("E12", "E12 (x) 1 + exp(sigma) (x) E12"),
        TableRow("E13", "E13 (x) exp(sigma) + 1 (x) E13"),
        TableRow("E21", "E21 (x) 1 + 1 (x) E21 - H (x) E23*exp(-sigma) - E23 (x) H12"
                        " - E23 (x) E12*E23*exp(-sigma) + H*E23 (x) (1 - exp(-sigma))"
                        " - E23^2 (x) E12*exp(-sigma)"),
        TableRow("E23", "E23 (x) 1 + 1 (x) E23"),
        TableRow("E31", "E31 (x) exp(-sigma) + 1 (x) E31 + H (x) H13"
                        " + (1 - H)*H (x) (exp(-sigma) - exp(-2*sigma))"
                        " + (1 - H)*E23 (x) E12*(exp(-sigma) - 2*exp(-2*sigma))"
                        " - E21 (x) E12*exp(-sigma) + E23 (x) E32 + E23 (x) H13*E12*exp(-sigma)"
                        " + E23^2 (x) E12^2*exp(-2*sigma)",
                 erratum="the term H (x) H13 should read H (x) H13*exp(-sigma); the printed row exceeds "
                         "the twisted coproduct by H (x) H13*(1 - exp(-sigma))",
                 corrected="E31 (x) exp(-sigma) + 1 (x) E31 + H (x) H13*exp(-sigma)"
                           " + (1 - H)*H (x) (exp(-sigma) - exp(-2*sigma))"
                           " + (1 - H)*E23 (x) E12*(exp(-sigma) - 2*exp(-2*sigma))"
                           " - E21 (x) E12*exp(-sigma) + E23 (x) E32 + E23 (x) H13*E12*exp(-sigma)"
                           " + E23^2 (x) E12^2*exp(-2*sigma)"),
        TableRow("E32", "E32 (x) exp(-sigma) + 1 (x) E32 + (H - H23) (x) E12*exp(-sigma)"),
    )
    pprime_abelian = (
        TableRow("K", "K (x) 1 + 1 (x) K"),
        TableRow("sigma", "sigma (x) 1 + 1 (x) sigma"),
    )
    L = "(lambda*K + H)"
    ug = (
        TableRow("H12", f"H12 (x) 1 + 1 (x) H12 + {L} (x) (exp(-sigma) - 1)"
                        " + E23 (x) E12*exp(-(lambda + 1)*sigma)"),
        TableRow("H13", f"(H13 - 2*{L}) (x) 1 + 2*{L} (x) exp(-sigma) + 1 (x) H13"
                        " + 2*E23 (x) E12*exp(-(lambda + 1)*sigma)"),
        TableRow("E12", "E12 (x) exp(lambda*sigma) + exp(sigma) (x) E12"),
        TableRow("E13", "E13 (x) exp(sigma) + 1 (x) E13"),
        TableRow("E21", f"E21 (x) exp(-lambda*sigma) + 1 (x) E21 - E23 (x) H12*exp(-lambda*sigma)"
                        f" - {L} (x) E23*exp(-sigma)"
                        f" + {L}*E23 (x) (exp(-lambda*sigma) - exp(-(lambda + 1)*sigma))"
                        " - E23^2 (x) E12*exp(-(2*lambda + 1)*sigma)"
                        " - E23 (x) E12*E23*exp(-(lambda + 1)*sigma)"),
        TableRow("E23", "E23 (x) exp(-lambda*sigma) + 1 (x) E23"),
        TableRow("E31", f"E31 (x) exp(-sigma) + 1 (x) E31 + {L} (x) H13*exp(-sigma)"
                        " + E23 (x) E32*exp(-lambda*sigma)"
                        f" + (1 - lambda*K - H)*{L} (x) (exp(-sigma) - exp(-2*sigma))"
                        " - E21 (x) E12*exp(-(lambda + 1)*sigma)"
                        " + (1 - lambda*K - H)*E23 (x) E12*exp(-lambda*sigma)*(exp(-sigma) - 2*exp(-2*sigma))"
                        " + E23 (x) H13*E12*exp(-(lambda + 1)*sigma)"
                        " + E23^2 (x) E12^2*exp(-2*(lambda + 1)*sigma)"),
        TableRow("E32", "E32 (x) exp((lambda - 1)*sigma) + 1 (x) E32 + (lambda + 1)*K (x) E12*exp(-sigma)"),
    )
    st = "sigma_tilde"
    ue = (
        TableRow("H23", f"H23 (x) 1 + 1 (x) H23 + 1/2*H13 (x) (exp(-2*{st}) - 1)"
                        f" - 2*xi*E12 (x) E23*exp(-3*{st})"),
        TableRow("H13", f"H13 (x) exp(-2*{st}) + 1 (x) H13 - 4*xi*E12 (x) E23*exp(-3*{st})"),
        TableRow("E23", f"E23 (x) exp({st}) + exp(2*{st}) (x) E23"),
        TableRow("E13", f"E13 (x) exp(2*{st}) + 1 (x) E13"),
        TableRow("E32", f"E32 (x) exp(-{st}) + 1 (x) E32 + 2*xi*E12 (x) H23*exp(-{st})"
                        f" + xi*H13 (x) E12*exp(-2*{st})"
                        f" - xi*H13*E12 (x) (exp(-{st}) - exp(-3*{st}))"
                        f" - 4*xi^2*E12^2 (x) E23*exp(-4*{st})"
                        f" - 4*xi^2*E12 (x) E23*E12*exp(-3*{st})"),
        TableRow("E12", f"E12 (x) exp(-{st}) + 1 (x) E12"),
        TableRow("E31", f"E31 (x) exp(-2*{st}) + 1 (x) E31 + xi*H13 (x) H13*exp(-2*{st})"
                        f" + xi*(1 - 1/2*H13)*H13 (x) (exp(-2*{st}) - exp(-4*{st}))"
                        f" - 2*xi*E32 (x) E23*exp(-3*{st})"
                        f" + 2*xi*E12 (x) E21*exp(-{st})"
                        f" - 4*xi^2*(1 - 1/2*H13)*E12 (x) E23*exp(-{st})*(exp(-2*{st}) - 2*exp(-4*{st}))"
                        f" - 4*xi^2*E12 (x) H13*E23*exp(-3*{st})"
                        f" + 8*xi^3*E12^2 (x) E23^2*exp(-6*{st})"),
        TableRow("E21", f"E21 (x) exp(-{st}) + 1 (x) E21 + xi*(H12 - H23) (x) E23*exp(-2*{st})"),
    )
    le = (
        TableRow("H", "H (x) exp(-sigma) + 1 (x) H - A (x) B*exp(-(beta + 1)*sigma)"),
        TableRow("A", "A (x) exp(-beta*sigma) + 1 (x) A"),
        TableRow("B", "B (x) exp(beta*sigma) + exp(sigma) (x) B"),
        TableRow("E", "E (x) exp(sigma) + 1 (x) E"),
    )
    lep = (
        TableRow("H", "H (x) exp(-sigma) + 1 (x) H + B (x) A*exp(-(alpha + 1)*sigma)"),
        TableRow("A", "A (x) exp(alpha*sigma) + exp(sigma) (x) A"),
        TableRow("B", "B (x) exp(-alpha*sigma) + 1 (x) B"),
        TableRow("E", "E (x) exp(sigma) + 1 (x) E"),
    )
    t = [
        CoproductTable("Pprime", "Pprime", (), pprime, "coproducts twisted by Pprime", "up-co-m"),
        CoproductTable("PprimeAbelian", "Pprime", (), pprime_abelian,
                       "primitive K and sigma after the Pprime twist", "Delta_P'(K)"),
        CoproductTable("PprimeRtilde", "PprimeRtilde", ("lambda",), ug,
                       "coproducts twisted by Rtilde(lambda) Pprime", "ug-co-m"),
        CoproductTable("Ecan", "Ecan", ("xi",), ue, "canonical extended twisted coproducts", "ue-co-m"),
        CoproductTable("LE", "LE", ("lambda",), le, "co-structure of L_E(alpha, beta)", "e-costr",
                       symbols=_L_SYMBOLS, derived=_L_DERIVED),
        CoproductTable("LEprime", "LEprime", ("lambda",), lep, "co-structure of L_E'(alpha, beta)",
                       "e-pr-costr", symbols=_L_SYMBOLS, derived=_L_DERIVED),
    ]
    return {x.name: x for x in t}


def _dual_tables() -> dict[str, DualTable]:
    p = (
        ("X11", "X13", "-1/3*(X11 - X33)"), ("X12", "X23", "-(X11 - X33)"),
        ("X22", "X13", "-1/3*(X11 - X33)"), ("X12", "X13", "-X12"),
        ("X33", "X13", "2/3*(X11 - X33)"), ("X12", "X21", "X31"),
        ("X11", "X23", "2/3*X21"), ("X13", "X31", "X31"),
        ("X22", "X23", "-4/3*X21"), ("X23", "X32", "X31"),
        ("X33", "X23", "2/3*X21"), ("X13", "X32", "X32"),
        ("X11", "X33", "1/3*X31"), ("X22", "X33", "-1/3*X31"),
        ("X11", "X12", "1/3*X32"), ("X12", "X33", "-1/3*X32"),
        ("X11", "X22", "-1/3*X31"), ("X12", "X22", "2/3*X32"),
    )
    es = (
        ("X11", "X12", "1/2*(1 + theta)*X32"), ("X11", "X22", "theta*X31"),
        ("X11", "X23", "1/2*(1 - theta)*X21"), ("X11", "X13", "-1/2*(theta + 1)*(X11 - X33)"),
        ("X11", "X33", "-theta*X31"), ("X12", "X13", "1/2*(3*theta - 1)*X12"),
        ("X12", "X21", "X31"), ("X12", "X23", "-(X11 - X33)"),
        ("X12", "X22", "(theta + 1)*X32"), ("X12", "X33", "-1/2*(theta + 1)*X32"),
        ("X13", "X21", "1/2*(3*theta + 1)*X21"), ("X13", "X22", "-theta*(X11 - X33)"),
        ("X13", "X23", "1/2*(3*theta + 1)*X23"), ("X13", "X31", "X31"),
        ("X13", "X32", "1/2*(1 - 3*theta)*X32"), ("X13", "X33", "1/2*(theta - 1)*(X11 - X33)"),
        ("X22", "X23", "(theta - 1)*X21"), ("X22", "X33", "theta*X31"),
        ("X23", "X32", "X31"), ("X23", "X33", "1/2*(theta - 1)*X21"),
    )
    r = (
        ("X11", "X12", "-X12"), ("X11", "X21", "X21"),
        ("X22", "X12", "-X12"), ("X22", "X21", "X21"),
        ("X33", "X12", "2*X12"), ("X33", "X21", "-2*X21"),
        ("X11", "X13", "X13"), ("X11", "X31", "-X31"),
        ("X22", "X13", "-2*X13"), ("X22", "X31", "2*X31"),
        ("X33", "X13", "X13"), ("X33", "X31", "-X31"),
        ("X11", "X23", "2*X23"), ("X11", "X32", "-2*X32"),
        ("X22", "X23", "-X23"), ("X22", "X32", "X32"),
        ("X33", "X23", "-X23"), ("X33", "X32", "X32"),
    )
    djr = (
        ("X11", "X12", "X12 - eta*X12"), ("X11", "X21", "X21 + eta*X21"),
        ("X11", "X13", "X13 + eta*X13"), ("X11", "X31", "X31 - eta*X31"),
        ("X11", "X23", "2*eta*X23"), ("X11", "X32", "-2*eta*X32"),
        ("X22", "X12", "-X12 - eta*X12"), ("X22", "X21", "-X21 + eta*X21"),
        ("X22", "X13", "-2*eta*X13"), ("X22", "X31", "2*eta*X31"),
        ("X22", "X23", "X23 - eta*X23"), ("X22", "X32", "X32 + eta*X32"),
        ("X33", "X12", "2*eta*X12"), ("X33", "X21", "-2*eta*X21"),
        ("X33", "X13", "-X13 + eta*X13"), ("X33", "X31", "-X31 - eta*X31"),
        ("X33", "X23", "-X23 - eta*X23"), ("X33", "X32", "-X32 + eta*X23"),
        ("X12", "X23", "2*X13"), ("X21", "X32", "2*X31"),
    )
    t = [
        DualTable("Pprime", "Pprime", (), p, "dual Lie algebra for the Pprime quantization", "p-dual"),
        DualTable("Etheta", "Etheta", ("theta",), es, "dual Lie algebra for r_E'(theta)", "es-dual"),
        DualTable("R", "R", (), r, "dual Lie algebra of the Reshetikhin r-matrix", "r-dual"),
        DualTable("DJR", "DJR", ("eta",), djr, "first-order deformation of the Drinfeld-Jimbo dual",
                  "djr-dual-3",
                  suspect={("X33", "X32"): "printed last symbol X23 breaks the table pattern; X32 expected"}),
    ]
    return {x.name: x for x in t}


_CLOSED = {
    "Pprime": ("exp(-E12 (x) E23)*exp(sigma (x) H)*exp(-H (x) sigma)*exp(E23 (x) E12)", "R_P'"),
}


def default_catalog() -> Catalog:
    return Catalog(_twists(), _rmatrices(), _tables(), _dual_tables(), _CLOSED)


_DEFAULT: Catalog | None = None


def catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = default_catalog()
    return _DEFAULT


def get_twist(name, params=None):
    return catalog().get_twist(name, params)


def get_rmatrix(name, params=None):
    return catalog().get_rmatrix(name, params)


def get_table(name, params=None):
    return catalog().get_table(name, params)


def get_dual_table(name, params=None):
    return catalog().get_dual_table(name, params)


def closed_form_R(name):
    return catalog().closed_form_R(name)


# ---------------------------------------------------------------- involution

_INVOLUTION_PRINTED = {
    "E12": "E23", "E23": "-E12", "E21": "E32", "E32": "-E21", "H12": "H23", "H23": "H12",
}


def involution() -> dict[str, LieElement]:
    """The printed generator map, extended to all of gl(3) as a Lie map (identity fixed)."""
    img = {k: expr_to_lie(ux.parse(v)) for k, v in _INVOLUTION_PRINTED.items()}
    img["E13"] = bracket(img["E12"], img["E23"])
    img["E31"] = bracket(img["E32"], img["E21"])
    ident = generator("I")
    third = S(1) / 3
    img["E11"] = (ident + 2 * img["H12"] + img["H23"]) * third
    img["E22"] = (ident - img["H12"] + img["H23"]) * third
    img["E33"] = (ident - img["H12"] - 2 * img["H23"]) * third
    return {b: img[b] for b in BASIS}


def apply_linear_map(images: Mapping[str, LieElement], x: LieElement) -> LieElement:
    out = LieElement()
    for b, c in x.items():
        out = out + c * images[b]
    return out


def involution_expr(e: ux.Node) -> ux.Node:
    """phi applied to every generator of an expression (phi extended as an algebra map)."""
    images = involution()
    return ux.substitute_generators(
        e, lambda name: ux.lie_to_expr(apply_linear_map(images, generator(name))))
