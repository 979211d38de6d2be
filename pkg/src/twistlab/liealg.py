"""gl(3) and its sl(3) subspace: basis, brackets, named Cartan elements, ad and exp(v ad x).

Basis order is row-major ``E11, E12, ..., E33``; this order fixes the
coordinates of the 9x9 ``ad`` matrices.
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Mapping, Sequence

from .matrix import Matrix, MatrixError
from .scalars import ONE_SCALAR, ZERO, Scalar, S

N = 3
BASIS: tuple[str, ...] = tuple(f"E{i}{j}" for i in range(1, N + 1) for j in range(1, N + 1))
INDEX = {name: k for k, name in enumerate(BASIS)}
# sl(3) basis used for ad-invariance tests: root vectors plus two Cartan elements
SL3_BASIS: tuple[str, ...] = ("E12", "E13", "E21", "E23", "E31", "E32", "H12", "H23")


class LieError(ValueError):
    pass


def _ij(name: str) -> tuple[int, int]:
    return int(name[1]), int(name[2])


class LieElement:
    """Sparse linear combination of the E_ij basis with Scalar coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Mapping[str, object] | None = None):
        clean = {}
        for k, v in (coeffs or {}).items():
            if k not in INDEX:
                raise LieError(f"unknown basis symbol {k!r}")
            v = v if isinstance(v, Scalar) else S(v)
            if v:
                clean[k] = v
        self.coeffs = clean
        self._hash = None

    @classmethod
    def basis(cls, name: str) -> "LieElement":
        return cls({name: ONE_SCALAR})

    @classmethod
    def from_vector(cls, vec: Sequence) -> "LieElement":
        return cls({BASIS[k]: v for k, v in enumerate(vec)})

    def vector(self) -> list[Scalar]:
        return [self.coeffs.get(b, ZERO) for b in BASIS]

    def __getitem__(self, name: str) -> Scalar:
        return self.coeffs.get(name, ZERO)

    def items(self):
        return ((b, self.coeffs[b]) for b in BASIS if b in self.coeffs)

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return LieElement(out)

    def __neg__(self):
        return LieElement({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = S(c) if not isinstance(c, Scalar) else c
        return LieElement({k: v * c for k, v in self.coeffs.items()})

    __mul__ = __rmul__

    def __truediv__(self, c):
        return self * (ONE_SCALAR / S(c))

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.coeffs

    def trace(self) -> Scalar:
        return self["E11"] + self["E22"] + self["E33"]

    def in_sl(self) -> bool:
        return self.trace().is_zero()

    def subs(self, bindings) -> "LieElement":
        return LieElement({k: v.subs(bindings) for k, v in self.coeffs.items()})

    def __str__(self):
        return render_vector(self.coeffs, BASIS)

    def __repr__(self):
        return f"LieElement({self})"


def E(i: int, j: int) -> LieElement:
    return LieElement.basis(f"E{i}{j}")


def _basis_bracket(a: str, b: str) -> dict[str, int]:
    (i, j), (k, l) = _ij(a), _ij(b)
    out: dict[str, int] = {}
    if j == k:
        out[f"E{i}{l}"] = out.get(f"E{i}{l}", 0) + 1
    if l == i:
        key = f"E{k}{j}"
        out[key] = out.get(key, 0) - 1
    return {k: v for k, v in out.items() if v}


_BRACKET_CACHE = {(a, b): _basis_bracket(a, b) for a in BASIS for b in BASIS}


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """[E_ij, E_kl] = d_jk E_il - d_li E_kj, extended bilinearly."""
    out: dict[str, Scalar] = {}
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            c = ca * cb
            for k, v in _BRACKET_CACHE[(a, b)].items():
                out[k] = out.get(k, ZERO) + c * v
    return LieElement(out)


def ad(x: LieElement) -> Matrix:
    """Matrix of ad_x on the 9-dimensional space; column k is [x, BASIS[k]]."""
    rows: dict[int, dict[int, Scalar]] = {}
    for col, b in enumerate(BASIS):
        for name, v in bracket(x, LieElement.basis(b)).coeffs.items():
            rows.setdefault(INDEX[name], {})[col] = v
    return Matrix(len(BASIS), rows)


def apply_operator(op: Matrix, x: LieElement) -> LieElement:
    vec = x.vector()
    out = {}
    for i, row in op.rows.items():
        acc = ZERO
        for j, v in row.items():
            if vec[j]:
                acc = acc + v * vec[j]
        if acc:
            out[BASIS[i]] = acc
    return LieElement(out)


def exp_ad(x: LieElement, v=1) -> Matrix:
    """exp(v ad_x) for ad-nilpotent x, as a terminating series."""
    v = S(v)
    a = ad(x)
    dim = len(BASIS)
    powers = [Matrix.identity(dim)]
    while True:
        nxt = powers[-1] @ a
        if nxt.is_zero():
            break
        if len(powers) >= dim:
            raise MatrixError(f"ad({x}) is not nilpotent: power {len(powers)} is nonzero",
                              witness={"power": len(powers)})
        powers.append(nxt)
    out = Matrix.zeros(dim)
    for k, p in enumerate(powers):
        out = out + p.scale(v ** k / factorial(k))
    return out


def named_generators(lam=None) -> dict[str, LieElement]:
    """E_ij, H12, H23, H13, H, K, I and the carrier Cartan ``H+lambdaK``."""
    lam = S("lambda") if lam is None else S(lam)
    g = {b: LieElement.basis(b) for b in BASIS}
    g["H12"] = g["E11"] - g["E22"]
    g["H23"] = g["E22"] - g["E33"]
    g["H13"] = g["E11"] - g["E33"]
    g["H"] = (g["H13"] + g["H23"]) / 3
    g["K"] = (g["H12"] - g["H23"]) / 3
    g["I"] = g["E11"] + g["E22"] + g["E33"]
    g["H+lambdaK"] = g["H"] + lam * g["K"]
    return g


_NAMED = named_generators()
GENERATOR_NAMES: tuple[str, ...] = tuple(k for k in _NAMED if k != "H+lambdaK")


def generator(name: str) -> LieElement:
    try:
        return _NAMED[name]
    except KeyError:
        raise LieError(f"unknown generator {name!r}; known: {', '.join(GENERATOR_NAMES)}") from None


def carrier_cartan(lam) -> LieElement:
    """H + lambda K."""
    return _NAMED["H"] + S(lam) * _NAMED["K"]


# ------------------------------------------------------------ bracket tables

class BracketTable:
    """Antisymmetric structure constants on a named basis.

    ``constants[(a, b)]`` (with ``a`` before ``b`` in basis order) maps basis
    names to Scalar coefficients.  Jacobi is *not* assumed.
    """

    def __init__(self, basis: Sequence[str], constants: Mapping | None = None):
        self.basis = tuple(basis)
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.constants: dict[tuple[str, str], dict[str, Scalar]] = {}
        for (a, b), val in (constants or {}).items():
            self.set(a, b, val)

    def set(self, a: str, b: str, value: Mapping[str, object]) -> None:
        for s in (a, b, *value):
            if s not in self.index:
                raise LieError(f"symbol {s!r} not in basis")
        vec = {k: (v if isinstance(v, Scalar) else S(v)) for k, v in value.items()}
        vec = {k: v for k, v in vec.items() if v}
        if a == b:
            if vec:
                raise LieError(f"[{a},{a}] must vanish")
            return
        if self.index[a] > self.index[b]:
            a, b = b, a
            vec = {k: -v for k, v in vec.items()}
        if vec:
            self.constants[(a, b)] = vec
        else:
            self.constants.pop((a, b), None)

    def bracket_basis(self, a: str, b: str) -> dict[str, Scalar]:
        if a == b:
            return {}
        if self.index[a] < self.index[b]:
            return self.constants.get((a, b), {})
        return {k: -v for k, v in self.constants.get((b, a), {}).items()}

    def bracket(self, x: Mapping[str, Scalar], y: Mapping[str, Scalar]) -> dict[str, Scalar]:
        out: dict[str, Scalar] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                c = ca * cb
                for k, v in self.bracket_basis(a, b).items():
                    out[k] = out.get(k, ZERO) + c * v
        return {k: v for k, v in out.items() if v}

    def rows(self):
        """Nonzero rows ((a, b), value) in basis order."""
        for a, b in sorted(self.constants, key=lambda p: (self.index[p[0]], self.index[p[1]])):
            yield (a, b), dict(sorted(self.constants[(a, b)].items(), key=lambda kv: self.index[kv[0]]))

    def __add__(self, other: "BracketTable") -> "BracketTable":
        self._check(other)
        out = BracketTable(self.basis, self.constants)
        for (a, b), val in other.constants.items():
            cur = dict(out.constants.get((a, b), {}))
            for k, v in val.items():
                cur[k] = cur.get(k, ZERO) + v
            out.set(a, b, cur)
        return out

    def scale(self, c) -> "BracketTable":
        c = S(c)
        return BracketTable(self.basis, {k: {n: v * c for n, v in val.items()} for k, val in self.constants.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __sub__(self, other):
        return self + other.scale(-1)

    def subs(self, bindings) -> "BracketTable":
        return BracketTable(self.basis, {k: {n: v.subs(bindings) for n, v in val.items()}
                                         for k, val in self.constants.items()})

    def _check(self, other):
        if self.basis != other.basis:
            raise LieError("bracket tables live on different bases")

    def __eq__(self, other):
        if not isinstance(other, BracketTable):
            return NotImplemented
        return self.basis == other.basis and self.constants == other.constants

    def is_abelian(self) -> bool:
        return not self.constants

    def parameters(self) -> list[str]:
        names = set()
        for val in self.constants.values():
            for v in val.values():
                names.update(v.parameters())
        return sorted(names)

    # -- serialization
    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "entries": [{"a": a, "b": b, "value": {k: str(v) for k, v in val.items()}}
                        for (a, b), val in self.rows()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BracketTable":
        t = cls(data["basis"])
        for e in data["entries"]:
            t.set(e["a"], e["b"], {k: S(v) for k, v in e["value"].items()})
        return t

    def render_rows(self) -> list[str]:
        return [f"[{a}, {b}] = {render_vector(val, self.basis)}" for (a, b), val in self.rows()]

    def __str__(self):
        return "\n".join(self.render_rows()) or "(abelian)"


def render_vector(vec: Mapping[str, Scalar], order: Sequence[str] | None = None) -> str:
    if not vec:
        return "0"
    keys = [k for k in order if k in vec] if order else sorted(vec)
    out = ""
    for n, k in enumerate(keys):
        cs = str(vec[k])
        neg = cs.startswith("-") and not (" + " in cs or " - " in cs[1:])
        if neg:
            cs = cs[1:]
        if cs == "1":
            term = k
        else:
            if " " in cs:
                cs = f"({cs})"
            term = f"{cs}*{k}"
        if n == 0:
            out = ("-" if neg else "") + term
        else:
            out += (" - " if neg else " + ") + term
    return out


def gl3_table() -> BracketTable:
    t = BracketTable(BASIS)
    for a in BASIS:
        for b in BASIS:
            if INDEX[a] < INDEX[b]:
                t.set(a, b, {k: S(v) for k, v in _BRACKET_CACHE[(a, b)].items()})
    return t


def structure_table(elements: Mapping[str, LieElement]) -> dict[tuple[str, str], LieElement]:
    """Brackets among a named family of elements (as LieElements)."""
    names = list(elements)
    return {(a, b): bracket(elements[a], elements[b]) for i, a in enumerate(names) for b in names[i + 1:]}


def span_coordinates(x: LieElement, spanning: Sequence[LieElement]) -> list[Scalar] | None:
    """Coordinates of x in the span of linearly independent elements, or None."""
    # solve by Gaussian elimination on the 9 x m system
    m = len(spanning)
    rows = [[e.vector()[k] for e in spanning] + [x.vector()[k]] for k in range(len(BASIS))]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][m] for i in range(r, len(rows))):
        return None
    coords = [ZERO] * m
    for i, c in enumerate(piv_cols):
        coords[c] = rows[i][m]
    return coords


def closes_under_bracket(elements: Sequence[LieElement]) -> bool:
    return all(span_coordinates(bracket(a, b), elements) is not None
               for i, a in enumerate(elements) for b in elements[i + 1:])


def jacobi_gl3_violations(elements: Iterable[str] = BASIS) -> list[tuple[str, str, str]]:
    bad = []
    els = list(elements)
    for a in els:
        for b in els:
            for c in els:
                x, y, z = LieElement.basis(a), LieElement.basis(b), LieElement.basis(c)
                j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
                if not j.is_zero():
                    bad.append((a, b, c))
    return bad
