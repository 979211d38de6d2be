"""Classical layer: tensors over gl(3), CYBE, cobrackets, dual brackets, Jacobi and Lie pencils."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .liealg import (
    BASIS,
    INDEX,
    SL3_BASIS,
    BracketTable,
    LieElement,
    _BRACKET_CACHE,
    generator,
    render_vector,
)
from .matrix import Matrix
from .scalars import (
    ONE_SCALAR,
    ZERO,
    Scalar,
    ScalarError,
    S,
    divides,
    p_primitive,
    p_render,
    pack,
    poly_coefficients,
    PARAMS,
    unpack,
)

DUAL_BASIS: tuple[str, ...] = tuple("X" + b[1:] for b in BASIS)


class BialgError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class Tensor:
    """Element of gl(3)^{(x)k}: sparse map from basis-name tuples to Scalars."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank: int, coeffs: Mapping[tuple[str, ...], object] | None = None):
        self.rank = rank
        clean = {}
        for key, v in (coeffs or {}).items():
            if len(key) != rank or any(k not in INDEX for k in key):
                raise BialgError(f"bad tensor index {key!r}")
            v = v if isinstance(v, Scalar) else S(v)
            if v:
                clean[tuple(key)] = v
        self.coeffs = clean

    @classmethod
    def _raw(cls, rank, coeffs):
        t = object.__new__(cls)
        t.rank = rank
        t.coeffs = coeffs
        return t

    def items(self):
        for key in sorted(self.coeffs, key=lambda k: tuple(INDEX[x] for x in k)):
            yield key, self.coeffs[key]

    def __getitem__(self, key) -> Scalar:
        return self.coeffs.get(tuple(key), ZERO)

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.rank != other.rank:
            raise BialgError("rank mismatch")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k, ZERO) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return Tensor._raw(self.rank, out)

    def __neg__(self):
        return Tensor._raw(self.rank, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Tensor":
        c = c if isinstance(c, Scalar) else S(c)
        if not c:
            return Tensor(self.rank)
        return Tensor._raw(self.rank, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = scale
    __mul__ = scale

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rank, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def subs(self, bindings) -> "Tensor":
        return Tensor(self.rank, {k: v.subs(bindings) for k, v in self.coeffs.items()})

    def flip(self) -> "Tensor":
        """tau: legs reversed (r -> r_21 for rank 2)."""
        return Tensor._raw(self.rank, {k[::-1]: v for k, v in self.coeffs.items()})

    def skew_part(self) -> "Tensor":
        return (self - self.flip()).scale(S(1) / 2)

    def symmetric_part(self) -> "Tensor":
        return (self + self.flip()).scale(S(1) / 2)

    def is_skew(self) -> bool:
        return (self + self.flip()).is_zero()

    def parameters(self) -> list[str]:
        names = set()
        for v in self.coeffs.values():
            names.update(v.parameters())
        return sorted(names)

    def coefficient_in(self, name: str) -> dict[int, "Tensor"]:
        """Split a polynomial-coefficient tensor by powers of one parameter."""
        out: dict[int, dict] = {}
        for k, v in self.coeffs.items():
            for (e,), c in poly_coefficients(v, [name]).items():
                out.setdefault(e, {})[k] = c
        return {e: Tensor(self.rank, d) for e, d in sorted(out.items())}

    def first_component(self):
        for k, v in self.items():
            return k, v
        return None

    def to_json(self) -> dict:
        return {"basis": list(BASIS), "rank": self.rank,
                "entries": [{"legs": list(k), "value": str(v)} for k, v in self.items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Tensor":
        entries = data["entries"]
        rank = data.get("rank") or (len(entries[0]["legs"]) if entries else 2)
        out = {}
        for e in entries:
            legs = tuple(e["legs"]) if "legs" in e else (e["a"], e["b"])
            out[legs] = out.get(legs, ZERO) + S(e["value"])
        return cls(rank, out)

    def __str__(self):
        if not self.coeffs:
            return "0"
        vec = {"(x)".join(k): v for k, v in self.items()}
        return render_vector(vec, list(vec))

    def __repr__(self):
        return f"Tensor{self.rank}({self})"


def Tensor2(coeffs=None) -> Tensor:
    return Tensor(2, coeffs)


def Tensor3(coeffs=None) -> Tensor:
    return Tensor(3, coeffs)


def _as_el(x) -> LieElement:
    return generator(x) if isinstance(x, str) else x


def tensor(x, y) -> Tensor:
    x, y = _as_el(x), _as_el(y)
    return Tensor._raw(2, {(a, b): ca * cb for a, ca in x.coeffs.items() for b, cb in y.coeffs.items()
                           if ca * cb})


def wedge(x, y) -> Tensor:
    """x (x) y - y (x) x."""
    return tensor(x, y) - tensor(y, x)


# ----------------------------------------------------------------- brackets

def _br(a: str, b: str):
    return _BRACKET_CACHE[(a, b)].items()


def cybe(r: Tensor) -> Tensor:
    """[r12, r13] + [r12, r23] + [r13, r23]."""
    out: dict[tuple[str, str, str], Scalar] = {}

    def add(key, c):
        out[key] = out.get(key, ZERO) + c

    terms = list(r.coeffs.items())
    for (a1, b1), c1 in terms:
        for (a2, b2), c2 in terms:
            c = c1 * c2
            for k, v in _br(a1, a2):
                add((k, b1, b2), c * v)
            for k, v in _br(b1, a2):
                add((a1, k, b2), c * v)
            for k, v in _br(b1, b2):
                add((a1, a2, k), c * v)
    return Tensor(3, out)


def act(x, t: Tensor) -> Tensor:
    """Adjoint action of x on every leg of t."""
    x = _as_el(x)
    out: dict = {}
    for key, c in t.coeffs.items():
        for pos in range(t.rank):
            for g, cg in x.coeffs.items():
                for k, v in _br(g, key[pos]):
                    nk = key[:pos] + (k,) + key[pos + 1:]
                    out[nk] = out.get(nk, ZERO) + c * cg * v
    return Tensor(t.rank, out)


def is_ad_invariant(t: Tensor, basis: Iterable[str] = SL3_BASIS) -> bool:
    return all(act(x, t).is_zero() for x in basis)


def cobracket(r: Tensor, x) -> Tensor:
    """delta(x) = (ad_x (x) 1 + 1 (x) ad_x)(r)."""
    return act(x, r)


def dual_brackets(r: Tensor, kappa=1) -> BracketTable:
    """Brackets on {X_ij} dual to delta_r under <X_ab, E_cd> = d_ac d_bd.

    [X_a, X_b] = kappa * sum_c gamma_c^{ab} X_c where delta(E_c) = sum gamma_c^{ab} E_a (x) E_b,
    antisymmetrised.
    """
    kappa = S(kappa)
    half = S(1) / 2
    acc: dict[tuple[str, str], dict[str, Scalar]] = {}
    for c in BASIS:
        d = cobracket(r, LieElement.basis(c))
        for (a, b), g in d.coeffs.items():
            if a == b:
                continue
            xa, xb = "X" + a[1:], "X" + b[1:]
            if INDEX[a] > INDEX[b]:
                xa, xb, g = xb, xa, -g
            row = acc.setdefault((xa, xb), {})
            xc = "X" + c[1:]
            row[xc] = row.get(xc, ZERO) + g * half * kappa
    return BracketTable(DUAL_BASIS, acc)


def jacobiator(b: BracketTable) -> dict[tuple[str, str, str], dict[str, Scalar]]:
    """Nonzero [x,[y,z]] + [y,[z,x]] + [z,[x,y]] over basis triples x < y < z."""
    out = {}
    one = ONE_SCALAR
    for x, y, z in itertools.combinations(b.basis, 3):
        vx, vy, vz = {x: one}, {y: one}, {z: one}
        tot: dict[str, Scalar] = {}
        for p, q, s in ((vx, vy, vz), (vy, vz, vx), (vz, vx, vy)):
            inner = b.bracket(q, s)
            if inner:
                for k, v in b.bracket(p, inner).items():
                    tot[k] = tot.get(k, ZERO) + v
        tot = {k: v for k, v in tot.items() if v}
        if tot:
            out[(x, y, z)] = tot
    return out


def mixed_jacobiator(b1: BracketTable, b2: BracketTable):
    """Coefficient of s*t in jacobiator(s*b1 + t*b2)."""
    out = {}
    one = ONE_SCALAR
    for x, y, z in itertools.combinations(b1.basis, 3):
        vx, vy, vz = {x: one}, {y: one}, {z: one}
        tot: dict[str, Scalar] = {}
        for p, q, s in ((vx, vy, vz), (vy, vz, vx), (vz, vx, vy)):
            for outer, inner_t in ((b1, b2), (b2, b1)):
                inner = inner_t.bracket(q, s)
                if inner:
                    for k, v in outer.bracket(p, inner).items():
                        tot[k] = tot.get(k, ZERO) + v
        tot = {k: v for k, v in tot.items() if v}
        if tot:
            out[(x, y, z)] = tot
    return out


@dataclass
class PencilResult:
    """Outcome of pencil_solve: raw mixed-term generators and their reduced form."""

    generators: list[Scalar]
    reduced: list[Scalar]
    components: dict = field(default_factory=dict, repr=False)

    def compatible(self) -> bool:
        return not self.generators

    def render(self, order: Sequence[str] = ("eta", "theta")) -> list[str]:
        return [f"{render_constraint(g, order)} = 0" for g in self.reduced]


def _first_jacobi_violation(b: BracketTable):
    j = jacobiator(b)
    for triple, val in j.items():
        return triple, val
    return None


def pencil_solve(b1: BracketTable, b2: BracketTable) -> PencilResult:
    """Conditions on the parameters for s*b1 + t*b2 to be Lie for all (s, t)."""
    for name, b in (("first", b1), ("second", b2)):
        bad = _first_jacobi_violation(b)
        if bad is not None:
            triple, val = bad
            raise BialgError(f"{name} table violates Jacobi at {triple}",
                             witness={"table": name, "triple": list(triple),
                                      "value": {k: str(v) for k, v in val.items()}})
    comps = mixed_jacobiator(b1, b2)
    gens: list[Scalar] = []
    seen = set()
    for triple, val in comps.items():
        for k, v in val.items():
            if not v.is_polynomial():
                v = v * v.__class__._from_poly(v.den)
            key = frozenset(p_primitive(v.num).items())
            gens.append(v)
            seen.add(key)
    reduced = [Scalar._from_poly(dict(k)) for k in seen]
    reduced.sort(key=lambda s: (len(s.num), str(s)))
    return PencilResult(gens, reduced, comps)


def render_constraint(g: Scalar, order: Sequence[str] = ("eta", "theta")) -> str:
    """Primitive polynomial text with sign and term order driven by ``order``."""
    prim = p_primitive(g.num)
    pri = [PARAMS.index(n) for n in order] + [i for i in range(len(PARAMS))
                                              if PARAMS[i] not in order]

    def key(m):
        e = unpack(m)
        return (sum(e),) + tuple(e[i] for i in pri)

    lead = max(prim, key=key)
    if prim[lead] < 0:
        prim = {m: -c for m, c in prim.items()}
    return p_render(prim, key=key)


def transform(op: Matrix, r: Tensor) -> Tensor:
    """(op (x) op)(r) with op a 9x9 operator on basis coordinates."""
    cols: dict[int, list[tuple[int, Scalar]]] = {}
    for i, row in op.rows.items():
        for j, v in row.items():
            cols.setdefault(j, []).append((i, v))
    out: dict = {}
    for (a, b), c in r.coeffs.items():
        for i, vi in cols.get(INDEX[a], ()):
            for j, vj in cols.get(INDEX[b], ()):
                key = (BASIS[i], BASIS[j])
                out[key] = out.get(key, ZERO) + c * vi * vj
    return Tensor(r.rank, out)


def proportionality(a: Tensor, b: Tensor):
    """Scalar c with a = c*b, or None."""
    if b.is_zero():
        return ZERO if a.is_zero() else None
    key, vb = b.first_component()
    c = a[key] / vb
    return c if a == b.scale(c) else None


# ------------------------------------------------------- standard r-matrices

def cartan_casimir() -> Tensor:
    """sum_a h_a (x) h^a for the sl(3) Cartan with the trace form."""
    out = Tensor(2)
    for i in (1, 2, 3):
        e = f"E{i}{i}"
        out = out + tensor(e, e)
    ident = generator("I")
    return out - tensor(ident, ident).scale(S(1) / 3)


def r_dj() -> Tensor:
    """Drinfeld-Jimbo r-matrix: Cartan Casimir + 2 sum_{i<j} E_ji (x) E_ij."""
    out = cartan_casimir()
    for i, j in ((1, 2), (1, 3), (2, 3)):
        out = out + tensor(f"E{j}{i}", f"E{i}{j}").scale(2)
    return out


def r_dj_alt() -> Tensor:
    """The variant sum_{i<j} E_ij (x) E_ji + 1/2 Casimir (for comparison)."""
    out = cartan_casimir().scale(S(1) / 2)
    for i, j in ((1, 2), (1, 3), (2, 3)):
        out = out + tensor(f"E{i}{j}", f"E{j}{i}")
    return out
