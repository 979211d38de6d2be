"""Exact finite-dimensional representations of gl(3) plus the matrix calculus they need."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .liealg import BASIS, INDEX, LieElement, bracket, generator
from .matrix import (
    Matrix,
    MatrixError,
    embed,
    kron,
    kron_all,
    mat_exp,
    mat_exp_nilpotent,
    mat_log1p_nilpotent,
    mat_log_unipotent,
    partial_transpose,
    permute_legs,
    swap_legs,
)
from .scalars import ZERO

__all__ = [
    "Matrix", "MatrixError", "Representation", "RepresentationError", "fundamental", "dual_rep",
    "tensor_rep", "rep_by_name", "kron", "kron_all", "embed", "swap_legs", "permute_legs",
    "partial_transpose", "mat_exp", "mat_exp_nilpotent", "mat_log_unipotent", "mat_log1p_nilpotent",
]


class RepresentationError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(eq=False)
class Representation:
    """Images of the nine E_ij.  The homomorphism property is checked on construction."""

    name: str
    dim: int
    images: dict[str, Matrix]
    checked: bool = field(default=False, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        missing = [b for b in BASIS if b not in self.images]
        if missing:
            raise RepresentationError(f"representation {self.name} lacks images of {missing}")
        for b, m in self.images.items():
            if m.n != self.dim:
                raise RepresentationError(f"image of {b} has dimension {m.n}, expected {self.dim}")
        if not self.checked:
            bad = self.homomorphism_violation()
            if bad is not None:
                raise RepresentationError(f"{self.name} is not a representation: fails on {bad[:2]}",
                                          witness=bad)
            self.checked = True

    def __call__(self, x) -> Matrix:
        return self.image(x)

    def image(self, x) -> Matrix:
        """Image of a LieElement or a generator name (E12, H13, H, K, ...)."""
        if isinstance(x, str):
            hit = self._cache.get(x)
            if hit is None:
                hit = self._cache[x] = self.image(generator(x))
            return hit
        out = Matrix.zeros(self.dim)
        for b, c in x.items():
            out = out + self.images[b].scale(c)
        return out

    def homomorphism_violation(self):
        """First basis pair (a, b) with rho([a,b]) != [rho a, rho b], else None."""
        for a in BASIS:
            for b in BASIS:
                if INDEX[a] >= INDEX[b]:
                    continue
                ra, rb = self.images[a], self.images[b]
                lhs = self.image(bracket(LieElement.basis(a), LieElement.basis(b)))
                rhs = ra @ rb - rb @ ra
                diff = lhs.first_difference(rhs)
                if diff is not None:
                    return a, b, diff
        return None

    def identity(self) -> Matrix:
        return Matrix.identity(self.dim)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.dim == other.dim and all(self.images[b] == other.images[b] for b in BASIS)

    def __hash__(self):
        return hash((self.name, self.dim))


def fundamental() -> Representation:
    """E_ij -> matrix unit e_ij."""
    images = {f"E{i}{j}": Matrix.unit(3, i - 1, j - 1) for i in range(1, 4) for j in range(1, 4)}
    return Representation("fund", 3, images)


def dual_rep(rho: Representation) -> Representation:
    """x -> -rho(x)^T."""
    name = rho.name[5:-1] if rho.name.startswith("dual(") and rho.name.endswith(")") else f"dual({rho.name})"
    if rho.name == "fund":
        name = "dual"
    elif rho.name == "dual":
        name = "fund"
    return Representation(name, rho.dim, {b: -m.transpose() for b, m in rho.images.items()})


def tensor_rep(r1: Representation, r2: Representation) -> Representation:
    """x -> r1(x) (x) I + I (x) r2(x)."""
    i1, i2 = Matrix.identity(r1.dim), Matrix.identity(r2.dim)
    images = {b: kron(r1.images[b], i2) + kron(i1, r2.images[b]) for b in BASIS}
    return Representation(f"{r1.name}*{r2.name}", r1.dim * r2.dim, images)


_REGISTRY: dict[str, Representation] = {}


def rep_by_name(name: str) -> Representation:
    """Cached fund / dual / fund*dual."""
    rep = _REGISTRY.get(name)
    if rep is None:
        if name == "fund":
            rep = fundamental()
        elif name == "dual":
            rep = dual_rep(rep_by_name("fund"))
        elif name in ("fund*dual", "fund⊗dual", "funddual"):
            rep = tensor_rep(rep_by_name("fund"), rep_by_name("dual"))
            name = "fund*dual"
        else:
            raise RepresentationError(f"unknown representation {name!r}; known: fund, dual, fund*dual")
        _REGISTRY[name] = rep
    return rep
