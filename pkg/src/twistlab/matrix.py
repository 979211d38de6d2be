"""Sparse exact square matrices over :class:`~twistlab.scalars.Scalar`.

Rows are stored as ``{row: {col: Scalar}}`` with zero entries omitted.  At the
sizes used here (3, 9, 27, 81) most matrices coming out of nilpotent
exponentials are very sparse, so this beats a dense layout by a wide margin.
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .scalars import ONE_SCALAR, ZERO, Scalar, ScalarError, S, exp_symbol


class MatrixError(ArithmeticError):
    """Dimension mismatch, non-nilpotent exponent, singular inverse, ..."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


Rows = dict  # int -> dict[int, Scalar]


class Matrix:
    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Mapping[int, Mapping[int, object]] | None = None):
        self.n = n
        clean: Rows = {}
        if rows:
            for i, row in rows.items():
                r = {}
                for j, v in row.items():
                    v = v if isinstance(v, Scalar) else S(v)
                    if v:
                        if not (0 <= i < n and 0 <= j < n):
                            raise MatrixError(f"entry ({i},{j}) outside a {n}x{n} matrix")
                        r[j] = v
                if r:
                    clean[i] = r
        self.rows = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, rows: Rows) -> "Matrix":
        m = object.__new__(cls)
        m.n = n
        m.rows = rows
        m._hash = None
        return m

    # -- constructors
    @classmethod
    def zeros(cls, n: int) -> "Matrix":
        return cls._raw(n, {})

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(n, {i: {i: ONE_SCALAR} for i in range(n)})

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        return cls._raw(n, {i: {j: ONE_SCALAR}})

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        return cls(len(entries), {i: {i: e} for i, e in enumerate(entries)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "Matrix":
        n = len(data)
        if any(len(r) != n for r in data):
            raise MatrixError("matrix must be square")
        return cls(n, {i: {j: v for j, v in enumerate(r)} for i, r in enumerate(data)})

    # -- access
    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.rows.get(i, {}).get(j, ZERO)

    def entries(self) -> Iterator[tuple[int, int, Scalar]]:
        """Nonzero entries in row-major order."""
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def to_dense(self) -> list[list[Scalar]]:
        out = [[ZERO] * self.n for _ in range(self.n)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.to_dense()]

    def is_zero(self) -> bool:
        return not self.rows

    def is_identity(self) -> bool:
        if len(self.rows) != self.n:
            return False
        for i, row in self.rows.items():
            if len(row) != 1 or row.get(i) != ONE_SCALAR:
                return False
        return True

    def is_diagonal(self) -> bool:
        return all(len(r) == 1 and i in r for i, r in self.rows.items())

    def parameters(self) -> list[str]:
        names = set()
        for _, _, v in self.entries():
            names.update(v.parameters())
        return sorted(names)

    # -- arithmetic
    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.n != self.n:
            raise MatrixError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                w = tgt.get(j)
                if w is None:
                    tgt[j] = v
                else:
                    w = w + v
                    if w:
                        tgt[j] = w
                    else:
                        del tgt[j]
            if not tgt:
                del rows[i]
        return Matrix._raw(self.n, rows)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.n, {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = c if isinstance(c, Scalar) else S(c)
        if not c:
            return Matrix.zeros(self.n)
        if c == ONE_SCALAR:
            return self
        return Matrix._raw(self.n, {i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if not self.rows or not other.rows:
            return Matrix.zeros(self.n)
        brows = other.rows
        out: Rows = {}
        for i, row in self.rows.items():
            acc: dict[int, Scalar] = {}
            for j, a in row.items():
                brow = brows.get(j)
                if not brow:
                    continue
                for k, b in brow.items():
                    p = a * b
                    w = acc.get(k)
                    acc[k] = p if w is None else w + p
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                out[i] = acc
        return Matrix._raw(self.n, out)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out @ base
            k >>= 1
            if k:
                base = base @ base
        return out

    def transpose(self) -> "Matrix":
        rows: Rows = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Matrix._raw(self.n, rows)

    T = property(transpose)

    def trace(self) -> Scalar:
        return sum((r.get(i, ZERO) for i, r in self.rows.items()), ZERO)

    def subs(self, bindings: Mapping[str, object]) -> "Matrix":
        return Matrix(self.n, {i: {j: v.subs(bindings) for j, v in r.items()} for i, r in self.rows.items()})

    def commutes_with(self, other: "Matrix") -> bool:
        return self @ other == other @ self

    # -- comparison
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, tuple((i, j, v) for i, j, v in self.entries())))
        return self._hash

    def first_difference(self, other: "Matrix"):
        """First (row, col, self_value, other_value) in row-major order, or None."""
        self._check(other)
        for i in sorted(set(self.rows) | set(other.rows)):
            a = self.rows.get(i, {})
            b = other.rows.get(i, {})
            for j in sorted(set(a) | set(b)):
                x, y = a.get(j, ZERO), b.get(j, ZERO)
                if x != y:
                    return i, j, x, y
        return None

    def __repr__(self):
        return f"Matrix(n={self.n}, nnz={self.nnz()})"

    def __str__(self):
        dense = self.to_dense()
        cells = [[str(v) for v in r] for r in dense]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)

    # -- inverse
    def inverse(self) -> "Matrix":
        """Exact inverse.  Unipotent matrices use the terminating Neumann series."""
        n = self.n
        nil = self - Matrix.identity(n)
        if nil.is_zero():
            return self
        if self.is_diagonal():
            if len(self.rows) != n:
                raise MatrixError("matrix is singular")
            return Matrix._raw(n, {i: {i: r[i].inverse()} for i, r in self.rows.items()})
        power = nilpotency_index(nil)
        if power is not None:
            out = Matrix.identity(n)
            term = Matrix.identity(n)
            for _ in range(1, power):
                term = -(term @ nil)
                out = out + term
            return out
        return self._gauss_jordan_inverse()

    def _gauss_jordan_inverse(self) -> "Matrix":
        n = self.n
        a = [dict(self.rows.get(i, {})) for i in range(n)]
        inv = [{i: ONE_SCALAR} for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if a[r].get(col):
                    # prefer the sparsest pivot row
                    if piv is None or len(a[r]) < len(a[piv]):
                        piv = r
            if piv is None:
                raise MatrixError("matrix is singular", witness={"column": col})
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col].inverse()
            a[col] = {j: v * p for j, v in a[col].items()}
            inv[col] = {j: v * p for j, v in inv[col].items()}
            for r in range(n):
                if r == col:
                    continue
                f = a[r].get(col)
                if not f:
                    continue
                for src, dst in ((a[col], a[r]), (inv[col], inv[r])):
                    for j, v in src.items():
                        w = dst.get(j, ZERO) - f * v
                        if w:
                            dst[j] = w
                        else:
                            dst.pop(j, None)
        return Matrix._raw(n, {i: r for i, r in enumerate(inv) if r})


# ------------------------------------------------------------------ helpers

def nilpotency_index(m: Matrix, bound: int | None = None) -> int | None:
    """Smallest k with m^k = 0 (k <= bound, default n), or None."""
    bound = m.n if bound is None else bound
    if m.is_zero():
        return 0
    p = m
    for k in range(1, bound + 1):
        if p.is_zero():
            return k
        p = p @ m
    return None if not p.is_zero() else bound + 1


def mat_exp_nilpotent(m: Matrix) -> Matrix:
    """exp(m) for nilpotent m as a terminating series."""
    n = m.n
    out = Matrix.identity(n)
    term = Matrix.identity(n)
    for k in range(1, n + 2):
        term = (term @ m).scale(S(1) / k)
        if term.is_zero():
            return out
        out = out + term
    raise MatrixError(f"matrix is not nilpotent: power {n + 1} is nonzero",
                      witness={"power": n + 1, "entry": _first_entry(term)})


def mat_log_unipotent(m: Matrix) -> Matrix:
    """log(m) for m = I + N with N nilpotent."""
    return mat_log1p_nilpotent(m - Matrix.identity(m.n))


def mat_log1p_nilpotent(nil: Matrix) -> Matrix:
    n = nil.n
    out = Matrix.zeros(n)
    power = Matrix.identity(n)
    for k in range(1, n + 2):
        power = power @ nil
        if power.is_zero():
            return out
        out = out + power.scale(S(1 if k % 2 else -1) / k)
    raise MatrixError(f"matrix is not unipotent: power {n + 1} of M - I is nonzero",
                      witness={"power": n + 1, "entry": _first_entry(power)})


def mat_exp(m: Matrix) -> Matrix:
    """exp(m) when m = D + N with D diagonal, N nilpotent and [D, N] = 0.

    Diagonal entries must be exponentiable exactly (zero, or an integer
    multiple of a parameter with a registered exponential symbol).
    """
    n = m.n
    diag = {i: r[i] for i, r in m.rows.items() if i in r}
    if not diag:
        return mat_exp_nilpotent(m)
    if not m.is_diagonal() and nilpotency_index(m) is not None:
        return mat_exp_nilpotent(m)
    d = Matrix._raw(n, {i: {i: v} for i, v in diag.items()})
    nil = m - d
    if not nil.is_zero() and not d.commutes_with(nil):
        raise MatrixError("exponent is neither nilpotent nor a commuting diagonal+nilpotent sum")
    try:
        ed = Matrix._raw(n, {i: {i: exp_symbol(diag[i]) if i in diag else ONE_SCALAR} for i in range(n)})
    except ScalarError as exc:
        raise MatrixError(f"no exact exponential: {exc}") from None
    if nil.is_zero():
        return ed
    return ed @ mat_exp_nilpotent(nil)


def _first_entry(m: Matrix):
    for i, j, v in m.entries():
        return [i, j, str(v)]
    return None


def kron(a: Matrix, b: Matrix) -> Matrix:
    nb = b.n
    rows: Rows = {}
    for i, ra in a.rows.items():
        for bi, rb in b.rows.items():
            row = {}
            for j, x in ra.items():
                base = j * nb
                for bj, y in rb.items():
                    row[base + bj] = x * y
            rows[i * nb + bi] = row
    return Matrix._raw(a.n * nb, rows)


def kron_all(mats: Iterable[Matrix]) -> Matrix:
    out = None
    for m in mats:
        out = m if out is None else kron(out, m)
    if out is None:
        return Matrix.identity(1)
    return out


def _isqrt_dim(n: int) -> int:
    d = int(round(n ** 0.5))
    if d * d != n:
        raise MatrixError(f"dimension {n} is not a square")
    return d


def permute_legs(m: Matrix, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Conjugate a matrix on V_0 (x) ... (x) V_{k-1} by a leg permutation.

    ``perm[p]`` is the new position of old leg p.
    """
    k = len(dims)
    new_dims = [0] * k
    for p in range(k):
        new_dims[perm[p]] = dims[p]

    def remap(idx: int) -> int:
        digits = []
        for d in reversed(dims):
            digits.append(idx % d)
            idx //= d
        digits.reverse()
        new = [0] * k
        for p in range(k):
            new[perm[p]] = digits[p]
        out = 0
        for p in range(k):
            out = out * new_dims[p] + new[p]
        return out

    rows: Rows = {}
    for i, r in m.rows.items():
        rows[remap(i)] = {remap(j): v for j, v in r.items()}
    return Matrix._raw(m.n, rows)


def swap_legs(m: Matrix, d: int | None = None) -> Matrix:
    """Flip the two tensor legs of a matrix on V (x) V."""
    d = _isqrt_dim(m.n) if d is None else d
    return permute_legs(m, (d, d), (1, 0))


_LEG_PERMS = {
    # positions of (first, second, spectator) legs in the 3-fold product
    "12": (0, 1, 2),
    "13": (0, 2, 1),
    "23": (1, 2, 0),
    "21": (1, 0, 2),
    "31": (2, 0, 1),
    "32": (2, 1, 0),
}


def embed(m: Matrix, legs: str | int, n: int = 3, d: int | None = None) -> Matrix:
    """Place a two-leg matrix into legs (i, j) of an n-fold product (n = 3)."""
    if n != 3:
        raise MatrixError("only three-fold embeddings are supported")
    legs = str(legs)
    if legs not in _LEG_PERMS:
        raise MatrixError(f"unknown leg pair {legs!r}")
    d = _isqrt_dim(m.n) if d is None else d
    big = kron(m, Matrix.identity(d))
    if legs == "12":
        return big
    return permute_legs(big, (d, d, d), _LEG_PERMS[legs])


def partial_transpose(m: Matrix, dims: Sequence[int], leg: int) -> Matrix:
    """Transpose the factor on one tensor leg."""
    k = len(dims)
    strides = [1] * k
    for p in range(k - 2, -1, -1):
        strides[p] = strides[p + 1] * dims[p + 1]
    st, dd = strides[leg], dims[leg]
    rows: Rows = {}
    for i, r in m.rows.items():
        ai = (i // st) % dd
        for j, v in r.items():
            aj = (j // st) % dd
            ni = i + (aj - ai) * st
            nj = j + (ai - aj) * st
            rows.setdefault(ni, {})[nj] = v
    return Matrix._raw(m.n, rows)
