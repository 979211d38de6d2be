"""Expressions in U(gl(3))^{(x)k}: parser, renderer, Hopf maps, Sweedler expansion, evaluation.

Trees are immutable and built through smart constructors (``add``, ``mul``,
``tensor``, ``exp_``, ``log1p``) that flatten and fold constants, so
structurally equal inputs give equal trees.  A constant has no intrinsic leg
count (``legs`` returns None); inside a tensor product it occupies one leg.

Grammar (``(x)`` binds looser than ``*``, ``+``/``-`` loosest)::

    tensor := ['-'] tterm (('+' | '-') tterm)*
    tterm  := leg ('(x)' leg)*
    leg    := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := factor ['^' ['-'] INT]
    factor := 'exp' '(' tensor ')' | 'log1p' '(' tensor ')' | NAME | INT | '(' tensor ')'

Names are generators (E11..E33, H12, H13, H23, H, K, I), ``sigma``,
``sigma_tilde`` or scalar parameters.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Sequence

from .liealg import GENERATOR_NAMES, LieElement, generator
from .matrix import (
    Matrix,
    MatrixError,
    kron_all,
    mat_exp,
    mat_log1p_nilpotent,
)
from .reps import Representation, dual_rep
from .scalars import (
    ONE_SCALAR,
    PARAMS,
    ZERO,
    Scalar,
    ScalarError,
    ScalarParseError,
    S,
    exp_symbol,
    tokenize,
)


class ExprError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ExprParseError(ExprError):
    def __init__(self, message: str, pos: int, text: str):
        super().__init__(f"{message} at position {pos} in {text!r}", witness={"position": pos})
        self.pos = pos


class EvalError(ExprError):
    pass


# ------------------------------------------------------------------- nodes

class Node:
    __slots__ = ("legs", "_h")

    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            self._h = hash((type(self).__name__, self.key()))
            return self._h

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"{type(self).__name__}<{render(self)}>"

    # operator sugar for building expressions in code
    def __add__(self, o):
        return add(self, _lift(o))

    def __radd__(self, o):
        return add(_lift(o), self)

    def __sub__(self, o):
        return add(self, neg(_lift(o)))

    def __rsub__(self, o):
        return add(_lift(o), neg(self))

    def __mul__(self, o):
        return mul(self, _lift(o))

    def __rmul__(self, o):
        return mul(_lift(o), self)

    def __neg__(self):
        return neg(self)


class Gen(Node):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.legs = 1

    def key(self):
        return (self.name,)


class Alias(Node):
    """sigma = log(1 + E13), sigma_tilde = 1/2 log(1 + 2 xi E13)."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        if name not in ALIASES:
            raise ExprError(f"unknown alias {name!r}")
        self.name = name
        self.legs = 1

    def key(self):
        return (self.name,)

    def definition(self) -> Node:
        return ALIAS_DEFS[self.name]()


class Const(Node):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value if isinstance(value, Scalar) else S(value)
        self.legs = None

    def key(self):
        return (self.value,)


class Add(Node):
    __slots__ = ("terms",)

    def __init__(self, terms: tuple, legs):
        self.terms = terms
        self.legs = legs

    def key(self):
        return self.terms


class Mul(Node):
    __slots__ = ("factors",)

    def __init__(self, factors: tuple, legs):
        self.factors = factors
        self.legs = legs

    def key(self):
        return self.factors


class Tensor(Node):
    __slots__ = ("parts",)

    def __init__(self, parts: tuple):
        self.parts = parts
        self.legs = sum(part_legs(p) for p in parts)

    def key(self):
        return self.parts


class Exp(Node):
    __slots__ = ("arg",)

    def __init__(self, arg: Node):
        self.arg = arg
        self.legs = arg.legs

    def key(self):
        return (self.arg,)


class Log1p(Node):
    __slots__ = ("arg",)

    def __init__(self, arg: Node):
        self.arg = arg
        self.legs = arg.legs

    def key(self):
        return (self.arg,)


ALIASES = ("sigma", "sigma_tilde")
ZERO_NODE = Const(0)
ONE_NODE = Const(1)


def part_legs(p: Node) -> int:
    return 1 if p.legs is None else p.legs


def legs(e: Node):
    return e.legs


def _common_legs(nodes: Iterable[Node], what: str):
    found = None
    for n in nodes:
        if n.legs is None:
            continue
        if found is None:
            found = n.legs
        elif n.legs != found:
            raise ExprError(f"{what} mixes {found}-leg and {n.legs}-leg expressions")
    return found


def _lift(x) -> Node:
    if isinstance(x, Node):
        return x
    return Const(x)


# ------------------------------------------------------ smart constructors

def const(c) -> Const:
    return Const(c)


def gen(name: str) -> Gen:
    return Gen(name)


def _split_coeff(n: Node) -> tuple[Scalar, Node]:
    if isinstance(n, Const):
        return n.value, ONE_NODE
    if isinstance(n, Mul) and isinstance(n.factors[0], Const):
        rest = n.factors[1:]
        return n.factors[0].value, rest[0] if len(rest) == 1 else Mul(rest, n.legs)
    return ONE_SCALAR, n


def add(*terms: Node) -> Node:
    flat: list[Node] = []
    for t in terms:
        t = _lift(t)
        if isinstance(t, Add):
            flat.extend(t.terms)
        else:
            flat.append(t)
    legs_ = _common_legs(flat, "sum")
    coeffs: dict[Node, Scalar] = {}
    order: list[Node] = []
    for t in flat:
        c, rest = _split_coeff(t)
        if rest in coeffs:
            coeffs[rest] = coeffs[rest] + c
        else:
            coeffs[rest] = c
            order.append(rest)
    out = []
    for rest in order:
        c = coeffs[rest]
        if not c:
            continue
        out.append(_scaled(c, rest))
    if not out:
        return ZERO_NODE
    if len(out) == 1:
        return out[0]
    return Add(tuple(out), legs_)


def _scaled(c: Scalar, rest: Node) -> Node:
    if rest is ONE_NODE or rest == ONE_NODE:
        return Const(c)
    if c == ONE_SCALAR:
        return rest
    if isinstance(rest, Mul):
        return Mul((Const(c),) + rest.factors, rest.legs)
    return Mul((Const(c), rest), rest.legs)


def mul(*factors: Node) -> Node:
    flat: list[Node] = []
    for f in factors:
        f = _lift(f)
        if isinstance(f, Mul):
            flat.extend(f.factors)
        else:
            flat.append(f)
    legs_ = _common_legs(flat, "product")
    c = ONE_SCALAR
    rest = []
    for f in flat:
        if isinstance(f, Const):
            c = c * f.value
        else:
            rest.append(f)
    if not c:
        return ZERO_NODE
    if not rest:
        return Const(c)
    if c == ONE_SCALAR and len(rest) == 1:
        return rest[0]
    fs = tuple(rest) if c == ONE_SCALAR else (Const(c),) + tuple(rest)
    return Mul(fs, legs_)


def neg(e: Node) -> Node:
    return mul(Const(-1), e)


def scale(c, e: Node) -> Node:
    return mul(Const(c), e)


def tensor(*parts: Node) -> Node:
    flat = []
    for p in parts:
        p = _lift(p)
        if isinstance(p, Const) and not p.value:
            return ZERO_NODE
        flat.append(p)
    if len(flat) == 1:
        return flat[0]
    return Tensor(tuple(flat))


def exp_(arg: Node) -> Node:
    arg = _lift(arg)
    if isinstance(arg, Const):
        if not arg.value:
            return ONE_NODE
        try:
            return Const(exp_symbol(arg.value))
        except ScalarError:
            return Exp(arg)
    return Exp(arg)


def log1p(arg: Node) -> Node:
    arg = _lift(arg)
    if isinstance(arg, Const) and not arg.value:
        return ZERO_NODE
    return Log1p(arg)


def power(e: Node, n: int) -> Node:
    if n < 0:
        if isinstance(e, Const):
            return Const(e.value ** n)
        raise ExprError("negative powers are only defined for scalars")
    if n == 0:
        return ONE_NODE
    return mul(*([e] * n))


ALIAS_DEFS: dict[str, Callable[[], Node]] = {
    "sigma": lambda: log1p(Gen("E13")),
    "sigma_tilde": lambda: mul(Const(S(1) / 2), log1p(mul(Const(S(2) * S("xi")), Gen("E13")))),
}


# ------------------------------------------------------------------ parser

class _Parser:
    def __init__(self, text: str, symbols: Mapping[str, Node] | None):
        self.text = text
        try:
            self.toks = tokenize(text)
        except ScalarParseError as exc:
            raise ExprParseError(str(exc).split(" at position")[0], exc.pos, text) from None
        self.i = 0
        self.symbols = dict(symbols or {})

    def peek(self):
        return self.toks[self.i]

    def at(self, kind, val=None) -> bool:
        t = self.toks[self.i]
        return t[0] == kind and (val is None or t[1] == val)

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[:2] != ("op", val):
            self.fail(f"expected {val!r}", t)
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprParseError(msg, tok[2], self.text)

    def parse(self) -> Node:
        if self.at("end"):
            self.fail("empty expression")
        e = self.tensor()
        if not self.at("end"):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return e

    def tensor(self) -> Node:
        negate = False
        if self.at("op", "-"):
            self.take()
            negate = True
        elif self.at("op", "+"):
            self.take()
        terms = [self.tterm(negate)]
        while self.at("op", "+") or self.at("op", "-"):
            op = self.take()[1]
            terms.append(self.tterm(op == "-"))
        try:
            return add(*terms)
        except ExprError as exc:
            self.fail(str(exc))

    def tterm(self, negate: bool) -> Node:
        parts = [self.leg(negate)]
        while self.at("op", "(x)"):
            self.take()
            parts.append(self.leg(False))
        return tensor(*parts)

    def leg(self, negate: bool) -> Node:
        start = self.peek()
        f = self.unary()
        if negate:
            f = neg(f)
        factors = [f]
        while self.at("op", "*") or self.at("op", "/"):
            op = self.take()
            rhs = self.unary()
            if op[1] == "/":
                if not isinstance(rhs, Const):
                    self.fail("division is only allowed by a scalar", op)
                if not rhs.value:
                    self.fail("division by zero", op)
                rhs = Const(ONE_SCALAR / rhs.value)
            factors.append(rhs)
        try:
            return mul(*factors)
        except ExprError as exc:
            self.fail(str(exc), start)

    def unary(self) -> Node:
        if self.at("op", "-"):
            self.take()
            return neg(self.unary())
        if self.at("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.factor()
        if self.at("op", "^"):
            op = self.take()
            sign = 1
            if self.at("op", "-"):
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "num":
                self.fail("integer exponent expected", t)
            try:
                return power(base, sign * int(t[1]))
            except ExprError as exc:
                self.fail(str(exc), op)
        return base

    def factor(self) -> Node:
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            return Const(int(val))
        if kind == "name":
            if val in ("exp", "log1p"):
                self.expect("(")
                arg = self.tensor()
                self.expect(")")
                return exp_(arg) if val == "exp" else log1p(arg)
            if val in self.symbols:
                return self.symbols[val]
            if val in ALIASES:
                return Alias(val)
            if val in GENERATOR_NAMES:
                return Gen(val)
            if val in PARAMS:
                return Const(Scalar.param(val))
            self.fail(f"unknown symbol {val!r}", t)
        if (kind, val) == ("op", "("):
            inner = self.tensor()
            self.expect(")")
            return inner
        self.fail(f"unexpected token {val!r}" if val else "unexpected end of input", t)


def parse(text: str, symbols: Mapping[str, Node] | None = None) -> Node:
    """Parse the expression grammar; ``symbols`` overrides names (e.g. abstract H, A, B, E)."""
    return _Parser(text, symbols).parse()


# ---------------------------------------------------------------- renderer

def _scalar_text(c: Scalar, in_product: bool) -> str:
    s = str(c)
    if in_product and (" " in s):
        return f"({s})"
    return s


def render(e: Node) -> str:
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, (Gen, Alias)):
        return e.name
    if isinstance(e, Exp):
        return f"exp({render(e.arg)})"
    if isinstance(e, Log1p):
        return f"log1p({render(e.arg)})"
    if isinstance(e, Add):
        out = render(e.terms[0])
        for t in e.terms[1:]:
            r = render(t)
            out += f" - {r[1:]}" if r.startswith("-") else f" + {r}"
        return out
    if isinstance(e, Tensor):
        return " (x) ".join(f"({render(p)})" if isinstance(p, (Add, Tensor)) else render(p)
                            for p in e.parts)
    if isinstance(e, Mul):
        pieces = []
        for k, f in enumerate(e.factors):
            if isinstance(f, Const):
                s = _scalar_text(f.value, True)
                if k == 0 and s == "-1":
                    pieces.append("-")
                    continue
                pieces.append(s)
            elif isinstance(f, (Add, Tensor)):
                pieces.append(f"({render(f)})")
            else:
                pieces.append(render(f))
        out = ""
        for k, p in enumerate(pieces):
            if k == 0 or pieces[k - 1] == "-":
                out += p
            else:
                out += "*" + p
        return out
    raise ExprError(f"cannot render {type(e).__name__}")


# --------------------------------------------------------------- traversal

def substitute_params(e: Node, bindings: Mapping[str, object]) -> Node:
    """Specialise scalar parameters throughout an expression."""
    if not bindings:
        return e
    def leaf(n):
        if isinstance(n, Const):
            return Const(n.value.subs(bindings))
        if isinstance(n, Alias) and n.name == "sigma_tilde" and "xi" in bindings:
            # the alias hides a parameter, so it is unfolded before specialising
            return _map_tree(n.definition(), leaf)
        return None
    return _map_tree(e, leaf)


def substitute_generators(e: Node, fn: Callable[[str], Node]) -> Node:
    """Replace every generator atom (and alias definitions) through ``fn``."""
    def leaf(n):
        if isinstance(n, Gen):
            return fn(n.name)
        if isinstance(n, Alias):
            return _map_tree(n.definition(), leaf)
        return None
    return _map_tree(e, leaf)


def _map_tree(e: Node, leaf: Callable[[Node], Node | None]) -> Node:
    hit = leaf(e)
    if hit is not None:
        return hit
    if isinstance(e, (Gen, Alias, Const)):
        return e
    if isinstance(e, Add):
        return add(*[_map_tree(t, leaf) for t in e.terms])
    if isinstance(e, Mul):
        return mul(*[_map_tree(t, leaf) for t in e.factors])
    if isinstance(e, Tensor):
        return tensor(*[_map_tree(t, leaf) for t in e.parts])
    if isinstance(e, Exp):
        return exp_(_map_tree(e.arg, leaf))
    if isinstance(e, Log1p):
        return log1p(_map_tree(e.arg, leaf))
    raise ExprError(f"unknown node {type(e).__name__}")


def lie_to_expr(x: LieElement) -> Node:
    return add(*[scale(c, Gen(b)) for b, c in x.items()])


def parameters(e: Node) -> list[str]:
    found = set()

    def leaf(n):
        if isinstance(n, Const):
            found.update(n.value.parameters())
        return None
    _map_tree(e, leaf)
    if _has_alias(e, "sigma_tilde"):
        found.add("xi")
    return sorted(found, key=PARAMS.index)


def _has_alias(e: Node, name: str) -> bool:
    if isinstance(e, Alias):
        return e.name == name
    for child in _children(e):
        if _has_alias(child, name):
            return True
    return False


def _children(e: Node) -> tuple:
    if isinstance(e, Add):
        return e.terms
    if isinstance(e, Mul):
        return e.factors
    if isinstance(e, Tensor):
        return e.parts
    if isinstance(e, (Exp, Log1p)):
        return (e.arg,)
    return ()


# ------------------------------------------------------------- Hopf maps

def coproduct0(e: Node, leg: int = 0) -> Node:
    """Undeformed coproduct applied to one leg (generators primitive)."""
    if e.legs is None:
        return e
    if not 0 <= leg < e.legs:
        raise ExprError(f"leg {leg} out of range for a {e.legs}-leg expression")
    if isinstance(e, Gen):
        return add(tensor(e, ONE_NODE), tensor(ONE_NODE, e))
    if isinstance(e, Alias):
        return coproduct0(e.definition(), leg)
    if isinstance(e, Add):
        return add(*[coproduct0(t, leg) for t in e.terms])
    if isinstance(e, Mul):
        return mul(*[coproduct0(f, leg) for f in e.factors])
    if isinstance(e, Exp):
        return exp_(coproduct0(e.arg, leg))
    if isinstance(e, Log1p):
        return log1p(coproduct0(e.arg, leg))
    if isinstance(e, Tensor):
        parts = []
        off = 0
        for p in e.parts:
            n = part_legs(p)
            if off <= leg < off + n:
                if isinstance(p, Const):
                    parts.extend([p, ONE_NODE])
                else:
                    parts.append(coproduct0(p, leg - off))
            else:
                parts.append(p)
            off += n
        return tensor(*parts)
    raise ExprError(f"unknown node {type(e).__name__}")


def counit_scalar(e: Node) -> Scalar:
    """epsilon on a one-leg expression."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, (Gen, Alias)):
        return ZERO
    if isinstance(e, Add):
        return sum((counit_scalar(t) for t in e.terms), ZERO)
    if isinstance(e, Mul):
        out = ONE_SCALAR
        for f in e.factors:
            out = out * counit_scalar(f)
        return out
    if isinstance(e, Exp):
        try:
            return exp_symbol(counit_scalar(e.arg))
        except ScalarError as exc:
            raise ExprError(f"counit of {render(e)}: {exc}") from None
    if isinstance(e, Log1p):
        v = counit_scalar(e.arg)
        if v:
            raise ExprError(f"counit of {render(e)} is log(1 + {v}), not exact")
        return ZERO
    if isinstance(e, Tensor):
        out = ONE_SCALAR
        for p in e.parts:
            out = out * counit_scalar(p)
        return out
    raise ExprError(f"unknown node {type(e).__name__}")


def counit(e: Node, leg: int = 0) -> Node:
    """Apply epsilon on one leg; the result has one leg fewer (a Const for one-leg input)."""
    if e.legs is None:
        return e
    if e.legs == 1:
        return Const(counit_scalar(e))
    if not 0 <= leg < e.legs:
        raise ExprError(f"leg {leg} out of range for a {e.legs}-leg expression")
    if isinstance(e, Add):
        return add(*[counit(t, leg) for t in e.terms])
    if isinstance(e, Mul):
        return mul(*[counit(f, leg) for f in e.factors])
    if isinstance(e, Exp):
        return exp_(counit(e.arg, leg))
    if isinstance(e, Log1p):
        return log1p(counit(e.arg, leg))
    if isinstance(e, Tensor):
        parts = []
        coeff = ONE_SCALAR
        off = 0
        for p in e.parts:
            n = part_legs(p)
            if off <= leg < off + n:
                if n == 1:
                    coeff = counit_scalar(p)
                else:
                    parts.append(counit(p, leg - off))
            else:
                parts.append(p)
            off += n
        if not coeff:
            return ZERO_NODE
        return mul(Const(coeff), tensor(*parts))
    raise ExprError(f"unknown node {type(e).__name__}")


def antipode(e: Node, leg: int | None = None) -> Node:
    """Undeformed antipode: anti-multiplicative, -1 on generators.

    For multi-leg input it acts on one leg of sums of pure tensors.
    """
    if e.legs is None:
        return e
    if e.legs == 1:
        return _antipode1(e)
    if leg is None:
        raise ExprError("antipode on a multi-leg expression needs a leg")
    if isinstance(e, Add):
        return add(*[antipode(t, leg) for t in e.terms])
    if isinstance(e, Mul) and len([f for f in e.factors if not isinstance(f, Const)]) == 1:
        return mul(*[antipode(f, leg) for f in e.factors])
    if isinstance(e, Tensor):
        parts = []
        off = 0
        for p in e.parts:
            n = part_legs(p)
            parts.append(antipode(p, leg - off) if off <= leg < off + n else p)
            off += n
        return tensor(*parts)
    raise ExprError(f"antipode on one leg of {render(e)} needs a pure-tensor form")


def _antipode1(e: Node) -> Node:
    if isinstance(e, Const):
        return e
    if isinstance(e, Gen):
        return neg(e)
    if isinstance(e, Alias):
        return _antipode1(e.definition())
    if isinstance(e, Add):
        return add(*[_antipode1(t) for t in e.terms])
    if isinstance(e, Mul):
        return mul(*[_antipode1(f) for f in reversed(e.factors)])
    if isinstance(e, Exp):
        return exp_(_antipode1(e.arg))
    if isinstance(e, Log1p):
        return log1p(_antipode1(e.arg))
    if isinstance(e, Tensor):
        return tensor(*[_antipode1(p) for p in e.parts])
    raise ExprError(f"unknown node {type(e).__name__}")


def inverse_exp_product(e: Node) -> Node:
    """Inverse of a product of exponentials: reversed order, negated exponents."""
    factors = e.factors if isinstance(e, Mul) else (e,)
    inv = []
    for f in reversed(factors):
        if isinstance(f, Exp):
            inv.append(exp_(neg(f.arg)))
        elif isinstance(f, Const):
            inv.append(Const(ONE_SCALAR / f.value))
        elif isinstance(f, Tensor) and all(isinstance(p, Const) for p in f.parts):
            inv.append(tensor(*[Const(ONE_SCALAR / p.value) for p in f.parts]))
        else:
            raise ExprError(f"cannot invert factor {render(f)} symbolically")
    return mul(*inv)


def leg_flip(e: Node) -> Node:
    """tau on a two-leg expression (swap the legs of every pure tensor)."""
    if e.legs is None:
        return e
    if e.legs != 2:
        raise ExprError("leg flip needs a two-leg expression")
    if isinstance(e, Tensor) and len(e.parts) == 2:
        return tensor(e.parts[1], e.parts[0])
    if isinstance(e, Add):
        return add(*[leg_flip(t) for t in e.terms])
    if isinstance(e, Mul):
        return mul(*[leg_flip(f) for f in e.factors])
    if isinstance(e, Exp):
        return exp_(leg_flip(e.arg))
    if isinstance(e, Log1p):
        return log1p(leg_flip(e.arg))
    raise ExprError(f"cannot flip legs of {render(e)}")


# -------------------------------------------------------------- evaluation

class Evaluator:
    """Evaluates expressions into representations, memoising shared subtrees."""

    def __init__(self, reps: Sequence[Representation]):
        self.reps = tuple(reps)
        self.memo: dict = {}

    def __call__(self, e: Node) -> Matrix:
        n = e.legs if e.legs is not None else len(self.reps)
        if n != len(self.reps):
            raise EvalError(f"expression has {n} legs but {len(self.reps)} representations were given")
        return self._eval(e, 0, n)

    def _eval(self, e: Node, off: int, n: int) -> Matrix:
        key = (e, off, n)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = self._compute(e, off, n)
        self.memo[key] = out
        return out

    def _dim(self, off, n):
        d = 1
        for r in self.reps[off:off + n]:
            d *= r.dim
        return d

    def _compute(self, e: Node, off: int, n: int) -> Matrix:
        if isinstance(e, Const):
            return Matrix.identity(self._dim(off, n)).scale(e.value)
        if isinstance(e, Gen):
            return self.reps[off].image(e.name)
        if isinstance(e, Alias):
            return self._eval(e.definition(), off, n)
        if isinstance(e, Add):
            out = Matrix.zeros(self._dim(off, n))
            for t in e.terms:
                out = out + self._eval(t, off, n)
            return out
        if isinstance(e, Mul):
            out = None
            for f in e.factors:
                m = self._eval(f, off, n)
                out = m if out is None else out @ m
            return out
        if isinstance(e, Tensor):
            mats = []
            o = off
            for p in e.parts:
                k = part_legs(p)
                mats.append(self._eval(p, o, k))
                o += k
            return kron_all(mats)
        if isinstance(e, Exp):
            m = self._eval(e.arg, off, n)
            try:
                return mat_exp(m)
            except MatrixError as exc:
                raise EvalError(f"exp({render(e.arg)}) is not exactly computable in "
                                f"{self._rep_names(off, n)}: {exc}", witness=exc.witness) from None
        if isinstance(e, Log1p):
            m = self._eval(e.arg, off, n)
            try:
                return mat_log1p_nilpotent(m)
            except MatrixError as exc:
                raise EvalError(f"log1p({render(e.arg)}): argument not nilpotent in "
                                f"{self._rep_names(off, n)}", witness=exc.witness) from None
        raise EvalError(f"unknown node {type(e).__name__}")

    def _rep_names(self, off, n):
        return "(x)".join(r.name for r in self.reps[off:off + n])


def eval_expr(e: Node, reps: Sequence[Representation]) -> Matrix:
    return Evaluator(reps)(e)


# ----------------------------------------------------------------- Sweedler

PureTerm = tuple  # (Scalar, tuple[Node, ...])


def _merge(terms: Iterable[PureTerm]) -> list[PureTerm]:
    acc: dict[tuple, Scalar] = {}
    order = []
    for c, words in terms:
        if words in acc:
            acc[words] = acc[words] + c
        else:
            acc[words] = c
            order.append(words)
    return [(acc[w], w) for w in order if acc[w]]


def _leg_word(c: Scalar, e: Node) -> PureTerm:
    k, rest = _split_coeff(e)
    return c * k, rest


def _product(a: list[PureTerm], b: list[PureTerm]) -> list[PureTerm]:
    out = []
    for ca, wa in a:
        for cb, wb in b:
            words = []
            coeff = ca * cb
            for x, y in zip(wa, wb):
                k, w = _leg_word(ONE_SCALAR, mul(x, y))
                coeff = coeff * k
                words.append(w)
            out.append((coeff, tuple(words)))
    return _merge(out)


class SweedlerExpander:
    """Splits a k-leg expression into a finite sum of pure tensors.

    Exponentials of multi-leg arguments are expanded as power series; the
    series is cut at the first power that vanishes in every check pair of
    representations (by default rho_i and their duals, so that the cut is also
    sound after applying the antipode on any one leg).
    """

    def __init__(self, reps: Sequence[Representation], check_reps: Sequence[Sequence[Representation]] | None = None,
                 max_order: int | None = None):
        self.reps = tuple(reps)
        if check_reps is None:
            duals = [dual_rep(r) for r in reps]
            check_reps = [tuple(reps)]
            for i in range(len(reps)):
                alt = list(reps)
                alt[i] = duals[i]
                check_reps.append(tuple(alt))
        self.check = [Evaluator(c) for c in check_reps]
        dim = 1
        for r in reps:
            dim *= r.dim
        self.max_order = max_order if max_order is not None else dim + 1

    def expand(self, e: Node) -> list[PureTerm]:
        k = len(self.reps)
        if e.legs is not None and e.legs != k:
            raise ExprError(f"expression has {e.legs} legs, expected {k}")
        terms = self._terms(e, k)
        return [t for t in _merge(terms) if not self._vanishes(t)]

    def _terms(self, e: Node, k: int) -> list[PureTerm]:
        if isinstance(e, Const):
            return [(e.value, tuple([ONE_NODE] * k))] if e.value else []
        if k == 1:
            c, w = _leg_word(ONE_SCALAR, e)
            return [(c, (w,))]
        if isinstance(e, Add):
            out = []
            for t in e.terms:
                out.extend(self._terms(t, k))
            return _merge(out)
        if isinstance(e, Mul):
            out = [(ONE_SCALAR, tuple([ONE_NODE] * k))]
            for f in e.factors:
                out = _product(out, self._terms(f, k))
            return out
        if isinstance(e, Tensor):
            out = [(ONE_SCALAR, ())]
            for p in e.parts:
                pk = part_legs(p)
                sub = self._terms(p, pk)
                out = [(c1 * c2, w1 + w2) for c1, w1 in out for c2, w2 in sub]
            return _merge(out)
        if isinstance(e, Exp):
            return self._exp_terms(e.arg, k)
        raise ExprError(f"no pure-tensor form for {render(e)}")

    def _exp_terms(self, x: Node, k: int) -> list[PureTerm]:
        xs = self._terms(x, k)
        mats = [ev(x) for ev in self.check]
        powers = [m for m in mats]
        out = [(ONE_SCALAR, tuple([ONE_NODE] * k))]
        term = out
        for order in range(1, self.max_order + 1):
            if all(p.is_zero() for p in powers):
                return _merge(out)
            term = [(c / order, w) for c, w in _product(term, xs)]
            out = out + term
            powers = [p @ m for p, m in zip(powers, mats)]
        raise ExprError(f"exponential series of {render(x)} does not terminate within order {self.max_order}")

    def _vanishes(self, t: PureTerm) -> bool:
        c, words = t
        for ev in self.check:
            if not any(Evaluator((ev.reps[i],))(w).is_zero() for i, w in enumerate(words)):
                return False
        return True


def sweedler_expand(F: Node, reps: Sequence[Representation], check_reps=None) -> list[PureTerm]:
    """Finite list of (scalar, (leg words...)) summing to F in the given representations."""
    return SweedlerExpander(reps, check_reps).expand(F)


def reassemble(terms: Sequence[PureTerm], reps: Sequence[Representation]) -> Matrix:
    evs = [Evaluator((r,)) for r in reps]
    dim = 1
    for r in reps:
        dim *= r.dim
    out = Matrix.zeros(dim)
    for c, words in terms:
        out = out + kron_all(ev(w) for ev, w in zip(evs, words)).scale(c)
    return out
