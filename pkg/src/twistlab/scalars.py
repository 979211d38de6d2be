"""Exact coefficient field: rational functions over Q in a fixed parameter alphabet.

Polynomials are plain dicts mapping a packed monomial (an int) to a
``gmpy2.mpq`` coefficient.  A packed monomial stores the total degree in its
top bits and the exponents below it, first parameter most significant, so
integer comparison of packed monomials *is* graded-lex order and monomial
multiplication is integer addition.

``Scalar`` is an immutable, canonically normalised fraction of two such
polynomials; equality of scalars is equality of their canonical forms.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

import gmpy2
from gmpy2 import mpq

PARAMS: tuple[str, ...] = (
    "xi", "lambda", "theta", "eta", "v", "s", "t", "alpha", "beta", "exp_eta",
)
# exp of an integer multiple of the key is a power of the value symbol
EXP_SYMBOLS: dict[str, str] = {"eta": "exp_eta"}

_BITS = 12
_MASK = (1 << _BITS) - 1
_NV = len(PARAMS)
_DEG_SHIFT = _BITS * _NV
_INDEX = {name: i for i, name in enumerate(PARAMS)}
_SHIFT = [_BITS * (_NV - 1 - i) for i in range(_NV)]
# one power of variable i, including its contribution to the degree field
_VARMONO = [(1 << _DEG_SHIFT) | (1 << s) for s in _SHIFT]
_MAX_EXP = _MASK

Poly = dict  # packed monomial -> mpq
_ONE_COEF = mpq(1)


class ScalarError(ArithmeticError):
    """Base class for exact-arithmetic failures."""


class ScalarZeroDivision(ScalarError, ZeroDivisionError):
    pass


class ScalarParseError(ScalarError, ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos
        self.text = text


# ---------------------------------------------------------------- monomials

def unpack(mono: int) -> tuple[int, ...]:
    return tuple((mono >> s) & _MASK for s in _SHIFT)


def pack(exps: Iterable[int]) -> int:
    mono = 0
    deg = 0
    for e, s in zip(exps, _SHIFT):
        if e < 0 or e > _MAX_EXP:
            raise ScalarError(f"exponent {e} out of range")
        mono |= e << s
        deg += e
    return mono | (deg << _DEG_SHIFT)


def _exp_of(mono: int, i: int) -> int:
    return (mono >> _SHIFT[i]) & _MASK


def _mono_divides(a: int, b: int) -> bool:
    """True if monomial a divides monomial b."""
    for s in _SHIFT:
        if (a >> s) & _MASK > (b >> s) & _MASK:
            return False
    return True


def _mono_min(a: int, b: int) -> int:
    return pack(min((a >> s) & _MASK, (b >> s) & _MASK) for s in _SHIFT)


# -------------------------------------------------------------- polynomials

ONE: Poly = {0: _ONE_COEF}


def p_const(c) -> Poly:
    c = mpq(c)
    return {0: c} if c else {}


def p_var(i: int) -> Poly:
    return {_VARMONO[i]: _ONE_COEF}


def p_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            v = v + c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def p_neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_scale(a: Poly, k) -> Poly:
    if not k:
        return {}
    return {m: c * k for m, c in a.items()}


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    if len(a) == 1 and 0 in a:
        return p_scale(b, a[0])
    if len(b) == 1 and 0 in b:
        return p_scale(a, b[0])
    out: Poly = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def p_mul_into(acc: Poly, a: Poly, b: Poly) -> None:
    """acc += a*b in place (zero coefficients may be left behind)."""
    get = acc.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            acc[m] = get(m, 0) + ca * cb


def p_pow(a: Poly, n: int) -> Poly:
    out = ONE
    base = a
    while n:
        if n & 1:
            out = p_mul(out, base)
        n >>= 1
        if n:
            base = p_mul(base, base)
    return out


def p_is_const(a: Poly) -> bool:
    return not a or (len(a) == 1 and 0 in a)


def p_is_one(a: Poly) -> bool:
    return len(a) == 1 and a.get(0) == 1


def p_vars(a: Poly) -> set[int]:
    found = set()
    for m in a:
        if m:
            for i, s in enumerate(_SHIFT):
                if (m >> s) & _MASK:
                    found.add(i)
    return found


def p_degree(a: Poly, i: int) -> int:
    return max((_exp_of(m, i) for m in a), default=-1)


def p_split(a: Poly, i: int) -> dict[int, Poly]:
    """View a as a univariate polynomial in variable i."""
    parts: dict[int, Poly] = {}
    vm = _VARMONO[i]
    for m, c in a.items():
        e = _exp_of(m, i)
        parts.setdefault(e, {})[m - e * vm] = c
    return parts


def p_join(parts: Mapping[int, Poly], i: int) -> Poly:
    out: Poly = {}
    vm = _VARMONO[i]
    for e, part in parts.items():
        shift = e * vm
        for m, c in part.items():
            out[m + shift] = c
    return out


def p_divexact(a: Poly, b: Poly) -> Poly:
    """Quotient a/b, which must be exact."""
    if not b:
        raise ScalarZeroDivision("polynomial division by zero")
    if len(b) == 1:
        (mb, cb), = b.items()
        out = {}
        for m, c in a.items():
            if not _mono_divides(mb, m):
                raise ScalarError("inexact polynomial division")
            out[m - mb] = c / cb
        return out
    q: Poly = {}
    r = dict(a)
    lb = max(b)
    cb = b[lb]
    while r:
        lr = max(r)
        if not _mono_divides(lb, lr):
            raise ScalarError("inexact polynomial division")
        m = lr - lb
        c = r[lr] / cb
        q[m] = c
        for mono, coef in b.items():
            key = mono + m
            v = r.get(key, 0) - c * coef
            if v:
                r[key] = v
            else:
                r.pop(key, None)
    return q


def p_primitive(a: Poly) -> Poly:
    """Integer-primitive associate of a with positive leading coefficient."""
    if not a:
        return {}
    den = reduce(gmpy2.lcm, (c.denominator for c in a.values()))
    num = abs(reduce(gmpy2.gcd, (c.numerator * (den // c.denominator) for c in a.values())))
    k = mpq(den, num)
    if a[max(a)] < 0:
        k = -k
    return {m: c * k for m, c in a.items()}


def _content(a: Poly, x: int) -> Poly:
    parts = p_split(a, x)
    if len(parts) == 1:
        return p_primitive(next(iter(parts.values())))
    return reduce(p_gcd, parts.values())


def _prem(a: Poly, b: Poly, x: int) -> Poly:
    r = p_split(a, x)
    bs = p_split(b, x)
    db = max(bs)
    lcb = bs[db]
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        new = {d: p_mul(lcb, c) for d, c in r.items()}
        for d, c in bs.items():
            key = d + dr - db
            v = p_sub(new.get(key, {}), p_mul(lcr, c))
            if v:
                new[key] = v
            else:
                new.pop(key, None)
        r = {d: c for d, c in new.items() if c}
    return p_join(r, x)


def p_gcd(a: Poly, b: Poly) -> Poly:
    """GCD over Q by content / primitive-part recursion on the smallest variable.

    The result is integer-primitive with positive leading coefficient.
    """
    if not a:
        return p_primitive(b)
    if not b:
        return p_primitive(a)
    va, vb = p_vars(a), p_vars(b)
    if not va or not vb:
        return dict(ONE)
    if len(a) == 1 and len(b) == 1:
        return {_mono_min(next(iter(a)), next(iter(b))): _ONE_COEF}
    x = min(va | vb)
    ca, cb = _content(a, x), _content(b, x)
    c = p_gcd(ca, cb)
    pa, pb = p_divexact(a, ca), p_divexact(b, cb)
    da, db = p_degree(pa, x), p_degree(pb, x)
    if da <= 0 or db <= 0:
        g = dict(ONE)
    else:
        if da < db:
            pa, pb = pb, pa
        while True:
            r = _prem(pa, pb, x)
            if not r:
                g = pb
                break
            if p_degree(r, x) == 0:
                g = dict(ONE)
                break
            pa, pb = pb, p_divexact(r, _content(r, x))
    return p_primitive(p_mul(c, g))


def p_eval(a: Poly, values: Mapping[int, "Scalar"]) -> "Scalar":
    """Substitute Scalar values for some variables; returns a Scalar."""
    total = Scalar(0)
    cache: dict[tuple[int, int], Scalar] = {}
    for m, c in a.items():
        kept = m
        term = Scalar._from_poly({0: c})
        for i, val in values.items():
            e = _exp_of(m, i)
            if e:
                kept -= e * _VARMONO[i]
                key = (i, e)
                pw = cache.get(key)
                if pw is None:
                    pw = cache[key] = val ** e
                term = term * pw
        total = total + term * Scalar._from_poly({kept: _ONE_COEF})
    return total


def _fmt_mono(mono: int) -> str:
    parts = []
    for name, e in zip(PARAMS, unpack(mono)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def p_render(a: Poly, key=None) -> str:
    """Render a polynomial with integer-or-rational coefficients, terms in
    descending graded-lex order (or by ``key`` when given)."""
    if not a:
        return "0"
    monos = sorted(a, key=key, reverse=True) if key else sorted(a, reverse=True)
    out = []
    for idx, m in enumerate(monos):
        c = a[m]
        neg = c < 0
        c = -c if neg else c
        body = _fmt_mono(m)
        if c.denominator != 1:
            cs = f"{c.numerator}/{c.denominator}"
        else:
            cs = str(c.numerator)
        if not body:
            term = cs
        elif cs == "1":
            term = body
        else:
            term = f"{cs}*{body}"
        if idx == 0:
            out.append(("-" if neg else "") + term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out)


# ------------------------------------------------------------------ Scalar

def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or str")
    return mpq(x)


class Scalar:
    """Immutable element of Q(xi, lambda, theta, eta, v, s, t, alpha, beta, exp_eta)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.num, self.den, self._hash = value.num, value.den, value._hash
            return
        if isinstance(value, str):
            s = parse_scalar(value)
            self.num, self.den, self._hash = s.num, s.den, None
            return
        c = _to_mpq(value)
        self.num = {0: c} if c else {}
        self.den = ONE
        self._hash = None

    @classmethod
    def _from_poly(cls, num: Poly) -> "Scalar":
        s = object.__new__(cls)
        s.num = num
        s.den = ONE
        s._hash = None
        return s

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "Scalar":
        if not den:
            raise ScalarZeroDivision("zero denominator")
        if not num:
            return ZERO
        if p_is_const(den):
            c = den[0]
            return cls._from_poly(num if c == 1 else {m: v / c for m, v in num.items()})
        if len(den) == 1:
            # monomial denominator: the gcd is the common monomial factor
            g = next(iter(den))
            for m in num:
                g = _mono_min(g, m)
                if not g:
                    break
            if g:
                num = {m - g: v for m, v in num.items()}
                den = {m - g: v for m, v in den.items()}
        else:
            g = p_gcd(num, den)
            if not p_is_one(g):
                num = p_divexact(num, g)
                den = p_divexact(den, g)
        if p_is_const(den):
            c = den[0]
            return cls._from_poly({m: v / c for m, v in num.items()})
        pd = p_primitive(den)
        k = pd[max(pd)] / den[max(den)]
        s = object.__new__(cls)
        s.num = p_scale(num, k)
        s.den = pd
        s._hash = None
        return s

    @classmethod
    def param(cls, name: str) -> "Scalar":
        try:
            return cls._from_poly(p_var(_INDEX[name]))
        except KeyError:
            raise ScalarError(f"unknown parameter {name!r}; known: {', '.join(PARAMS)}") from None

    # -- predicates
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den is ONE or p_is_one(self.den)

    def is_constant(self) -> bool:
        return self.is_polynomial() and p_is_const(self.num)

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a constant")
        c = self.num.get(0, mpq(0))
        return Fraction(int(c.numerator), int(c.denominator))

    def parameters(self) -> list[str]:
        return [PARAMS[i] for i in sorted(p_vars(self.num) | p_vars(self.den))]

    # -- arithmetic
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        if self.is_polynomial() and o.is_polynomial():
            return Scalar._from_poly(p_add(self.num, o.num))
        if self.den == o.den:
            return Scalar._make(p_add(self.num, o.num), self.den)
        return Scalar._make(
            p_add(p_mul(self.num, o.den), p_mul(o.num, self.den)),
            p_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)
        s.num = p_neg(self.num)
        s.den = self.den
        s._hash = None
        return s

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return ZERO
        if self.is_polynomial() and o.is_polynomial():
            return Scalar._from_poly(p_mul(self.num, o.num))
        return Scalar._make(p_mul(self.num, o.num), p_mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ScalarZeroDivision("inverse of zero")
        return Scalar._make(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ScalarZeroDivision(f"division of {self} by zero")
        if o.is_constant():
            return Scalar._from_poly(p_scale(self.num, 1 / o.num[0])) if self.is_polynomial() \
                else Scalar._make(self.num, p_scale(self.den, o.num[0]))
        return Scalar._make(p_mul(self.num, o.den), p_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_polynomial():
            return Scalar._from_poly(p_pow(self.num, n))
        return Scalar._make(p_pow(self.num, n), p_pow(self.den, n))

    # -- comparison / hashing
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and (self.den == o.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # -- substitution
    def subs(self, bindings: Mapping[str, object]) -> "Scalar":
        vals = {}
        for name, val in bindings.items():
            if name not in _INDEX:
                raise ScalarError(f"unknown parameter {name!r}")
            vals[_INDEX[name]] = _coerce_strict(val)
        present = p_vars(self.num) | p_vars(self.den)
        vals = {i: v for i, v in vals.items() if i in present}
        if not vals:
            return self
        num = p_eval(self.num, vals)
        den = p_eval(self.den, vals) if not self.is_polynomial() else ONE_SCALAR
        if den.is_zero():
            raise ScalarZeroDivision(f"substitution {dict(bindings)} makes the denominator of {self} vanish")
        return num / den

    # -- rendering
    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpq":
        return Scalar(x)
    return NotImplemented


def _coerce_strict(x) -> Scalar:
    if isinstance(x, str):
        return parse_scalar(x)
    o = _coerce(x)
    if o is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a Scalar")
    return o


ZERO = Scalar(0)
ONE_SCALAR = Scalar(1)


def S(x) -> Scalar:
    """Shorthand coercion: ints, Fractions, parameter expressions as strings."""
    return _coerce_strict(x)


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    ops = {"add": Scalar.__add__, "sub": Scalar.__sub__, "mul": Scalar.__mul__, "div": Scalar.__truediv__}
    try:
        return ops[op](S(a), S(b))
    except KeyError:
        raise ScalarError(f"unknown operation {op!r}") from None


def substitute(a: Scalar, bindings: Mapping[str, object]) -> Scalar:
    return S(a).subs(bindings)


def is_zero(a: Scalar) -> bool:
    return S(a).is_zero()


def _integerize(p: Poly) -> tuple[Poly, int]:
    """p = q / d with q integer-coefficient, d > 0 the lcm of coefficient denominators."""
    if not p:
        return {}, 1
    d = int(reduce(gmpy2.lcm, (c.denominator for c in p.values())))
    return {m: c * d for m, c in p.items()}, d


def _atomic(text: str) -> bool:
    return re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*|\d+", text) is not None


def render_scalar(a: Scalar) -> str:
    """Stable, re-parseable text, e.g. ``(2*lambda - 1)/3``."""
    if a.is_polynomial():
        q, d = _integerize(a.num)
        body = p_render(q)
        if d == 1:
            return body
        if len(q) > 1:
            body = f"({body})"
        elif body.startswith("-"):
            return "-" + (body[1:] if _atomic(body[1:]) or "^" in body[1:] or "*" in body[1:] else f"({body[1:]})") + f"/{d}"
        return f"{body}/{d}"
    q, d = _integerize(a.num)
    den = p_scale(a.den, d)
    nb = p_render(q)
    db = p_render(den)
    if len(q) > 1:
        nb = f"({nb})"
    if not _atomic(db):
        db = f"({db})"
    return f"{nb}/{db}"


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\d*\.\d+)|(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|\(x\)|[-+*/^(),=]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split text into (kind, value, position) tokens; kinds: num, name, op, end."""
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1):
            raise ScalarParseError("floating point literals are not allowed", start, text)
        if m.group(2):
            out.append(("num", m.group(2), start))
        elif m.group(3):
            out.append(("name", m.group(3), start))
        else:
            tok = m.group(4)
            out.append(("op", "^" if tok == "**" else tok, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _ScalarParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        if tok[0] != "end":
            self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ScalarParseError(msg, tok[2], self.text)

    def parse(self) -> Scalar:
        val = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return val

    def expr(self) -> Scalar:
        val = self.term()
        while self.peek() in (("op", "+", self.peek()[2]), ("op", "-", self.peek()[2])):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Scalar:
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    self.error("division by zero", op)
                val = val / rhs
        return val

    def unary(self) -> Scalar:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num":
                self.error("integer exponent expected", tok)
            e = int(tok[1])
            if neg:
                if base.is_zero():
                    self.error("negative power of zero", tok)
                e = -e
            return base ** e
        return base

    def atom(self) -> Scalar:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return Scalar(int(val))
        if kind == "name":
            if val not in _INDEX:
                self.error(f"unknown parameter {val!r}", tok)
            return Scalar.param(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take()[:2] != ("op", ")"):
                self.error("')' expected")
            return inner
        self.error(f"unexpected token {val!r}" if val else "unexpected end of input", tok)


def parse_scalar(text: str) -> Scalar:
    """Parse ``(2*lambda - 1)/3``-style text.  ``^`` and ``**`` both mean power."""
    return _ScalarParser(text).parse()


def parse_binding(text: str) -> tuple[str, Scalar]:
    """Parse ``name=expr`` as used by ``--param``."""
    if "=" not in text:
        raise ScalarParseError("expected name=value", 0, text)
    name, _, rhs = text.partition("=")
    name = name.strip()
    if name not in _INDEX:
        raise ScalarParseError(f"unknown parameter {name!r}", 0, text)
    return name, parse_scalar(rhs)


def poly_coefficients(a: Scalar, names: Iterable[str]) -> dict[tuple[int, ...], Scalar]:
    """Split a polynomial Scalar by exponents of the given parameters.

    Returns {exponent tuple: coefficient Scalar free of those parameters}.
    """
    if not a.is_polynomial():
        raise ScalarError("coefficient extraction needs a polynomial")
    idx = [_INDEX[n] for n in names]
    out: dict[tuple[int, ...], Poly] = {}
    for m, c in a.num.items():
        exps = tuple(_exp_of(m, i) for i in idx)
        rest = m - sum(e * _VARMONO[i] for e, i in zip(exps, idx))
        out.setdefault(exps, {})[rest] = c
    return {k: Scalar._from_poly(v) for k, v in out.items()}


def divides(d: Scalar, a: Scalar) -> bool:
    """Polynomial divisibility d | a (both polynomial Scalars)."""
    if not (d.is_polynomial() and a.is_polynomial()):
        raise ScalarError("divisibility is defined for polynomials")
    try:
        p_divexact(a.num, d.num)
    except ScalarError:
        return False
    return True


def exp_symbol(a: Scalar) -> Scalar:
    """exp(k*p) for integer k and a parameter p with a registered exponential symbol."""
    if a.is_zero():
        return ONE_SCALAR
    if not a.is_polynomial() or len(a.num) != 1:
        raise ScalarError(f"exp({a}) has no exact representation")
    (m, c), = a.num.items()
    exps = unpack(m)
    if sum(exps) != 1 or c.denominator != 1:
        raise ScalarError(f"exp({a}) has no exact representation")
    name = PARAMS[exps.index(1)]
    if name not in EXP_SYMBOLS:
        raise ScalarError(f"exp({a}) has no exact representation")
    return Scalar.param(EXP_SYMBOLS[name]) ** int(c)
