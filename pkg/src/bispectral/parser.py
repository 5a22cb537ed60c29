"""Recursive-descent parser and canonical printer for operator text.

Grammar::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := base ("^" uint)?
    base   := uint | "i" | identifier | "(" expr ")"

Division by an order-zero factor is right multiplication by its inverse,
which makes ``(num)/(den)*Dx^j`` (the printed form) parse back exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, ReservedSymbolMisuse, UnboundParameter
from .exactnum import GaussianRational, Poly, RatFunc, format_poly, format_scalar, gr

__all__ = [
    "Scalar",
    "Symbol",
    "Sum",
    "Product",
    "Power",
    "Quotient",
    "ParamEnv",
    "parse",
    "parse_scalar",
    "parse_op",
    "to_oreop",
    "print_op",
    "print_tree",
    "RESERVED",
    "DIALECT_SYMBOLS",
]

RESERVED = frozenset({"x", "y", "Dx", "Dy", "BB", "S", "X2", "i"})

DIALECT_SYMBOLS = {
    "scalar": frozenset(),
    "raw-x": frozenset({"x", "Dx"}),
    "raw-y": frozenset({"y", "Dy"}),
    "exp": frozenset({"x", "Dx"}),
    "airy": frozenset({"x", "Dx"}),
    "bessel": frozenset({"BB", "S", "X2"}),
}


# expression trees ----------------------------------------------------------------
@dataclass(frozen=True)
class Scalar:
    value: GaussianRational


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Sum:
    children: tuple


@dataclass(frozen=True)
class Product:
    children: tuple


@dataclass(frozen=True)
class Power:
    base: object
    exp: int

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("negative exponent in expression tree")


@dataclass(frozen=True)
class Quotient:
    num: object
    den: object


def tree_symbols(t) -> set:
    if isinstance(t, Symbol):
        return {t.name}
    if isinstance(t, (Sum, Product)):
        out = set()
        for c in t.children:
            out |= tree_symbols(c)
        return out
    if isinstance(t, Power):
        return tree_symbols(t.base)
    if isinstance(t, Quotient):
        return tree_symbols(t.num) | tree_symbols(t.den)
    return set()


@dataclass
class ParamEnv:
    """Named exact parameters substituted while parsing."""

    values: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.values.items():
            if k in RESERVED:
                raise ReservedSymbolMisuse(f"parameter name {k!r} is reserved")
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", k):
                raise ParseError(f"invalid parameter name {k!r}")
            clean[k] = gr(v) if not isinstance(v, str) else parse_scalar(v)
        self.values = clean

    @classmethod
    def of(cls, env):
        if env is None:
            return cls({})
        if isinstance(env, ParamEnv):
            return env
        return cls(dict(env))

    def with_values(self, **kw):
        d = dict(self.values)
        d.update(kw)
        return ParamEnv(d)

    def __contains__(self, k):
        return k in self.values

    def __getitem__(self, k):
        return self.values[k]


# tokenizer ------------------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, allowed, env):
        self.toks = _tokenize(text)
        self.i = 0
        self.allowed = allowed
        self.env = env

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}, found {t[1] or 'end of input'!r}", t[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        tree = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return tree

    def expr(self):
        terms = []
        t = self.peek()
        sign = 1
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        terms.append(_negate(self.term()) if sign < 0 else self.term())
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                nxt = self.term()
                terms.append(_negate(nxt) if t[1] == "-" else nxt)
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        node = self.factor()
        factors = [node]
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                factors.append(self.factor())
            elif t[0] == "op" and t[1] == "/":
                self.take()
                den = self.factor()
                left = factors[0] if len(factors) == 1 else Product(tuple(factors))
                factors = [Quotient(left, den)]
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self):
        b = self.base()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise ParseError("exponent must be a nonnegative integer", e[2])
            return Power(b, int(e[1]))
        return b

    def base(self):
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            return Scalar(gr(int(val)))
        if kind == "id":
            if val == "i":
                return Scalar(GaussianRational(0, 1))
            if val in self.allowed:
                return Symbol(val)
            if val in RESERVED:
                raise ReservedSymbolMisuse(f"symbol {val!r} is not part of this dialect", pos)
            if val in self.env:
                return Scalar(self.env[val])
            raise UnboundParameter(f"unbound parameter {val!r}", pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def _negate(node):
    if isinstance(node, Scalar):
        return Scalar(-node.value)
    return Product((Scalar(gr(-1)), node))


def parse(text: str, dialect: str = "raw-x", env=None):
    """Parse ``text`` into an expression tree for the given dialect."""
    if dialect not in DIALECT_SYMBOLS:
        raise ParseError(f"unknown dialect {dialect!r}")
    return _Parser(text, DIALECT_SYMBOLS[dialect], ParamEnv.of(env)).parse()


# scalar evaluation ---------------------------------------------------------------------
def eval_scalar_tree(t):
    if isinstance(t, Scalar):
        return t.value
    if isinstance(t, Sum):
        acc = gr(0)
        for c in t.children:
            acc = acc + eval_scalar_tree(c)
        return acc
    if isinstance(t, Product):
        acc = gr(1)
        for c in t.children:
            acc = acc * eval_scalar_tree(c)
        return acc
    if isinstance(t, Power):
        return eval_scalar_tree(t.base) ** t.exp
    if isinstance(t, Quotient):
        return eval_scalar_tree(t.num) / eval_scalar_tree(t.den)
    raise ParseError(f"symbol {t.name!r} in scalar expression")


def parse_scalar(text: str, env=None) -> GaussianRational:
    """Exact Gaussian rational from text such as ``-3/4+1/2*i``."""
    tree = _Parser(str(text), frozenset(), ParamEnv.of(env)).parse()
    return eval_scalar_tree(tree)


# operator evaluation (raw dialects) -------------------------------------------------------
def to_oreop(tree, var="x"):
    """Expand a raw-dialect tree into an :class:`OreOp`."""
    from .orealg import OreOp

    dname = "D" + var
    cache = {}

    def ev(t):
        key = id(t)
        if key in cache:
            return cache[key][1]
        if isinstance(t, Scalar):
            r = OreOp.mult(t.value, var)
        elif isinstance(t, Symbol):
            if t.name == var:
                r = OreOp.mult(Poly.gen(var), var)
            elif t.name == dname:
                r = OreOp.D(var)
            else:
                raise ReservedSymbolMisuse(f"symbol {t.name!r} in a {var}-operator")
        elif isinstance(t, Sum):
            r = OreOp.zero(var)
            for c in t.children:
                r = r + ev(c)
        elif isinstance(t, Product):
            r = ev(t.children[0])
            for c in t.children[1:]:
                r = r * ev(c)
        elif isinstance(t, Power):
            b = ev(t.base)
            r = OreOp.identity(var)
            for _ in range(t.exp):
                r = r * b
        elif isinstance(t, Quotient):
            den = ev(t.den)
            if den.order != 0:
                raise ParseError("division by an operator of positive order")
            r = ev(t.num) * OreOp.mult(den.c[0].inverse(), var)
        else:
            raise TypeError(t)
        cache[key] = (t, r)
        return r

    return ev(tree)


def parse_op(text: str, var: str = "x", env=None):
    """Parse raw operator text in ``var`` (``x``/``Dx`` or ``y``/``Dy``)."""
    return to_oreop(parse(text, f"raw-{var}", env), var)


# printing ------------------------------------------------------------------------------------
def _coeff_text(a: RatFunc):
    """Text of a coefficient and whether it is a single signed monomial."""
    if a.is_poly():
        n = a.num
        body = format_poly(n)
        nonzero = sum(1 for c in n.c if c)
        simple = nonzero == 1 and not (len(n.c) == 1 and gr(n.c[0]).im and gr(n.c[0]).re)
        return body, simple
    return f"({format_poly(a.num)})/({format_poly(a.den)})", True


def print_op(op) -> str:
    """Canonical text, highest derivative first; round-trips through parse_op."""
    if not op.c:
        return "0"
    dname = "D" + op.var
    parts = []
    for j in range(len(op.c) - 1, -1, -1):
        a = op.c[j]
        if not a.num.c:
            continue
        body, simple = _coeff_text(a)
        if j == 0:
            parts.append(body)
            continue
        dpow = dname if j == 1 else f"{dname}^{j}"
        if body == "1":
            parts.append(dpow)
        elif body == "-1":
            parts.append("-" + dpow)
        elif simple:
            parts.append(f"{body}*{dpow}")
        else:
            parts.append(f"({body})*{dpow}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def print_tree(t) -> str:
    """Fully parenthesised text of an expression tree."""
    if isinstance(t, Scalar):
        s = format_scalar(t.value)
        return s if s.lstrip("-").isalnum() and "-" not in s[1:] and not s.startswith("-") else f"({s})"
    if isinstance(t, Symbol):
        return t.name
    if isinstance(t, Sum):
        return "(" + " + ".join(print_tree(c) for c in t.children) + ")"
    if isinstance(t, Product):
        return "*".join(print_tree(c) for c in t.children)
    if isinstance(t, Power):
        return f"{print_tree(t.base)}^{t.exp}"
    if isinstance(t, Quotient):
        return f"({print_tree(t.num)})/({print_tree(t.den)})"
    raise TypeError(t)
