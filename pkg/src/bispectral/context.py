"""Bispectral contexts (exp, Airy, Bessel), their generalized Fourier maps
and symmetric bases.

The Fourier map is an anti-isomorphism, so it is evaluated on expression
trees over the context generators: products reverse on the y side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContextMismatch, NotInFourierAlgebra, UnsupportedContext
from .exactnum import GaussianRational, Poly, RatFunc, gr
from .orealg import OreOp
from .parser import (
    Power,
    Product,
    Quotient,
    Scalar,
    Sum,
    Symbol,
    eval_scalar_tree,
    parse,
    print_tree,
    tree_symbols,
)

__all__ = [
    "Context",
    "GenExpr",
    "SymBasisElem",
    "make_context",
    "fourier",
    "sym_basis",
    "generator_images",
    "base_operator",
    "fourier_of_operator",
    "parse_gen",
]

KINDS = ("exp", "airy", "bessel")


@dataclass(eq=False)
class Context:
    kind: str
    nu: GaussianRational | None = None
    _memo: dict = field(default_factory=dict, repr=False)
    _gens: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedContext(f"unknown context {self.kind!r}")
        if self.kind == "bessel":
            if self.nu is None:
                raise UnsupportedContext("Bessel context needs nu")
            self.nu = gr(self.nu)
            if not self.nu.im and self.nu.re.denominator == 1:
                raise UnsupportedContext("Bessel context requires a non-integer nu")
        else:
            self.nu = None

    def __eq__(self, other):
        return isinstance(other, Context) and (self.kind, self.nu) == (other.kind, other.nu)

    def __hash__(self):
        return hash((self.kind, self.nu))

    @property
    def sigma_invariant(self):
        return self.kind in ("exp", "bessel")

    @property
    def dialect(self):
        return self.kind

    @property
    def symbols(self):
        return ("BB", "S", "X2") if self.kind == "bessel" else ("x", "Dx")

    def describe(self):
        if self.kind == "bessel":
            return f"bessel(nu={self.nu})"
        return self.kind


def make_context(kind: str, nu=None) -> Context:
    return Context(kind, nu)


def _nn1(ctx):
    return ctx.nu * (ctx.nu + 1)


def generator_images(ctx: Context) -> dict:
    """Map each generator symbol to its pair (x-operator, y-operator)."""
    if ctx._gens is not None:
        return ctx._gens
    x = OreOp.mult(Poly.gen("x"), "x")
    Dx = OreOp.D("x")
    y = OreOp.mult(Poly.gen("y"), "y")
    Dy = OreOp.D("y")
    if ctx.kind == "exp":
        g = {"x": (x, Dy), "Dx": (Dx, y)}
    elif ctx.kind == "airy":
        g = {"x": (x, Dy * Dy - y), "Dx": (Dx, Dy)}
    else:
        c = _nn1(ctx)
        inv_x2 = OreOp.mult(RatFunc(Poly([c], "x"), Poly.monomial(2, "x")), "x")
        inv_y2 = OreOp.mult(RatFunc(Poly([c], "y"), Poly.monomial(2, "y")), "y")
        g = {
            "BB": (Dx * Dx - inv_x2, y * y),
            "S": (x * Dx, y * Dy),
            "X2": (x * x, Dy * Dy - inv_y2),
        }
    ctx._gens = g
    return g


def _generator_adjoint_tree(ctx, name):
    if name == "Dx":
        return Product((Scalar(gr(-1)), Symbol("Dx")))
    if name == "S":
        return Sum((Product((Scalar(gr(-1)), Symbol("S"))), Scalar(gr(-1))))
    return Symbol(name)


def adjoint_tree(ctx, t):
    """Tree for the formal adjoint of the operator denoted by ``t``."""
    if isinstance(t, Scalar):
        return t
    if isinstance(t, Symbol):
        return _generator_adjoint_tree(ctx, t.name)
    if isinstance(t, Sum):
        return Sum(tuple(adjoint_tree(ctx, c) for c in t.children))
    if isinstance(t, Product):
        return Product(tuple(adjoint_tree(ctx, c) for c in reversed(t.children)))
    if isinstance(t, Power):
        return Power(adjoint_tree(ctx, t.base), t.exp)
    if isinstance(t, Quotient):
        return Quotient(adjoint_tree(ctx, t.num), t.den)
    raise TypeError(t)


@dataclass(eq=False)
class GenExpr:
    """A word over the context generators with both of its realisations."""

    ctx: Context
    tree: object
    x_op: OreOp
    y_op: OreOp

    @property
    def order(self):
        return self.x_op.order

    @property
    def coorder(self):
        return self.y_op.order

    def _same(self, other):
        if not isinstance(other, GenExpr):
            raise TypeError("GenExpr arithmetic needs GenExpr operands")
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx.describe()} vs {other.ctx.describe()}")

    def __add__(self, other):
        self._same(other)
        return GenExpr(self.ctx, Sum((self.tree, other.tree)), self.x_op + other.x_op, self.y_op + other.y_op)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, other):
        if isinstance(other, GenExpr):
            self._same(other)
            return GenExpr(
                self.ctx,
                Product((self.tree, other.tree)),
                self.x_op * other.x_op,
                other.y_op * self.y_op,
            )
        s = gr(other)
        return GenExpr(self.ctx, Product((Scalar(s), self.tree)), self.x_op * s, self.y_op * s)

    __rmul__ = __mul__

    def adjoint(self):
        return fourier(self.ctx, adjoint_tree(self.ctx, self.tree))

    def __str__(self):
        return print_tree(self.tree)

    def __repr__(self):
        return f"GenExpr({self.ctx.describe()}: {self})"


def fourier(ctx: Context, tree) -> GenExpr:
    """Evaluate a generator tree to its pair (operator in x, image in y)."""
    x_op, y_op = _eval_pair(ctx, tree)
    return GenExpr(ctx, tree, x_op, y_op)


def _eval_pair(ctx, t):
    memo = ctx._memo
    try:
        return memo[t]
    except KeyError:
        pass
    except TypeError:
        memo = {}
    gens = generator_images(ctx)
    if isinstance(t, Scalar):
        r = (OreOp.mult(t.value, "x"), OreOp.mult(t.value, "y"))
    elif isinstance(t, Symbol):
        if t.name not in gens:
            raise ContextMismatch(f"symbol {t.name!r} is not a {ctx.kind} generator")
        r = gens[t.name]
    elif isinstance(t, Sum):
        xs, ys = OreOp.zero("x"), OreOp.zero("y")
        for c in t.children:
            a, b = _eval_pair(ctx, c)
            xs, ys = xs + a, ys + b
        r = (xs, ys)
    elif isinstance(t, Product):
        xs, ys = _eval_pair(ctx, t.children[0])
        for c in t.children[1:]:
            a, b = _eval_pair(ctx, c)
            xs, ys = xs * a, b * ys
        r = (xs, ys)
    elif isinstance(t, Power):
        if t.exp == 0:
            r = (OreOp.identity("x"), OreOp.identity("y"))
        elif t.exp == 1:
            r = _eval_pair(ctx, t.base)
        else:
            a, b = _eval_pair(ctx, Power(t.base, t.exp - 1))
            c, d = _eval_pair(ctx, t.base)
            r = (a * c, d * b)
    elif isinstance(t, Quotient):
        if tree_symbols(t.den):
            raise NotInFourierAlgebra("division by a non-scalar generator expression")
        s = eval_scalar_tree(t.den)
        a, b = _eval_pair(ctx, t.num)
        r = (a * (1 / s), b * (1 / s))
    else:
        raise TypeError(t)
    memo[t] = r
    return r


def parse_gen(ctx: Context, text: str, env=None) -> GenExpr:
    """Parse context-generator text and evaluate its Fourier pair."""
    if ctx.kind == "bessel":
        env = dict(env.values if hasattr(env, "values") else (env or {}))
        env.setdefault("nu", ctx.nu)
    return fourier(ctx, parse(text, ctx.kind, env))


def base_operator(ctx: Context, side="x") -> OreOp:
    """Generator of the base bispectral algebra on the given side."""
    if ctx.kind == "exp":
        return OreOp.D(side)
    if ctx.kind == "airy":
        v = OreOp.mult(Poly.gen(side), side)
        return OreOp.D(side) * OreOp.D(side) - v
    c = _nn1(ctx)
    return OreOp.D(side) * OreOp.D(side) - OreOp.mult(
        RatFunc(Poly([c], side), Poly.monomial(2, side)), side
    )


def eigen_poly(ctx: Context, side="x") -> Poly:
    """Polynomial (in the other variable) by which base_operator(side) acts."""
    other = "y" if side == "x" else "x"
    return Poly.monomial(2 if ctx.kind == "bessel" else 1, other)


# symmetric bases ----------------------------------------------------------------
@dataclass(eq=False)
class SymBasisElem:
    family: str
    j: int
    k: int
    expr: GenExpr

    @property
    def label(self):
        return f"{self.family}[{self.j},{self.k}]"

    @property
    def order(self):
        return self.expr.order

    @property
    def coorder(self):
        return self.expr.coorder


def _pw(sym, n):
    if n == 0:
        return Scalar(gr(1))
    return Power(sym, n) if n > 1 else sym


def _prod(*nodes):
    nodes = [n for n in nodes if not (isinstance(n, Scalar) and n.value == 1)]
    if not nodes:
        return Scalar(gr(1))
    return nodes[0] if len(nodes) == 1 else Product(tuple(nodes))


def sym_basis(ctx: Context, ell: int, m: int) -> list:
    """Basis of formally symmetric elements with order <= 2*ell, co-order <= 2*m."""
    if ell < 0 or m < 0:
        return []
    out = []
    if ctx.kind == "exp":
        Dx, x = Symbol("Dx"), Symbol("x")
        for j in range(ell + 1):
            for k in range(m + 1):
                t = _prod(_pw(Dx, j), _pw(x, 2 * k), _pw(Dx, j))
                out.append(SymBasisElem("e", j, k, fourier(ctx, t)))
    elif ctx.kind == "airy":
        dai = Sum((Power(Symbol("Dx"), 2), Product((Scalar(gr(-1)), Symbol("x")))))
        x = Symbol("x")
        for j in range(ell + 1):
            for k in range(m + 1):
                t = Sum((_prod(_pw(dai, j), _pw(x, k)), _prod(_pw(x, k), _pw(dai, j))))
                out.append(SymBasisElem("a", j, k, fourier(ctx, t)))
    else:
        S = Symbol("S")
        s_star = Sum((Product((Scalar(gr(-1)), S)), Scalar(gr(-1))))
        BB, X2 = Symbol("BB"), Symbol("X2")
        for k in range(m + 1):
            for j in range(ell - k + 1):
                t = _prod(_pw(S, k), _pw(BB, j), _pw(s_star, k))
                out.append(SymBasisElem("a", j, k, fourier(ctx, t)))
        for k in range(ell + 1):
            for j in range(1, m - k + 1):
                t = _prod(_pw(S, k), _pw(X2, j), _pw(s_star, k))
                out.append(SymBasisElem("b", j, k, fourier(ctx, t)))
    return out


# membership for raw operators ------------------------------------------------------
def fourier_of_operator(ctx: Context, op: OreOp) -> GenExpr:
    """Express a raw x-operator as a generator word, or raise NotInFourierAlgebra.

    exp/airy: the algebra is all polynomial-coefficient operators.
    bessel: peel the top-order term against x^{2k} BB^j (even order) and
    x^{2k} S BB^j (odd order); their leading terms are x^{2k} D^{2j} and
    x^{2k+1} D^{2j+1}, so the peeling decides membership exactly.
    """
    if op.var != "x":
        raise ContextMismatch("expected an operator in x")
    terms = []
    if ctx.kind in ("exp", "airy"):
        for j, a in enumerate(op.c):
            if not a.is_poly():
                raise NotInFourierAlgebra(f"coefficient {a} is not a polynomial")
            for k, c in enumerate(a.num.coeffs):
                if c:
                    terms.append(_prod(Scalar(c), _pw(Symbol("x"), k), _pw(Symbol("Dx"), j)))
    else:
        rem = op
        BB, S, X2 = Symbol("BB"), Symbol("S"), Symbol("X2")
        while rem.c:
            n = rem.order
            a = rem.c[-1]
            if not a.is_poly():
                raise NotInFourierAlgebra(f"coefficient {a} is not a polynomial at top order")
            for e, c in enumerate(a.num.coeffs):
                if not c:
                    continue
                if n % 2 == 0:
                    if e % 2:
                        raise NotInFourierAlgebra(f"odd power x^{e} at even order {n}")
                    t = _prod(Scalar(c), _pw(X2, e // 2), _pw(BB, n // 2))
                else:
                    if e % 2 == 0:
                        raise NotInFourierAlgebra(f"even power x^{e} at odd order {n}")
                    t = _prod(Scalar(c), _pw(X2, (e - 1) // 2), S, _pw(BB, (n - 1) // 2))
                terms.append(t)
                rem = rem - _eval_pair(ctx, t)[0]
            if rem.c and rem.order >= n:
                raise NotInFourierAlgebra("peeling did not reduce the order")
    tree = Scalar(gr(0)) if not terms else (terms[0] if len(terms) == 1 else Sum(tuple(terms)))
    g = fourier(ctx, tree)
    if g.x_op != op:
        raise NotInFourierAlgebra("operator is not in the Fourier algebra")
    return g
