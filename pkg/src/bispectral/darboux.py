"""Darboux data (u, p, q) and the candidate space of symmetric operators.

For a self-adjoint bispectral Darboux transformation with
``u* (1/p^2) u = unit * f(base)`` and ``f(eigenvalue) = lam * q^2`` the
transformed Fourier map sends

    (1/p) u B u* (1/p)  ->  kappa_x * q b(B) q,        kappa_x = unit * lam
    p B p               ->  (1/kappa_y) (1/q) w b(B) w* (1/q)

where ``kappa_y`` is the same constant computed on the y side.  The
constants come from acting on the transformed kernel directly; dropping
them flips signs of individual candidates on one side only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .context import Context, GenExpr, base_operator, eigen_poly, fourier, sym_basis
from .errors import (
    FactorizationFails,
    InexactDivision,
    NonPolynomialLeadingCoefficient,
    NotInBaseAlgebra,
    NotSelfAdjoint,
    PMismatch,
    QMismatch,
)
from .exactnum import GaussianRational, Poly, RatFunc, gr
from .orealg import OreOp, rewrite_in_base_unit
from .parser import Scalar

__all__ = [
    "DarbouxTransform",
    "CandidatePair",
    "CandidateBounds",
    "build_transform",
    "trivial_transform",
    "conj_p",
    "conj_u",
    "candidate_space",
]


@dataclass
class DarbouxTransform:
    ctx: Context
    u_expr: GenExpr | None
    p: Poly
    q: Poly
    d1: int
    d2: int
    unit_x: GaussianRational = field(default_factory=lambda: gr(1))
    f_x: Poly | None = None
    unit_y: GaussianRational = field(default_factory=lambda: gr(1))
    f_y: Poly | None = None
    kappa_x: GaussianRational = field(default_factory=lambda: gr(1))
    kappa_y: GaussianRational = field(default_factory=lambda: gr(1))
    adjoint_sign: GaussianRational = field(default_factory=lambda: gr(1))

    @property
    def trivial(self):
        return self.u_expr is None

    @property
    def u(self) -> OreOp:
        return self.u_expr.x_op if self.u_expr else OreOp.identity("x")

    @property
    def w(self) -> OreOp:
        return self.u_expr.y_op if self.u_expr else OreOp.identity("y")

    def __post_init__(self):
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def u_star(self):
        return self._get("u*", lambda: self.u.adjoint())

    @property
    def w_star(self):
        return self._get("w*", lambda: self.w.adjoint())

    @property
    def inv_p(self):
        return self._get("1/p", lambda: OreOp.mult(RatFunc(Poly([1], "x"), self.p), "x"))

    @property
    def inv_q(self):
        return self._get("1/q", lambda: OreOp.mult(RatFunc(Poly([1], "y"), self.q), "y"))

    def report(self) -> dict:
        return {
            "context": self.ctx.describe(),
            "trivial": self.trivial,
            "u": str(self.u),
            "w": str(self.w),
            "p": str(self.p),
            "q": str(self.q),
            "d1": self.d1,
            "d2": self.d2,
            "unit_x": str(self.unit_x),
            "f_x": str(self.f_x) if self.f_x is not None else None,
            "unit_y": str(self.unit_y),
            "f_y": str(self.f_y) if self.f_y is not None else None,
            "kappa_x": str(self.kappa_x),
            "kappa_y": str(self.kappa_y),
            "adjoint_sign": str(self.adjoint_sign),
        }


def trivial_transform(ctx: Context) -> DarbouxTransform:
    return DarbouxTransform(ctx, None, Poly([1], "x"), Poly([1], "y"), 0, 0)


def _leading_poly(op: OreOp, name):
    lc = op.leading_coefficient()
    if not lc.is_poly():
        raise NonPolynomialLeadingCoefficient(f"leading coefficient of {name} is {lc}")
    return lc.num


def _ratio(a: Poly, b: Poly):
    """Constant c with a = c*b, or None."""
    if a.is_zero() or b.is_zero() or a.degree != b.degree:
        return None
    c = a.lc() / b.lc()
    return c if a == b * c else None


def _op_ratio(a: OreOp, b: OreOp):
    """Constant c with a = c*b, or None."""
    if a.order != b.order or not b.c:
        return None
    lb = b.leading_coefficient()
    c = a.leading_coefficient() / lb
    if not c.is_constant():
        return None
    c = c.constant_value()
    return c if a == b * c else None


def _check_override(actual: Poly, override, var, exc, name):
    if override is None:
        return
    if not isinstance(override, Poly):
        from .parser import parse_op

        override = parse_op(str(override), var).leading_coefficient().as_poly()
    if _ratio(override.retag(var), actual) is None:
        raise exc(f"{name} override {override} is not proportional to {actual}")


def build_transform(ctx: Context, u_expr: GenExpr, p_override=None, q_override=None) -> DarbouxTransform:
    """Validate Darboux data for ``u`` and compute p, q and the unit factors."""
    u, w = u_expr.x_op, u_expr.y_op
    p = _leading_poly(u, "u")
    q = _leading_poly(w, "b(u)")
    _check_override(p, p_override, "x", PMismatch, "p")
    _check_override(q, q_override, "y", QMismatch, "q")

    u_star, w_star = u.adjoint(), w.adjoint()
    adj = u_expr.adjoint()
    if adj.x_op != u_star:
        raise NotSelfAdjoint("generator adjoint disagrees with the formal adjoint")
    # b(u*) = +-b(u)*: in the exp context b(a*) = (sigma b(a))*, so the sign
    # is the parity of u.  Only w and w* enter the image formulas.
    adj_sign = _op_ratio(adj.y_op, w_star)
    if adj_sign is None:
        raise NotSelfAdjoint("b(u*) is not a constant multiple of b(u)*")

    def side(op, op_star, lead, other_lead, base, eig, label):
        inv2 = OreOp.mult(RatFunc(Poly([1], lead.var), lead * lead), lead.var)
        prod = op_star * inv2 * op
        try:
            unit, f = rewrite_in_base_unit(prod, base)
        except NotInBaseAlgebra as exc:
            raise FactorizationFails(f"{label}* (1/{label}lc^2) {label} is not in the base algebra: {exc}")
        fe = f.compose(eig)
        lam = _ratio(fe, other_lead * other_lead)
        if lam is None:
            raise QMismatch(f"f(eigenvalue) = {fe} is not a multiple of {other_lead}^2")
        return unit, f, lam

    unit_x, f_x, lam_x = side(u, u_star, p, q, base_operator(ctx, "x"), eigen_poly(ctx, "x"), "u")
    unit_y, f_y, lam_y = side(w, w_star, q, p, base_operator(ctx, "y"), eigen_poly(ctx, "y"), "w")
    t = DarbouxTransform(
        ctx,
        u_expr,
        p,
        q,
        u.order,
        w.order,
        unit_x=unit_x,
        f_x=f_x,
        unit_y=unit_y,
        f_y=f_y,
        kappa_x=unit_x * lam_x,
        kappa_y=unit_y * lam_y,
        adjoint_sign=adj_sign,
    )
    t._cache.update({"u*": u_star, "w*": w_star})
    return t


# candidates -------------------------------------------------------------------------------
@dataclass(eq=False)
class CandidatePair:
    """A formally bisymmetric candidate: x-operator and its Fourier image."""

    label: str
    family: str
    x_op: OreOp
    y_op: OreOp

    @property
    def order(self):
        return self.x_op.order

    @property
    def coorder(self):
        return self.y_op.order

    def scaled(self, c):
        return CandidatePair(self.label, self.family, self.x_op * c, self.y_op * c)


def _confined(op: OreOp, lead: Poly, what):
    for a in op.c:
        if not a.poles_within(lead):
            raise InexactDivision(f"{what}: coefficient {a} has poles outside the zeros of {lead}")


def conj_u(t: DarbouxTransform, b) -> CandidatePair:
    """(1/p) u B u* (1/p) with image kappa_x q b(B) q."""
    e = b.expr if hasattr(b, "expr") else b
    label = f"u:{b.label}" if hasattr(b, "label") else "u:expr"
    if t.trivial:
        return CandidatePair(label, "u", e.x_op, e.y_op)
    x_op = t.inv_p * ((t.u * e.x_op) * t.u_star) * t.inv_p
    _confined(x_op, t.p, "conj_u")
    qop = OreOp.mult(t.q, "y")
    y_op = (qop * e.y_op * qop) * t.kappa_x
    return CandidatePair(label, "u", x_op, y_op)


def conj_p(t: DarbouxTransform, b) -> CandidatePair:
    """p B p with image (1/kappa_y) (1/q) w b(B) w* (1/q)."""
    e = b.expr if hasattr(b, "expr") else b
    label = f"p:{b.label}" if hasattr(b, "label") else "p:expr"
    if t.trivial:
        return CandidatePair(label, "p", e.x_op, e.y_op)
    pop = OreOp.mult(t.p, "x")
    x_op = pop * e.x_op * pop
    y_op = t.inv_q * ((t.w * e.y_op) * t.w_star) * t.inv_q
    _confined(y_op, t.q, "conj_p")
    return CandidatePair(label, "p", x_op, y_op * (1 / t.kappa_y))


@dataclass
class CandidateBounds:
    """Order / co-order caps for the two families (None = family omitted)."""

    u_family: tuple | None
    p_family: tuple | None
    constant: bool = True

    @classmethod
    def default(cls, t: DarbouxTransform, L: int, M: int):
        return cls(
            (2 * L - 2 * t.d1, 2 * M),
            (max(0, 2 * t.d1 - 2), 2 * M - 2 * t.d2),
        )

    @classmethod
    def from_dict(cls, d, fallback: "CandidateBounds"):
        def pick(key):
            if key not in d:
                return getattr(fallback, key)
            v = d[key]
            return None if v is None else (int(v[0]), int(v[1]))

        return cls(pick("u_family"), pick("p_family"), bool(d.get("constant", fallback.constant)))

    def to_dict(self):
        return {
            "u_family": list(self.u_family) if self.u_family else None,
            "p_family": list(self.p_family) if self.p_family else None,
            "constant": self.constant,
        }


def _basis_for(ctx, bound):
    if bound is None:
        return []
    o, c = bound
    if o < 0 or c < 0:
        return []
    return sym_basis(ctx, o // 2, c // 2)


def candidate_space(t: DarbouxTransform, L=None, M=None, bounds=None) -> list:
    """Candidate generators for the transformed problem.

    For the trivial transform this is ``sym_basis(L, M)``.  Otherwise it is
    the constant, the u-family and the p-family, with default bounds from
    L = M = d1*d2 (at least 1: a u with b(u) of order 0 leaves the kernel
    unchanged and would otherwise get an empty family).
    """
    if t.trivial:
        L = 1 if L is None else L
        M = 1 if M is None else M
        return [
            CandidatePair(b.label, "sym", b.expr.x_op, b.expr.y_op) for b in sym_basis(t.ctx, L, M)
        ]
    if L is None:
        L = max(1, t.d1 * t.d2)
    if M is None:
        M = max(1, t.d1 * t.d2)
    default = CandidateBounds.default(t, L, M)
    if bounds is None:
        bounds = default
    elif isinstance(bounds, dict):
        bounds = CandidateBounds.from_dict(bounds, default)
    out = []
    if bounds.constant:
        out.append(CandidatePair("1", "const", OreOp.identity("x"), OreOp.identity("y")))
    for b in _basis_for(t.ctx, bounds.u_family):
        out.append(conj_u(t, b))
    for b in _basis_for(t.ctx, bounds.p_family):
        out.append(conj_p(t, b))
    return out


def gen_scalar(ctx, c):
    return fourier(ctx, Scalar(gr(c)))
