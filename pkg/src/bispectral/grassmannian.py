"""Rank-one adelic planes and self-adjoint Darboux data for the exp kernel.

A plane is cut out by homogeneous conditions sum_j a_j delta^(j)(y - c).
Pairing a condition with e^{xy} gives the quasi-exponential
sum_j a_j x^j e^{cx}; these span V.  The ambient operator is the constant
coefficient operator prod (D - c)^{m_c}, by default with
m_c = n(c) + n(-c) where n(c) counts conditions at c.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

from .context import make_context, fourier_of_operator
from .darboux import DarbouxTransform, build_transform
from .errors import (
    DependentKernel,
    NotConstant,
    NotFormallySymmetric,
    NotInBaseAlgebra,
    NotInKernel,
    NotLagrangian,
    NotRationalKernel,
    NotSigmaStable,
)
from .exactnum import GaussianRational, Poly, RatFunc, gr, lcm_all, scalar
from .linalg import nullspace, rank
from .orealg import OreOp, rewrite_in_base_unit

__all__ = [
    "QuasiExp",
    "ConditionFunctional",
    "AdelicPlane",
    "Annihilator",
    "functional_to_kernel",
    "concomitant_pairing",
    "is_lagrangian",
    "is_sigma_stable",
    "annihilator",
    "factorization_check",
    "to_darboux",
    "apply_constant_op",
    "synthesize_lagrangian",
]


class QuasiExp:
    """sum_c p_c(x) e^{cx} with exact exponents and polynomial parts."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for c, p in (terms or {}).items():
            if not isinstance(p, Poly):
                p = Poly(p if isinstance(p, (list, tuple)) else [p], "x")
            if p:
                c = scalar(c)
                clean[c] = clean[c] + p if c in clean else p
        self.terms = {c: p for c, p in clean.items() if p}

    @classmethod
    def exp(cls, c, poly=None):
        return cls({c: poly if poly is not None else Poly([1], "x")})

    @classmethod
    def poly(cls, p):
        return cls({0: p})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for c, p in other.terms.items():
            out[c] = out[c] + p if c in out else p
        return QuasiExp(out)

    def __neg__(self):
        return QuasiExp({c: -p for c, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QuasiExp):
            return QuasiExp({c: p * other for c, p in self.terms.items()})
        out = {}
        for c1, p1 in self.terms.items():
            for c2, p2 in other.terms.items():
                c = scalar(c1 + c2)
                out[c] = out[c] + p1 * p2 if c in out else p1 * p2
        return QuasiExp(out)

    __rmul__ = __mul__

    def derivative(self, k=1):
        out = self
        for _ in range(k):
            out = QuasiExp({c: p.derivative() + p * c for c, p in out.terms.items()})
        return out

    def sigma(self):
        """f(x) -> f(-x)."""
        return QuasiExp({scalar(-c): p.reflect() for c, p in self.terms.items()})

    def eval_at_zero(self):
        acc = gr(0)
        for p in self.terms.values():
            acc = acc + p.coeff(0)
        return scalar(acc)

    def constant_value(self):
        """The value if this is a constant function, else None."""
        if not self.terms:
            return scalar(0)
        if set(self.terms) != {0}:
            return None
        p = self.terms[0]
        return p.coeff(0) if p.degree == 0 else None

    def exponents(self):
        return sorted(self.terms, key=_exp_key)

    def __eq__(self, other):
        return isinstance(other, QuasiExp) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"QuasiExp({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c in self.exponents():
            p = self.terms[c]
            parts.append(f"({p})" if not c else f"({p})*exp({gr(c)}*x)")
        return " + ".join(parts)


def _exp_key(c):
    g = gr(c)
    return (g.re, g.im)


@dataclass(frozen=True)
class ConditionFunctional:
    """sum_j coeffs[j] delta^(j)(y - point)."""

    point: object
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "point", scalar(self.point))
        cs = tuple(scalar(gr(v) if not isinstance(v, str) else _parse(v)) for v in self.coeffs)
        while cs and not cs[-1]:
            cs = cs[:-1]
        if not cs:
            raise ValueError("condition functional has no nonzero coefficient")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def to_dict(self):
        from .exactnum import format_scalar

        return {"point": format_scalar(self.point), "coeffs": [format_scalar(c) for c in self.coeffs]}


def _parse(text):
    from .parser import parse_scalar

    return parse_scalar(text)


def functional_to_kernel(chi: ConditionFunctional) -> QuasiExp:
    """<e^{xy}, chi(y)> = sum_j a_j x^j e^{cx}."""
    return QuasiExp.exp(chi.point, Poly(list(chi.coeffs), "x"))


# constant-coefficient operators --------------------------------------------------------------
def exponent_poly(mult: dict, var="T") -> Poly:
    f = Poly([1], var)
    for c in sorted(mult, key=_exp_key):
        f = f * Poly([-c, 1], var) ** mult[c]
    return f


def constant_op(mult: dict) -> OreOp:
    f = exponent_poly(mult)
    return OreOp(list(f.coeffs), "x")


def apply_constant_op(d: OreOp, f: QuasiExp) -> QuasiExp:
    """d f for d with polynomial coefficients."""
    out = QuasiExp()
    g = f
    for j, a in enumerate(d.c):
        if j:
            g = g.derivative()
        if a:
            if not a.is_poly():
                raise ValueError("operator coefficients must be polynomials")
            out = out + g * a.num
    return out


def _is_symmetric_poly(f: Poly):
    return f.compose(Poly([0, -1], f.var)) == f


# planes ----------------------------------------------------------------------------------------------
@dataclass
class AdelicPlane:
    conditions: tuple
    ambient: dict | None = None

    def __post_init__(self):
        self.conditions = tuple(
            c if isinstance(c, ConditionFunctional) else ConditionFunctional(c["point"], c["coeffs"])
            if isinstance(c, dict)
            else ConditionFunctional(*c)
            for c in self.conditions
        )
        if self.ambient is None:
            self.ambient = default_ambient(self.conditions)
        else:
            self.ambient = {scalar(gr(c) if not isinstance(c, str) else _parse(c)): int(m) for c, m in self.ambient.items() if int(m)}

    @property
    def support(self) -> dict:
        n = {}
        for chi in self.conditions:
            n[chi.point] = n.get(chi.point, 0) + 1
        return n

    @property
    def V(self) -> list:
        return [functional_to_kernel(c) for c in self.conditions]

    @property
    def d_const(self) -> OreOp:
        return constant_op(self.ambient)

    @property
    def f_poly(self) -> Poly:
        return exponent_poly(self.ambient)

    @property
    def q(self) -> Poly:
        """prod (y - c)^{n(c)}."""
        return exponent_poly(self.support, "y")

    @property
    def dim(self):
        return len(self.conditions)

    @property
    def ambient_order(self):
        return sum(self.ambient.values())


def default_ambient(conditions) -> dict:
    n = {}
    for chi in conditions:
        n[chi.point] = n.get(chi.point, 0) + 1
    m = {}
    for c in list(n):
        for e in (c, scalar(-c)):
            m[e] = n.get(e, 0) + n.get(scalar(-e), 0)
    return m


def _check_in_kernel(d: OreOp, V):
    for f in V:
        if apply_constant_op(d, f):
            raise NotInKernel(f"{f} is not annihilated by the ambient operator")


# coordinates --------------------------------------------------------------------------------------
def _coord_keys(fs):
    keys = set()
    for f in fs:
        for c, p in f.terms.items():
            for k in range(p.degree + 1):
                keys.add((c, k))
    return sorted(keys, key=lambda ck: (_exp_key(ck[0]), ck[1]))


def _coords(fs, keys=None):
    keys = keys or _coord_keys(fs)
    rows = []
    for f in fs:
        rows.append([f.terms[c].coeff(k) if c in f.terms else scalar(0) for c, k in keys])
    return rows, keys


def qe_rank(fs) -> int:
    if not fs:
        return 0
    rows, keys = _coords(fs)
    return rank(rows, len(keys))


# pairing -------------------------------------------------------------------------------------------
def concomitant_qe(d: OreOp, f: QuasiExp, g: QuasiExp) -> QuasiExp:
    """C_d(f, g; x) for constant-coefficient d, as a quasi-exponential."""
    n = d.order
    fd = [f]
    gd = [g]
    for _ in range(max(0, n - 1)):
        fd.append(fd[-1].derivative())
        gd.append(gd[-1].derivative())
    total = QuasiExp()
    for j in range(1, n + 1):
        dj = d.c[j].constant_value() if d.c[j] else 0
        if not dj:
            continue
        for k in range(j):
            term = fd[j - 1 - k] * gd[k] * dj
            total = total + term if k % 2 == 0 else total - term
    return total


def concomitant_pairing(d, V) -> list:
    """Gram matrix M[i][j] = C_d(V[i], V[j]) (constant on ker d)."""
    if isinstance(d, dict):
        d = constant_op(d)
    if not all(a.is_constant() for a in d.c):
        raise ValueError("ambient operator must have constant coefficients")
    _check_in_kernel(d, V)
    M = []
    for f in V:
        row = []
        for g in V:
            c = concomitant_qe(d, f, g)
            v = c.constant_value()
            if v is None:
                raise NotConstant(f"pairing C({f}, {g}) = {c} is not constant")
            row.append(v)
        M.append(row)
    return M


def is_lagrangian(plane: AdelicPlane) -> bool:
    f = plane.f_poly
    if not _is_symmetric_poly(f):
        raise NotFormallySymmetric(f"ambient exponent polynomial {f} is not even")
    V = plane.V
    if 2 * len(V) != plane.ambient_order or qe_rank(V) != len(V):
        return False
    M = concomitant_pairing(plane.d_const, V)
    return all(not v for row in M for v in row)


def is_sigma_stable(plane_or_V) -> bool:
    V = plane_or_V.V if isinstance(plane_or_V, AdelicPlane) else list(plane_or_V)
    if not V:
        return True
    both = V + [f.sigma() for f in V]
    return qe_rank(both) == qe_rank(V)


# annihilator ----------------------------------------------------------------------------------------
def _det(M):
    """Determinant by the Leibniz formula (small matrices over a commutative ring)."""
    n = len(M)
    if n == 0:
        return QuasiExp.poly(Poly([1], "x"))
    total = QuasiExp()
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = None
        for i, j in enumerate(perm):
            e = M[i][j]
            if not e:
                term = None
                break
            term = e if term is None else term * e
        if term is not None:
            total = total + term if sign > 0 else total - term
    return total


def _ratio(a: QuasiExp, b: QuasiExp) -> RatFunc:
    """Rational r with a = r b, else NotRationalKernel."""
    if not a:
        return RatFunc.zero("x")
    if set(a.terms) - set(b.terms):
        raise NotRationalKernel("Wronskian minors have incompatible exponentials")
    c0 = b.exponents()[0]
    r = RatFunc(a.terms.get(c0, Poly((), "x")), b.terms[c0])
    for c, bp in b.terms.items():
        ap = a.terms.get(c, Poly((), "x"))
        if ap * r.den != bp * r.num:
            raise NotRationalKernel("Wronskian minors are not rationally proportional")
    return r


@dataclass
class Annihilator:
    """u with polynomial coefficients and leading coefficient p; ker u = V."""

    u: OreOp
    p: Poly

    @property
    def monic(self) -> OreOp:
        return OreOp.mult(RatFunc(Poly([1], "x"), self.p), "x") * self.u


def annihilator(V) -> Annihilator:
    """Monic operator of order |V| with kernel V, via Wronskian minors.

    Expanding W(f_1..f_n, f) along its last column gives
    L f = sum_k (-1)^(n+k) W_k f^(k) / W_n where W_k drops row k.
    """
    V = list(V)
    n = len(V)
    if n == 0:
        return Annihilator(OreOp.identity("x"), Poly([1], "x"))
    jets = [[f] for f in V]
    for col in jets:
        for _ in range(n):
            col.append(col[-1].derivative())
    minors = []
    for k in range(n + 1):
        rows = [r for r in range(n + 1) if r != k]
        minors.append(_det([[jets[i][r] for i in range(n)] for r in rows]))
    W = minors[n]
    if not W:
        raise DependentKernel("Wronskian vanishes identically")
    coeffs = [_ratio(minors[k], W) * (-1 if (n + k) % 2 else 1) for k in range(n)]
    coeffs.append(RatFunc.const(1, "x"))
    p = lcm_all([a.den for a in coeffs], "x")
    u = OreOp([a * RatFunc.from_poly(p) for a in coeffs], "x")
    return Annihilator(u, p)


def factorization_check(plane_or_V):
    """(ok, unit, f) for ((1/p)u)* ((1/p)u) = unit f(D)."""
    V = plane_or_V.V if isinstance(plane_or_V, AdelicPlane) else list(plane_or_V)
    try:
        L = annihilator(V).monic
    except (DependentKernel, NotRationalKernel):
        return False, None, None
    try:
        unit, f = rewrite_in_base_unit(L.adjoint() * L, OreOp.D("x"))
    except NotInBaseAlgebra:
        return False, None, None
    return True, unit, f


@dataclass
class GrassmannianResult:
    plane: AdelicPlane
    annihilator: Annihilator
    transform: DarbouxTransform
    lagrangian: bool = True
    sigma_stable: bool = True
    factorization: tuple = field(default=(None, None))

    def report(self) -> dict:
        unit, f = self.factorization
        return {
            "conditions": [c.to_dict() for c in self.plane.conditions],
            "u": str(self.annihilator.u),
            "p": str(self.annihilator.p),
            "q": str(self.plane.q),
            "lagrangian": self.lagrangian,
            "sigma_stable": self.sigma_stable,
            "factorization_unit": str(unit),
            "factorization_f": str(f),
        }


def to_darboux(plane: AdelicPlane) -> GrassmannianResult:
    """Self-adjoint Darboux data in the exp context for a plane."""
    if not is_sigma_stable(plane):
        raise NotSigmaStable("V is not preserved by x -> -x")
    if not is_lagrangian(plane):
        raise NotLagrangian("V is not Lagrangian for the concomitant pairing")
    ann = annihilator(plane.V)
    ok, unit, f = factorization_check(plane)
    if not ok:
        raise NotLagrangian("((1/p)u)*((1/p)u) is not a polynomial in D")
    ctx = make_context("exp")
    u_expr = fourier_of_operator(ctx, ann.u)
    t = build_transform(ctx, u_expr, p_override=ann.p, q_override=plane.q)
    return GrassmannianResult(plane, ann, t, factorization=(unit, f))


# synthesis ---------------------------------------------------------------------------------------------
def _random_scalar(rng, lo=-3, hi=3, complex_ok=False):
    re = rng.randint(lo, hi)
    im = rng.randint(lo, hi) if complex_ok and rng.random() < 0.3 else 0
    return scalar(GaussianRational(re, im))


def synthesize_lagrangian(mult: dict, rng: random.Random, tries=20) -> AdelicPlane | None:
    """Random Lagrangian, sigma-stable plane inside ker prod (D - c)^{m_c}.

    ``mult`` must be closed under negation with even multiplicity at 0.
    At exponent 0 vectors of fixed parity are added one at a time from the
    orthogonal complement of those already chosen (even-even and odd-odd
    pairings vanish by sigma-antisymmetry).  At a pair +-c the plane is
    V_c + sigma(V_c) and V_c must be isotropic for the symmetric form
    b(f, g) = C(f, sigma g); it is the image of polynomials of degree < m/2
    under a few random b-reflections.
    """
    mult = {scalar(c): m for c, m in mult.items() if m}
    for c, m in mult.items():
        if mult.get(scalar(-c)) != m or (c == 0 and m % 2):
            raise NotFormallySymmetric(f"exponent multiset is not closed under negation at {c}")
    d = constant_op(mult)
    blocks, seen = [], set()
    for c in sorted(mult, key=_exp_key):
        if c not in seen:
            seen.update({c, scalar(-c)})
            blocks.append(c)
    for _ in range(tries):
        conds = []
        for c in blocks:
            m = mult[c]
            if c == 0:
                chosen = _parity_block(d, m, rng)
            else:
                chosen = _reflected_block(d, c, m, rng)
            if chosen is None:
                break
            for vec in chosen:
                conds.append(ConditionFunctional(c, tuple(vec)))
                if c != 0:
                    conds.append(ConditionFunctional(scalar(-c), tuple(v * (-1) ** j for j, v in enumerate(vec))))
        else:
            plane = AdelicPlane(tuple(conds), dict(mult))
            if is_lagrangian(plane) and is_sigma_stable(plane):
                return plane
    return None


def _unit(k, m):
    return [scalar(1) if j == k else scalar(0) for j in range(m)]


def _trim(vec):
    vec = list(vec)
    while vec and not vec[-1]:
        vec.pop()
    return vec


def _parity_block(d, m, rng):
    """m/2 polynomial vectors, each even or odd, mutually orthogonal."""
    chosen = []
    for _ in range(m // 2):
        pars = [0, 1]
        rng.shuffle(pars)
        pick = None
        for par in pars:
            cons = []
            for vec in chosen:
                f = QuasiExp.poly(Poly(list(vec), "x"))
                cons.append([concomitant_qe(d, QuasiExp.poly(Poly.monomial(k, "x")), f).constant_value() for k in range(m)])
            cons += [_unit(k, m) for k in range(m) if k % 2 != par]
            basis = [b for b in nullspace(cons, m) if qe_rank(_vecs(0, chosen + [b])) == len(chosen) + 1]
            if basis:
                pick = basis
                break
        if pick is None:
            return None
        vec = [scalar(0)] * m
        for b in pick:
            a = _random_scalar(rng)
            vec = [x + a * y for x, y in zip(vec, b)]
        if qe_rank(_vecs(0, chosen + [vec])) != len(chosen) + 1:
            vec = pick[0]
        chosen.append(_trim(vec))
    return chosen


def _reflected_block(d, c, m, rng, reflections=3):
    n = m // 2
    mono = [QuasiExp.exp(c, Poly.monomial(k, "x")) for k in range(m)]
    G = [[concomitant_qe(d, f, g.sigma()).constant_value() for g in mono] for f in mono]

    def b(u, v):
        acc = scalar(0)
        for i in range(m):
            if u[i]:
                for j in range(m):
                    if v[j] and G[i][j]:
                        acc = acc + u[i] * G[i][j] * v[j]
        return acc

    vecs = [_unit(k, m) for k in range(n)]
    done = 0
    for _ in range(10 * reflections):
        if done >= reflections:
            break
        w = [_random_scalar(rng, -2, 2) for _ in range(m)]
        bw = b(w, w)
        if not bw:
            continue
        vecs = [[x - (2 * b(v, w) / bw) * y for x, y in zip(v, w)] for v in vecs]
        done += 1
    return [_trim(v) for v in vecs]


def _vecs(c, vecs):
    return [QuasiExp.exp(c, Poly(list(v), "x")) for v in vecs]
