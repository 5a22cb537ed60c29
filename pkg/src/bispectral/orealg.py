"""Differential operators sum_j a_j(x) D^j with rational coefficients."""

from __future__ import annotations

import math
from math import comb

from .errors import NotInBaseAlgebra, NotSymmetric, VariableMismatch
from .exactnum import Poly, RatFunc, _reduce, lcm_all, scalar

__all__ = ["OreOp", "rewrite_in_base", "rewrite_in_base_unit"]


class _Acc:
    """Sum of rational functions, grouped by denominator and combined once."""

    __slots__ = ("var", "groups")

    def __init__(self, var):
        self.var = var
        self.groups = {}

    def add(self, r: RatFunc):
        if not r.num.c:
            return
        prev = self.groups.get(r.den)
        self.groups[r.den] = r.num if prev is None else prev + r.num

    def result(self) -> RatFunc:
        items = [(d, n) for d, n in self.groups.items() if n.c]
        if not items:
            return RatFunc.zero(self.var)
        if len(items) == 1:
            d, n = items[0]
            if len(d.c) == 1:
                return RatFunc.from_poly(n)
            return RatFunc._raw(*_reduce(n, d))
        L = lcm_all([d for d, _ in items], self.var)
        num = Poly((), self.var)
        for d, n in items:
            num = num + (n if d == L else n * L.exact_div(d))
        return RatFunc._raw(*_reduce(num, L))


def _as_rf(v, var):
    if isinstance(v, RatFunc):
        if v.var != var:
            raise VariableMismatch(f"{v.var} vs {var}")
        return v
    if isinstance(v, Poly):
        if v.var != var:
            raise VariableMismatch(f"{v.var} vs {var}")
        return RatFunc.from_poly(v)
    return RatFunc.const(v, var)


class OreOp:
    """Operator with rational coefficients; ``c[j]`` multiplies D^j."""

    __slots__ = ("c", "var", "_hash", "_derivs")

    def __init__(self, coeffs=(), var="x"):
        cs = [_as_rf(v, var) for v in coeffs]
        while cs and not cs[-1].num.c:
            cs.pop()
        self.c = tuple(cs)
        self.var = var
        self._hash = None
        self._derivs = None

    @classmethod
    def _raw(cls, coeffs, var):
        obj = object.__new__(cls)
        cs = list(coeffs)
        while cs and not cs[-1].num.c:
            cs.pop()
        obj.c = tuple(cs)
        obj.var = var
        obj._hash = None
        obj._derivs = None
        return obj

    @classmethod
    def D(cls, var="x"):
        return cls._raw((RatFunc.zero(var), RatFunc.const(1, var)), var)

    @classmethod
    def mult(cls, f, var=None):
        """Multiplication operator by a scalar, polynomial or rational function."""
        if var is None:
            var = f.var if isinstance(f, (Poly, RatFunc)) else "x"
        return cls._raw((_as_rf(f, var),), var)

    @classmethod
    def identity(cls, var="x"):
        return cls.mult(1, var)

    @classmethod
    def zero(cls, var="x"):
        return cls._raw((), var)

    # structure --------------------------------------------------------------
    @property
    def order(self):
        return len(self.c) - 1 if self.c else -math.inf

    def coeff(self, j):
        return self.c[j] if 0 <= j < len(self.c) else RatFunc.zero(self.var)

    def leading_coefficient(self):
        return self.c[-1] if self.c else RatFunc.zero(self.var)

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_constant(self):
        return len(self.c) == 0 or (len(self.c) == 1 and self.c[0].is_constant())

    def has_polynomial_coefficients(self):
        return all(a.is_poly() for a in self.c)

    def _coerce(self, other):
        if isinstance(other, OreOp):
            if other.var != self.var:
                raise VariableMismatch(f"{self.var} vs {other.var}")
            return other
        return OreOp.mult(_as_rf(other, self.var), self.var)

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, v in enumerate(b):
            out[j] = out[j] + v
        return OreOp._raw(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return OreOp._raw([-v for v in self.c], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _derivatives(self, upto):
        # cached derivatives of each coefficient, derivs[j][k] = c_j^(k)
        if self._derivs is None:
            self._derivs = [[a] for a in self.c]
        for lst in self._derivs:
            while len(lst) <= upto:
                prev = lst[-1]
                lst.append(prev.derivative() if prev.num.c else prev)
        return self._derivs

    def __mul__(self, other):
        if not isinstance(other, (OreOp, Poly, RatFunc)):
            s = scalar(other)
            if not s:
                return OreOp.zero(self.var)
            return OreOp._raw([a * s for a in self.c], self.var)
        o = self._coerce(other)
        if not self.c or not o.c:
            return OreOp.zero(self.var)
        n1, n2 = len(self.c) - 1, len(o.c) - 1
        derivs = o._derivatives(n1)
        accs = [_Acc(self.var) for _ in range(n1 + n2 + 1)]
        for i, ai in enumerate(self.c):
            if not ai.num.c:
                continue
            for j in range(n2 + 1):
                dj = derivs[j]
                for k in range(i + 1):
                    bk = dj[k]
                    if not bk.num.c:
                        continue
                    term = ai * bk
                    ck = comb(i, k)
                    if ck != 1:
                        term = term * ck
                    accs[i + j - k].add(term)
        return OreOp._raw([acc.result() for acc in accs], self.var)

    def __rmul__(self, other):
        if isinstance(other, (Poly, RatFunc)):
            return OreOp.mult(other, self.var) * self
        s = scalar(other)
        return self * s

    def left_mul_function(self, f):
        f = _as_rf(f, self.var)
        return OreOp._raw([f * a for a in self.c], self.var)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("operator powers must be nonnegative integers")
        result = OreOp.identity(self.var)
        for _ in range(n):
            result = result * self
        return result

    # involutions --------------------------------------------------------------
    def adjoint(self):
        """Formal adjoint sum_j (-D)^j a_j."""
        if not self.c:
            return self
        n = len(self.c) - 1
        derivs = self._derivatives(n)
        accs = [_Acc(self.var) for _ in range(n + 1)]
        for j in range(n + 1):
            sign = -1 if j % 2 else 1
            for k in range(j + 1):
                t = derivs[j][k]
                if t.num.c:
                    accs[j - k].add(t * (sign * comb(j, k)))
        return OreOp._raw([a.result() for a in accs], self.var)

    def sigma(self):
        """x -> -x, D -> -D."""
        return OreOp._raw(
            [a.reflect() if j % 2 == 0 else -a.reflect() for j, a in enumerate(self.c)], self.var
        )

    def is_symmetric(self):
        return self.adjoint() == self

    def is_sigma_invariant(self):
        return self.sigma() == self

    def apply(self, f):
        """Apply to a polynomial or rational function."""
        f = _as_rf(f, self.var)
        acc = _Acc(self.var)
        g = f
        for j, a in enumerate(self.c):
            if j:
                g = g.derivative()
            if a.num.c and g.num.c:
                acc.add(a * g)
        return acc.result()

    def map_coefficients(self, fn):
        return OreOp._raw([fn(a) for a in self.c], self.var)

    # symmetric structure --------------------------------------------------------
    def symmetric_decompose(self):
        """Coefficients a_0..a_n with self = sum_j D^j a_j D^j.

        Raises NotSymmetric if the operator is not formally symmetric.
        """
        if not self.c:
            return []
        if self.order % 2:
            raise NotSymmetric(f"odd order {self.order}")
        rem = self
        n = self.order // 2
        out = [RatFunc.zero(self.var)] * (n + 1)
        while rem.c:
            o = rem.order
            if o % 2:
                raise NotSymmetric("odd-order remainder in symmetric peeling")
            k = o // 2
            a = rem.c[-1]
            out[k] = a
            rem = rem - sandwich(a, k, self.var)
        return out

    # comparison / display ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, OreOp):
            return self.var == other.var and self.c == other.c
        try:
            o = self._coerce(other)
        except (TypeError, VariableMismatch):
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, self.c))
        return self._hash

    def __str__(self):
        from .parser import print_op

        return print_op(self)

    def __repr__(self):
        return f"OreOp({self})"


def sandwich(a: RatFunc, k: int, var="x") -> OreOp:
    """D^k a D^k expanded by Leibniz."""
    out = [RatFunc.zero(var)] * (2 * k + 1)
    g = a
    for m in range(k + 1):
        if m:
            g = g.derivative()
        out[2 * k - m] = g * comb(k, m)
    return OreOp._raw(out, var)


def rewrite_in_base(d: OreOp, base: OreOp, tag="T") -> Poly:
    """Polynomial f with d = f(base); raises NotInBaseAlgebra."""
    if not d.c:
        return Poly((), tag)
    r = base.order
    if r < 1:
        raise NotInBaseAlgebra("base operator must have positive order")
    lb = base.leading_coefficient()
    if not lb.is_constant():
        raise NotInBaseAlgebra("base operator must have constant leading coefficient")
    lbv = lb.constant_value()
    powers = [OreOp.identity(d.var)]
    coeffs = {}
    rem = d
    while rem.c:
        o = rem.order
        if o % r:
            raise NotInBaseAlgebra(f"order {o} is not a multiple of {r}")
        k = o // r
        lead = rem.leading_coefficient()
        if not lead.is_constant():
            raise NotInBaseAlgebra(f"non-constant leading coefficient {lead}")
        while len(powers) <= k:
            powers.append(powers[-1] * base)
        cst = lead.constant_value() / lbv ** k
        coeffs[k] = cst
        rem = rem - powers[k] * cst
    deg = max(coeffs)
    return Poly([coeffs.get(k, 0) for k in range(deg + 1)], tag)


def rewrite_in_base_unit(d: OreOp, base: OreOp, tag="T"):
    """(unit, f) with d = unit * f(base) and f monic."""
    f = rewrite_in_base(d, base, tag)
    if f.is_zero():
        raise NotInBaseAlgebra("zero operator has no unit normal form")
    unit = f.lc()
    return unit, f.monic()
