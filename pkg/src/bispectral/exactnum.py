"""Exact scalars, polynomials and rational functions over Q(i).

Real coefficients are stored as ``gmpy2.mpq`` and only promoted to
:class:`GaussianRational` when an imaginary part is present, so the common
real case runs on GMP rationals without wrapper objects.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .errors import DivisionByZero, InexactDivision, PoleAtPoint, VariableMismatch

__all__ = [
    "GaussianRational",
    "Poly",
    "RatFunc",
    "scalar",
    "gr",
    "MOD_PRIME",
]

# prime p = 1 mod 4 and a square root of -1 modulo p; used for modular
# shortcuts (coprimality and rank certificates), never for final answers
MOD_PRIME = 4611686018427387817
MOD_SQRT_M1 = 120863620846201794

_ZERO = mpq(0)
_ONE = mpq(1)


class GaussianRational:
    """An element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, str):
            if im:
                raise TypeError("imaginary part given twice")
            g = _parse_scalar(re)
            self.re, self.im = g.re, g.im
            return
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    @classmethod
    def _new(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if type(other) is GaussianRational:
            return GaussianRational._new(self.re + other.re, self.im + other.im)
        try:
            return GaussianRational._new(self.re + _to_mpq(other), self.im)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is GaussianRational:
            return GaussianRational._new(self.re - other.re, self.im - other.im)
        try:
            return GaussianRational._new(self.re - _to_mpq(other), self.im)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return GaussianRational._new(_to_mpq(other) - self.re, -self.im)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if type(other) is GaussianRational:
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational._new(a * c - b * d, a * d + b * c)
        try:
            o = _to_mpq(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._new(self.re * o, self.im * o)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise DivisionByZero("inverse of zero")
        return GaussianRational._new(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if type(other) is GaussianRational:
            return self * other.inverse()
        try:
            o = _to_mpq(other)
        except TypeError:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by zero")
        return GaussianRational._new(self.re / o, self.im / o)

    def __rtruediv__(self, other):
        try:
            return _to_mpq(other) * self.inverse()
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return GaussianRational._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational._new(_ONE, _ZERO)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussianRational._new(self.re, -self.im)

    # comparisons ----------------------------------------------------------
    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        try:
            return not self.im and self.re == _to_mpq(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self):
        return not self.im

    def bit_size(self):
        return (
            _mpq_bits(self.re) + _mpq_bits(self.im)
        )

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    @classmethod
    def parse(cls, text):
        return _parse_scalar(text)


def _mpq_bits(q):
    return int(gmpy2.bit_length(q.numerator)) + int(gmpy2.bit_length(q.denominator))


def _to_mpq(v):
    t = type(v)
    if t is type(_ZERO):
        return v
    if t is int or t is bool or t is type(mpz(0)):
        return mpq(v)
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    if isinstance(v, GaussianRational):
        if v.im:
            raise TypeError("complex value where real expected")
        return v.re
    if isinstance(v, str):
        g = _parse_scalar(v)
        if g.im:
            raise TypeError("complex value where real expected")
        return g.re
    raise TypeError(f"cannot convert {t.__name__} to an exact rational")


def scalar(v):
    """Normalise ``v`` to the internal scalar type (mpq if real)."""
    if type(v) is GaussianRational:
        return v.re if not v.im else v
    if isinstance(v, str):
        return scalar(_parse_scalar(v))
    if isinstance(v, complex):
        raise TypeError("floating point values are not exact")
    return _to_mpq(v)


def gr(v):
    """Convert to a :class:`GaussianRational`."""
    if type(v) is GaussianRational:
        return v
    if isinstance(v, str):
        return _parse_scalar(v)
    return GaussianRational._new(_to_mpq(v), _ZERO)


def _fmt_q(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(v):
    """Canonical text ``a/b+c/d*i`` with zero parts omitted."""
    v = gr(v)
    re, im = v.re, v.im
    if not im:
        return _fmt_q(re)
    if abs(im) == 1:
        ipart = "i"
    else:
        ipart = f"{_fmt_q(abs(im))}*i"
    if not re:
        return ipart if im > 0 else "-" + ipart
    return f"{_fmt_q(re)}{'+' if im > 0 else '-'}{ipart}"


def _parse_scalar(text):
    # late import keeps the parser module optional for pure arithmetic use
    from .parser import parse_scalar

    return parse_scalar(text)


# modular images ----------------------------------------------------------
def _mod_scalar(c):
    """Image of a scalar in F_p under i -> MOD_SQRT_M1, or None if undefined."""
    p = MOD_PRIME
    if type(c) is GaussianRational:
        a = _mod_scalar(c.re)
        b = _mod_scalar(c.im)
        if a is None or b is None:
            return None
        return (a + MOD_SQRT_M1 * b) % p
    den = int(c.denominator) % p
    if den == 0:
        return None
    return int(c.numerator) * pow(den, -1, p) % p


def _mod_gcd_degree(a, b):
    p = MOD_PRIME
    while b:
        # a <- a mod b
        inv = pow(b[-1], -1, p)
        a = list(a)
        db = len(b) - 1
        while len(a) >= len(b):
            f = a[-1] * inv % p
            if f:
                off = len(a) - len(b)
                for k in range(db):
                    a[off + k] = (a[off + k] - f * b[k]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


# polynomials ---------------------------------------------------------------
def _normalize(coeffs):
    """Strip trailing zeros and pick the real or complex storage."""
    lst = list(coeffs)
    while lst and not lst[-1]:
        lst.pop()
    cplx = False
    out = []
    for c in lst:
        t = type(c)
        if t is GaussianRational:
            if c.im:
                cplx = True
                out.append(c)
            else:
                out.append(c.re)
        elif t is type(_ZERO):
            out.append(c)
        else:
            s = scalar(c)
            if type(s) is GaussianRational:
                cplx = True
            out.append(s)
    if cplx:
        out = [c if type(c) is GaussianRational else GaussianRational._new(c, _ZERO) for c in out]
    return tuple(out)


class Poly:
    """Dense univariate polynomial with a variable tag, coefficients low to high."""

    __slots__ = ("c", "var", "_hash")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        self.c = _normalize(coeffs)
        self.var = var
        self._hash = None

    @classmethod
    def _raw(cls, coeffs, var):
        obj = object.__new__(cls)
        obj.c = coeffs
        obj.var = var
        obj._hash = None
        return obj

    @classmethod
    def const(cls, v, var="x"):
        return cls((v,), var)

    @classmethod
    def gen(cls, var="x"):
        return cls._raw((_ZERO, _ONE), var)

    @classmethod
    def monomial(cls, k, var="x", coeff=1):
        return cls([0] * k + [coeff], var)

    # basic properties -----------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1 if self.c else -math.inf

    @property
    def coeffs(self):
        return [gr(c) for c in self.c]

    def coeff(self, k):
        return gr(self.c[k]) if 0 <= k < len(self.c) else gr(0)

    def lc(self):
        if not self.c:
            return gr(0)
        return gr(self.c[-1])

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def is_constant(self):
        return len(self.c) <= 1

    def is_real(self):
        return not self.c or type(self.c[0]) is not GaussianRational

    def _check(self, other):
        if self.var != other.var:
            raise VariableMismatch(f"{self.var} vs {other.var}")

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly((other,), self.var)

    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] = out[k] + v
        return Poly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-v for v in self.c), self.var)

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if not isinstance(other, Poly):
            s = scalar(other)
            if not s:
                return Poly._raw((), self.var)
            return Poly([v * s for v in self.c], self.var)
        self._check(other)
        a, b = self.c, other.c
        if not a or not b:
            return Poly._raw((), self.var)
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly((_ONE,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, s):
        return self * s

    def divrem(self, other: "Poly"):
        self._check(other)
        if not other.c:
            raise DivisionByZero("polynomial division by zero")
        b = other.c
        db = len(b) - 1
        inv = 1 / b[-1] if type(b[-1]) is not GaussianRational else b[-1].inverse()
        r = list(self.c)
        if len(r) <= db:
            return Poly._raw((), self.var), self
        q = [_ZERO] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            f = r[k] * inv
            if f:
                q[k - db] = f
                off = k - db
                for j in range(db):
                    r[off + j] = r[off + j] - f * b[j]
            r[k] = _ZERO
        return Poly(q, self.var), Poly(r[:db], self.var)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def exact_div(self, other):
        q, r = self.divrem(other)
        if r.c:
            raise InexactDivision(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        return not other.divrem(self)[1].c

    def monic(self):
        if not self.c:
            return self
        lead = self.c[-1]
        if lead == 1:
            return self
        inv = 1 / lead if type(lead) is not GaussianRational else lead.inverse()
        return Poly([v * inv for v in self.c], self.var)

    def gcd(self, other):
        """Monic greatest common divisor (zero only if both are zero)."""
        self._check(other)
        a, b = self, other
        if not a.c:
            return b.monic()
        if not b.c:
            return a.monic()
        if len(a.c) == 1 or len(b.c) == 1:
            return Poly._raw((_ONE,), self.var)
        if _coprime_modp(a, b):
            return Poly._raw((_ONE,), self.var)
        a, b = a.monic(), b.monic()
        while b.c:
            a, b = b, a.divrem(b)[1].monic()
        return a

    def lcm(self, other):
        if not self.c or not other.c:
            return Poly._raw((), self.var)
        g = self.gcd(other)
        return (self.exact_div(g) * other).monic()

    # calculus and evaluation ----------------------------------------------
    def derivative(self, k=1):
        c = self.c
        for _ in range(k):
            c = tuple(c[j] * j for j in range(1, len(c)))
        return Poly._raw(tuple(c), self.var) if c else Poly._raw((), self.var)

    def __call__(self, a):
        return gr(self.eval(a))

    def eval(self, a):
        a = scalar(a)
        acc = _ZERO
        for v in reversed(self.c):
            acc = acc * a + v
        return acc

    def taylor_shift(self, a):
        """Coefficients of f(a + h) as a polynomial in h (same tag)."""
        a = scalar(a)
        if not a:
            return self
        c = list(self.c)
        n = len(c)
        # repeated synthetic division
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] = c[j] + a * c[j + 1]
        return Poly(c, self.var)

    def reflect(self):
        """f(-x)."""
        return Poly._raw(tuple(v if k % 2 == 0 else -v for k, v in enumerate(self.c)), self.var)

    def compose(self, other: "Poly"):
        acc = Poly._raw((), other.var)
        for v in reversed(self.c):
            acc = acc * other + v
        return acc

    def retag(self, var):
        return Poly._raw(self.c, var)

    def content_bits(self):
        return sum(gr(v).bit_size() for v in self.c)

    # comparison and display ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.var == other.var and self.c == other.c
        if isinstance(other, RatFunc):
            return other == self
        try:
            s = scalar(other)
        except TypeError:
            return NotImplemented
        if not s:
            return not self.c
        return len(self.c) == 1 and self.c[0] == s

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, self.c))
        return self._hash

    def __repr__(self):
        return f"Poly({self}, var={self.var!r})"

    def __str__(self):
        return format_poly(self)

    def mod_image(self):
        out = []
        for v in self.c:
            m = _mod_scalar(v)
            if m is None:
                return None
            out.append(m)
        return out


def _coprime_modp(a: Poly, b: Poly) -> bool:
    """True only if gcd(a, b) = 1 is certified by a modular image."""
    ia, ib = a.mod_image(), b.mod_image()
    if ia is None or ib is None or not ia[-1] or not ib[-1]:
        return False
    return _mod_gcd_degree(ia, ib) == 0


def format_poly(f: Poly, var=None) -> str:
    """Descending-degree text such as ``x^2 - 1/2*x + 3``."""
    var = var or f.var
    if not f.c:
        return "0"
    parts = []
    for k in range(len(f.c) - 1, -1, -1):
        v = f.c[k]
        if not v:
            continue
        g = gr(v)
        if k == 0:
            body = format_scalar(g)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            if g == 1:
                body = mono
            elif g == -1:
                body = "-" + mono
            elif g.im and g.re:
                body = f"({format_scalar(g)})*{mono}"
            else:
                body = f"{format_scalar(g)}*{mono}"
        parts.append(body)
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# rational functions ----------------------------------------------------------
class RatFunc:
    """num/den with gcd(num, den) = 1 and monic den."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, var=None):
        if not isinstance(num, Poly):
            num = Poly((num,), var or (den.var if isinstance(den, Poly) else "x"))
        if den is None:
            den = Poly._raw((_ONE,), num.var)
        elif not isinstance(den, Poly):
            den = Poly((den,), num.var)
        num._check(den)
        n, d = _reduce(num, den)
        self.num, self.den = n, d
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_poly(cls, p: Poly):
        return cls._raw(p, Poly._raw((_ONE,), p.var))

    @classmethod
    def const(cls, v, var="x"):
        return cls.from_poly(Poly((v,), var))

    @classmethod
    def zero(cls, var="x"):
        return cls._raw(Poly._raw((), var), Poly._raw((_ONE,), var))

    @property
    def var(self):
        return self.num.var

    def is_poly(self):
        return len(self.den.c) == 1

    def is_zero(self):
        return not self.num.c

    def __bool__(self):
        return bool(self.num.c)

    def is_constant(self):
        return self.is_poly() and len(self.num.c) <= 1

    def as_poly(self):
        if not self.is_poly():
            raise InexactDivision(f"{self} is not a polynomial")
        return self.num

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.var != self.var:
                raise VariableMismatch(f"{self.var} vs {other.var}")
            return other
        if isinstance(other, Poly):
            if other.var != self.var:
                raise VariableMismatch(f"{self.var} vs {other.var}")
            return RatFunc.from_poly(other)
        return RatFunc.from_poly(Poly((other,), self.var))

    def __add__(self, other):
        o = self._coerce(other)
        if not o.num.c:
            return self
        if not self.num.c:
            return o
        d1, d2 = self.den, o.den
        if len(d1.c) == 1 and len(d2.c) == 1:
            return RatFunc.from_poly(self.num + o.num)
        if d1 == d2:
            return RatFunc._make(self.num + o.num, d1)
        g = d1.gcd(d2)
        if len(g.c) == 1:
            return RatFunc._make(self.num * d2 + o.num * d1, d1 * d2, coprime_dens=True)
        d2g = d2.exact_div(g)
        return RatFunc._make(self.num * d2g + o.num * d1.exact_div(g), d1 * d2g)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, Poly)):
            s = scalar(other)
            if not s:
                return RatFunc.zero(self.var)
            return RatFunc._raw(self.num * s, self.den)
        o = self._coerce(other)
        if not self.num.c or not o.num.c:
            return RatFunc.zero(self.var)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        one1, one2 = len(d1.c) == 1, len(d2.c) == 1
        if one1 and one2:
            return RatFunc.from_poly(n1 * n2)
        if not one2:
            g = n1.gcd(d2)
            if len(g.c) > 1:
                n1, d2 = n1.exact_div(g), d2.exact_div(g)
        if not one1:
            g = n2.gcd(d1)
            if len(g.c) > 1:
                n2, d1 = n2.exact_div(g), d1.exact_div(g)
        num, den = n1 * n2, d1 * d2
        return RatFunc._monic_den(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.c:
            raise DivisionByZero("inverse of zero rational function")
        return RatFunc._monic_den(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, Poly)):
            s = scalar(other)
            if not s:
                raise DivisionByZero("division by zero")
            return self * (1 / s if type(s) is not GaussianRational else s.inverse())
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    @staticmethod
    def _monic_den(num, den):
        lead = den.c[-1]
        if lead == 1:
            return RatFunc._raw(num, den)
        inv = 1 / lead if type(lead) is not GaussianRational else lead.inverse()
        return RatFunc._raw(num * inv, den * inv)

    @staticmethod
    def _make(num, den, coprime_dens=False):
        n, d = _reduce(num, den)
        return RatFunc._raw(n, d)

    # calculus -------------------------------------------------------------
    def derivative(self, k=1):
        r = self
        for _ in range(k):
            n, d = r.num, r.den
            if len(d.c) == 1:
                r = RatFunc.from_poly(n.derivative())
            else:
                r = RatFunc._make(n.derivative() * d - n * d.derivative(), d * d)
        return r

    def eval(self, a):
        dv = self.den.eval(a)
        if not dv:
            raise PoleAtPoint(f"{self} has a pole at {format_scalar(a)}")
        return self.num.eval(a) / dv

    def __call__(self, a):
        return gr(self.eval(a))

    def taylor(self, a, n):
        """Taylor coefficients [f(a), f'(a)/1!, ..., f^(n-1)(a)/(n-1)!]."""
        a = scalar(a)
        N = self.num.taylor_shift(a).c
        if len(self.den.c) == 1:
            out = list(N[:n]) + [_ZERO] * max(0, n - len(N))
            return out
        D = self.den.taylor_shift(a).c
        if not D or not D[0]:
            raise PoleAtPoint(f"{self} has a pole at {format_scalar(a)}")
        d0 = D[0]
        inv = 1 / d0 if type(d0) is not GaussianRational else d0.inverse()
        out = []
        for k in range(n):
            acc = N[k] if k < len(N) else _ZERO
            for i in range(1, min(k, len(D) - 1) + 1):
                acc = acc - D[i] * out[k - i]
            out.append(acc * inv)
        return out

    def reflect(self):
        return RatFunc._monic_den(self.num.reflect(), self.den.reflect())

    def poles_within(self, p: Poly) -> bool:
        """True if every pole is a root of ``p`` (den divides a power of p)."""
        d = self.den
        while len(d.c) > 1:
            g = d.gcd(p)
            if len(g.c) == 1:
                return False
            d = d.exact_div(g)
        return True

    # comparison / display ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            return self.is_poly() and self.num == other
        try:
            s = scalar(other)
        except TypeError:
            return NotImplemented
        return self.is_poly() and self.num == s

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.is_poly():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def _reduce(num: Poly, den: Poly):
    if not den.c:
        raise DivisionByZero("rational function with zero denominator")
    if not num.c:
        return num, Poly._raw((_ONE,), num.var)
    if len(den.c) == 1:
        d = den.c[0]
        if d == 1:
            return num, den
        inv = 1 / d if type(d) is not GaussianRational else d.inverse()
        return num * inv, Poly._raw((_ONE,), num.var)
    if len(num.c) > 1:
        g = num.gcd(den)
        if len(g.c) > 1:
            num, den = num.exact_div(g), den.exact_div(g)
    lead = den.c[-1]
    if lead != 1:
        inv = 1 / lead if type(lead) is not GaussianRational else lead.inverse()
        num, den = num * inv, den * inv
    return num, den


def lcm_all(polys: Sequence[Poly], var="x") -> Poly:
    acc = Poly._raw((_ONE,), var)
    for p in polys:
        if len(p.c) <= 1:
            continue
        if len(acc.c) > 1 and p.divides(acc):
            continue
        acc = acc.lcm(p)
    return acc
