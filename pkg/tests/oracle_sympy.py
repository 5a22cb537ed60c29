"""Independent sympy realisation of exact operators (test oracle only)."""

import sympy as sp

from bispectral.exactnum import GaussianRational

x, y = sp.symbols("x y")
SYMS = {"x": x, "y": y}


def to_sympy_scalar(v):
    if isinstance(v, GaussianRational):
        return sp.Rational(int(v.re.numerator), int(v.re.denominator)) + sp.I * sp.Rational(
            int(v.im.numerator), int(v.im.denominator)
        )
    return sp.Rational(int(v.numerator), int(v.denominator))


def poly_sympy(p, var):
    return sum((to_sympy_scalar(c) * var**k for k, c in enumerate(p.coeffs)), sp.Integer(0))


def rf_sympy(rf, var):
    return poly_sympy(rf.num, var) / poly_sympy(rf.den, var)


def apply_op(op, expr):
    var = SYMS[op.var]
    out = sp.Integer(0)
    for j, c in enumerate(op.c):
        out += rf_sympy(c, var) * sp.diff(expr, var, j)
    return out
