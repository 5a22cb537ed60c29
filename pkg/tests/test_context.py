import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from bispectral.context import (
    adjoint_tree,
    base_operator,
    fourier,
    fourier_of_operator,
    make_context,
    parse_gen,
    sym_basis,
)
from bispectral.errors import NotInFourierAlgebra, UnsupportedContext
from bispectral.parser import parse_op, print_op
from strategies import rand_op

EXP = make_context("exp")
AIRY = make_context("airy")
BESSEL = make_context("bessel", mpq(1, 2))


def test_bessel_needs_noninteger_nu():
    with pytest.raises(UnsupportedContext):
        make_context("bessel", 1)
    with pytest.raises(UnsupportedContext):
        make_context("bessel")
    with pytest.raises(UnsupportedContext):
        make_context("hermite")


@pytest.mark.parametrize(
    "ctx, text, image",
    [
        (EXP, "x^2*Dx", "y*Dy^2"),
        (EXP, "x*Dx", "y*Dy"),
        (AIRY, "x", "Dy^2 - y"),
        (AIRY, "Dx^2 - x", "y"),
        (BESSEL, "BB", "y^2"),
        (BESSEL, "S", "y*Dy"),
        (BESSEL, "X2", "Dy^2 + (-3/4)/(y^2)"),
    ],
)
def test_images(ctx, text, image):
    assert print_op(parse_gen(ctx, text).y_op) == image


def test_base_operator_acts_by_eigenvalue():
    # base_x maps to multiplication by the eigenvalue polynomial
    for ctx in (EXP, AIRY, BESSEL):
        word = {"exp": "Dx", "airy": "Dx^2 - x", "bessel": "BB"}[ctx.kind]
        g = parse_gen(ctx, word)
        assert g.x_op == base_operator(ctx, "x")
        assert g.y_op.order == 0


@pytest.mark.parametrize("ctx", [EXP, AIRY, BESSEL], ids=lambda c: c.kind)
def test_adjoint_tree_matches_formal_adjoint(ctx):
    words = {"exp": "x^2*Dx + Dx*x", "airy": "x*Dx^3 + 2", "bessel": "S*BB + X2*S^2"}[ctx.kind]
    g = parse_gen(ctx, words)
    adj = fourier(ctx, adjoint_tree(ctx, g.tree))
    assert adj.x_op == g.x_op.adjoint()


@pytest.mark.parametrize("ctx", [EXP, AIRY, BESSEL], ids=lambda c: c.kind)
@pytest.mark.parametrize("ell, m", [(0, 0), (1, 1), (2, 1), (1, 3)])
def test_sym_basis_shape(ctx, ell, m):
    basis = sym_basis(ctx, ell, m)
    assert len(basis) == (ell + 1) * (m + 1)
    for b in basis:
        assert b.order <= 2 * ell and b.coorder <= 2 * m
        assert b.expr.x_op.is_symmetric() and b.expr.y_op.is_symmetric()
        if ctx.sigma_invariant:
            assert b.expr.x_op.is_sigma_invariant()


def test_exp_basis_words():
    labels = [(b.j, b.k, print_op(b.expr.x_op)) for b in sym_basis(EXP, 1, 1)]
    assert (1, 1, "x^2*Dx^2 + 2*x*Dx") in labels


@pytest.mark.parametrize("ctx", [EXP, AIRY], ids=lambda c: c.kind)
@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_fourier_of_operator_polynomial_contexts(ctx, seed):
    op = rand_op(random.Random(seed), 3, 3)
    g = fourier_of_operator(ctx, op)
    assert g.x_op == op


def test_fourier_of_operator_rejects_rational_in_exp():
    with pytest.raises(NotInFourierAlgebra):
        fourier_of_operator(EXP, parse_op("(1)/(x)*Dx"))


def test_bessel_membership_by_peeling():
    op = parse_gen(BESSEL, "S*BB*X2 + 3*X2^2 + S").x_op
    g = fourier_of_operator(BESSEL, op)
    assert g.x_op == op
    assert g.y_op == parse_gen(BESSEL, "S*BB*X2 + 3*X2^2 + S").y_op
    with pytest.raises(NotInFourierAlgebra):
        fourier_of_operator(BESSEL, parse_op("Dx"))
    with pytest.raises(NotInFourierAlgebra):
        # the other sign of the 1/x^2 term
        fourier_of_operator(BESSEL, parse_op("Dx*(x^2 - 1)*Dx - 4*x^2 - (3/4)/(x^2)"))


def test_bessel_second_order_variant_in_algebra():
    g = fourier_of_operator(BESSEL, parse_op("Dx*(x^2 - 1)*Dx - 4*x^2 + (3/4)/(x^2)"))
    assert print_op(g.y_op) == "(y^2 - 4)*Dy^2 + 2*y*Dy + (-y^4 + 3)/(y^2)"
