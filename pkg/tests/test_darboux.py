import pytest
from gmpy2 import mpq

from bispectral.context import make_context, parse_gen, sym_basis
from bispectral.darboux import (
    CandidateBounds,
    build_transform,
    candidate_space,
    conj_p,
    conj_u,
    trivial_transform,
)
from bispectral.errors import FactorizationFails, NonPolynomialLeadingCoefficient, PMismatch, QMismatch
from bispectral.exactnum import Poly, RatFunc
from bispectral.orealg import OreOp
from bispectral.parser import parse_op, print_op

EXP = make_context("exp")
AIRY = make_context("airy")
BESSEL = make_context("bessel", mpq(1, 2))


@pytest.fixture(scope="module")
def rank_one():
    return build_transform(EXP, parse_gen(EXP, "x*Dx - 1"))


def test_rank_one_data(rank_one):
    t = rank_one
    assert t.p == Poly([0, 1]) and t.q == Poly([0, 1], "y")
    assert (t.d1, t.d2) == (1, 1)
    assert t.unit_x == -1 and t.f_x == Poly([0, 0, 1], "T")
    assert t.kappa_x == -1 and t.kappa_y == -1


def test_bessel_22_data():
    t = build_transform(BESSEL, parse_gen(BESSEL, "X2*BB + (2*nu-1)*S + nu*(nu+1) + nu*(nu-2)"))
    assert print_op(t.u) == "x^2*Dx^2 - 3/4"
    assert (t.d1, t.d2) == (2, 2)
    assert t.p == Poly([0, 0, 1])
    assert t.q.degree == 2


def test_airy_22_data():
    t = build_transform(AIRY, parse_gen(AIRY, "((1-x)*Dx^2 + Dx + x^2 - x)^2 - 1"))
    assert t.p == Poly([1, -2, 1]) and t.q == Poly([0, 0, 1], "y")
    assert t.f_x == Poly([0, 0, 0, 0, 1], "T")
    assert (t.d1, t.d2) == (4, 4)


def test_overrides(rank_one):
    build_transform(EXP, parse_gen(EXP, "x*Dx - 1"), p_override=Poly([0, 3]), q_override=Poly([0, 2], "y"))
    with pytest.raises(PMismatch):
        build_transform(EXP, parse_gen(EXP, "x*Dx - 1"), p_override=Poly([1, 1]))
    with pytest.raises(QMismatch):
        build_transform(EXP, parse_gen(EXP, "x*Dx - 1"), q_override=Poly([0, 0, 1], "y"))


def test_factorization_fails():
    # u* (1/x^2) u is not a polynomial in D for u = x D + x^2
    with pytest.raises((FactorizationFails, QMismatch)):
        build_transform(EXP, parse_gen(EXP, "x*Dx + x^2"))


def test_trivial():
    t = trivial_transform(AIRY)
    assert t.trivial and t.u == OreOp.identity("x") and (t.d1, t.d2) == (0, 0)
    assert len(candidate_space(t, 1, 1)) == 4


def test_conj_p_example(rank_one):
    b = sym_basis(EXP, 1, 0)[1]  # D^2
    assert print_op(b.expr.x_op) == "Dx^2"
    pair = conj_p(rank_one, b)
    x = OreOp.mult(Poly([0, 1]), "x")
    assert pair.x_op == x * OreOp.D("x") ** 2 * x
    assert (pair.order, pair.coorder) == (b.order, b.coorder + 2)


def test_conj_u_example(rank_one):
    pair = conj_u(rank_one, sym_basis(EXP, 0, 0)[0])
    inv = OreOp.mult(RatFunc(Poly([1]), Poly([0, 1])), "x")
    assert pair.x_op == inv * parse_op("x*Dx - 1") * parse_op("-x*Dx - 2") * inv
    assert pair.x_op.is_symmetric() and pair.y_op.is_symmetric()


def test_candidates_symmetric_and_sigma_invariant(rank_one):
    for c in candidate_space(rank_one, 2, 2):
        assert c.x_op.is_symmetric() and c.y_op.is_symmetric()
        assert c.x_op.is_sigma_invariant()


def test_bounds_bookkeeping():
    t = build_transform(AIRY, parse_gen(AIRY, "((1-x)*Dx^2 + Dx + x^2 - x)^2 - 1"))
    b = CandidateBounds.default(t, 16, 16)
    assert b.u_family == (24, 32) and b.p_family == (6, 24)
    n = 1 + len(sym_basis(AIRY, 12, 16)) + len(sym_basis(AIRY, 3, 12))
    assert n == 274


def test_nonpolynomial_leading_coefficient():
    with pytest.raises(NonPolynomialLeadingCoefficient):
        from bispectral.darboux import _leading_poly

        _leading_poly(parse_op("(1)/(x)*Dx"), "u")
