import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bispectral.errors import DependentKernel, NotFormallySymmetric, NotInKernel, NotLagrangian, NotSigmaStable
from bispectral.exactnum import Poly
from bispectral.grassmannian import (
    AdelicPlane,
    ConditionFunctional,
    QuasiExp,
    annihilator,
    apply_constant_op,
    concomitant_pairing,
    constant_op,
    factorization_check,
    functional_to_kernel,
    is_lagrangian,
    is_sigma_stable,
    synthesize_lagrangian,
    to_darboux,
)
from bispectral.orealg import OreOp
from bispectral.parser import print_op

X = Poly([0, 1])
ONE = Poly([1])


def qe(c, coeffs):
    return QuasiExp.exp(c, Poly(coeffs))


class TestQuasiExp:
    def test_derivative_of_x(self):
        assert qe(0, [0, 1]).derivative() == QuasiExp.poly(ONE)

    def test_exponents_cancel(self):
        assert qe(1, [1]) * qe(-1, [1]) == QuasiExp.poly(ONE)

    def test_derivative_with_exponent(self):
        assert qe(2, [0, 1]).derivative() == qe(2, [1, 2])

    def test_no_zero_terms(self):
        f = qe(1, [1]) - qe(1, [1])
        assert f.is_zero() and f.terms == {}

    def test_sigma(self):
        assert qe(2, [1, 1]).sigma() == qe(-2, [1, -1])

    def test_eval_at_zero(self):
        assert (qe(1, [3, 1]) + qe(-2, [1])).eval_at_zero() == 4


class TestFunctionals:
    def test_delta_prime(self):
        assert functional_to_kernel(ConditionFunctional(0, (0, 1))) == qe(0, [0, 1])

    def test_shifted_delta(self):
        assert functional_to_kernel(ConditionFunctional(2, (1,))) == qe(2, [1])

    def test_linearity(self):
        assert functional_to_kernel(ConditionFunctional(0, (1, 0, 1))) == qe(0, [1, 0, 1])

    def test_leading_coefficient_nonzero(self):
        assert ConditionFunctional(0, (1, 0, 0)).coeffs == (1,)
        with pytest.raises(ValueError):
            ConditionFunctional(0, (0, 0))

    def test_q_degree_law(self):
        plane = AdelicPlane((ConditionFunctional(0, (1,)), ConditionFunctional(0, (0, 0, 1)), ConditionFunctional(1, (1,))))
        assert plane.q.degree == 3
        assert plane.q == Poly([0, 0, -1, 1], "y")


class TestPairing:
    def test_d2_on_1_x(self):
        M = concomitant_pairing(OreOp.D("x") ** 2, [QuasiExp.poly(ONE), QuasiExp.poly(X)])
        assert M == [[0, -1], [1, 0]]

    def test_d2_on_x(self):
        assert concomitant_pairing(OreOp.D("x") ** 2, [QuasiExp.poly(X)]) == [[0]]

    def test_cosh_line(self):
        d = constant_op({1: 1, -1: 1})
        cosh = qe(1, [1]) + qe(-1, [1])
        assert concomitant_pairing(d, [cosh]) == [[0]]
        plane = AdelicPlane((ConditionFunctional(1, (1,)), ConditionFunctional(-1, (1,))), {1: 1, -1: 1})
        assert not is_lagrangian(plane)  # dimension 2 = ord d

    def test_not_in_kernel(self):
        with pytest.raises(NotInKernel):
            concomitant_pairing(OreOp.D("x"), [QuasiExp.poly(X)])

    @given(st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_antisymmetry_and_constancy(self, seed):
        rng = random.Random(seed)
        mult = {0: 2 * rng.randint(0, 2)}
        for c in rng.sample([1, 2, 3], rng.randint(0, 2)):
            m = rng.randint(1, 2)
            mult[c] = mult[-c] = m
        mult = {c: m for c, m in mult.items() if m} or {0: 2}
        d = constant_op(mult)
        V = []
        for _ in range(3):
            f = QuasiExp()
            for c, m in mult.items():
                f = f + qe(c, [rng.randint(-2, 2) for _ in range(m)])
            V.append(f)
        M = concomitant_pairing(d, V)
        assert all(M[i][j] == -M[j][i] for i in range(3) for j in range(3))


class TestPlanes:
    def test_span_x_lagrangian(self):
        plane = AdelicPlane((ConditionFunctional(0, (0, 1)),))
        assert print_op(plane.d_const) == "Dx^2"
        assert is_lagrangian(plane) and is_sigma_stable(plane)

    def test_span_1_x_not_lagrangian(self):
        plane = AdelicPlane((ConditionFunctional(0, (1,)), ConditionFunctional(0, (0, 1))), {0: 2})
        assert not is_lagrangian(plane)

    def test_ambient_must_be_symmetric(self):
        plane = AdelicPlane((ConditionFunctional(1, (1,)),), {1: 2})
        with pytest.raises(NotFormallySymmetric):
            is_lagrangian(plane)

    @pytest.mark.parametrize(
        "V, stable",
        [([qe(0, [0, 1])], True), ([qe(1, [1])], False), ([qe(1, [1]), qe(-1, [1])], True)],
    )
    def test_sigma_stability(self, V, stable):
        assert is_sigma_stable(V) == stable


class TestAnnihilator:
    def test_x(self):
        a = annihilator([qe(0, [0, 1])])
        assert print_op(a.u) == "x*Dx - 1" and a.p == X

    def test_one(self):
        a = annihilator([QuasiExp.poly(ONE)])
        assert print_op(a.u) == "Dx" and a.p == ONE

    def test_dependent(self):
        with pytest.raises(DependentKernel):
            annihilator([qe(0, [0, 1]), qe(0, [0, 2])])

    @given(st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_kills_v(self, seed):
        rng = random.Random(seed)
        V = []
        while len(V) < rng.randint(1, 3):
            c = rng.choice([0, 0, 1, -1, 2])
            f = qe(c, [rng.randint(-2, 2) for _ in range(rng.randint(1, 3))])
            if f and (not V or len(V) + 1 == _rank(V + [f])):
                V.append(f)
        a = annihilator(V)
        assert a.u.order == len(V)
        assert a.u.leading_coefficient().num == a.p
        for f in V:
            assert apply_constant_op(a.u, f).is_zero()


def _rank(V):
    from bispectral.grassmannian import qe_rank

    return qe_rank(V)


class TestToDarboux:
    def test_rank_one(self):
        r = to_darboux(AdelicPlane((ConditionFunctional(0, (0, 1)),)))
        t = r.transform
        assert print_op(t.u) == "x*Dx - 1" and t.p == X and t.q == Poly([0, 1], "y")
        assert r.factorization[0] == -1

    def test_pair_pm1(self):
        r = to_darboux(AdelicPlane((ConditionFunctional(1, (1,)), ConditionFunctional(-1, (1,)))))
        assert print_op(r.transform.u) == "Dx^2 - 1"
        assert r.transform.q == Poly([-1, 0, 1], "y")

    def test_sigma_unstable(self):
        with pytest.raises(NotSigmaStable):
            to_darboux(AdelicPlane((ConditionFunctional(1, (1,)),)))

    def test_not_lagrangian(self):
        plane = AdelicPlane(
            (ConditionFunctional(1, (1,)), ConditionFunctional(-1, (1,)), ConditionFunctional(0, (1,)), ConditionFunctional(0, (0, 1))),
            {1: 2, -1: 2, 0: 2},
        )
        with pytest.raises(NotLagrangian):
            to_darboux(plane)

    def test_even_pair(self):
        plane = AdelicPlane((ConditionFunctional(0, (1,)), ConditionFunctional(0, (0, 0, 1))))
        r = to_darboux(plane)
        assert print_op(r.transform.u) == "x*Dx^2 - Dx"
        assert r.transform.adjoint_sign == -1


class TestSynthesis:
    @pytest.mark.parametrize("mult", [{0: 2}, {0: 4}, {0: 6}, {2: 2, -2: 2}, {0: 2, 1: 2, -1: 2}])
    def test_planes_pass_factorization(self, mult):
        plane = synthesize_lagrangian(mult, random.Random(11))
        assert plane is not None
        ok, unit, f = factorization_check(plane)
        assert ok
        assert f == plane.f_poly

    def test_odd_multiplicity_has_no_plane(self):
        assert synthesize_lagrangian({1: 1, -1: 1}, random.Random(0)) is None

    def test_orthogonality_law(self):
        # d = a b with b the annihilator of V: ker a* is orthogonal to ker b
        plane = synthesize_lagrangian({0: 4}, random.Random(5))
        b = annihilator(plane.V).monic
        d = plane.d_const
        # a* = (d b^{-1})* ; d = b* b up to a unit so a = unit * b*, ker a* = ker b
        ok, unit, f = factorization_check(plane)
        assert ok
        assert (b.adjoint() * b) * (1 / unit) == OreOp(list(f.coeffs), "x")
        M = concomitant_pairing(d, plane.V)
        assert all(not v for row in M for v in row)
