import random

from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from bispectral.exactnum import GaussianRational, scalar
from bispectral.linalg import bareiss, modp_matrix, modp_rank_profile, nullspace, rank, rref


def _mul(rows, v):
    return [sum((a * b for a, b in zip(r, v)), scalar(0)) for r in rows]


def test_identity_has_trivial_kernel():
    I = [[mpq(int(i == j)) for j in range(3)] for i in range(3)]
    assert nullspace(I, 3) == []


def test_zero_matrix():
    Z = [[mpq(0)] * 4 for _ in range(2)]
    assert len(nullspace(Z, 4)) == 4


def test_hilbert_like():
    H = [[mpq(1, i + j + 1) for j in range(7)] for i in range(5)]
    K = nullspace(H, 7)
    assert len(K) == 2
    for v in K:
        assert all(not x for x in _mul(H, v))


def test_complex_entries():
    i = GaussianRational(0, 1)
    A = [[scalar(1), i], [i, scalar(-1)]]
    K = nullspace(A, 2)
    assert len(K) == 1
    assert all(not x for x in _mul(A, K[0]))


def test_reduced_basis_shape():
    A = [[mpq(1), mpq(2), mpq(3), mpq(4)]]
    K = nullspace(A, 4)
    free = [[j for j, x in enumerate(v) if x == 1 and all(not w[j] for w in K if w is not v)] for v in K]
    assert all(free)


def test_modular_profile_selects_independent_rows():
    rows = [[mpq(1), mpq(2)], [mpq(2), mpq(4)], [mpq(0), mpq(1)]]
    r, piv, idx = modp_rank_profile(modp_matrix(rows, 2))
    assert r == 2 and piv == [0, 1] and len(idx) == 2


def test_bareiss_pivots_leftmost():
    U, piv = bareiss([[0, 0, 2], [0, 3, 1], [1, 1, 1]], 3)
    assert piv == [0, 1, 2]


@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 8))
@settings(max_examples=60, deadline=None)
def test_nullspace_rank_nullity(seed, m, n):
    rng = random.Random(seed)
    A = [[mpq(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.7 else mpq(0) for _ in range(n)] for _ in range(m)]
    K = nullspace(A, n)
    assert len(K) + rank(A, n) == n
    for v in K:
        assert all(not x for x in _mul(A, v))


def test_tall_system_uses_modular_preselection():
    rng = random.Random(3)
    base = [[mpq(rng.randint(-5, 5)) for _ in range(6)] for _ in range(4)]
    rows = []
    for _ in range(40):
        c = [rng.randint(-2, 2) for _ in range(4)]
        rows.append([sum((ci * r[j] for ci, r in zip(c, base)), mpq(0)) for j in range(6)])
    stats = {}
    K = nullspace(rows, 6, stats)
    assert stats["exact_rows"] <= 4 and len(K) == 6 - rank(base, 6)
    assert all(not x for v in K for x in _mul(rows, v))


def test_rref():
    R, piv = rref([[mpq(2), mpq(4)], [mpq(1), mpq(3)]], 2)
    assert R == [[1, 0], [0, 1]] and piv == [0, 1]
