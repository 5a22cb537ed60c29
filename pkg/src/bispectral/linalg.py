"""Exact linear algebra over Q(i).

Kernels come from fraction-free (Bareiss) elimination with deterministic
pivots: leftmost column, then the entry of smallest bit size.  A modular
rank profile is used only to choose which rows enter the exact
elimination; every kernel vector is then checked against all rows.
"""

from __future__ import annotations

import gmpy2
import numpy as np
from gmpy2 import mpq, mpz

from .exactnum import GaussianRational, gr, scalar

__all__ = ["nullspace", "rank", "rref", "modp_rank_profile", "is_zero_vector"]

# 31-bit prime = 1 mod 4 so products fit in int64; i maps to a root of -1
SMALL_PRIME = 2147483629
SMALL_SQRT_M1 = 629208553

_ZERO = mpq(0)


def _is_complex(rows):
    return any(type(v) is GaussianRational for r in rows for v in r)


def _integer_rows(rows, cplx):
    """Scale each row by the lcm of its denominators."""
    out = []
    for r in rows:
        if cplx:
            r = [gr(v) for v in r]
        den = mpz(1)
        for v in r:
            if cplx:
                for part in (v.re, v.im):
                    d = part.denominator
                    if d != 1:
                        den = gmpy2.lcm(den, d)
            else:
                d = v.denominator
                if d != 1:
                    den = gmpy2.lcm(den, d)
        if cplx:
            out.append([v * den for v in r])
        else:
            out.append([mpz(v.numerator * (den // v.denominator)) for v in r])
    return out


def _bits(v):
    if type(v) is GaussianRational:
        return v.bit_size()
    return int(gmpy2.bit_length(v))


def bareiss(rows, ncols, cplx=False):
    """Fraction-free row echelon form; returns (echelon rows, pivot columns)."""
    A = [list(r) for r in rows]
    m = len(A)
    prev = gr(1) if cplx else mpz(1)
    r = 0
    pivots = []
    for col in range(ncols):
        if r >= m:
            break
        best, best_bits = None, None
        for i in range(r, m):
            v = A[i][col]
            if v:
                b = _bits(v)
                if best is None or b < best_bits:
                    best, best_bits = i, b
        if best is None:
            continue
        A[r], A[best] = A[best], A[r]
        piv = A[r]
        pv = piv[col]
        for i in range(r + 1, m):
            row = A[i]
            f = row[col]
            if cplx:
                if f:
                    for j in range(col + 1, ncols):
                        row[j] = (pv * row[j] - f * piv[j]) / prev
                else:
                    for j in range(col + 1, ncols):
                        if row[j]:
                            row[j] = (pv * row[j]) / prev
            else:
                if f:
                    for j in range(col + 1, ncols):
                        row[j] = (pv * row[j] - f * piv[j]) // prev
                elif pv != prev:
                    for j in range(col + 1, ncols):
                        if row[j]:
                            row[j] = (pv * row[j]) // prev
            row[col] = 0 * pv
        prev = pv
        pivots.append(col)
        r += 1
    return A[:r], pivots


def _kernel_from_echelon(U, pivots, ncols, cplx):
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    conv = gr if cplx else (lambda v: mpq(v))
    for f in free:
        v = [_ZERO] * ncols
        v[f] = mpq(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = U[i]
            acc = _ZERO
            for j in range(pc + 1, ncols):
                if row[j] and v[j]:
                    acc = acc + conv(row[j]) * v[j]
            v[pc] = -acc / conv(row[pc]) if acc else _ZERO
        basis.append([scalar(c) for c in v])
    return basis


# modular helpers ------------------------------------------------------------------
def _mod_entry(v, p=SMALL_PRIME):
    if type(v) is GaussianRational:
        a, b = _mod_entry(v.re, p), _mod_entry(v.im, p)
        if a is None or b is None:
            return None
        return (a + SMALL_SQRT_M1 * b) % p
    if type(v) is type(mpz(0)) or isinstance(v, int):
        return int(v) % p
    d = int(v.denominator) % p
    if not d:
        return None
    return int(v.numerator) % p * pow(d, -1, p) % p


def modp_matrix(rows, ncols):
    arr = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if v:
                m = _mod_entry(v)
                if m is None:
                    return None
                arr[i, j] = m
    return arr


def modp_rank_profile(arr):
    """(rank, pivot columns, independent original row indices) modulo SMALL_PRIME."""
    p = SMALL_PRIME
    A = arr.copy() % p
    m, n = A.shape
    rows_idx = list(range(m))
    r = 0
    pivots = []
    for col in range(n):
        if r >= m:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
            rows_idx[r], rows_idx[i] = rows_idx[i], rows_idx[r]
        inv = pow(int(A[r, col]), -1, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1 :, col].copy()
        mask = below != 0
        if mask.any():
            sub = A[r + 1 :][mask]
            sub = (sub - (below[mask][:, None] * A[r][None, :]) % p) % p
            A[r + 1 :][mask] = sub
        pivots.append(col)
        r += 1
    return r, pivots, sorted(rows_idx[:r])


def modp_rank(rows, ncols):
    arr = modp_matrix(rows, ncols)
    if arr is None:
        return None
    return modp_rank_profile(arr)[0]


# public API ---------------------------------------------------------------------------
def _dot(row, vec):
    acc = _ZERO
    for a, b in zip(row, vec):
        if a and b:
            acc = acc + a * b
    return acc


def is_zero_vector(rows, vec):
    return all(not _dot(r, vec) for r in rows)


def nullspace(rows, ncols, stats=None):
    """Basis of {v : rows . v = 0} over Q(i), one vector per free column.

    The returned basis is reduced: each vector has a 1 in its own free
    column and 0 in the others.
    """
    rows = [[scalar(v) for v in r] for r in rows if any(r)]
    if not rows:
        return [[mpq(1) if j == f else _ZERO for j in range(ncols)] for f in range(ncols)]
    cplx = _is_complex(rows)
    irows = _integer_rows(rows, cplx)
    selected = irows
    used_profile = False
    if len(irows) > ncols // 2 + 8:
        arr = modp_matrix(irows, ncols)
        if arr is not None:
            r, _, idx = modp_rank_profile(arr)
            selected = [irows[i] for i in idx]
            used_profile = True
    U, piv = bareiss(selected, ncols, cplx)
    basis = _kernel_from_echelon(U, piv, ncols, cplx)
    if used_profile and not all(is_zero_vector(rows, v) for v in basis):
        U, piv = bareiss(irows, ncols, cplx)
        basis = _kernel_from_echelon(U, piv, ncols, cplx)
        if stats is not None:
            stats["modular_fallback"] = True
    if stats is not None:
        stats["rows"] = len(rows)
        stats["exact_rows"] = len(selected)
        stats["rank"] = len(piv)
    return basis


def rank(rows, ncols):
    rows = [[scalar(v) for v in r] for r in rows if any(r)]
    if not rows:
        return 0
    cplx = _is_complex(rows)
    U, piv = bareiss(_integer_rows(rows, cplx), ncols, cplx)
    return len(piv)


def rref(rows, ncols):
    """Exact reduced row echelon form (list of rows, pivot columns)."""
    rows = [[scalar(v) for v in r] for r in rows if any(r)]
    if not rows:
        return [], []
    cplx = _is_complex(rows)
    U, piv = bareiss(_integer_rows(rows, cplx), ncols, cplx)
    conv = gr if cplx else mpq
    R = [[conv(v) for v in row] for row in U]
    for i in range(len(R) - 1, -1, -1):
        pc = piv[i]
        inv = 1 / R[i][pc]
        R[i] = [v * inv for v in R[i]]
        for k in range(i):
            f = R[k][pc]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return [[scalar(v) for v in row] for row in R], piv
