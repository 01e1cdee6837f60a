"""Exact dense and sparse linear algebra over Q or a flattened number field.

Entries are Fractions or NFElements; nothing here is numerical.
"""
from __future__ import annotations

from fractions import Fraction

from .exactpoly.field import is_zero

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(m, n):
    return [[ZERO] * n for _ in range(m)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    if len(A[0]) != inner:
        raise ValueError("shape mismatch in matmul")
    cols = len(B[0]) if B else 0
    out = zeros(len(A), cols)
    for i, row in enumerate(A):
        o = out[i]
        for k, x in enumerate(row):
            if is_zero(x):
                continue
            bk = B[k]
            for j in range(cols):
                y = bk[j]
                if not is_zero(y):
                    o[j] = o[j] + x * y
    return out


def matvec(A, v):
    out = []
    for row in A:
        s = ZERO
        for x, y in zip(row, v):
            if not is_zero(x) and not is_zero(y):
                s = s + x * y
        out.append(s)
    return out


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def scalar_shift(A, lam):
    """A - lam * I."""
    out = [list(r) for r in A]
    for i in range(len(out)):
        out[i][i] = out[i][i] - lam
    return out


def matpow(A, k):
    out = identity(len(A))
    for _ in range(k):
        out = matmul(out, A)
    return out


def rref(A):
    """Reduced row echelon form; returns (R, pivot columns)."""
    R = [list(r) for r in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    row = 0
    for col in range(n):
        pr = next((i for i in range(row, m) if not is_zero(R[i][col])), None)
        if pr is None:
            continue
        R[row], R[pr] = R[pr], R[row]
        inv = ONE / R[row][col]
        R[row] = [x * inv for x in R[row]]
        for i in range(m):
            if i != row and not is_zero(R[i][col]):
                f = R[i][col]
                R[i] = [x - f * y for x, y in zip(R[i], R[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R, pivots


def rank(A):
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols=None):
    """Basis of {x : A x = 0} as a list of vectors."""
    if not A:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols or 0)]
    n = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(n) if c not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(A, b):
    """One solution x of A x = b, or None when inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [ZERO] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def det(A):
    n = len(A)
    M = [list(r) for r in A]
    d = ONE
    for col in range(n):
        pr = next((i for i in range(col, n) if not is_zero(M[i][col])), None)
        if pr is None:
            return ZERO
        if pr != col:
            M[col], M[pr] = M[pr], M[col]
            d = -d
        piv = M[col][col]
        d = d * piv
        inv = ONE / piv
        for i in range(col + 1, n):
            f = M[i][col]
            if not is_zero(f):
                f = f * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return d


def inverse(A):
    n = len(A)
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def charpoly(A):
    """Coefficients (low to high, monic) of det(x I - A), by Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [ZERO] * n + [ONE]
    M = zeros(n, n)
    prev = ONE
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        M = matmul(A, M) if k > 1 else zeros(n, n)
        for i in range(n):
            M[i][i] = M[i][i] + prev
        AM = matmul(A, M)
        tr = ZERO
        for i in range(n):
            tr = tr + AM[i][i]
        prev = -tr / k
        coeffs[n - k] = prev
    return coeffs


def span_contains(vectors, v):
    if not vectors:
        return all(is_zero(x) for x in v)
    return rank(vectors + [v]) == rank(vectors)


def sparse_rank(rows, ncols=None):
    """Rank of a matrix given as a list of {col: value} dicts (Markowitz-free elimination)."""
    pivots = {}
    r = 0
    for row in rows:
        row = {c: v for c, v in row.items() if not is_zero(v)}
        while row:
            col = min(row)
            p = pivots.get(col)
            if p is None:
                inv = ONE / row[col]
                pivots[col] = {c: v * inv for c, v in row.items()}
                r += 1
                break
            f = row[col]
            for c, v in p.items():
                nv = row.get(c, ZERO) - f * v
                if is_zero(nv):
                    row.pop(c, None)
                else:
                    row[c] = nv
    return r


def dense_to_sparse(A):
    return [{j: x for j, x in enumerate(row) if not is_zero(x)} for row in A]
