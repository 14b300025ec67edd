"""Exact dense linear algebra over Scalar (small matrices only)."""

from __future__ import annotations

from .scalars import ONE, ZERO


class SingularMatrix(ArithmeticError):
    pass


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = [[ZERO] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for k in range(m):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(p):
                b = Bk[j]
                if b:
                    row[j] = row[j] + a * b
    return out


def inverse(A):
    """Gauss-Jordan inverse; raises SingularMatrix."""
    n = len(A)
    M = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularMatrix(f"singular at column {col}")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def is_identity(A):
    return all((A[i][j] == (ONE if i == j else ZERO)) for i in range(len(A)) for j in range(len(A)))
