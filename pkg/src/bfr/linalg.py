"""Generic exact linear algebra over any field object.

Matrices are lists of lists of field elements; all routines are plain
Gaussian elimination, which is exact because field arithmetic is exact.
"""

from __future__ import annotations

from .errors import SingularMatrixError


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_mul(F, A, B):
    nb = len(B[0])
    out = []
    for row in A:
        acc = [F.zero] * nb
        for aij, brow in zip(row, B):
            if aij == F.zero:
                continue
            acc = [F.add(x, F.mul(aij, y)) for x, y in zip(acc, brow)]
        out.append(acc)
    return out


def mat_vec(F, A, x):
    out = []
    for row in A:
        acc = F.zero
        for aij, xj in zip(row, x):
            if aij != F.zero and xj != F.zero:
                acc = F.add(acc, F.mul(aij, xj))
        out.append(acc)
    return out


def vec_mat(F, x, A):
    ncols = len(A[0])
    acc = [F.zero] * ncols
    for xi, row in zip(x, A):
        if xi == F.zero:
            continue
        acc = [F.add(a, F.mul(xi, r)) for a, r in zip(acc, row)]
    return acc


def dot(F, x, y):
    acc = F.zero
    for a, b in zip(x, y):
        if a != F.zero and b != F.zero:
            acc = F.add(acc, F.mul(a, b))
    return acc


def _eliminate(F, M, ncols):
    """Row-reduce M in place over its first ``ncols`` columns.

    Returns the list of pivot column indices.
    """
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(M)):
            if M[i][col] != F.zero:
                pivot = i
                break
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = F.inv(M[r][col])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != F.zero:
                f = M[i][col]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return pivots


def rank(F, A) -> int:
    if not A:
        return 0
    M = [list(r) for r in A]
    return len(_eliminate(F, M, len(M[0])))


def solve(F, A, b):
    """Solve A x = b for square invertible A; raises SingularMatrixError."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise SingularMatrixError("solve requires a square matrix")
    M = [list(r) + [bv] for r, bv in zip(A, b)]
    pivots = _eliminate(F, M, n)
    if len(pivots) != n:
        raise SingularMatrixError("matrix is singular")
    return [M[i][n] for i in range(n)]


def inv(F, A):
    n = len(A)
    M = [list(r) + ident for r, ident in zip(A, identity(F, n))]
    pivots = _eliminate(F, M, n)
    if len(pivots) != n:
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in M]


def solve_overdetermined(F, A, b):
    """Solve A x = b where A has full column rank (and possibly extra rows).

    Raises SingularMatrixError on rank deficiency and on inconsistency.
    """
    ncols = len(A[0])
    M = [list(r) + [bv] for r, bv in zip(A, b)]
    pivots = _eliminate(F, M, ncols)
    if len(pivots) != ncols:
        raise SingularMatrixError("columns are not independent")
    x = [F.zero] * ncols
    for r, col in enumerate(pivots):
        x[col] = M[r][ncols]
    for r in range(len(pivots), len(M)):
        if M[r][ncols] != F.zero:
            raise SingularMatrixError("inconsistent system")
    return x


def nullspace(F, A):
    """A basis (list of vectors) for the right null space of A."""
    ncols = len(A[0])
    M = [list(r) for r in A]
    pivots = _eliminate(F, M, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(M[r][fc])
        basis.append(v)
    return basis
