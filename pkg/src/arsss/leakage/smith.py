"""Smith normal form over the integers with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotFullRank
from ..matrix import Matrix, as_matrix, det, identity, matmul, shape


@dataclass(frozen=True)
class SmithDecomposition:
    """``B = V2·G·V1`` with ``B`` diagonal, ``V1`` and ``V2`` unimodular.

    Diagonal entries are non-negative and each divides the next; ``rank``
    counts the nonzero ones.
    """

    V2: Matrix
    B: Matrix
    V1: Matrix
    rank: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        rows, cols = shape(self.B)
        return tuple(self.B[i][i] for i in range(min(rows, cols)))


def smith_normal_form(G, require_full_rank: bool = True) -> SmithDecomposition:
    """Diagonalise an integer matrix by elementary row and column moves.

    Each pivot is the smallest nonzero entry (in absolute value) of the
    remaining block, which keeps intermediate coefficients small.
    """
    A = [list(r) for r in as_matrix(G)]
    if any(not isinstance(v, int) for r in A for v in r):
        raise TypeError("Smith normal form needs an integer matrix")
    l, k = shape(A)
    V2 = [list(r) for r in identity(l)]
    V1 = [list(r) for r in identity(k)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        V2[i], V2[j] = V2[j], V2[i]

    def swap_cols(i, j):
        for M in (A, V1):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row dst += f * row src
        for M in (A, V2):
            M[dst] = [a + f * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, f):  # col dst += f * col src
        for M in (A, V1):
            for r in M:
                r[dst] += f * r[src]

    def negate_row(i):
        A[i] = [-v for v in A[i]]
        V2[i] = [-v for v in V2[i]]

    t = 0
    while t < min(l, k):
        entries = [(abs(A[i][j]), i, j) for i in range(t, l) for j in range(t, k) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, l):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, k):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if done:
                # the pivot must divide the whole remaining block
                bad = next(((i, j) for i in range(t + 1, l) for j in range(t + 1, k)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # a smaller remainder appeared in row or column t: make it the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, l) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, k) if A[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    rank = t
    if require_full_rank and rank < l:
        raise NotFullRank(f"matrix has rank {rank} < {l} rows")
    return SmithDecomposition(as_matrix(V2), as_matrix(A), as_matrix(V1), rank)


def check_decomposition(G, d: SmithDecomposition) -> bool:
    """``V2·G·V1 == B``, ``B`` diagonal and both transforms unimodular."""
    G = as_matrix(G)
    if matmul(matmul(d.V2, G), d.V1) != d.B:
        return False
    rows, cols = shape(d.B)
    if any(d.B[i][j] for i in range(rows) for j in range(cols) if i != j):
        return False
    return abs(det(d.V1)) == 1 and abs(det(d.V2)) == 1
