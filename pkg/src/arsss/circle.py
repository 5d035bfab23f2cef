"""Circle multiplication of coefficients with probability vectors.

``g ⊗ x = g·x - g·u + |g|·u``: a non-negative coefficient scales ``x``,
a negative one scales the negative vector ``2u - x``.  The product has
resolution ``|g|·q`` and never contains a negative value, which is what
makes it realisable by mixing vessels.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NonIntegralSolution, NotRestricted
from .matrix import Matrix, abs_matrix, as_matrix, inverse, matmul, matvec, nonsingular, normalize, shape
from .prob import ProbSequence, ProbVector, uniform_values


def scalar_circle_mul(g, x: ProbVector) -> ProbVector:
    g = normalize(g)
    if g < 0 and not x.is_restricted:
        raise NotRestricted(f"negative coefficient needs a restricted vector, got {x}")
    u = uniform_values(x.resolution, x.m)
    a = abs(g)
    values = tuple(normalize(g * v - g * w + a * w) for v, w in zip(x.values, u))
    return ProbVector(values, normalize(a * x.resolution))


def add(vectors: Sequence[ProbVector]) -> ProbVector:
    """Mixture sum: values and resolutions both add."""
    m = vectors[0].m
    values = tuple(normalize(sum(v.values[c] for v in vectors)) for c in range(m))
    return ProbVector(values, normalize(sum(v.resolution for v in vectors)))


def row_circle_mul(row: Sequence, xs: ProbSequence) -> ProbVector:
    if len(row) != len(xs):
        raise DimensionMismatch(f"row of length {len(row)} against {len(xs)} symbols")
    return add([scalar_circle_mul(g, x) for g, x in zip(row, xs)])


def matrix_circle_mul(G: Matrix, X: ProbSequence) -> ProbSequence:
    """``G ⊗ X``, row by row."""
    G = as_matrix(G)
    if shape(G)[1] != len(X):
        raise DimensionMismatch(f"{shape(G)} generator against {len(X)} symbols")
    return ProbSequence(tuple(row_circle_mul(row, X) for row in G))


def matrix_inverse_exact(G: Matrix) -> Matrix:
    return inverse(as_matrix(G))


def infer_resolutions(G: Matrix, share_resolutions: Sequence) -> tuple:
    """Recover the input resolutions Q from the shares' ``|G|·Q``.

    ``|G|`` is often singular (e.g. ``[[1, 1], [1, -1]]``), in which case
    the inputs are assumed to share one resolution and every nonzero row
    must agree on it.
    """
    A = abs_matrix(G)
    R = tuple(share_resolutions)
    if shape(A)[0] == shape(A)[1] and nonsingular(A):
        return matvec(inverse(A), R)
    qs = {normalize(Fraction(r) / sum(row)) for row, r in zip(A, R) if sum(row)}
    if len(qs) != 1:
        raise NonIntegralSolution(f"share resolutions {R} are inconsistent with |G|")
    q = qs.pop()
    return (q,) * shape(A)[1]


def circle_decode(G: Matrix, Y: ProbSequence, resolutions: Sequence | None = None) -> ProbSequence:
    """Invert ``Y = G ⊗ X`` exactly: ``X = G⁻¹ ⊗ Y + U - |G⁻¹||G|U``.

    The uniform sequence ``U`` is rebuilt from the share resolutions
    unless ``resolutions`` (the inputs' Q) is supplied.  Any non-integral
    result means the shares were not produced by ``G``.
    """
    G = as_matrix(G)
    n, k = shape(G)
    if n != k:
        raise DimensionMismatch("decoding needs a square generator")
    if len(Y) != k:
        raise DimensionMismatch(f"{k}x{k} generator against {len(Y)} shares")
    Ginv = inverse(G)
    Q = tuple(resolutions) if resolutions is not None else infer_resolutions(G, Y.resolutions)
    m = Y.m
    U = [uniform_values(q, m) for q in Q]
    Z = matrix_circle_mul(Ginv, Y)
    C = matmul(abs_matrix(Ginv), abs_matrix(G))
    out = []
    for i in range(k):
        correction = [sum(C[i][j] * U[j][c] for j in range(k)) for c in range(m)]
        values = [normalize(Z[i].values[c] + U[i][c] - correction[c]) for c in range(m)]
        if not all(isinstance(v, int) for v in values):
            raise NonIntegralSolution(f"decoded symbol {i} has non-integral values {values}")
        if any(v < 0 for v in values):
            raise NonIntegralSolution(f"decoded symbol {i} has negative values {values}")
        out.append(ProbVector(tuple(values), normalize(Q[i])))
    X = ProbSequence(tuple(out))
    if not X.is_restricted:
        raise NotRestricted("decoded sequence is not restricted")
    return X
