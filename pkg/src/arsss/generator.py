"""Generator matrices for the ramp scheme and their rank conditions.

A valid ``n x k`` generator for ``L`` secret symbols needs

(i)  every ``k`` rows to be nonsingular, so any ``k`` shares decode, and
(ii) every ``k - L`` rows, restricted to the last ``k - L`` columns, to be
     nonsingular, so the randomness is pinned down once the secret is fixed.

Constructions reduce field elements to their least non-negative residue;
a determinant that is nonzero modulo a prime is nonzero over the integers,
so the field argument carries over.  Every constructor re-checks both
conditions exactly before returning.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import random
from dataclasses import dataclass, field
from math import comb, prod
from typing import Iterable

from .errors import BadParams, RankConditionViolated
from .matrix import Matrix, as_matrix, format_matrix, nonsingular, shape, submatrix

KINDS = ("random", "vandermonde", "cauchy", "circulant", "custom")


@dataclass(frozen=True)
class RankCheck:
    ok: bool
    condition: int | None = None
    witness: tuple[int, ...] = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class GeneratorScore:
    oc: int
    il: int


@dataclass(frozen=True)
class GeneratorMatrix:
    matrix: Matrix
    k: int
    L: int
    kind: str = "custom"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))
        n, k = shape(self.matrix)
        if k != self.k:
            raise BadParams(f"matrix has {k} columns but k={self.k}")
        if not 1 <= self.L <= self.k <= n:
            raise BadParams(f"need 1 <= L <= k <= n, got n={n} k={self.k} L={self.L}")

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def l(self) -> int:
        return 1

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(abs(v) for v in row) for row in self.matrix)

    def header(self) -> dict:
        return {"n": self.n, "k": self.k, "L": self.L, "kind": self.kind}

    def to_text(self) -> str:
        return format_matrix(self.matrix, self.header(), tag="generator")

    @property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


def _check(G: Matrix, k: int, L: int, block: int) -> RankCheck:
    n, cols = shape(G)
    if cols != k * block or n % block:
        raise BadParams(f"{n}x{cols} matrix is not {k} block columns of size {block}")
    nb = n // block
    if not 1 <= L <= k <= nb:
        raise BadParams(f"need 1 <= L <= k <= n, got n={nb} k={k} L={L}")

    def rows_of(blocks):
        return [b * block + r for b in blocks for r in range(block)]

    all_cols = range(k * block)
    for subset in itertools.combinations(range(nb), k):
        if not nonsingular(submatrix(G, rows_of(subset), all_cols)):
            return RankCheck(False, 1, subset)
    tail = range(L * block, k * block)
    if k > L:
        for subset in itertools.combinations(range(nb), k - L):
            if not nonsingular(submatrix(G, rows_of(subset), tail)):
                return RankCheck(False, 2, subset)
    return RankCheck(True)


def check_rank_conditions(G, k: int | None = None, L: int | None = None) -> RankCheck:
    """Exhaustively test both rank conditions.

    ``G`` may be a :class:`GeneratorMatrix` or a bare matrix with explicit
    ``k`` and ``L``.  On failure the result carries the condition number and
    the 0-based row subset whose submatrix is singular.
    """
    if isinstance(G, GeneratorMatrix):
        k = G.k if k is None else k
        L = G.L if L is None else L
        G = G.matrix
    if k is None or L is None:
        raise BadParams("k and L are required for a bare matrix")
    G = as_matrix(G)
    return _check(G, k, L, 1)


def _finish(matrix, k, L, kind, **meta) -> GeneratorMatrix:
    G = GeneratorMatrix(matrix, k, L, kind, meta)
    result = check_rank_conditions(G)
    if not result:
        raise RankConditionViolated(
            f"{kind} generator fails condition ({result.condition}) on rows {result.witness}")
    return G


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def next_prime(lo: int) -> int:
    """Smallest prime >= lo."""
    p = max(lo, 2)
    while not is_prime(p):
        p += 1
    return p


def vandermonde_generator(n: int, k: int, L: int = 1) -> GeneratorMatrix:
    """Rows ``(1, a, a^2, ...)`` with ``a = 1..n``, reduced mod the smallest prime above n."""
    if not 1 <= k <= n:
        raise BadParams("need 1 <= k <= n")
    N = next_prime(n + 1)
    rows = [[pow(a, e, N) for e in range(k)] for a in range(1, n + 1)]
    return _finish(rows, k, L, "vandermonde", field=N)


def cauchy_generator(n: int, k: int, L: int = 1) -> GeneratorMatrix:
    """Entries ``1/(x_i - y_j)`` over GF(N), N the smallest prime >= n + k.

    Evaluation points are fixed at ``x_i = i - 1`` and ``y_j = n + j - 1``.
    """
    if not 1 <= k <= n:
        raise BadParams("need 1 <= k <= n")
    N = next_prime(n + k)
    rows = [[pow((x - (n + j)) % N, -1, N) for j in range(k)] for x in range(n)]
    return _finish(rows, k, L, "cauchy", field=N)


def random_entry_bound(n: int, k: int, L: int) -> int:
    return comb(n, k) + comb(n, k - L)


def random_generator(n: int, k: int, L: int, seed=None, bound: int | None = None,
                     max_tries: int = 100_000) -> GeneratorMatrix:
    """Rejection-sample entries uniformly from ``[0, bound]`` until both
    rank conditions hold.  ``bound`` defaults to C(n,k) + C(n,k-L)."""
    if not 1 <= L <= k <= n:
        raise BadParams("need 1 <= L <= k <= n")
    if bound is None:
        bound = random_entry_bound(n, k, L)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for attempt in range(1, max_tries + 1):
        rows = [[rng.randint(0, bound) for _ in range(k)] for _ in range(n)]
        if check_rank_conditions(rows, k, L):
            return GeneratorMatrix(rows, k, L, "random", {"bound": bound, "attempts": attempt})
    raise RankConditionViolated(f"no valid generator after {max_tries} draws")


def circulant_generator(k: int) -> GeneratorMatrix:
    """The modified circulant generator of a (k, 1, k) scheme."""
    if k < 2:
        raise BadParams("circulant generator needs k >= 2")
    rows = [[1 if j in (i, i + 1) else 0 for j in range(k)] for i in range(k)]
    return _finish(rows, k, 1, "circulant")


def score(G) -> GeneratorScore:
    """Operational complexity (max row sum) and information leakage
    (product of row sums) over absolute values."""
    matrix = G.matrix if hasattr(G, "matrix") else as_matrix(G)
    sums = [sum(abs(v) for v in row) for row in matrix]
    return GeneratorScore(max(sums), prod(sums))


def construct(kind: str, n: int, k: int, L: int, seed=None) -> GeneratorMatrix:
    if kind == "vandermonde":
        return vandermonde_generator(n, k, L)
    if kind == "cauchy":
        return cauchy_generator(n, k, L)
    if kind == "random":
        return random_generator(n, k, L, seed)
    if kind == "circulant":
        if n != k or L != 1:
            raise BadParams("circulant generators are (k, 1, k): need n == k and L == 1")
        return circulant_generator(k)
    raise BadParams(f"unknown generator kind {kind!r}")


def from_rows(rows: Iterable[Iterable[int]], k: int | None = None, L: int = 1,
              kind: str = "custom", verify: bool = True) -> GeneratorMatrix:
    matrix = as_matrix(rows)
    k = shape(matrix)[1] if k is None else k
    if verify:
        return _finish(matrix, k, L, kind)
    return GeneratorMatrix(matrix, k, L, kind)
