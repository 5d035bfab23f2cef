"""Block generators for shares that span ``l`` vessels.

Each entry of an ``n x k`` generator becomes an ``l x l`` block; a share
is a block row.  Three families are provided:

* Kronecker lifting of a scalar generator (``g -> g·I_l``);
* EVENODD codes with the systematic secret columns dropped;
* the binary polynomial-ring code where ``α^t`` acts on ``R_p(2)`` as a
  cyclic shift with a possible all-ones flip.

The binary families are checked over GF(2) first: an odd determinant is
nonzero, so GF(2) rank is enough to certify integer nonsingularity.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import BadParams, RankConditionViolated
from .generator import GeneratorMatrix, RankCheck, _check, check_rank_conditions, is_prime
from .matrix import Matrix, as_matrix, format_matrix, identity, kron, shape

MAX_P = 13


@dataclass(frozen=True)
class BlockGeneratorMatrix:
    matrix: Matrix
    k: int
    L: int
    l: int
    kind: str
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))
        rows, cols = shape(self.matrix)
        if cols != self.k * self.l or rows % self.l:
            raise BadParams(f"{rows}x{cols} is not a block matrix with k={self.k}, l={self.l}")
        if not 1 <= self.L <= self.k <= rows // self.l:
            raise BadParams("need 1 <= L <= k <= n")

    @property
    def n(self) -> int:
        return len(self.matrix) // self.l

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(abs(v) for v in row) for row in self.matrix)

    def block_rows(self, blocks) -> list[int]:
        return [b * self.l + r for b in blocks for r in range(self.l)]

    def header(self) -> dict:
        return {"n": self.n, "k": self.k, "L": self.L, "l": self.l, "kind": self.kind}

    def to_text(self) -> str:
        return format_matrix(self.matrix, self.header(), tag="block")

    @property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


def check_block_rank_conditions(G: BlockGeneratorMatrix) -> RankCheck:
    """Rank conditions with block rows and block columns; the witness lists
    0-based block-row indices."""
    return _check(G.matrix, G.k, G.L, G.l)


def _finish(matrix, k, L, l, kind, **meta) -> BlockGeneratorMatrix:
    G = BlockGeneratorMatrix(matrix, k, L, l, kind, meta)
    result = check_block_rank_conditions(G)
    if not result:
        raise RankConditionViolated(
            f"{kind} block generator fails condition ({result.condition}) "
            f"on block rows {result.witness}")
    return G


def kronecker_block_generator(G: GeneratorMatrix, l: int) -> BlockGeneratorMatrix:
    if l < 1:
        raise BadParams("array length must be positive")
    if not check_rank_conditions(G):
        raise RankConditionViolated("scalar generator fails its rank conditions")
    return BlockGeneratorMatrix(kron(G.matrix, identity(l)), G.k, G.L, l,
                                "array-kronecker", {"base": G.kind})


def evenodd_full(p: int, n_prime: int) -> Matrix:
    """The ``n'(p-1) x (n'-2)(p-1)`` EVENODD generator, block rows ordered
    data columns, horizontal parity, diagonal parity.

    Bit ``r`` of data column ``j`` sits at input position ``j(p-1) + r``;
    the imaginary all-zero row ``p - 1`` is never stored.
    """
    if not is_prime(p):
        raise BadParams(f"{p} is not prime")
    if not 3 <= n_prime <= p + 2:
        raise BadParams(f"need 3 <= n' <= p + 2 = {p + 2}")
    l = p - 1
    k = n_prime - 2
    width = k * l
    rows = []
    for j in range(k):
        for r in range(l):
            rows.append([int(c == j * l + r) for c in range(width)])
    for r in range(l):
        rows.append([int(c % l == r) for c in range(width)])
    # adjuster S collects the diagonal that passes through the imaginary row
    s_cells = {(p - 1 - t, t) for t in range(1, min(p, k))}
    for r in range(l):
        cells = {((r - t) % p, t) for t in range(k)} | s_cells
        row = [0] * width
        for bit, col in cells:
            if bit < l:
                row[col * l + bit] = 1
        rows.append(row)
    return as_matrix(rows)


def evenodd_generator(p: int, L: int = 1, n_prime: int | None = None) -> BlockGeneratorMatrix:
    """EVENODD-based generator for a ``(k = n'-2, L, n = n'-L)`` scheme.

    The first ``L`` data columns carry the secret and would reveal it, so
    their systematic block rows are discarded.
    """
    if p > MAX_P:
        raise BadParams(f"p is capped at {MAX_P}")
    if L not in (1, 2):
        raise BadParams("EVENODD schemes support L in {1, 2}")
    if n_prime is None:
        n_prime = p + 2
    k = n_prime - 2
    if L > k:
        raise BadParams(f"L={L} exceeds k={k}")
    l = p - 1
    full = evenodd_full(p, n_prime)
    return _finish(full[L * l:], k, L, l, "array-evenodd", p=p, n_prime=n_prime)


def ring_block_matrix(t: int, p: int) -> Matrix:
    """Binary ``(p-1) x (p-1)`` matrix of multiplication by ``α^t`` in R_p(2)."""
    if not is_prime(p) or p == 2:
        raise BadParams(f"need an odd prime, got {p}")
    if not 0 <= t < p:
        raise BadParams(f"need 0 <= t < p, got t={t}")
    l = p - 1
    return tuple(
        tuple(int((j + t) % p in (i, p - 1)) for j in range(l))
        for i in range(l)
    )


def ring_generator(n: int, k: int, p: int, L: int = 1) -> BlockGeneratorMatrix:
    """Vandermonde generator over R_p(2): block (i, j) is ``α^{ij mod p}``."""
    if p > MAX_P:
        raise BadParams(f"p is capped at {MAX_P}")
    if not is_prime(p) or p == 2:
        raise BadParams(f"need an odd prime, got {p}")
    if not 1 <= L <= k <= n <= p:
        raise BadParams(f"need 1 <= L <= k <= n <= p, got n={n} k={k} p={p}")
    l = p - 1
    blocks = [[ring_block_matrix((i * j) % p, p) for j in range(k)] for i in range(n)]
    rows = [
        tuple(v for j in range(k) for v in blocks[i][j][r])
        for i in range(n) for r in range(l)
    ]
    return _finish(rows, k, L, l, "array-ring", p=p)


@dataclass(frozen=True)
class RingElement:
    """Element of R_p(2): binary polynomial of degree < p-1 modulo
    ``M_p(α) = 1 + α + ... + α^{p-1}``."""

    coefficients: tuple
    p: int

    def __post_init__(self):
        if len(self.coefficients) != self.p - 1:
            raise BadParams(f"need {self.p - 1} coefficients")
        object.__setattr__(self, "coefficients", tuple(c & 1 for c in self.coefficients))

    @classmethod
    def alpha_power(cls, t: int, p: int) -> "RingElement":
        return cls._reduce([int(i == t % p) for i in range(p)], p)

    @staticmethod
    def _reduce(cyclic: list, p: int) -> "RingElement":
        # α^{p-1} = 1 + α + ... + α^{p-2} modulo M_p
        low = list(cyclic[: p - 1])
        if cyclic[p - 1] & 1:
            low = [c ^ 1 for c in low]
        return RingElement(tuple(c & 1 for c in low), p)

    def __mul__(self, other: "RingElement") -> "RingElement":
        if self.p != other.p:
            raise BadParams("ring mismatch")
        p = self.p
        cyclic = [0] * p
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    if b:
                        cyclic[(i + j) % p] ^= 1
        return RingElement._reduce(cyclic, p)
