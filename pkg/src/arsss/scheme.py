"""End-to-end ramp secret sharing over probability vectors.

The secret ``S`` (L symbols, or L arrays of l symbols) is padded with
uniformly random restricted symbols to the auxiliary sequence ``X`` and
encoded as ``Y = G ⊗ X``.  Recovery picks any k shares and inverts the
circle product exactly.  Mixture plans describe how a decoder realises one
row of ``G⁻¹ ⊗ Y`` physically, and how many sequencing reads that costs.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .array_codes import BlockGeneratorMatrix, check_block_rank_conditions
from .circle import add, circle_decode, matrix_circle_mul
from .errors import (
    BadParams,
    DimensionMismatch,
    FieldTooLarge,
    GeneratorMismatch,
    NegativesUnavailable,
    NotEnoughShares,
    RankConditionViolated,
)
from .generator import GeneratorMatrix, check_rank_conditions, next_prime
from .matrix import abs_matrix, inverse, matmul, normalize, submatrix
from .prob import (
    ProbSequence,
    ProbVector,
    alphabet_size,
    check_restrictable,
    iter_alphabet,
    restricted_alphabet_size,
    uniform_values,
)

Generator = GeneratorMatrix | BlockGeneratorMatrix


def make_rng(seed=None) -> random.Random:
    """Seeded generator for reproducible runs; OS entropy otherwise."""
    if isinstance(seed, random.Random):
        return seed
    if seed is None:
        return random.SystemRandom()
    return random.Random(seed)


@dataclass(frozen=True)
class SecretSpec:
    L: int
    q: int
    m: int

    def __post_init__(self):
        if self.q < 1:
            raise BadParams("secrets need q >= 1")
        check_restrictable(self.q, self.m)


def sample_restricted(q: int, m: int, rng: random.Random) -> ProbVector:
    """Uniform draw from the restricted alphabet.

    Stars and bars gives a uniform point of the full simplex; draws with a
    value above 2q/m are rejected, which leaves the restricted set uniform.
    """
    cap = check_restrictable(q, m)
    while True:
        bars = sorted(rng.sample(range(q + m - 1), m - 1))
        edges = [-1] + bars + [q + m - 1]
        values = tuple(edges[i + 1] - edges[i] - 1 for i in range(m))
        if max(values) <= cap:
            return ProbVector(values, q)


def make_auxiliary(S: ProbSequence, k: int, rng=None, l: int = 1) -> ProbSequence:
    """Append ``(k - L)·l`` uniform restricted symbols to the secret."""
    if len(S) == 0 or len(S) % l:
        raise BadParams(f"secret of {len(S)} symbols is not a whole number of length-{l} arrays")
    L = len(S) // l
    if k < L:
        raise BadParams(f"k={k} is smaller than L={L}")
    qs = set(S.resolutions)
    if len(qs) != 1:
        raise BadParams("secret symbols must share one resolution")
    q = qs.pop()
    SecretSpec(L, q, S.m)
    if not S.is_restricted:
        raise BadParams("secret symbols must be restricted vectors")
    if k == L:
        return S
    rng = make_rng(rng)
    extra = tuple(sample_restricted(q, S.m, rng) for _ in range((k - L) * l))
    return ProbSequence(S.symbols + extra)


@dataclass(frozen=True)
class SharesBundle:
    shares: ProbSequence
    negatives: ProbSequence | None
    generator_fingerprint: str
    q: int
    m: int
    n: int
    k: int
    L: int
    l: int = 1
    synthesis_ops: int = 0

    @property
    def resolutions(self) -> tuple:
        return self.shares.resolutions

    def share(self, index: int) -> ProbSequence:
        """Symbols of one share (0-based); ``l`` of them for array codes."""
        return self.shares.select(range(index * self.l, (index + 1) * self.l))

    def to_json(self) -> dict:
        obj = {
            "generator_fingerprint": self.generator_fingerprint,
            "m": self.m,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "L": self.L,
            "l": self.l,
            "shares": self.shares.to_json(),
        }
        if self.negatives is not None:
            obj["negatives"] = self.negatives.to_json()
        return obj

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> "SharesBundle":
        neg = obj.get("negatives")
        shares = ProbSequence.from_json(obj["shares"])
        return cls(
            shares=shares,
            negatives=None if neg is None else ProbSequence.from_json(neg),
            generator_fingerprint=obj["generator_fingerprint"],
            q=obj["q"],
            m=obj["m"],
            n=obj.get("n", len(shares) // obj.get("l", 1)),
            k=obj["k"],
            L=obj["L"],
            l=obj.get("l", 1),
        )


def _rank_ok(G: Generator) -> bool:
    if isinstance(G, BlockGeneratorMatrix):
        return bool(check_block_rank_conditions(G))
    return bool(check_rank_conditions(G))


def encode(G: Generator, X: ProbSequence, with_negatives: bool = False,
           verify: bool = True) -> SharesBundle:
    """``Y = G ⊗ X`` and optionally ``Y₋ = G ⊗ X₋``.

    Synthesising X costs one operation per symbol, doubled when the
    negatives X₋ are synthesised as well.
    """
    l = G.l
    if len(X) != G.k * l:
        raise DimensionMismatch(f"generator expects {G.k * l} symbols, got {len(X)}")
    if verify and not _rank_ok(G):
        raise RankConditionViolated("generator fails its rank conditions")
    qs = set(X.resolutions)
    if len(qs) != 1:
        raise BadParams("auxiliary symbols must share one resolution")
    q = qs.pop()
    Y = matrix_circle_mul(G.matrix, X)
    negatives = matrix_circle_mul(G.matrix, X.negate()) if with_negatives else None
    ops = len(X) * (2 if with_negatives else 1)
    return SharesBundle(Y, negatives, G.fingerprint, q, X.m, G.n, G.k, G.L, l, ops)


def selected_rows(G: Generator, blocks: Sequence[int]) -> list[int]:
    return [b * G.l + r for b in blocks for r in range(G.l)]


def recover(G: Generator, available_indices: Iterable[int], Y_subset: ProbSequence) -> ProbSequence:
    """Secret from any k shares.

    ``available_indices`` are 0-based share (block-row) numbers and
    ``Y_subset`` holds their symbols in the same order.
    """
    indices = list(available_indices)
    if len(set(indices)) != len(indices):
        raise BadParams("duplicate share indices")
    if len(Y_subset) != len(indices) * G.l:
        raise DimensionMismatch(f"{len(indices)} indices but {len(Y_subset)} share symbols")
    for i in indices:
        if not 0 <= i < G.n:
            raise BadParams(f"share index {i} outside [0, {G.n})")
    if len(indices) < G.k:
        raise NotEnoughShares(f"need {G.k} shares, got {len(indices)}")
    by_index = {i: pos for pos, i in enumerate(indices)}
    chosen = sorted(indices)[: G.k]
    symbols = []
    for i in chosen:
        pos = by_index[i]
        symbols.extend(Y_subset[pos * G.l:(pos + 1) * G.l])
    sub = submatrix(G.matrix, selected_rows(G, chosen))
    X = circle_decode(sub, ProbSequence(tuple(symbols)))
    return X.select(range(G.L * G.l))


def recover_bundle(G: Generator, bundle: SharesBundle, indices: Iterable[int]) -> ProbSequence:
    if bundle.generator_fingerprint != G.fingerprint:
        raise GeneratorMismatch("shares were not produced by this generator")
    indices = list(indices)
    symbols = []
    for i in indices:
        if not 0 <= i < bundle.n:
            raise BadParams(f"share index {i} outside [0, {bundle.n})")
        symbols.extend(bundle.share(i))
    return recover(G, indices, ProbSequence(tuple(symbols)))


def share_secret(G: Generator, S: ProbSequence, rng=None, with_negatives: bool = False) -> SharesBundle:
    return encode(G, make_auxiliary(S, G.k, rng, G.l), with_negatives)


# ----------------------------------------------------------------------
# mixture planning

@dataclass(frozen=True)
class Portion:
    share: int
    units: int
    source: str  # "Y" or "Y-"


@dataclass(frozen=True)
class MixturePlan:
    """How to realise ``A ⊗ Y`` for one decode row ``A``.

    Portions are integers of a unit that is ``1/unit_scale`` of a
    resolution unit, so ``units = unit_scale·|a_i|·q_i`` exactly.
    """

    method: str
    coefficients: tuple
    resolutions: tuple
    samples: tuple  # tuple of tuples of Portion, one per mixed sample
    unit_scale: int

    @property
    def mix_vessels(self) -> int:
        return len(self.samples)

    @property
    def reads(self) -> int:
        return len(self.samples)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "coefficients": [str(normalize(a)) for a in self.coefficients],
            "unit_scale": self.unit_scale,
            "mix_vessels": self.mix_vessels,
            "reads": self.reads,
            "samples": [[{"share": p.share, "units": p.units, "source": p.source}
                         for p in sample] for sample in self.samples],
        }


def plan_mixture(A: Sequence, resolutions: Sequence, method: str = "i",
                 negatives_available: bool = True) -> MixturePlan:
    """Plan the mixes for decode row ``A`` over shares with ``resolutions``.

    Method ``i`` draws negative-coefficient shares from the stored
    negatives and needs a single read.  Method ``ii`` keeps positive and
    negative coefficients in separate samples (two reads, or one when no
    coefficient is negative) and needs no stored negatives.
    """
    A = tuple(normalize(Fraction(a)) for a in A)
    R = tuple(resolutions)
    if len(A) != len(R):
        raise DimensionMismatch("decode row and resolutions differ in length")
    if method not in ("i", "ii"):
        raise BadParams(f"unknown mixture method {method!r}")
    if method == "i" and not negatives_available and any(a < 0 for a in A):
        raise NegativesUnavailable("method (i) needs the negative shares Y-")
    amounts = [Fraction(abs(a)) * r for a, r in zip(A, R)]
    scale = lcm(*(x.denominator for x in amounts)) if amounts else 1

    def portion(i, source):
        return Portion(i, int(amounts[i] * scale), source)

    pos = tuple(portion(i, "Y") for i, a in enumerate(A) if a > 0)
    if method == "i":
        neg = tuple(portion(i, "Y-") for i, a in enumerate(A) if a < 0)
        samples = (pos + neg,)
    else:
        neg = tuple(portion(i, "Y") for i, a in enumerate(A) if a < 0)
        samples = (pos, neg) if neg else (pos,)
    return MixturePlan(method, A, R, samples, scale)


def mix(sample: Sequence[Portion], shares: ProbSequence, negatives: ProbSequence | None) -> ProbVector:
    """Physically combine portions: ``units/q_i`` of each vessel's content.

    The result counts nucleotides in the mixed sample; its resolution is
    the total number of units drawn.
    """
    parts = []
    for p in sample:
        if p.source == "Y-" and negatives is None:
            raise NegativesUnavailable("plan draws from Y- but no negatives were given")
        vessel = shares[p.share] if p.source == "Y" else negatives[p.share]
        f = Fraction(p.units, vessel.resolution)
        parts.append(ProbVector(tuple(normalize(f * v) for v in vessel.values), p.units))
    if not parts:
        m = shares.m
        return ProbVector((0,) * m, 0)
    return add(parts)


def run_plan(plan: MixturePlan, shares: ProbSequence, negatives: ProbSequence | None = None) -> list[ProbVector]:
    """Mix and 'sequence' every sample of the plan."""
    return [mix(sample, shares, negatives) for sample in plan.samples]


def circle_product_from_reads(plan: MixturePlan, reads: Sequence[ProbVector], m: int) -> ProbVector:
    """``A ⊗ Y`` from the sequenced samples."""
    s = plan.unit_scale
    first = reads[0]
    values = [Fraction(v, s) for v in first.values]
    res = Fraction(first.resolution, s)
    if plan.method == "ii" and len(reads) == 2:
        neg = reads[1]
        for c in range(m):
            values[c] -= Fraction(neg.values[c], s)
        res -= Fraction(neg.resolution, s)
        # restore the uniform mass of the subtracted shares, twice over
        for a, r in zip(plan.coefficients, plan.resolutions):
            if a < 0:
                u = uniform_values(r, m)
                for c in range(m):
                    values[c] += 2 * abs(a) * u[c]
                res += 2 * abs(a) * r
    return ProbVector(tuple(normalize(v) for v in values), normalize(res))


def decode_symbol(plan: MixturePlan, reads: Sequence[ProbVector], G_sub, row: int, q: int, m: int) -> ProbVector:
    """Finish decoding symbol ``row`` of X from a mixture read:
    ``x = A ⊗ Y + u - (|G⁻¹||G| U)_row``."""
    z = circle_product_from_reads(plan, reads, m)
    C = matmul(abs_matrix(inverse(G_sub)), abs_matrix(G_sub))
    u = uniform_values(q, m)
    weight = sum(C[row])
    values = tuple(normalize(z.values[c] + u[c] - weight * u[c]) for c in range(m))
    return ProbVector(values, q)


# ----------------------------------------------------------------------
# finite-field baseline

@dataclass(frozen=True)
class CostReport:
    naive_reads: int
    naive_synthesis: int
    method_i_reads: int
    method_i_synthesis: int
    method_ii_reads: int
    method_ii_synthesis: int


@dataclass(frozen=True)
class NaiveResult:
    field: int
    share_resolution: int
    shares: ProbSequence
    recovered: ProbSequence
    cost: CostReport


def naive_baseline(S: ProbSequence, n: int, k: int, L: int, q: int, rng=None,
                   field_cap: int = 1 << 20) -> NaiveResult:
    """Ramp scheme over a prime field with one sequencing read per share.

    Secret symbols are ranked within the restricted alphabet, shared with a
    Vandermonde generator over GF(N), and each field element is written as
    a probability vector of the smallest resolution whose alphabet holds N
    elements.  Decoding must read all k shares individually.
    """
    if not 1 <= L <= k <= n:
        raise BadParams("need 1 <= L <= k <= n")
    if len(S) != L:
        raise DimensionMismatch(f"expected {L} secret symbols, got {len(S)}")
    m = S.m
    cap = check_restrictable(q, m)
    size = restricted_alphabet_size(q, m)
    N = next_prime(max(size, n + 1))
    if N > field_cap:
        raise FieldTooLarge(f"field size {N} exceeds cap {field_cap}")
    alphabet = list(iter_alphabet(q, m, cap))
    rank = {v: i for i, v in enumerate(alphabet)}
    rng = make_rng(rng)
    x = [rank[s.values] for s in S] + [rng.randrange(size) for _ in range(k - L)]
    G = [[pow(a, e, N) for e in range(k)] for a in range(1, n + 1)]
    y = [sum(g * v for g, v in zip(row, x)) % N for row in G]

    share_q = 0
    while alphabet_size(share_q, m) < N:
        share_q += 1
    share_alphabet = list(iter_alphabet(share_q, m))
    shares = ProbSequence(tuple(ProbVector(share_alphabet[v], share_q) for v in y))

    # decode from the first k shares: k separate reads
    back = {v.values: i for i, v in enumerate(ProbVector(t, share_q) for t in share_alphabet)}
    read = [back[shares[i].values] for i in range(k)]
    inv = _inverse_mod([row[:] for row in G[:k]], N)
    xs = [sum(a * b for a, b in zip(row, read)) % N for row in inv]
    recovered = ProbSequence(tuple(ProbVector(alphabet[v], q) for v in xs[:L]))

    cost = CostReport(
        naive_reads=k,
        naive_synthesis=n,
        method_i_reads=L,
        method_i_synthesis=2 * k,
        method_ii_reads=2 * L,
        method_ii_synthesis=k,
    )
    return NaiveResult(N, share_q, shares, recovered, cost)


def _inverse_mod(a: list[list[int]], p: int) -> list[list[int]]:
    n = len(a)
    aug = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [v * inv % p for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(v - f * w) % p for v, w in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]
