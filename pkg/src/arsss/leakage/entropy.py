"""Exact conditional entropy of the secret given a set of shares.

Every auxiliary sequence X over the restricted alphabet is equally likely.
For a subset of shares the observation is an affine function of ``G''·X``,
so grouping is done on the integer linear part alone.  With ``N(y)`` the
number of X producing ``y`` and ``N(s, y)`` those with secret ``s``,

    H(S | Y'') = (Σ_y N(y) log N(y) - Σ_{s,y} N(s,y) log N(s,y)) / T,

with T the total number of sequences.  Counts are exact integers; the
logarithm is applied once per distinct count value.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..array_codes import BlockGeneratorMatrix
from ..errors import BadParams, TooLarge
from ..generator import GeneratorMatrix
from ..prob import alphabet_size, check_restrictable, iter_alphabet, restricted_alphabet_size

DEFAULT_ENUM_CAP = 10**8
DENSE_KEYS = 1 << 26
TOLERANCE = 1e-9


def enum_cap() -> int:
    raw = os.environ.get("ARSSS_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class LeakageReport:
    subset: tuple
    q: int
    m: int
    H_S: float
    H_S_given_Y: float
    ratio: float
    lower_bound: float
    upper_bound: float
    gap: float
    total: int
    observations: int

    @property
    def sandwiched(self) -> bool:
        return (self.lower_bound <= self.H_S_given_Y + TOLERANCE
                and self.H_S_given_Y <= self.upper_bound + TOLERANCE)


def _xlogx_sum(counts: np.ndarray) -> float:
    """Σ c·log2 c over integer counts, grouped by distinct value."""
    values, mult = np.unique(counts[counts > 1], return_counts=True)
    return math.fsum(int(k) * int(v) * math.log2(int(v)) for v, k in zip(values, mult))


def _unpack(G):
    """(matrix, k, L, l) for scalar or block generators, or a bare matrix."""
    if isinstance(G, BlockGeneratorMatrix):
        return G.matrix, G.k, G.L, G.l
    if isinstance(G, GeneratorMatrix):
        return G.matrix, G.k, G.L, 1
    raise BadParams("pass a GeneratorMatrix or BlockGeneratorMatrix")


def _share_rows(subset: Sequence[int], l: int) -> list[int]:
    return [b * l + r for b in subset for r in range(l)]


@dataclass(frozen=True)
class JointCounts:
    """``N(y)`` and ``N(s, y)`` as flat count arrays plus the total."""

    n_y: np.ndarray
    n_sy: np.ndarray
    total: int


def joint_counts(rows, columns: int, secret_columns: int, q: int, m: int,
                 cap: int | None = None) -> JointCounts:
    """Enumerate every auxiliary sequence and count observations.

    ``rows`` are the observed generator rows over ``columns`` symbols; the
    first ``secret_columns`` symbols form the secret.
    """
    cap = enum_cap() if cap is None else cap
    cap_value = check_restrictable(q, m)
    alphabet = np.array(list(iter_alphabet(q, m, cap_value)), dtype=np.int64)
    A = len(alphabet)
    if A ** columns > cap:
        raise TooLarge(f"{A}^{columns} joint states exceed the cap {cap}")
    R = [list(r) for r in rows]
    nrows = len(R)
    width = m - 1
    # feature (r, c) = Σ_j g_rj x_jc lies in [neg_r·cap, pos_r·cap]
    neg = [sum(v for v in row if v < 0) * cap_value for row in R]
    pos = [sum(v for v in row if v > 0) * cap_value for row in R]
    radix = [[0] * nrows for _ in range(width)]
    w = 1
    for c in range(width):
        for r in range(nrows):
            radix[c][r] = w
            w *= pos[r] - neg[r] + 1
    key_range = w
    if key_range >= 1 << 62:
        raise TooLarge("observation key space does not fit in 64 bits")
    # mixed-radix keys are additive over columns
    weights = np.array([[sum(R[r][j] * radix[c][r] for r in range(nrows)) for c in range(width)]
                        for j in range(columns)], dtype=np.int64)
    contrib = [alphabet[:, :width] @ weights[j] for j in range(columns)]
    offset = -sum(neg[r] * radix[c][r] for c in range(width) for r in range(nrows))

    aux_keys = np.zeros(1, dtype=np.int64) + offset
    for j in range(secret_columns, columns):
        aux_keys = (aux_keys[:, None] + contrib[j][None, :]).reshape(-1)
    dense = key_range <= DENSE_KEYS
    n_y = np.zeros(key_range, dtype=np.int64) if dense else None
    sparse_y = []
    n_sy_parts = []
    for secret in itertools.product(range(A), repeat=secret_columns):
        shift = sum(int(contrib[j][s]) for j, s in enumerate(secret))
        keys = aux_keys + shift
        if dense:
            counts = np.bincount(keys, minlength=key_range)
            n_y += counts
            n_sy_parts.append(counts[counts > 0])
        else:
            uniq, counts = np.unique(keys, return_counts=True)
            sparse_y.append((uniq, counts))
            n_sy_parts.append(counts)
    if dense:
        n_y = n_y[n_y > 0]
    else:
        keys = np.concatenate([u for u, _ in sparse_y])
        weights = np.concatenate([c for _, c in sparse_y])
        _, inverse = np.unique(keys, return_inverse=True)
        n_y = np.bincount(inverse, weights=weights).astype(np.int64)
    n_sy = np.concatenate(n_sy_parts) if n_sy_parts else np.zeros(0, dtype=np.int64)
    total = A ** columns
    return JointCounts(n_y, n_sy, total)


def entropy_from_counts(jc: JointCounts) -> float:
    return (_xlogx_sum(jc.n_y) - _xlogx_sum(jc.n_sy)) / jc.total


def secret_entropy(q: int, m: int, symbols: int) -> float:
    return symbols * math.log2(restricted_alphabet_size(q, m))


def _share_alphabet_bits(row_sums: Sequence[int], q: int, m: int) -> float:
    bits = 0.0
    for g in row_sums:
        if g == 0:
            continue
        if m == 2:
            bits += math.log2(g * (q + 1))
        else:
            bits += math.log2(restricted_alphabet_size(g * q, m))
    return bits


def lower_bound(G, subset: Sequence[int], q: int, m: int) -> float:
    """``H(X) - log |support of Y''|``.

    For m = 2 every share of row sum g takes at most ``g(q + 1)`` values,
    giving ``(L - j) log(q + 1) - log g``; for wider vectors the shares are
    restricted, so their restricted alphabet size is used.
    """
    matrix, k, L, l = _unpack(G)
    rows = _share_rows(subset, l)
    sums = [sum(abs(v) for v in matrix[r]) for r in rows]
    hx = secret_entropy(q, m, k * l)
    return hx - _share_alphabet_bits(sums, q, m)


def upper_bound(G, subset: Sequence[int], q: int, m: int) -> float:
    """Converse bound: add shares until any k are known; the secret keeps at
    most the alphabet entropy of the added shares.  The cheapest completion
    is reported."""
    matrix, k, L, l = _unpack(G)
    n = len(matrix) // l
    subset = sorted(set(subset))
    need = k - len(subset)
    if need <= 0:
        return 0.0
    others = [i for i in range(n) if i not in subset]
    best = math.inf
    for extra in itertools.combinations(others, need):
        sums = [sum(abs(v) for v in matrix[r]) for r in _share_rows(extra, l)]
        bits = sum(math.log2(alphabet_size(g * q, m)) for g in sums if g)
        best = min(best, bits)
    return best


def leakage_gap(G) -> float:
    """Largest Σ log2 g_i over k shares: the distance between the two bounds."""
    matrix, k, L, l = _unpack(G)
    n = len(matrix) // l
    share_bits = []
    for i in range(n):
        share_bits.append(sum(math.log2(sum(abs(v) for v in matrix[r]))
                              for r in _share_rows([i], l) if any(matrix[r])))
    return sum(sorted(share_bits, reverse=True)[:k])


def conditional_entropy(G, subset_indices: Sequence[int], q: int, m: int,
                        cap: int | None = None) -> LeakageReport:
    """Exact ``H(S | Y'')`` for the shares in ``subset_indices`` (0-based)."""
    matrix, k, L, l = _unpack(G)
    n = len(matrix) // l
    subset = tuple(sorted(set(subset_indices)))
    if any(not 0 <= i < n for i in subset):
        raise BadParams(f"share indices must lie in [0, {n})")
    rows = [matrix[r] for r in _share_rows(subset, l)]
    if any(not isinstance(v, int) for row in rows for v in row):
        raise BadParams("entropy analysis needs an integer generator")
    hs = secret_entropy(q, m, L * l)
    if rows:
        jc = joint_counts(rows, k * l, L * l, q, m, cap)
        h = entropy_from_counts(jc)
        obs = len(jc.n_y)
        total = jc.total
    else:
        h, obs, total = hs, 1, restricted_alphabet_size(q, m) ** (k * l)
    return LeakageReport(
        subset=subset,
        q=q,
        m=m,
        H_S=hs,
        H_S_given_Y=h,
        ratio=h / hs if hs else 0.0,
        lower_bound=lower_bound(G, subset, q, m),
        upper_bound=upper_bound(G, subset, q, m),
        gap=leakage_gap(G),
        total=total,
        observations=obs,
    )


def hyperfactorial(n: int) -> int:
    return math.prod(i ** i for i in range(1, n + 1))


def log2_big(x: Fraction) -> float:
    """log2 of a huge positive rational without overflowing a float."""
    num, den = x.numerator, x.denominator
    shift_n = max(num.bit_length() - 60, 0)
    shift_d = max(den.bit_length() - 60, 0)
    return (math.log2(num >> shift_n) + shift_n) - (math.log2(den >> shift_d) + shift_d)


def closed_form_entropy_212(q: int) -> float:
    """``H(s | y1)`` of the two-share scheme with rows (1, 1) and (1, -1):
    ``log2(f(q+1)^2 / (q+1)^(q+1)) / (q+1)^2`` with f the hyperfactorial,
    kept as an exact big-integer ratio until the final logarithm."""
    if q < 1:
        raise BadParams("need q >= 1")
    n = q + 1
    return log2_big(Fraction(hyperfactorial(n) ** 2, n ** n)) / n ** 2


@dataclass(frozen=True)
class AsymptoticCheck:
    qs: tuple
    ratios: tuple
    reports: tuple
    nondecreasing: bool
    within_bounds: bool


def asymptotic_check(G, subset: Sequence[int], qs: Sequence[int], m: int) -> AsymptoticCheck:
    reports = tuple(conditional_entropy(G, subset, q, m) for q in qs)
    ratios = tuple(r.ratio for r in reports)
    mono = all(b >= a - TOLERANCE for a, b in zip(ratios, ratios[1:]))
    bounded = all(r.sandwiched for r in reports)
    return AsymptoticCheck(tuple(qs), ratios, reports, mono, bounded)
