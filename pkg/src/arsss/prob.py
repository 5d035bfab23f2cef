"""Probability vectors, probability sequences and their alphabets.

A probability vector of width ``m`` and resolution ``q`` is ``m``
non-negative integers summing to ``q``.  For ``m = 2`` the first value
alone (the scalar view) determines the vector.

A vector is *restricted* when every value lies in ``[0, 2q/m]``; only
restricted vectors have a negative ``2u - x`` about the uniform vector
``u = (q/m, ..., q/m)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadParams,
    NegativeValue,
    NotDivisible,
    NotRestricted,
    WidthMismatch,
)
from .matrix import normalize


@dataclass(frozen=True)
class ProbVector:
    """One symbol.

    Values produced by circle multiplication with rational coefficients may
    transiently be Fractions; everything built through
    :func:`make_prob_vector` is integral.
    """

    values: tuple
    resolution: int | Fraction

    def __post_init__(self):
        if len(self.values) < 2:
            raise WidthMismatch("probability vectors need m >= 2")
        if any(v < 0 for v in self.values):
            raise NegativeValue(f"negative probability value in {self.values}")
        if sum(self.values) != self.resolution:
            raise BadParams(f"values {self.values} do not sum to {self.resolution}")

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def q(self):
        return self.resolution

    @property
    def scalar(self):
        """First value; the full description when m = 2."""
        if self.m != 2:
            raise WidthMismatch("scalar view only exists for m = 2")
        return self.values[0]

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.values)

    @property
    def cap(self):
        """Upper bound 2q/m of a restricted value."""
        return normalize(Fraction(2 * self.resolution, self.m))

    @property
    def is_restricted(self) -> bool:
        return all(v <= self.cap for v in self.values)

    def to_json(self) -> dict:
        if not self.is_integral or not isinstance(self.resolution, int):
            raise NonIntegralForJson(self)
        return {"m": self.m, "q": self.resolution, "values": list(self.values)}

    @classmethod
    def from_json(cls, obj: dict) -> "ProbVector":
        vec = make_prob_vector(obj["values"], obj["m"])
        if vec.resolution != obj["q"]:
            raise BadParams(f"declared q={obj['q']} but values sum to {vec.resolution}")
        return vec

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.values) + f")/{self.resolution}"


class NonIntegralForJson(BadParams):
    def __init__(self, vec):
        super().__init__(f"cannot serialize non-integral vector {vec}")


def make_prob_vector(values: Sequence[int], m: int) -> ProbVector:
    values = tuple(values)
    if len(values) != m:
        raise WidthMismatch(f"expected {m} values, got {len(values)}")
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"probability values must be integers, got {v!r}")
        if v < 0:
            raise NegativeValue(f"negative probability value {v}")
    return ProbVector(values, sum(values))


def from_scalar(x, q) -> ProbVector:
    """Expand the m = 2 shorthand ``x`` at resolution ``q``."""
    return ProbVector((normalize(x), normalize(q - x)), normalize(q))


def vec(values: Sequence) -> ProbVector:
    """Build a vector from possibly-rational values (internal use)."""
    values = tuple(normalize(v) for v in values)
    return ProbVector(values, normalize(sum(values)))


def uniform_vector(q: int, m: int) -> ProbVector:
    if m < 2:
        raise BadParams("m must be at least 2")
    if q % m:
        raise NotDivisible(f"{m} does not divide {q}")
    return ProbVector((q // m,) * m, q)


def uniform_values(q, m: int) -> tuple:
    """The uniform vector's values, rational when m does not divide q."""
    u = normalize(Fraction(q) / m)
    return (u,) * m


def negate(x: ProbVector) -> ProbVector:
    """``2u - x``: the complement of every value about 2q/m."""
    if not x.is_restricted:
        raise NotRestricted(f"{x} has a value above 2q/m = {x.cap}")
    c = x.cap
    return ProbVector(tuple(normalize(c - v) for v in x.values), x.resolution)


# ----------------------------------------------------------------------
# alphabets

def alphabet_size(q: int, m: int) -> int:
    if q < 0 or m < 1:
        raise BadParams("need q >= 0 and m >= 1")
    return comb(q + m - 1, m - 1)


def check_restrictable(q: int, m: int) -> int:
    """Return the integral cap 2q/m, or raise when it is fractional."""
    if m < 2 or q < 0:
        raise BadParams("need m >= 2 and q >= 0")
    if (2 * q) % m:
        raise NotDivisible(f"2q/m = {2 * q}/{m} is not an integer")
    return 2 * q // m


def restricted_alphabet_size(q: int, m: int) -> int:
    """Number of width-m vectors summing to q with every value <= 2q/m.

    Inclusion-exclusion over the set of coordinates forced above the cap;
    at most ``floor(qm / (2q + m))`` coordinates can exceed it at once.
    """
    cap = check_restrictable(q, m)
    if q == 0:
        return 1
    j = (q * m) // (2 * q + m)
    total = 0
    for i in range(j + 1):
        rest = q - i * (cap + 1)
        total += (-1) ** i * comb(m, i) * comb(rest + m - 1, m - 1)
    return total


def iter_alphabet(q: int, m: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every width-m tuple of non-negative ints summing to q, each <= cap.

    Tuples come out in lexicographic order.
    """
    if cap is None:
        cap = q
    if m == 1:
        if q <= cap:
            yield (q,)
        return
    for first in range(0, min(q, cap) + 1):
        rest = q - first
        if rest > cap * (m - 1):
            continue
        for tail in iter_alphabet(rest, m - 1, cap):
            yield (first,) + tail


def restricted_alphabet(q: int, m: int) -> list[ProbVector]:
    cap = check_restrictable(q, m)
    return [ProbVector(t, q) for t in iter_alphabet(q, m, cap)]


@dataclass(frozen=True)
class AlphabetSpec:
    q: int
    m: int
    restricted: bool = True

    def __post_init__(self):
        if self.restricted:
            check_restrictable(self.q, self.m)

    def size(self) -> int:
        if self.restricted:
            return restricted_alphabet_size(self.q, self.m)
        return alphabet_size(self.q, self.m)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        cap = 2 * self.q // self.m if self.restricted else self.q
        return iter_alphabet(self.q, self.m, cap)


# ----------------------------------------------------------------------
# sequences

@dataclass(frozen=True)
class ProbSequence:
    symbols: tuple

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if self.symbols and len({s.m for s in self.symbols}) != 1:
            raise WidthMismatch("all symbols of a sequence must share m")

    @classmethod
    def of(cls, symbols: Iterable[ProbVector]) -> "ProbSequence":
        return cls(tuple(symbols))

    @classmethod
    def from_scalars(cls, xs: Sequence, qs: Sequence) -> "ProbSequence":
        if len(xs) != len(qs):
            raise WidthMismatch("scalar and resolution lists differ in length")
        return cls(tuple(from_scalar(x, q) for x, q in zip(xs, qs)))

    @property
    def m(self) -> int:
        return self.symbols[0].m

    @property
    def resolutions(self) -> tuple:
        return tuple(s.resolution for s in self.symbols)

    @property
    def scalars(self) -> tuple:
        return tuple(s.scalar for s in self.symbols)

    @property
    def is_restricted(self) -> bool:
        return all(s.is_restricted for s in self.symbols)

    def negate(self) -> "ProbSequence":
        return ProbSequence(tuple(negate(s) for s in self.symbols))

    def select(self, indices: Iterable[int]) -> "ProbSequence":
        return ProbSequence(tuple(self.symbols[i] for i in indices))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def to_json(self) -> list:
        return [s.to_json() for s in self.symbols]

    @classmethod
    def from_json(cls, objs: list) -> "ProbSequence":
        return cls(tuple(ProbVector.from_json(o) for o in objs))


def dumps_vector(v: ProbVector) -> str:
    return json.dumps(v.to_json(), separators=(",", ":"))


def loads_vector(text: str) -> ProbVector:
    return ProbVector.from_json(json.loads(text))
