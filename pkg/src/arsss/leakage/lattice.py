"""Integer solutions of ``G·X = Y`` inside boxes and simplices.

The solution lattice ``X = particular + F·r`` comes from the Smith normal
form; the box and simplex constraints become linear inequalities in the
free parameters ``r``.  Fourier-Motzkin elimination (exact rationals)
bounds one parameter at a time, and the points are then enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from ..errors import BadParams, DimensionMismatch, TooLarge
from ..matrix import as_matrix, matvec, shape
from ..prob import check_restrictable
from .smith import SmithDecomposition, smith_normal_form

DEFAULT_POINT_CAP = 10**7


@dataclass(frozen=True)
class DiophantineSolutionSet:
    """All integer ``X`` with ``G·X = Y``: ``particular + Σ r_i·free_basis[i]``.

    ``divisibility_ok`` is False when no integer solution exists; the other
    fields are then meaningless.
    """

    particular: tuple
    free_basis: tuple
    divisibility_ok: bool
    smith: SmithDecomposition

    def point(self, r: Sequence[int]) -> tuple:
        if len(r) != len(self.free_basis):
            raise DimensionMismatch("wrong number of free parameters")
        return tuple(p + sum(ri * col[j] for ri, col in zip(r, self.free_basis))
                     for j, p in enumerate(self.particular))


def solve_diophantine(G, Y: Sequence[int]) -> DiophantineSolutionSet:
    G = as_matrix(G)
    l, k = shape(G)
    if len(Y) != l:
        raise DimensionMismatch(f"{l} equations but {len(Y)} right-hand sides")
    snf = smith_normal_form(G, require_full_rank=False)
    D = matvec(snf.V2, Y)
    r = snf.rank
    ok = all(D[i] % snf.B[i][i] == 0 for i in range(r)) and all(d == 0 for d in D[r:])
    M = [D[i] // snf.B[i][i] if ok else 0 for i in range(r)] + [0] * (k - r)
    particular = matvec(snf.V1, M)
    free = tuple(tuple(snf.V1[i][j] for i in range(k)) for j in range(r, k))
    return DiophantineSolutionSet(tuple(particular), free, ok, snf)


# ----------------------------------------------------------------------
# Fourier-Motzkin over constraints ``a·r <= b``

Constraint = tuple  # (coefficients tuple, bound)


def _normalise(c: Constraint) -> Constraint:
    a, b = c
    scale = next((abs(x) for x in a if x), None)
    if scale is None:
        return c
    return tuple(Fraction(x) / scale for x in a), Fraction(b) / scale


def _eliminate(cons: list, var: int) -> list:
    pos = [c for c in cons if c[0][var] > 0]
    neg = [c for c in cons if c[0][var] < 0]
    out = {_normalise(c) for c in cons if c[0][var] == 0}
    for ap, bp in pos:
        for an, bn in neg:
            fp, fn = -an[var], ap[var]
            a = tuple(fp * x + fn * y for x, y in zip(ap, an))
            out.add(_normalise((a, fp * bp + fn * bn)))
    return list(out)


def _bounds(cons: list, d: int) -> tuple[int, int] | None:
    """Integer range of variable 0 after eliminating 1..d-1; None when empty."""
    for var in range(d - 1, 0, -1):
        cons = _eliminate(cons, var)
    lo, hi = -math.inf, math.inf
    for a, b in cons:
        if a[0] > 0:
            hi = min(hi, math.floor(b / a[0]))
        elif a[0] < 0:
            lo = max(lo, math.ceil(b / a[0]))
        elif b < 0:
            return None
    if lo == -math.inf or hi == math.inf:
        raise TooLarge("solution set is unbounded")
    return (lo, hi) if lo <= hi else None


def _substitute(cons: list, v: int) -> list:
    return [(a[1:], b - a[0] * v) for a, b in cons]


def lattice_points(cons: list, d: int, cap: int = DEFAULT_POINT_CAP) -> Iterator[tuple]:
    """Every integer ``r`` in ``{r : a·r <= b}``.  Visiting more than ``cap``
    search nodes raises :class:`TooLarge`."""
    visited = 0

    def rec(cons, d, prefix):
        nonlocal visited
        if d == 0:
            if all(b >= 0 for _, b in cons):
                yield prefix
            return
        rng = _bounds(cons, d)
        if rng is None:
            return
        for v in range(rng[0], rng[1] + 1):
            visited += 1
            if visited > cap:
                raise TooLarge(f"more than {cap} lattice points to visit")
            yield from rec(_substitute(cons, v), d - 1, prefix + (v,))

    yield from rec([(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in cons], d, ())


def iter_box_solutions(G, Y: Sequence[int], lo: Sequence[int], hi: Sequence[int],
                       extra: Sequence[Constraint] = (), cap: int = DEFAULT_POINT_CAP) -> Iterator[tuple]:
    """Integer ``X`` with ``G·X = Y``, ``lo <= X <= hi`` and ``a·X <= b`` for
    every ``(a, b)`` in ``extra``."""
    sol = solve_diophantine(G, Y)
    if not sol.divisibility_ok:
        return
    k = len(sol.particular)
    F = sol.free_basis
    d = len(F)
    cons = []
    # a·(p + F r) <= b  becomes  (a·F) r <= b - a·p
    rows = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        rows.append((tuple(e), hi[j]))
        e = [0] * k
        e[j] = -1
        rows.append((tuple(e), -lo[j]))
    rows.extend(extra)
    for a, b in rows:
        coeff = tuple(sum(a[j] * col[j] for j in range(k)) for col in F)
        cons.append((coeff, b - sum(a[j] * sol.particular[j] for j in range(k))))
    if d == 0:
        if all(b >= 0 for _, b in cons):
            yield sol.particular
        return
    for r in lattice_points(cons, d, cap):
        yield sol.point(r)


def count_box_solutions(G, Y, lo, hi, extra=(), cap: int = DEFAULT_POINT_CAP) -> int:
    return sum(1 for _ in iter_box_solutions(G, Y, lo, hi, extra, cap))


# ----------------------------------------------------------------------
# probability-vector systems

@dataclass(frozen=True)
class SecretCounts:
    per_secret: dict
    total: int


def linear_system(G_subset, y_observed, q: int, m: int):
    """Turn observed shares into ``G*·x = d`` over the first ``m - 1``
    coordinates of every symbol, coordinate-major.

    Returns ``(G*, d)`` or None when the shares are inconsistent with ``G``
    (wrong resolution or a non-integral right-hand side).
    """
    G = as_matrix(G_subset)
    rows, k = shape(G)
    ys = [tuple(y.values) if hasattr(y, "values") else tuple(y) for y in y_observed]
    if len(ys) != rows:
        raise DimensionMismatch(f"{rows} generator rows against {len(ys)} shares")
    if any(len(y) != m for y in ys):
        raise DimensionMismatch(f"shares must have width {m}")
    u = Fraction(q, m)
    width = m - 1
    Gs = [[0] * (k * width) for _ in range(rows * width)]
    d = []
    for r in range(rows):
        if sum(ys[r]) != sum(abs(g) for g in G[r]) * q:
            return None
    for c in range(width):
        for r in range(rows):
            for j in range(k):
                Gs[c * rows + r][c * k + j] = G[r][j]
            rhs = ys[r][c] - sum(abs(g) - g for g in G[r]) * u
            if rhs.denominator != 1:
                return None
            d.append(int(rhs))
    return as_matrix(Gs), d


def count_secret_solutions(G_subset, y_observed, q: int, m: int, L: int = 1,
                           cap: int = DEFAULT_POINT_CAP) -> SecretCounts:
    """Count auxiliary sequences over the restricted alphabet that produce
    the observed shares, tallied by the value of the first ``L`` symbols."""
    G = as_matrix(G_subset)
    k = shape(G)[1]
    if not 1 <= L <= k:
        raise BadParams("need 1 <= L <= k")
    cap_value = check_restrictable(q, m)
    system = linear_system(G, y_observed, q, m)
    if system is None:
        return SecretCounts({}, 0)
    Gs, d = system
    width = m - 1
    nvar = k * width
    extra = []
    if m > 2:
        # the dropped last coordinate q - Σ x_jc must lie in [0, cap]
        for j in range(k):
            a = [0] * nvar
            for c in range(width):
                a[c * k + j] = 1
            extra.append((tuple(a), q))
            extra.append((tuple(-v for v in a), cap_value - q))
    per = {}
    total = 0
    for x in iter_box_solutions(Gs, d, [0] * nvar, [cap_value] * nvar, extra, cap):
        secret = []
        for j in range(L):
            coords = [x[c * k + j] for c in range(width)]
            secret.append(tuple(coords) + (q - sum(coords),))
        key = tuple(secret)
        per[key] = per.get(key, 0) + 1
        total += 1
    return SecretCounts(per, total)
