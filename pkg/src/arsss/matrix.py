"""Exact dense matrices over the integers and the rationals.

Matrices are plain tuples of row tuples.  Entries are ``int`` or
``fractions.Fraction``; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, Singular

Matrix = tuple  # tuple[tuple[int | Fraction, ...], ...]


def normalize(x):
    """Collapse a Fraction with unit denominator to an int."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(tuple(normalize(v) for v in row) for row in rows)
    if not out:
        raise DimensionMismatch("matrix has no rows")
    width = len(out[0])
    if width == 0 or any(len(r) != width for r in out):
        raise DimensionMismatch("matrix rows must be non-empty and equal length")
    for row in out:
        for v in row:
            if not isinstance(v, (int, Fraction)) or isinstance(v, bool):
                raise TypeError(f"matrix entries must be int or Fraction, got {v!r}")
    return out


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), len(a[0])


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def abs_matrix(a: Matrix) -> Matrix:
    return tuple(tuple(abs(v) for v in row) for row in a)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(
        tuple(normalize(sum(x * y for x, y in zip(row, col))) for col in bt)
        for row in a
    )


def matvec(a: Matrix, v: Sequence) -> tuple:
    if len(a[0]) != len(v):
        raise DimensionMismatch(f"cannot multiply {shape(a)} by vector of length {len(v)}")
    return tuple(normalize(sum(x * y for x, y in zip(row, v))) for row in a)


def submatrix(a: Matrix, rows: Sequence[int], cols: Sequence[int] | None = None) -> Matrix:
    if cols is None:
        return tuple(a[i] for i in rows)
    return tuple(tuple(a[i][j] for j in cols) for i in rows)


def kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    return tuple(
        tuple(a[i // rb][j // cb] * b[i % rb][j % cb] for j in range(ca * cb))
        for i in range(ra * rb)
    )


def det(a: Matrix):
    """Exact determinant.

    Integer matrices use Bareiss fraction-free elimination so intermediate
    values stay integral; anything containing a Fraction falls back to
    Gaussian elimination over the rationals.
    """
    n, m = shape(a)
    if n != m:
        raise DimensionMismatch("determinant of a non-square matrix")
    if all(isinstance(v, int) for row in a for v in row):
        return _bareiss(a)
    rows = [[Fraction(v) for v in row] for row in a]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = rows[r][c] / piv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return normalize(sign * result)


def _bareiss(a: Matrix) -> int:
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def rank(a: Matrix) -> int:
    rows = [[Fraction(v) for v in row] for row in a]
    n, m = shape(a)
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, n):
            f = rows[i][c] / rows[r][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == n:
            break
    return r


def inverse(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n, m = shape(a)
    if n != m:
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise Singular("matrix is singular over the rationals")
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return as_matrix(row[n:] for row in aug)


def gf2_nonsingular(a: Matrix) -> bool:
    """Nonsingularity over GF(2), using row bitmasks."""
    n, m = shape(a)
    if n != m:
        raise DimensionMismatch("square matrix required")
    rows = [sum((int(v) & 1) << j for j, v in enumerate(row)) for row in a]
    for c in range(n):
        bit = 1 << c
        p = next((r for r in range(c, n) if rows[r] & bit), None)
        if p is None:
            return False
        rows[c], rows[p] = rows[p], rows[c]
        for r in range(c + 1, n):
            if rows[r] & bit:
                rows[r] ^= rows[c]
    return True


def nonsingular(a: Matrix) -> bool:
    """Nonsingularity over the rationals.

    An odd determinant is nonzero, so integer matrices that are invertible
    over GF(2) skip the exact determinant entirely.
    """
    if all(isinstance(v, int) for row in a for v in row) and gf2_nonsingular(a):
        return True
    return det(a) != 0


# ----------------------------------------------------------------------
# text format: one row per line, whitespace separated, rationals as p/q

def _token(v) -> str:
    v = normalize(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def format_matrix(a: Matrix, header: dict | None = None, tag: str = "generator") -> str:
    lines = []
    if header:
        fields = " ".join(f"{k}={v}" for k, v in header.items())
        lines.append(f"# {tag} {fields}")
    lines.extend(" ".join(_token(v) for v in row) for row in a)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[Matrix, dict, str | None]:
    """Parse the matrix text format.

    Returns ``(matrix, header_fields, header_tag)``.  Comment lines other
    than the first ``# <tag> key=value ...`` header are skipped, as is a
    score summary line of the form ``OC=<int> IL=<int>``.
    """
    header: dict = {}
    tag = None
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if tag is None and parts and all("=" in p for p in parts[1:]):
                tag = parts[0]
                for p in parts[1:]:
                    key, _, val = p.partition("=")
                    header[key] = int(val) if val.lstrip("-").isdigit() else val
            continue
        if line.startswith("OC="):
            continue
        rows.append([_parse_token(t) for t in line.split()])
    return as_matrix(rows), header, tag


def _parse_token(t: str):
    if "/" in t:
        return normalize(Fraction(t))
    return int(t)
