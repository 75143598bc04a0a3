"""Exact rational scalars, vectors, and matrices.

Scalars are ``fractions.Fraction``, so every result is automatically in
lowest terms with a positive denominator and equality is structural.
Vectors are tuples of Fraction, matrices are tuples of row tuples; all
values are immutable and safe to share between workers.  No floats ever
enter this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
Vec = tuple[Fraction, ...]
Mat = tuple[tuple[Fraction, ...], ...]

RatLike = Union[Fraction, int, str]


def rational(value: RatLike, den: int | None = None) -> Fraction:
    """Exact rational from "p/q" / "p" / decimal text, an int, or a (num, den) pair.

    Decimal text like "0.314" is read exactly (314/1000, then reduced),
    never through a float.  A zero denominator raises ZeroDivisionError.
    """
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass decimal text instead")
    try:
        return Fraction(str(value).strip())
    except ValueError as exc:
        raise ValueError(f"not a rational literal: {value!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical lowest-terms text: "p/q", or just "p" when q = 1."""
    return str(x)


def vec(entries: Iterable[RatLike]) -> Vec:
    v = tuple(rational(e) for e in entries)
    if not v:
        raise ValueError("vector needs at least one entry")
    return v


def parse_vec(text: str) -> Vec:
    """Comma-separated rational literals, e.g. "157/500,-23/200"."""
    return vec(text.split(","))


def mat(rows: Iterable[Iterable[RatLike]]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if not m:
        raise ValueError("matrix needs at least one row")
    width = len(m[0])
    if any(len(r) != width for r in m):
        raise ValueError("ragged rows")
    return m


def parse_mat(text: str) -> Mat:
    """Semicolon-separated rows of comma-separated rationals, e.g. "1,0;0,1"."""
    return mat(row.split(",") for row in text.split(";"))


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vec_scale(a: Vec, s: RatLike) -> Vec:
    f = rational(s)
    return tuple(f * x for x in a)


def vec_mat(x: Vec, m: Mat) -> Vec:
    """Row vector times matrix: (x M)_j = sum_i x_i m_{ij}."""
    if len(x) != len(m):
        raise ValueError("dimension mismatch")
    return tuple(sum(x[i] * m[i][j] for i in range(len(x))) for j in range(len(m[0])))


def mat_mul(a: Mat, b: Mat) -> Mat:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    return tuple(vec_mat(row, b) for row in a)


def _square_dim(m: Mat) -> int:
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    return n


def det(m: Mat) -> Fraction:
    """Exact determinant by elimination over the rationals."""
    n = _square_dim(m)
    a = [list(row) for row in m]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return result


def inverse(m: Mat) -> Mat:
    """Exact inverse by Gauss-Jordan elimination; raises on a singular input."""
    n = _square_dim(m)
    a = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ValueError("singular matrix")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def is_unimodular(m: Mat) -> bool:
    return abs(det(m)) == 1


def sqrt_upper(q: Fraction) -> Fraction:
    """A rational s >= sqrt(q), tight to within 1/denominator(q)."""
    if q < 0:
        raise ValueError("negative input")
    num, den = q.numerator, q.denominator
    return Fraction(math.isqrt(num * den) + 1, den)
