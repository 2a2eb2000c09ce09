"""Exact linear algebra over the rationals."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from ..errors import InputError


def to_fraction(x) -> Fraction:
    """Coerce an int, Fraction or a "p/q" string to a Fraction.

    Floats are rejected; every quantity in the exact layer must be given exactly.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {x!r}") from exc
    raise InputError(f"not an exact rational: {x!r}")


def vec(xs) -> tuple[Fraction, ...]:
    return tuple(to_fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def integer_normal(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector with the same direction."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1])


def determinant(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise InputError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Solve A x = b. Returns the unique solution, or None if inconsistent.

    Raises InputError when the solution is not unique.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    red, piv = row_reduce(aug)
    if ncols in piv:
        return None
    if len(piv) < ncols:
        raise InputError("linear system has no unique solution")
    x = [Fraction(0)] * ncols
    for r, c in zip(red, piv):
        x[c] = r[-1]
    return tuple(x)


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise InputError("matrix is singular")
    return [r[n:] for r in red]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, piv = row_reduce(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, c in zip(red, piv):
            x[c] = -r[f]
        basis.append(tuple(x))
    return basis


def sparse_rank(rows: Sequence[dict]) -> int:
    """Rank of a sparse matrix given as a list of {column: value} rows."""
    pivots: dict[int, dict] = {}
    rk = 0
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v != 0}
        while r:
            c = min(r)
            if c in pivots:
                prow = pivots[c]
                f = r[c]
                for k, v in prow.items():
                    nv = r.get(k, 0) - f * v
                    if nv == 0:
                        r.pop(k, None)
                    else:
                        r[k] = nv
            else:
                inv = 1 / r[c]
                pivots[c] = {k: v * inv for k, v in r.items()}
                rk += 1
                break
    return rk
