"""Exact linear programming over the rationals.

The kernel is a dense two-phase tableau simplex with Bland's rule, which
cannot cycle.  Problems are of the form normal·u >= offset with free u.
Fourier-Motzkin elimination is kept as a slow, independent feasibility check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Ineq = tuple[tuple[Fraction, ...], Fraction]

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "unbounded" or "infeasible"
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None


def _pivot(T, r, c):
    row = T[r]
    inv = 1 / row[c]
    if inv != 1:
        T[r] = row = [x * inv for x in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f != 0:
                T[i] = [a - f * b for a, b in zip(other, row)]


def _run(T, basis, cost_row, allowed):
    """Minimise; T's last row is the reduced-cost row.  Returns entering col on unboundedness."""
    m = len(basis)
    while True:
        obj = T[cost_row]
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return None
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return enter
        _pivot(T, leave, enter)
        basis[leave] = enter


def _standard_form(ineqs: Sequence[Ineq], dim: int):
    """Rows of  A x+ - A x- - s = b  with b >= 0 after sign flips."""
    rows = []
    for normal, offset in ineqs:
        row = [Fraction(a) for a in normal] + [-Fraction(a) for a in normal]
        rows.append((row, Fraction(offset)))
    m = len(rows)
    nvar = 2 * dim + m
    T = []
    for i, (row, b) in enumerate(rows):
        full = row + [_ZERO] * m
        full[2 * dim + i] = Fraction(-1)
        if b < 0:
            full = [-x for x in full]
            b = -b
        T.append(full + [b])
    return T, nvar


def _solve(ineqs: Sequence[Ineq], dim: int, objective: Sequence | None) -> LPResult:
    ineqs = list(ineqs)
    if not ineqs:
        pt = tuple(_ZERO for _ in range(dim))
        if objective is None or all(c == 0 for c in objective):
            return LPResult("optimal", _ZERO, pt)
        ray = tuple(Fraction(c) for c in objective)
        return LPResult("unbounded", None, pt, ray)
    T, nvar = _standard_form(ineqs, dim)
    m = len(T)
    # phase 1: artificials in columns nvar .. nvar+m-1
    T = [r[:-1] + [Fraction(int(i == k)) for k in range(m)] + [r[-1]] for i, r in enumerate(T)]
    width = nvar + m + 1
    cost = [_ZERO] * width
    for r in T:
        for j in range(nvar):
            cost[j] -= r[j]
        cost[-1] -= r[-1]
    T.append(cost)
    basis = list(range(nvar, nvar + m))
    _run(T, basis, m, range(nvar))
    if T[m][-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= nvar:
            c = next((j for j in range(nvar) if T[i][j] != 0), None)
            if c is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, c)
            basis[i] = c
        i += 1
    m = len(basis)
    T = [r[:nvar] + [r[-1]] for r in T[:m]]

    def point_from(T, basis):
        y = [_ZERO] * nvar
        for i, b in enumerate(basis):
            y[b] = T[i][-1]
        return tuple(y[k] - y[dim + k] for k in range(dim))

    if objective is None:
        return LPResult("optimal", _ZERO, point_from(T, basis))
    # phase 2: minimise -c.x over y
    c = [Fraction(-x) for x in objective] + [Fraction(x) for x in objective] + [_ZERO] * (nvar - 2 * dim)
    obj = c + [_ZERO]
    for i, b in enumerate(basis):
        f = obj[b]
        if f != 0:
            obj = [a - f * r for a, r in zip(obj, T[i])]
    T.append(obj)
    enter = _run(T, basis, m, range(nvar))
    pt = point_from(T, basis)
    if enter is not None:
        d = [_ZERO] * nvar
        d[enter] = Fraction(1)
        for i, b in enumerate(basis):
            d[b] = -T[i][enter]
        ray = tuple(d[k] - d[dim + k] for k in range(dim))
        return LPResult("unbounded", None, pt, ray)
    value = sum((Fraction(a) * x for a, x in zip(objective, pt)), _ZERO)
    return LPResult("optimal", value, pt)


def find_point(ineqs: Sequence[Ineq], dim: int) -> tuple[Fraction, ...] | None:
    """Some rational point satisfying all inequalities, or None."""
    res = _solve(ineqs, dim, None)
    return res.point if res.status == "optimal" else None


def maximize(objective: Sequence, ineqs: Sequence[Ineq], dim: int) -> LPResult:
    """Maximise objective·u subject to normal·u >= offset."""
    return _solve(ineqs, dim, objective)


def fm_feasible(ineqs: Sequence[Ineq], dim: int) -> bool:
    """Feasibility by Fourier-Motzkin elimination (exponential; small inputs only)."""
    system = [(list(map(Fraction, a)), Fraction(b)) for a, b in ineqs]
    for k in range(dim - 1, -1, -1):
        pos, neg, zero = [], [], []
        for a, b in system:
            (pos if a[k] > 0 else neg if a[k] < 0 else zero).append((a, b))
        new = [(a[:k], b) for a, b in zero]
        for ap, bp in pos:
            for an, bn in neg:
                lp_, ln = ap[k], -an[k]
                a = [ln * x + lp_ * y for x, y in zip(ap[:k], an[:k])]
                new.append((a, ln * bp + lp_ * bn))
        seen = set()
        system = []
        for a, b in new:
            key = (tuple(a), b)
            if key not in seen:
                seen.add(key)
                system.append((a, b))
    return all(b <= 0 for _, b in system)
