"""Rational polyhedra in H-representation."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Iterable, Sequence

from ..errors import BoundednessError, InputError, PreconditionError
from . import lp
from .linalg import integer_normal, nullspace, rank, solve, to_fraction, vec


@dataclass(frozen=True)
class Polyhedron:
    """{u in Q^dim : normal·u >= offset for every inequality}."""

    inequalities: tuple
    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InputError(f"dimension must be a positive integer, got {self.dim!r}")
        rows = []
        for ineq in self.inequalities:
            try:
                normal, offset = ineq
            except (TypeError, ValueError) as exc:
                raise InputError(f"malformed inequality {ineq!r}") from exc
            normal = vec(normal)
            if len(normal) != self.dim:
                raise InputError(
                    f"inequality normal has length {len(normal)}, expected {self.dim}")
            rows.append((normal, to_fraction(offset)))
        object.__setattr__(self, "inequalities", tuple(rows))

    @classmethod
    def from_rows(cls, rows: Iterable, dim: int | None = None) -> "Polyhedron":
        rows = list(rows)
        if dim is None:
            if not rows:
                raise InputError("cannot infer dimension of an empty inequality list")
            dim = len(rows[0][0])
        return cls(tuple(rows), dim)

    @classmethod
    def whole_space(cls, dim: int) -> "Polyhedron":
        return cls((), dim)

    def contains(self, point: Sequence, strict: bool = False) -> bool:
        p = vec(point)
        for a, b in self.inequalities:
            s = sum((x * y for x, y in zip(a, p)), Fraction(0))
            if s < b or (strict and s == b):
                return False
        return True

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.dim != self.dim:
            raise InputError("dimension mismatch in intersection")
        return Polyhedron(self.inequalities + other.inequalities, self.dim)

    def translate(self, v: Sequence) -> "Polyhedron":
        v = vec(v)
        return Polyhedron(tuple((a, b + sum((x * y for x, y in zip(a, v)), Fraction(0)))
                                for a, b in self.inequalities), self.dim)

    def scale(self, k) -> "Polyhedron":
        k = to_fraction(k)
        if k <= 0:
            raise InputError("scale factor must be positive")
        return Polyhedron(tuple((a, b * k) for a, b in self.inequalities), self.dim)

    def __len__(self):
        return len(self.inequalities)


def polyhedron_is_empty(P: Polyhedron) -> bool:
    return lp.find_point(P.inequalities, P.dim) is None


def feasible_point(P: Polyhedron):
    return lp.find_point(P.inequalities, P.dim)


def recession_cone(P: Polyhedron) -> Polyhedron:
    if polyhedron_is_empty(P):
        raise PreconditionError("recession cone of an empty polyhedron")
    return homogenization(P)


def homogenization(P: Polyhedron) -> Polyhedron:
    """{u : normal·u >= 0}; equals the recession cone when P is nonempty."""
    return Polyhedron(tuple((a, Fraction(0)) for a, _ in P.inequalities), P.dim)


def nonzero_ray(C: Polyhedron):
    """A nonzero point of the cone {normal·u >= 0}, or None if the cone is {0}."""
    if C.dim == 2:
        return _nonzero_ray_2d(C)
    return _nonzero_ray_lp(C)


def _nonzero_ray_2d(C: Polyhedron):
    # a nonzero planar cone has a boundary ray perpendicular to some normal,
    # or is the whole plane when every normal vanishes
    normals = [a for a, _ in C.inequalities if any(a)]
    if not normals:
        return (Fraction(1), Fraction(0))
    for a in normals:
        for u in ((-a[1], a[0]), (a[1], -a[0])):
            if all(b[0] * u[0] + b[1] * u[1] >= 0 for b in normals):
                return u
    return None


def _nonzero_ray_lp(C: Polyhedron):
    base = [(a, Fraction(0)) for a, _ in C.inequalities]
    for i in range(C.dim):
        for s in (1, -1):
            e = tuple(Fraction(s if j == i else 0) for j in range(C.dim))
            p = lp.find_point(base + [(e, Fraction(1))], C.dim)
            if p is not None:
                return p
    return None


def is_bounded(P: Polyhedron) -> bool:
    if polyhedron_is_empty(P):
        return True
    return nonzero_ray(P) is None


def unbounded_direction(P: Polyhedron):
    """Certificate ray of an unbounded nonempty P (None if bounded or empty)."""
    if polyhedron_is_empty(P):
        return None
    return nonzero_ray(P)


def remove_redundant(P: Polyhedron) -> tuple[Polyhedron, tuple[int, ...]]:
    """Drop redundant inequalities one at a time; returns (P', kept original indices)."""
    keep = list(range(len(P.inequalities)))
    ineqs = P.inequalities
    i = 0
    while i < len(keep):
        idx = keep[i]
        a, b = ineqs[idx]
        rest = [ineqs[j] for j in keep if j != idx]
        res = lp.maximize(tuple(-x for x in a), rest, P.dim)
        if res.status == "infeasible":
            # P empty: keep a single contradictory pair is enough, but leave as is
            return P, tuple(keep)
        if res.status == "optimal" and -res.value >= b:
            keep.pop(i)
            continue
        i += 1
    return Polyhedron(tuple(ineqs[j] for j in keep), P.dim), tuple(keep)


def bounding_box(P: Polyhedron) -> list[tuple[Fraction, Fraction]] | None:
    """Exact coordinate ranges of P; None for empty P.  Raises on unbounded P."""
    box = []
    for i in range(P.dim):
        e = tuple(Fraction(int(i == j)) for j in range(P.dim))
        hi = lp.maximize(e, P.inequalities, P.dim)
        if hi.status == "infeasible":
            return None
        lo = lp.maximize(tuple(-x for x in e), P.inequalities, P.dim)
        if hi.status == "unbounded" or lo.status == "unbounded":
            raise BoundednessError("polyhedron is unbounded")
        box.append((-lo.value, hi.value))
    return box


def vertices(P: Polyhedron) -> list[tuple[Fraction, ...]]:
    if polyhedron_is_empty(P):
        return []
    if not is_bounded(P):
        raise BoundednessError("vertices of an unbounded polyhedron")
    Q, _ = remove_redundant(P)
    n = P.dim
    normals = [a for a, _ in Q.inequalities]
    out = []
    seen = set()
    for combo in itertools.combinations(range(len(normals)), n):
        A = [normals[i] for i in combo]
        if rank(A) < n:
            continue
        x = solve(A, [Q.inequalities[i][1] for i in combo])
        if x is None or x in seen:
            continue
        if Q.contains(x):
            seen.add(x)
            out.append(x)
    return sorted(out)


def _integer_rows(P: Polyhedron):
    rows = []
    for a, b in P.inequalities:
        den = 1
        for x in list(a) + [b]:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append(([int(x * den) for x in a], b * den))
    return rows


def lattice_points(P: Polyhedron, strict: bool = False) -> list[tuple[int, ...]]:
    if polyhedron_is_empty(P):
        return []
    if not is_bounded(P):
        raise BoundednessError("lattice points of an unbounded polyhedron")
    box = bounding_box(P)
    ranges = [range(ceil(lo), floor(hi) + 1) for lo, hi in box]
    rows = _integer_rows(P)
    out = []
    for p in itertools.product(*ranges):
        ok = True
        for a, b in rows:
            s = sum(x * y for x, y in zip(a, p))
            if s < b or (strict and s == b):
                ok = False
                break
        if ok:
            out.append(tuple(p))
    return out


def affine_dimension(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = vec(points[0])
    diffs = [[x - y for x, y in zip(vec(p), p0)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def convex_hull(points: Sequence[Sequence], dim: int | None = None) -> Polyhedron:
    """H-representation of the convex hull of finitely many points (small inputs).

    Facets are found by brute force over affinely independent subsets, which is
    fine for a few dozen points in dimension at most 4.
    """
    pts = sorted({vec(p) for p in points})
    if not pts:
        raise InputError("convex hull of no points")
    n = dim if dim is not None else len(pts[0])
    p0 = pts[0]
    diffs = [tuple(x - y for x, y in zip(p, p0)) for p in pts[1:]]
    k = rank(diffs) if diffs else 0
    rows = []
    # equations cutting out the affine hull
    ortho = nullspace(diffs, n) if diffs else nullspace([], n)
    for v in ortho:
        a = tuple(Fraction(x) for x in integer_normal(v))
        b = sum((x * y for x, y in zip(a, p0)), Fraction(0))
        rows.append((a, b))
        rows.append((tuple(-x for x in a), -b))
    if k >= 1:
        ortho_rows = [tuple(x for x in integer_normal(v)) for v in ortho]
        seen = set()
        for combo in itertools.combinations(range(len(pts)), k):
            base = pts[combo[0]]
            dd = [tuple(x - y for x, y in zip(pts[j], base)) for j in combo[1:]]
            if dd and rank(dd) < k - 1:
                continue
            ns = nullspace(list(dd) + ortho_rows, n)
            if len(ns) != 1:
                continue
            a = tuple(Fraction(x) for x in integer_normal(ns[0]))
            vals = [sum((x * y for x, y in zip(a, p)), Fraction(0)) for p in pts]
            lo, hi = min(vals), max(vals)
            if lo == hi:
                continue
            b = sum((x * y for x, y in zip(a, base)), Fraction(0))
            if b == lo:
                cand = (a, b)
            elif b == hi:
                cand = (tuple(-x for x in a), -b)
            else:
                continue
            if cand not in seen:
                seen.add(cand)
                rows.append(cand)
    return Polyhedron(tuple(rows), n)
