"""Simplicial fans, toric divisors and their support functions."""
from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (FanError, InputError, NormalizationError, PreconditionError,
                     UnsupportedError)
from .lattice import lp
from .lattice.linalg import determinant, dot, inverse, is_primitive, nullspace, rank, solve
from .lattice.polyhedron import Polyhedron, convex_hull

ZERO = Fraction(0)


@dataclass(frozen=True)
class Fan:
    """A fan given by primitive ray generators and maximal cones (index sets)."""

    rays: tuple
    max_cones: tuple
    dim: int = 0

    def __post_init__(self):
        rays = []
        for r in self.rays:
            try:
                r = tuple(int(x) for x in r)
            except (TypeError, ValueError) as exc:
                raise InputError(f"ray {r!r} is not an integer vector") from exc
            rays.append(r)
        if not rays:
            raise InputError("a fan needs at least one ray")
        dim = self.dim or len(rays[0])
        if any(len(r) != dim for r in rays):
            raise InputError("rays have inconsistent dimensions")
        for r in rays:
            if not is_primitive(r):
                raise NormalizationError(f"ray {r} is not a primitive lattice vector")
        if len(set(rays)) != len(rays):
            raise InputError("rays must be pairwise distinct")
        cones = []
        for c in self.max_cones:
            c = tuple(sorted(int(i) for i in c))
            if not c or any(not 0 <= i < len(rays) for i in c) or len(set(c)) != len(c):
                raise InputError(f"bad maximal cone {c}")
            cones.append(c)
        if len(set(cones)) != len(cones):
            raise InputError("duplicate maximal cones")
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "max_cones", tuple(cones))
        object.__setattr__(self, "dim", dim)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Fan":
        try:
            return cls(tuple(map(tuple, data["rays"])), tuple(map(tuple, data["max_cones"])))
        except KeyError as exc:
            raise InputError(f"fan data is missing {exc}") from exc

    def to_dict(self) -> dict:
        return {"rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def ray_index(self, alpha) -> int:
        """Index of a ray given either as an index or as a vector."""
        if isinstance(alpha, int):
            if 0 <= alpha < len(self.rays):
                return alpha
            raise InputError(f"no ray with index {alpha}")
        try:
            return self.rays.index(tuple(int(x) for x in alpha))
        except (ValueError, TypeError):
            raise InputError(f"{alpha!r} is not a ray of the fan") from None

    def cones(self) -> list[frozenset]:
        """All nonzero cones (faces of maximal cones), as ray-index sets."""
        out = set()
        for c in self.max_cones:
            for k in range(1, len(c) + 1):
                out.update(frozenset(s) for s in itertools.combinations(c, k))
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def walls(self):
        """Pairs (i, j) of maximal cone indices sharing a codimension-one face."""
        out = []
        for i, j in itertools.combinations(range(len(self.max_cones)), 2):
            a, b = set(self.max_cones[i]), set(self.max_cones[j])
            if len(a) == len(b) == self.dim and len(a & b) == self.dim - 1:
                out.append((i, j))
        return out


@dataclass(frozen=True)
class FanReport:
    complete: bool
    simplicial: bool
    smooth: bool


@dataclass(frozen=True)
class ToricDivisor:
    """D = sum n_alpha D_alpha, coefficients listed in ray order."""

    coeffs: tuple

    def __post_init__(self):
        if type(self.coeffs) is tuple and all(type(x) is int for x in self.coeffs):
            return
        coeffs = []
        for x in self.coeffs:
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, bool) or x != int(x):
                raise InputError(f"divisor coefficients must be integers: {self.coeffs!r}")
            coeffs.append(int(x))
        coeffs = tuple(coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        other = ToricDivisor(tuple(other))
        if len(other) != len(self):
            raise InputError("divisors live on different ray sets")
        return ToricDivisor(tuple(a + b for a, b in zip(self, other)))

    def __neg__(self):
        return ToricDivisor(tuple(-a for a in self))

    def __sub__(self, other):
        return self + (-ToricDivisor(tuple(other)))

    def __rmul__(self, k: int):
        return ToricDivisor(tuple(k * a for a in self))

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self)

    def support(self) -> frozenset:
        return frozenset(i for i, a in enumerate(self) if a != 0)


def as_divisor(F: Fan, D) -> ToricDivisor:
    if isinstance(D, Mapping):
        coeffs = [0] * F.n_rays
        for k, v in D.items():
            coeffs[F.ray_index(k)] = v
        D = coeffs
    D = D if isinstance(D, ToricDivisor) else ToricDivisor(tuple(D))
    if len(D) != F.n_rays:
        raise InputError(f"divisor has {len(D)} coefficients, fan has {F.n_rays} rays")
    return D


def ray_divisor(F: Fan, alpha) -> ToricDivisor:
    i = F.ray_index(alpha)
    return ToricDivisor(tuple(int(j == i) for j in range(F.n_rays)))


def anticanonical(F: Fan) -> ToricDivisor:
    return ToricDivisor((1,) * F.n_rays)


def character_divisor(F: Fan, m: Sequence[int]) -> ToricDivisor:
    """The principal divisor with coefficients <m, alpha>."""
    return ToricDivisor(tuple(sum(a * b for a, b in zip(m, r)) for r in F.rays))


# -- cones as polyhedra ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _cone_dual(F: Fan, cone: tuple):
    """(duals, equations) with cone = {u : w_i.u >= 0, e.u = 0}."""
    G = [F.rays[i] for i in cone]
    if rank(G) < len(G):
        raise UnsupportedError(f"cone {cone} is not simplicial")
    comp = nullspace(G, F.dim)
    M = [list(map(Fraction, r)) for r in G] + [list(c) for c in comp]
    Minv = inverse(M)
    cols = [tuple(Minv[r][c] for r in range(F.dim)) for c in range(F.dim)]
    return tuple(cols[: len(G)]), tuple(cols[len(G):])


def cone_polyhedron(F: Fan, cone: Iterable[int]) -> Polyhedron:
    cone = tuple(sorted(cone))
    duals, eqs = _cone_dual(F, cone)
    rows = [(w, ZERO) for w in duals]
    for e in eqs:
        rows.append((e, ZERO))
        rows.append((tuple(-x for x in e), ZERO))
    return Polyhedron(tuple(rows), F.dim)


def cone_coordinates(F: Fan, cone: Iterable[int], v: Sequence) -> tuple | None:
    """Coefficients of v in the generators of `cone`, or None if v is outside its span."""
    cone = tuple(sorted(cone))
    duals, eqs = _cone_dual(F, cone)
    v = tuple(Fraction(x) for x in v)
    if any(dot(e, v) != 0 for e in eqs):
        return None
    return tuple(dot(w, v) for w in duals)


def locate(F: Fan, v: Sequence):
    """(maximal cone index, coordinates) for some maximal cone containing v, else None."""
    for i, c in enumerate(F.max_cones):
        lam = cone_coordinates(F, c, v)
        if lam is not None and all(x >= 0 for x in lam):
            return i, lam
    return None


def minimal_cone(F: Fan, v: Sequence) -> frozenset | None:
    """Ray set of the smallest cone of F containing v (None if v is not in |F|)."""
    hit = locate(F, v)
    if hit is None:
        return None
    i, lam = hit
    return frozenset(r for r, x in zip(F.max_cones[i], lam) if x > 0)


# -- validation -----------------------------------------------------------------------

@lru_cache(maxsize=None)
def validate_fan(F: Fan) -> FanReport:
    n = F.dim
    smooth = True
    for c in F.max_cones:
        G = [F.rays[i] for i in c]
        if rank(G) < len(G):
            raise UnsupportedError(f"maximal cone {c} is not simplicial")
        if len(c) == n:
            smooth = smooth and abs(determinant(G)) == 1
        else:
            # lower-dimensional cone: unimodular iff the rays extend to a basis,
            # i.e. the gcd of maximal minors is 1
            minors = [determinant([[r[j] for j in cols] for r in G])
                      for cols in itertools.combinations(range(n), len(c))]
            g = 0
            for mnr in minors:
                g = gcd(g, int(mnr))
            smooth = smooth and g == 1
    # cones must meet along common faces
    for i, j in itertools.combinations(range(len(F.max_cones)), 2):
        a, b = F.max_cones[i], F.max_cones[j]
        Pa, Pb = cone_polyhedron(F, a), cone_polyhedron(F, b)
        both = Pa.intersect(Pb).inequalities
        duals, _ = _cone_dual(F, a)
        for r, w in zip(a, duals):
            if r in b:
                continue
            if lp.find_point(list(both) + [(w, Fraction(1))], n) is not None:
                raise FanError(f"maximal cones {a} and {b} meet outside a common face")
    complete = all(len(c) == n for c in F.max_cones)
    if complete:
        count: dict = {}
        for c in F.max_cones:
            for f in itertools.combinations(c, n - 1):
                count[f] = count.get(f, 0) + 1
        complete = all(v == 2 for v in count.values())
    return FanReport(complete=complete, simplicial=True, smooth=smooth)


def require_complete(F: Fan) -> FanReport:
    rep = validate_fan(F)
    if not rep.complete:
        raise PreconditionError("the fan must be complete")
    return rep


# -- stars ----------------------------------------------------------------------------

def star(F: Fan, alpha) -> list[frozenset]:
    a = F.ray_index(alpha)
    return [c for c in F.cones() if a in c]


def interior_membership(F: Fan, alpha, v: Sequence) -> str:
    """'interior', 'boundary' or 'outside' relative to the star of alpha."""
    a = F.ray_index(alpha)
    v = tuple(Fraction(x) for x in v)
    in_star = any(
        (lam := cone_coordinates(F, c, v)) is not None and all(x >= 0 for x in lam)
        for c in F.max_cones if a in c)
    if not in_star:
        return "outside"
    cone = minimal_cone(F, v)
    return "interior" if a in cone else "boundary"


# -- support functions ----------------------------------------------------------------

@dataclass(frozen=True)
class SupportFunction:
    fan: Fan
    divisor: ToricDivisor
    linear_parts: tuple  # one m_sigma per maximal cone, in fan order

    def part(self, cone) -> tuple:
        cone = tuple(sorted(cone))
        return self.linear_parts[self.fan.max_cones.index(cone)]

    def __call__(self, v: Sequence) -> Fraction:
        hit = locate(self.fan, v)
        if hit is None:
            raise InputError(f"{v!r} is not in the support of the fan")
        return dot(self.linear_parts[hit[0]], [Fraction(x) for x in v])

    def as_dict(self) -> dict:
        return {c: m for c, m in zip(self.fan.max_cones, self.linear_parts)}


def support_function(F: Fan, D) -> SupportFunction:
    D = as_divisor(F, D)
    require_complete(F)
    parts = []
    for c in F.max_cones:
        m = solve([F.rays[i] for i in c], [-D[i] for i in c])
        if m is None:
            raise UnsupportedError(f"cone {c} is singular")
        parts.append(m)
    # consistency on shared faces: m_sigma and m_sigma' agree on common rays
    for (c1, m1), (c2, m2) in itertools.combinations(zip(F.max_cones, parts), 2):
        for r in set(c1) & set(c2):
            assert dot(m1, F.rays[r]) == dot(m2, F.rays[r]) == -D[r]
    return SupportFunction(F, D, tuple(parts))


def divisor_polytope(F: Fan, D) -> Polyhedron:
    D = as_divisor(F, D)
    return Polyhedron(tuple((tuple(Fraction(x) for x in r), Fraction(-n))
                            for r, n in zip(F.rays, D)), F.dim)


def is_ample(F: Fan, D) -> bool:
    """Strict convexity of the support function, checked across every wall.

    For a wall between sigma and sigma' and v the ray of sigma' not in sigma,
    ampleness needs m_sigma.v > m_sigma'.v = -n_v: the linear part of sigma
    must lie strictly inside the half-space of v.
    """
    psi = support_function(F, D)
    for i, j in F.walls():
        for a, b in ((i, j), (j, i)):
            v = (set(F.max_cones[b]) - set(F.max_cones[a])).pop()
            ma, mb = psi.linear_parts[a], psi.linear_parts[b]
            if not dot(ma, F.rays[v]) > dot(mb, F.rays[v]):
                return False
    return True


def is_nef(F: Fan, D) -> bool:
    """Convexity (not necessarily strict) of the support function across walls."""
    psi = support_function(F, D)
    for i, j in F.walls():
        for a, b in ((i, j), (j, i)):
            v = (set(F.max_cones[b]) - set(F.max_cones[a])).pop()
            if dot(psi.linear_parts[a], F.rays[v]) < dot(psi.linear_parts[b], F.rays[v]):
                return False
    return True


def gradient_hull(F: Fan, D) -> Polyhedron:
    psi = support_function(F, D)
    return convex_hull(psi.linear_parts, F.dim)


# -- Picard group ---------------------------------------------------------------------

def integral_character(F: Fan, d: Sequence[int]) -> tuple[int, ...] | None:
    """m in Z^n with <m, alpha> = d_alpha for every ray, if one exists."""
    sol = None
    # the rays span Q^n for complete fans; solve on a spanning subset then check all
    basis_rows = []
    basis_rhs = []
    for r, x in zip(F.rays, d):
        if rank(basis_rows + [r]) > len(basis_rows):
            basis_rows.append(r)
            basis_rhs.append(x)
        if len(basis_rows) == F.dim:
            break
    if len(basis_rows) < F.dim:
        raise PreconditionError("rays do not span the lattice")
    sol = solve(basis_rows, basis_rhs)
    if sol is None or any(dot(sol, r) != x for r, x in zip(F.rays, d)):
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def pic_class_eq(F: Fan, D0, D1) -> bool:
    D0, D1 = as_divisor(F, D0), as_divisor(F, D1)
    rep = validate_fan(F)
    if not (rep.complete and rep.smooth):
        raise UnsupportedError("Picard classes are only compared on smooth complete fans")
    return integral_character(F, [a - b for a, b in zip(D0, D1)]) is not None


def pic_rank(F: Fan) -> int:
    rep = validate_fan(F)
    if not (rep.complete and rep.smooth):
        raise UnsupportedError("pic_rank needs a smooth complete fan")
    return F.n_rays - F.dim
