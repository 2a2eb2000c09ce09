"""Monomial divisions of R^n and their adaptedness to a fan."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

from .errors import ConstructionError, InputError, PreconditionError
from .fan import (Fan, as_divisor, cone_polyhedron, divisor_polytope, is_ample,
                  require_complete, validate_fan)
from .lattice import lp
from .lattice.linalg import dot, inverse, to_fraction
from .lattice.polyhedron import Polyhedron, homogenization, nonzero_ray, polyhedron_is_empty, vertices

ZERO = Fraction(0)


@dataclass(frozen=True)
class MonomialDivision:
    """Regions C_alpha where k_alpha(<u,alpha> + lc_alpha) is maximal up to slack s."""

    rays: tuple
    k: tuple
    logc: tuple
    slack: Fraction = ZERO

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        k = tuple(to_fraction(x) for x in self.k)
        lc = tuple(to_fraction(x) for x in self.logc)
        s = to_fraction(self.slack)
        if not rays or len({len(r) for r in rays}) != 1:
            raise InputError("division rays must be nonempty and of equal dimension")
        if len(k) != len(rays) or len(lc) != len(rays):
            raise InputError("need one exponent and one log-coefficient per ray")
        if any(x <= 0 for x in k):
            raise InputError("exponents must be positive")
        if s < 0:
            raise InputError("slack must be nonnegative")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "logc", lc)
        object.__setattr__(self, "slack", s)

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def index(self, alpha) -> int:
        if isinstance(alpha, int):
            if 0 <= alpha < len(self.rays):
                return alpha
            raise InputError(f"no ray with index {alpha}")
        try:
            return self.rays.index(tuple(int(x) for x in alpha))
        except ValueError:
            raise InputError(f"{alpha!r} is not a ray of the division") from None

    def value(self, alpha, u) -> Fraction:
        i = self.index(alpha)
        return self.k[i] * (dot(self.rays[i], u) + self.logc[i])

    def argmax(self, u) -> list[int]:
        """Indices of all regions containing u."""
        vals = [self.value(i, u) for i in range(len(self.rays))]
        top = max(vals)
        return [i for i, v in enumerate(vals) if v >= top - self.slack]

    def to_dict(self) -> dict:
        return {"rays": [list(r) for r in self.rays],
                "k": [str(x) for x in self.k],
                "logc": [str(x) for x in self.logc],
                "slack": str(self.slack)}

    @classmethod
    def from_dict(cls, data: Mapping, rays=None) -> "MonomialDivision":
        rays = data.get("rays", rays)
        if rays is None:
            raise InputError("division data has no rays and no fan was given")
        n = len(rays)
        return cls(tuple(map(tuple, rays)), tuple(data.get("k", [1] * n)),
                   tuple(data.get("logc", [0] * n)), data.get("slack", 0))


def tropical_division(rays: Sequence, logc=None, slack=0) -> MonomialDivision:
    rays = tuple(tuple(r) for r in rays)
    logc = tuple(logc) if logc is not None else (0,) * len(rays)
    return MonomialDivision(rays, (1,) * len(rays), logc, slack)


def region(div: MonomialDivision, alpha) -> Polyhedron:
    i = div.index(alpha)
    a, ka, la = div.rays[i], div.k[i], div.logc[i]
    rows = []
    for j, (b, kb, lb) in enumerate(zip(div.rays, div.k, div.logc)):
        if j == i:
            continue
        normal = tuple(ka * x - kb * y for x, y in zip(a, b))
        rows.append((normal, kb * lb - ka * la - div.slack))
    return Polyhedron(tuple(rows), div.dim)


@dataclass(frozen=True)
class AdaptednessReport:
    adapted: bool
    witnesses: tuple = ()  # (ray, maximal cone, certificate ray)

    def __bool__(self):
        return self.adapted


def is_adapted(div: MonomialDivision, F: Fan) -> AdaptednessReport:
    """Decide adaptedness of a division to a complete fan.

    Criterion: C_alpha ∩ sigma is bounded for every maximal sigma not
    containing alpha.  For a complete simplicial fan this is the same as
    C_alpha minus a compact set lying in the open star of alpha: far-out
    points of C_alpha then only lie in maximal cones containing alpha, and a
    point of such a cone on a face tau omitting alpha also lies in the
    neighbouring maximal cone across the facet opposite alpha, which omits
    alpha, so it too is confined to a bounded set.  The converse is immediate.

    Rays of the division that are not rays of the fan lie in no cone of the
    fan, so the same rule forces their regions to be bounded.
    """
    require_complete(F)
    if F.dim != div.dim:
        raise InputError("fan and division have different dimensions")
    missing = [r for r in F.rays if r not in div.rays]
    if missing:
        raise InputError(f"fan rays {missing} have no monomial in the division")
    witnesses = []
    for i, alpha in enumerate(div.rays):
        C = region(div, i)
        if polyhedron_is_empty(C):
            continue
        fan_idx = F.rays.index(alpha) if alpha in F.rays else None
        for cone in F.max_cones:
            if fan_idx is not None and fan_idx in cone:
                continue
            Q = C.intersect(cone_polyhedron(F, cone))
            if polyhedron_is_empty(Q):
                continue
            ray = nonzero_ray(homogenization(Q))
            if ray is not None:
                witnesses.append((alpha, tuple(F.rays[j] for j in cone), ray))
    return AdaptednessReport(not witnesses, tuple(witnesses))


# -- constructions ----------------------------------------------------------------------

def _angle_key(a, b) -> int:
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def fan_from_rays_2d(rays: Sequence) -> Fan:
    """The complete 2D fan whose cones join angularly consecutive rays."""
    rays = [tuple(int(x) for x in r) for r in rays]
    if any(len(r) != 2 for r in rays):
        raise InputError("expected planar rays")
    order = sorted(range(len(rays)), key=functools.cmp_to_key(
        lambda i, j: _angle_key(rays[i], rays[j])))
    cones = [(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]
    return Fan(tuple(rays), tuple(cones))


def _inv_norm(v, precision: int) -> Fraction:
    N = sum(x * x for x in v)
    r = isqrt(N)
    if r * r == N:
        return Fraction(1, r)
    return Fraction(isqrt(4 ** precision // N), 2 ** precision)


def exponents_2d(rays: Sequence, fan: Fan | None = None) -> tuple[Fraction, ...]:
    """Rational approximations of 1/|alpha|; the induced division is checked adapted."""
    rays = [tuple(int(x) for x in r) for r in rays]
    if any(len(r) != 2 for r in rays):
        raise InputError("exponents_2d needs planar rays")
    F = fan if fan is not None else fan_from_rays_2d(rays)
    for precision in (20, 60):
        k = tuple(_inv_norm(r, precision) for r in rays)
        div = MonomialDivision(tuple(rays), k, (0,) * len(rays))
        if is_adapted(div, F).adapted:
            return k
    raise ConstructionError("no adapted rationalisation of 1/|alpha| at precision 2^-60")


def _barycentric_offsets(F: Fan, D):
    D = as_divisor(F, D)
    if not is_ample(F, D):
        raise PreconditionError("divisor is not ample")
    V = vertices(divisor_polytope(F, D))
    b = tuple(sum(c) / len(V) for c in zip(*V))
    h = tuple(n + dot(b, r) for n, r in zip(D, F.rays))
    if any(x <= 0 for x in h):
        raise ConstructionError("barycenter is not interior to the polytope")
    return b, h, V


def exponents_from_ample(F: Fan, D) -> tuple[Fraction, ...]:
    _, h, _ = _barycentric_offsets(F, D)
    return tuple(1 / x for x in h)


def normalize_coefficients(div: MonomialDivision, F: Fan, B=None) -> MonomialDivision:
    """Absorb the log-coefficients into the exponents: 1/K = B/k - lc.

    Without an explicit B, B starts at a power of two making every 1/K
    positive and doubles until the result is adapted.
    """
    if not is_adapted(div, F).adapted:
        raise PreconditionError("input division is not adapted")

    def build(B):
        inv = [B / k - lc for k, lc in zip(div.k, div.logc)]
        if any(x <= 0 for x in inv):
            return None
        return MonomialDivision(div.rays, tuple(1 / x for x in inv), (0,) * len(div.rays), 0)

    if B is not None:
        B = to_fraction(B)
        out = build(B)
        if out is None:
            raise InputError("B/k - lc must be positive for every ray")
        if not is_adapted(out, F).adapted:
            raise ConstructionError(f"B = {B} is too small: normalized division is not adapted")
        return out
    B = Fraction(1)
    while any(B / k - lc <= 0 for k, lc in zip(div.k, div.logc)):
        B *= 2
    for _ in range(64):
        out = build(B)
        if is_adapted(out, F).adapted:
            return out
        B *= 2
    raise ConstructionError("no B up to 2^64 produced an adapted division")


# -- combinatorial divisions -------------------------------------------------------------

@dataclass(frozen=True)
class CombinatorialDivision:
    fan: Fan
    t: Fraction
    cones: dict = field(hash=False)  # ray index -> list of (max cone, generator tuple)

    def generators(self, alpha):
        return self.cones[self.fan.ray_index(alpha)]


def combinatorial_division(F: Fan, t) -> CombinatorialDivision:
    t = to_fraction(t)
    if not 0 <= t < 1:
        raise InputError("shrinking parameter must satisfy 0 <= t < 1")
    require_complete(F)
    cones = {}
    for a, alpha in enumerate(F.rays):
        fam = []
        for c in F.max_cones:
            if a not in c:
                continue
            gens = [tuple(Fraction(x) for x in alpha)]
            for r in c:
                if r != a:
                    gens.append(tuple((1 - t) * x + t * y for x, y in zip(F.rays[r], alpha)))
            fam.append((c, tuple(gens)))
        cones[a] = fam
    return CombinatorialDivision(F, t, cones)


def _generator_cone(gens, dim) -> Polyhedron:
    Minv = inverse([list(g) for g in gens])
    return Polyhedron(tuple((tuple(Minv[r][c] for r in range(dim)), ZERO) for c in range(dim)), dim)


def _contained(Q: Polyhedron, K: Polyhedron) -> bool:
    if polyhedron_is_empty(Q):
        return True
    for w, b in K.inequalities:
        res = lp.maximize(tuple(-x for x in w), Q.inequalities, Q.dim)
        if res.status == "unbounded" or -res.value < b:
            return False
    return True


def comb_region_contains(comb: CombinatorialDivision, alpha, P: Polyhedron,
                         asymptotic: bool = False) -> bool:
    """Is P inside the union of the shrunken cones of alpha?

    With asymptotic=True only the recession cone of P is compared.
    """
    F = comb.fan
    a = F.ray_index(alpha)
    if asymptotic:
        if polyhedron_is_empty(P):
            return True
        P = homogenization(P)
    zero = Polyhedron(tuple((tuple(Fraction(int(i == j)) for j in range(F.dim)), ZERO)
                            for i in range(F.dim))
                      + tuple((tuple(Fraction(-int(i == j)) for j in range(F.dim)), ZERO)
                              for i in range(F.dim)), F.dim)
    shrunk = {c: g for c, g in comb.cones[a]}
    for c in F.max_cones:
        Q = P.intersect(cone_polyhedron(F, c))
        if a in c:
            if not _contained(Q, _generator_cone(shrunk[c], F.dim)):
                return False
        elif comb.t > 0:
            if not _contained(Q, zero):
                return False
        else:
            if not any(_contained(Q, cone_polyhedron(F, c2)) for c2 in shrunk):
                return False
    return True


# -- PL certificate -----------------------------------------------------------------------

@dataclass(frozen=True)
class MetricCertificate:
    shift: tuple
    offsets: tuple           # h_alpha
    exponents: tuple         # 1 / h_alpha
    vertex_cones: tuple      # (vertex of shifted P, maximal cone of its active facets)
    facet_count: int
    normal_fan_matches: bool


def certify_adapted_metric(F: Fan, D) -> MetricCertificate:
    D = as_divisor(F, D)
    b, h, V = _barycentric_offsets(F, D)
    pairs = []
    cones = set(F.max_cones)
    for v in V:
        active = tuple(sorted(i for i, r in enumerate(F.rays) if dot(r, v) == -D[i]))
        w = tuple(x - y for x, y in zip(v, b))
        pairs.append((w, active))
    matched = {a for _, a in pairs}
    facets = sum(1 for i in range(F.n_rays)
                 if sum(1 for _, a in pairs if i in a) >= F.dim)
    ok = matched == cones and len(pairs) == len(cones) and facets == F.n_rays
    validate_fan(F)
    return MetricCertificate(b, h, tuple(1 / x for x in h), tuple(pairs), facets, ok)
