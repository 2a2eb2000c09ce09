"""Weight-graded cohomology of toric line bundles in three models.

Every model only sees a weight m through the set
    S(m) = {alpha : <m, alpha> + n_alpha < 0},
so the complexes are built once per subset S and cached.

* cech: Cech complex of the cover by maximal cones; the term of an
  intersection is Q iff none of its rays lies in S.
* polytope: cochains of the barycentric cone over the reference polytope Q
  relative to the union of the facets F_alpha, alpha in S.
* points: lattice points of P_D (nef D) or interior points of P_{-D}
  (anti-ample D); no complex is involved.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import Iterable, Sequence

from .errors import (BoundViolationError, EffectivenessError, InputError, IntegrityError,
                     ModelDisagreementError, PreconditionError, UnsupportedError)
from .fan import (Fan, ToricDivisor, as_divisor, divisor_polytope, gradient_hull, is_ample,
                  is_nef, require_complete, support_function, validate_fan)
from .lattice.cochain import CochainComplex, complex_cohomology, simplicial_cochains
from .lattice.faces import FaceLattice, SimplicialComplex, barycentric_cone, face_lattice
from .lattice.linalg import dot
from .lattice.polyhedron import Polyhedron, lattice_points
from .sections import (DefiningSection, MonodromyFunctor, SectionClass, divisor_from_section,
                       monodromy_apply)

MODELS = ("cech", "polytope", "points")


# -- reference polytope --------------------------------------------------------------------

@dataclass(frozen=True)
class ReferencePolytope:
    divisor: ToricDivisor
    polytope: Polyhedron
    lattice: FaceLattice
    complex: SimplicialComplex


@lru_cache(maxsize=None)
def reference_polytope(F: Fan) -> ReferencePolytope:
    """Polytope of a small ample divisor; its facets are indexed by the rays."""
    require_complete(F)
    if F.dim > 4:
        raise UnsupportedError("the polytope model is implemented for dim <= 4")
    found = None
    if is_ample(F, (1,) * F.n_rays):
        found = (1,) * F.n_rays
    else:
        for bound in range(1, 6):
            for c in itertools.product(range(bound + 1), repeat=F.n_rays):
                if max(c) == bound and is_ample(F, c):
                    found = c
                    break
            if found:
                break
    if found is None:
        raise UnsupportedError("no small ample divisor found for the reference polytope")
    D = ToricDivisor(found)
    Q = divisor_polytope(F, D)
    L = face_lattice(Q)
    if tuple(L.facet_indices) != tuple(range(F.n_rays)):
        raise IntegrityError("reference polytope does not have one facet per ray")
    return ReferencePolytope(D, Q, L, barycentric_cone(L))


# -- weights ---------------------------------------------------------------------------------

def negative_set(F: Fan, D, m: Sequence[int]) -> frozenset:
    D = as_divisor(F, D)
    return frozenset(i for i, (r, n) in enumerate(zip(F.rays, D))
                     if sum(a * b for a, b in zip(m, r)) + n < 0)


@dataclass(frozen=True)
class PositiveBoundary:
    facets: frozenset  # ray indices

    def rays(self, F: Fan):
        return [F.rays[i] for i in sorted(self.facets)]


def positive_boundary(F: Fan, D, m: Sequence[int]) -> PositiveBoundary:
    """Facets F_alpha with <m, alpha> + n_alpha < 0; ties stay out."""
    return PositiveBoundary(negative_set(F, D, m))


@dataclass(frozen=True)
class WeightSupport:
    candidates: tuple
    shell: tuple


def weight_support(F: Fan, D) -> WeightSupport:
    """Lattice points of the gradient hull pushed out by 1 in the sup norm.

    Each hull inequality a.u >= b (a primitive) is relaxed to a.u >= b - |a|_1,
    which contains the Minkowski sum of the hull with the unit cube.  The shell
    is the part of the enlargement outside the hull itself.
    """
    D = as_divisor(F, D)
    H = gradient_hull(F, D)
    rows = []
    for a, b in H.inequalities:
        rows.append((a, b - sum(abs(x) for x in a)))
    big = Polyhedron(tuple(rows), F.dim)
    cands = lattice_points(big)
    shell = tuple(p for p in cands if not H.contains(p))
    return WeightSupport(tuple(cands), shell)


# -- the models --------------------------------------------------------------------------------

def _pad(betti: dict, n: int) -> tuple[int, ...]:
    for k, v in betti.items():
        if k > n and v != 0:
            raise IntegrityError(f"cohomology in degree {k} > {n}")
    return tuple(betti.get(k, 0) for k in range(n + 1))


def _cech_complex(cover: tuple, S: frozenset) -> CochainComplex:
    N = len(cover)
    K = SimplicialComplex(tuple(range(N)), tuple(
        s for k in range(1, N + 1) for s in itertools.combinations(range(N), k)))

    def vanishes(s):
        rays = frozenset.intersection(*(cover[i] for i in s))
        return bool(rays & S)

    return simplicial_cochains(K, vanishes)


@lru_cache(maxsize=None)
def _cech_betti(cover: tuple, S: frozenset, n: int) -> tuple[int, ...]:
    return _pad(complex_cohomology(_cech_complex(cover, S)), n)


def _polytope_complex(F: Fan, S: frozenset) -> CochainComplex:
    ref = reference_polytope(F)
    faces = ref.complex.labels

    def in_boundary(chain):
        return bool(faces[chain[-1]].facets & S)

    return simplicial_cochains(ref.complex, in_boundary)


@lru_cache(maxsize=None)
def _polytope_betti(F: Fan, S: frozenset) -> tuple[int, ...]:
    return _pad(complex_cohomology(_polytope_complex(F, S)), F.dim)


def _cover(F: Fan) -> tuple:
    return tuple(frozenset(c) for c in F.max_cones)


def cech_cohomology(F: Fan, D, m: Sequence[int]) -> tuple[int, ...]:
    require_complete(F)
    return _cech_betti(_cover(F), negative_set(F, D, m), F.dim)


def polytope_cohomology(F: Fan, D, m: Sequence[int], experimental: bool = False) -> tuple[int, ...]:
    rep = require_complete(F)
    if F.dim > 4:
        raise UnsupportedError("the polytope model is implemented for dim <= 4")
    if not rep.smooth and not experimental:
        raise UnsupportedError("polytope model on non-smooth fans needs experimental=True")
    return _polytope_betti(F, negative_set(F, D, m))


def _points_kind(F: Fan, D: ToricDivisor) -> str:
    if all(x == 0 for x in D) or is_nef(F, D):
        return "nef"
    if is_ample(F, -D):
        return "antiample"
    raise UnsupportedError("the lattice-point model covers nef and anti-ample divisors only")


def points_cohomology(F: Fan, D, m: Sequence[int]) -> tuple[int, ...]:
    require_complete(F)
    D = as_divisor(F, D)
    kind = _points_kind(F, D)
    out = [0] * (F.dim + 1)
    if kind == "nef":
        out[0] = int(divisor_polytope(F, D).contains(m))
    else:
        out[F.dim] = int(divisor_polytope(F, -D).contains([-x for x in m], strict=True))
    return tuple(out)


def model_cohomology(F: Fan, D, m, model: str, experimental: bool = False) -> tuple[int, ...]:
    if model == "cech":
        return cech_cohomology(F, D, m)
    if model == "polytope":
        return polytope_cohomology(F, D, m, experimental=experimental)
    if model == "points":
        return points_cohomology(F, D, m)
    raise InputError(f"unknown model {model!r}")


@dataclass(frozen=True)
class WeightComplex:
    weight: tuple
    model: str
    complex: CochainComplex
    betti: tuple


def weight_complex(F: Fan, D, m: Sequence[int], model: str = "cech",
                   experimental: bool = False) -> WeightComplex:
    S = negative_set(F, D, m)
    if model == "cech":
        require_complete(F)
        C = _cech_complex(_cover(F), S)
    elif model == "polytope":
        polytope_cohomology(F, D, m, experimental=experimental)  # domain checks
        C = _polytope_complex(F, S)
    else:
        raise InputError("weight complexes exist for the cech and polytope models")
    return WeightComplex(tuple(m), model, C, _pad(complex_cohomology(C), F.dim))


# -- graded assembly -------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedHom:
    dims: dict = field(hash=False)  # (degree, weight) -> dimension, zeros omitted
    source: SectionClass | None = None
    target: SectionClass | None = None

    def total(self, degree: int) -> int:
        return sum(v for (p, _), v in self.dims.items() if p == degree)

    def totals(self, n: int) -> tuple[int, ...]:
        return tuple(self.total(p) for p in range(n + 1))

    def weights(self, degree: int) -> list[tuple]:
        return sorted(m for (p, m), v in self.dims.items() if p == degree and v)

    def triples(self) -> list[tuple]:
        return sorted((m, p, v) for (p, m), v in self.dims.items())


def line_bundle_cohomology(F: Fan, D, model: str = "cech", workers: int | None = None,
                           experimental: bool = False) -> GradedHom:
    """All nonzero weight spaces of H^*(O(D)).

    model="all" runs the cech and polytope models (plus the lattice-point
    model where it applies) and raises ModelDisagreementError on any mismatch.
    """
    require_complete(F)
    D = as_divisor(F, D)
    return GradedHom(dict(_graded_dims(F, D, model, workers or 1, experimental)))


@lru_cache(maxsize=4096)
def _graded_dims(F: Fan, D: ToricDivisor, model: str, workers: int, experimental: bool):
    ws = weight_support(F, D)
    if model == "all":
        models = ["cech", "polytope"]
        try:
            _points_kind(F, D)
            models.append("points")
        except UnsupportedError:
            pass
    else:
        models = [model]

    def one(m):
        return {mod: model_cohomology(F, D, m, mod, experimental) for mod in models}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(one, ws.candidates))
    else:
        results = [one(m) for m in ws.candidates]
    shell = set(ws.shell)
    dims = {}
    bad = []
    for m, res in zip(ws.candidates, results):
        ref = res[models[0]]
        for mod in models[1:]:
            if res[mod] != ref:
                bad.extend((m, p, models[0], mod) for p in range(F.dim + 1)
                           if res[mod][p] != ref[p])
        if m in shell and any(ref):
            raise BoundViolationError(f"weight {m} outside the gradient hull has cohomology {ref}")
        for p, v in enumerate(ref):
            if v:
                dims[(p, m)] = v
    if bad:
        raise ModelDisagreementError(f"models disagree at {len(bad)} (weight, degree) pairs", bad)
    return tuple(sorted(dims.items()))


def hom_graded_dims(F: Fan, nu0: SectionClass, nu1: SectionClass, model: str = "cech",
                    workers: int | None = None, experimental: bool = False) -> GradedHom:
    """Hom(nu0, nu1) as the cohomology of O(div(nu1) - div(nu0))."""
    D = divisor_from_section(nu1) - divisor_from_section(nu0)
    g = line_bundle_cohomology(F, D, model, workers=workers, experimental=experimental)
    return GradedHom(g.dims, nu0, nu1)


# -- section ring ------------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionRing:
    divisor: ToricDivisor
    pieces: tuple  # pieces[k] = sorted lattice points of kP

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.pieces)

    def multiply(self, k: int, p, l: int, q):
        """(degree, weight, coefficient) of the product of basis elements p in R_k, q in R_l."""
        if tuple(p) not in self._index(k) or tuple(q) not in self._index(l):
            raise InputError("factor is not a basis element of the ring")
        return k + l, tuple(a + b for a, b in zip(p, q)), 1

    def _index(self, k):
        return set(self.pieces[k])


def section_ring(F: Fan, D, kmax: int, samples: int = 200, seed: int = 0) -> SectionRing:
    D = as_divisor(F, D)
    if kmax < 2:
        raise InputError("kmax must be at least 2")
    if not is_ample(F, D):
        raise PreconditionError("section rings are built for ample divisors")
    pieces = tuple(tuple(sorted(lattice_points(divisor_polytope(F, k * D))))
                   for k in range(kmax + 1))
    R = SectionRing(D, pieces)
    sets = [set(p) for p in pieces]
    for k in range(kmax + 1):
        for l in range(kmax + 1 - k):
            for p in pieces[k]:
                for q in pieces[l]:
                    deg, w, c = R.multiply(k, p, l, q)
                    if w not in sets[deg] or c == 0:
                        raise IntegrityError(f"product {p}*{q} leaves R_{deg}")
    rng = random.Random(seed)
    for _ in range(samples):
        ks = [rng.randint(0, kmax) for _ in range(3)]
        if sum(ks) > kmax:
            continue
        p, q, r = (rng.choice(pieces[k]) for k in ks)
        d1, pq, c1 = R.multiply(ks[0], p, ks[1], q)
        left = R.multiply(d1, pq, ks[2], r)
        d2, qr, c2 = R.multiply(ks[1], q, ks[2], r)
        right = R.multiply(ks[0], p, d2, qr)
        if left[:2] != right[:2] or left[2] * c1 != right[2] * c2:
            raise IntegrityError("section ring product is not associative")
    return R


# -- monodromy and natural transformations -----------------------------------------------------

def monodromy_invariance_check(F: Fan, D_twist, nu0: SectionClass, nu1: SectionClass,
                               model: str = "cech") -> bool:
    phi = MonodromyFunctor(as_divisor(F, D_twist))
    before = hom_graded_dims(F, nu0, nu1, model)
    after = hom_graded_dims(F, monodromy_apply(phi, nu0), monodromy_apply(phi, nu1), model)
    return before.dims == after.dims


@dataclass(frozen=True)
class SectionAction:
    """Degree-0 map Hom(nu0, nu1)_m -> Hom(nu0, F_D nu1)_m induced by s_D."""

    source: tuple   # degree-0 weights of the source
    target: tuple   # degree-0 weights of the target
    mapping: dict = field(hash=False)

    @property
    def injective(self) -> bool:
        images = list(self.mapping.values())
        return len(set(images)) == len(images) and all(v in set(self.target) for v in images)


def apply_defining_section(F: Fan, s: DefiningSection, nu0: SectionClass,
                           nu1: SectionClass) -> SectionAction:
    D = as_divisor(F, s.divisor)
    if not D.is_effective():
        raise EffectivenessError("defining sections need an effective divisor")
    diff = divisor_from_section(nu1) - divisor_from_section(nu0)
    src = tuple(sorted(lattice_points(divisor_polytope(F, diff))))
    tgt = tuple(sorted(lattice_points(divisor_polytope(F, diff + D))))
    mapping = {m: tuple(a + b for a, b in zip(m, s.weight)) for m in src}
    return SectionAction(src, tgt, mapping)


def section_intertwines(F: Fan, s: DefiningSection, ring: SectionRing, samples: int = 200,
                        seed: int = 0) -> bool:
    """s.(p.q) == (s.p).q on sampled basis elements, with every step in its polytope."""
    rng = random.Random(seed)
    kmax = len(ring.pieces) - 1
    base = ring.divisor
    for _ in range(samples):
        k = rng.randint(0, kmax)
        l = rng.randint(0, kmax - k)
        p, q = rng.choice(ring.pieces[k]), rng.choice(ring.pieces[l])
        pq = tuple(a + b for a, b in zip(p, q))
        lhs = tuple(a + b for a, b in zip(pq, s.weight))
        sp = tuple(a + b for a, b in zip(p, s.weight))
        rhs = tuple(a + b for a, b in zip(sp, q))
        if lhs != rhs:
            return False
        if not divisor_polytope(F, k * base + s.divisor).contains(sp):
            return False
        if not divisor_polytope(F, (k + l) * base + s.divisor).contains(lhs):
            return False
    return True


# -- localization ----------------------------------------------------------------------------------

def _box_weights(box, n: int):
    if box is None:
        raise InputError("localization needs a bounded weight box")
    if isinstance(box, int):
        ranges = [(-box, box)] * n
    else:
        ranges = [tuple(r) for r in box]
        if len(ranges) != n:
            raise InputError("weight box has the wrong dimension")
    return list(itertools.product(*(range(lo, hi + 1) for lo, hi in ranges)))


def subfan_cover(F: Fan, S: frozenset) -> tuple:
    """Maximal cones of the subfan of cones with no ray in S (the zero cone included)."""
    cones = [c for c in F.cones() if not (c & S)] + [frozenset()]
    maximal = [c for c in cones if not any(c < d for d in cones)]
    return tuple(sorted(maximal, key=sorted))


@dataclass(frozen=True)
class LocalizationResult:
    dims: dict = field(hash=False)           # weight -> colimit dimension
    stabilization: dict = field(hash=False)  # weight -> first k where the value is final
    subfan_dims: dict = field(hash=False)    # weight -> Cech H^0 on the open complement

    @property
    def agrees(self) -> bool:
        return self.dims == self.subfan_dims


def localize(F: Fan, D_cut, D_bundle, box) -> LocalizationResult:
    """H^0 of O(D_bundle + k D_cut) as k grows, over a bounded box of weights."""
    require_complete(F)
    cut = as_divisor(F, D_cut)
    bundle = as_divisor(F, D_bundle)
    if not cut.is_effective():
        raise EffectivenessError("the cut divisor must be effective")
    S = cut.support()
    weights = _box_weights(box, F.dim)
    cover = subfan_cover(F, S)
    dims, stab, sub = {}, {}, {}
    for m in weights:
        # past k_star every cut inequality holds, so membership no longer changes
        k_star = 0
        for i in S:
            need = -bundle[i] - sum(a * b for a, b in zip(m, F.rays[i]))
            k_star = max(k_star, ceil(Fraction(need, cut[i])))
        values = [int(divisor_polytope(F, bundle + k * cut).contains(m))
                  for k in range(k_star + 1)]
        final = values[-1]
        first = len(values) - 1
        while first > 0 and values[first - 1] == final:
            first -= 1
        dims[m] = final
        stab[m] = first
        sub[m] = _cech_betti(cover, negative_set(F, bundle, m) - S, F.dim)[0]
    return LocalizationResult(dims, stab, sub)
