"""Face lattices of polytopes and their order complexes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import DimensionError, UnsupportedError
from .polyhedron import Polyhedron, affine_dimension, remove_redundant, vertices


@dataclass(frozen=True)
class Face:
    vertices: frozenset  # indices into FaceLattice.vertex_coords
    facets: frozenset    # indices of the inequalities tight on the face
    dim: int

    def __le__(self, other: "Face") -> bool:
        return self.vertices <= other.vertices


@dataclass(frozen=True)
class FaceLattice:
    vertex_coords: tuple
    faces: tuple          # sorted by (dim, vertices); first is the empty face, last is P
    facet_indices: tuple  # inequality indices that define facets

    @property
    def bottom(self) -> Face:
        return self.faces[0]

    @property
    def top(self) -> Face:
        return self.faces[-1]

    @property
    def dim(self) -> int:
        return self.top.dim

    def proper_faces(self) -> list[Face]:
        return [f for f in self.faces[1:-1]]

    def nonempty_faces(self) -> list[Face]:
        return list(self.faces[1:])

    def of_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.of_dim(d)) for d in range(self.dim))

    def covers(self):
        """Pairs (F, G) with F < G and dim G = dim F + 1."""
        out = []
        for f in self.faces:
            for g in self.faces:
                if g.dim == f.dim + 1 and f.vertices <= g.vertices:
                    out.append((f, g))
        return out


def face_lattice(P: Polyhedron) -> FaceLattice:
    if P.dim > 4:
        raise UnsupportedError("face lattices are implemented for dim <= 4")
    V = vertices(P)
    if affine_dimension(V) != P.dim:
        raise DimensionError("face lattice requires a full-dimensional polytope")
    _, kept = remove_redundant(P)
    on = {}
    for j in kept:
        a, b = P.inequalities[j]
        on[j] = frozenset(i for i, v in enumerate(V)
                          if sum((x * y for x, y in zip(a, v)), Fraction(0)) == b)
    top = frozenset(range(len(V)))
    seen = {top}
    stack = [top]
    while stack:
        s = stack.pop()
        for f in on.values():
            t = s & f
            if t and t not in seen:
                seen.add(t)
                stack.append(t)
    faces = []
    for s in seen:
        d = affine_dimension([V[i] for i in s])
        tight = frozenset(j for j in kept if s <= on[j])
        faces.append(Face(s, tight, d))
    faces.append(Face(frozenset(), frozenset(kept), -1))
    faces.sort(key=lambda f: (f.dim, sorted(f.vertices)))
    return FaceLattice(tuple(V), tuple(faces), tuple(kept))


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex; simplices are sorted tuples of vertex indices."""

    labels: tuple
    simplices: tuple

    def of_dim(self, d: int) -> list[tuple[int, ...]]:
        return [s for s in self.simplices if len(s) == d + 1]

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.of_dim(d)) for d in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))


def order_complex(elements: Sequence, less: Callable) -> SimplicialComplex:
    """Simplicial complex of all nonempty chains of a finite poset.

    `elements` must be listed in a linear extension of the order.
    """
    elements = list(elements)
    n = len(elements)
    above = [[j for j in range(i + 1, n) if less(elements[i], elements[j])] for i in range(n)]
    out = []

    def extend(chain):
        out.append(tuple(chain))
        for j in above[chain[-1]]:
            chain.append(j)
            extend(chain)
            chain.pop()

    for i in range(n):
        extend([i])
    out.sort(key=lambda s: (len(s), s))
    return SimplicialComplex(tuple(elements), tuple(out))


def _strictly_below(f: Face, g: Face) -> bool:
    return f.vertices < g.vertices


def barycentric_boundary(P: Polyhedron) -> SimplicialComplex:
    """Order complex of the proper faces of P: a triangulated sphere."""
    L = face_lattice(P)
    return order_complex(L.proper_faces(), _strictly_below)


def barycentric_cone(L: FaceLattice) -> SimplicialComplex:
    """Order complex of all nonempty faces, the top face included (a triangulated ball)."""
    return order_complex(L.nonempty_faces(), _strictly_below)
