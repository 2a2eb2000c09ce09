"""Cochain complexes over Q with sparse differentials."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..errors import IntegrityError, InputError
from .faces import SimplicialComplex
from .linalg import sparse_rank


@dataclass(frozen=True)
class CochainComplex:
    """terms[k] lists basis labels of C^k; differentials[k] maps C^k -> C^{k+1}.

    A differential is a dict {(row, col): value} with row indexing C^{k+1}.
    """

    terms: dict
    differentials: dict = field(default_factory=dict)

    def __post_init__(self):
        degs = sorted(self.terms)
        if degs and degs != list(range(degs[0], degs[-1] + 1)):
            raise InputError("cochain complex degrees must be contiguous")
        for k, d in self.differentials.items():
            if k not in self.terms or k + 1 not in self.terms:
                if d:
                    raise InputError(f"differential d_{k} between missing terms")
                continue
            for (r, c) in d:
                if not (0 <= r < len(self.terms[k + 1]) and 0 <= c < len(self.terms[k])):
                    raise InputError(f"entry ({r},{c}) of d_{k} out of range")

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def dimension(self, k: int) -> int:
        return len(self.terms.get(k, ()))

    def rank(self, k: int) -> int:
        d = self.differentials.get(k)
        if not d:
            return 0
        rows: dict[int, dict] = {}
        for (r, c), v in d.items():
            if v != 0:
                rows.setdefault(r, {})[c] = Fraction(v)
        return sparse_rank(list(rows.values()))

    def check_square_zero(self) -> None:
        for k in self.degrees():
            d0 = self.differentials.get(k)
            d1 = self.differentials.get(k + 1)
            if not d0 or not d1:
                continue
            by_col: dict[int, list] = {}
            for (r, c), v in d1.items():
                by_col.setdefault(c, []).append((r, v))
            prod: dict = {}
            for (r, c), v in d0.items():
                for r2, w in by_col.get(r, ()):
                    prod[(r2, c)] = prod.get((r2, c), 0) + v * w
            if any(v != 0 for v in prod.values()):
                raise IntegrityError(f"d_{k + 1} o d_{k} != 0")


def complex_cohomology(C: CochainComplex) -> dict[int, int]:
    C.check_square_zero()
    ranks = {k: C.rank(k) for k in C.degrees()}
    return {k: C.dimension(k) - ranks[k] - ranks.get(k - 1, 0) for k in C.degrees()}


def simplicial_cochains(K: SimplicialComplex,
                        excluded: Callable[[tuple], bool] | None = None) -> CochainComplex:
    """Cochains of K relative to the subcomplex of simplices where `excluded` holds.

    `excluded` must describe a subcomplex (closed under taking faces).
    """
    top = max(K.dim, 0)
    basis = {k: [] for k in range(top + 1)}
    for s in K.simplices:
        if excluded is None or not excluded(s):
            basis[len(s) - 1].append(s)
    index = {k: {s: i for i, s in enumerate(b)} for k, b in basis.items()}
    diffs = {}
    for k in range(top):
        d = {}
        for r, t in enumerate(basis[k + 1]):
            for i in range(len(t)):
                face = t[:i] + t[i + 1:]
                c = index[k].get(face)
                if c is not None:
                    d[(r, c)] = Fraction((-1) ** i)
        diffs[k] = d
    return CochainComplex({k: tuple(b) for k, b in basis.items()}, diffs)
