import itertools
import random
from math import comb

import pytest

from corpus import BL1P2, CORPUS, F2, F3, P1, P1P1, P2, P3, SIGMA3_PRIME
from monotoric.cohomology import (apply_defining_section, cech_cohomology, hom_graded_dims,
                                  line_bundle_cohomology, localize, model_cohomology,
                                  monodromy_invariance_check, points_cohomology,
                                  polytope_cohomology, positive_boundary, reference_polytope,
                                  section_intertwines, section_ring, subfan_cover,
                                  weight_complex, weight_support)
from monotoric.errors import (EffectivenessError, InputError, PreconditionError,
                              UnsupportedError)
from monotoric.fan import (ToricDivisor, character_divisor, divisor_polytope, is_ample, is_nef,
                           require_complete)
from monotoric.lattice import lattice_points
from monotoric.sections import SectionClass, defining_section, section_from_divisor, zero_section


def totals(F, D, model="cech"):
    return line_bundle_cohomology(F, D, model).totals(F.dim)


# -- independent oracles -------------------------------------------------------------------

def projective_space_oracle(n, d):
    """h^p(P^n, O(d)) from the classical formula."""
    out = [0] * (n + 1)
    if d >= 0:
        out[0] = comb(n + d, n)
    if d <= -n - 1:
        out[n] = comb(-d - 1, n)
    return tuple(out)


def p1_weight_oracle(n_plus, n_minus, m):
    """Weight-m cohomology of O(n_plus D_+ + n_minus D_-) on P^1."""
    h0 = int(-n_plus <= m <= n_minus)
    h1 = int(n_minus < m < -n_plus)
    return (h0, h1)


def intersection_form(F):
    """Intersection numbers of the boundary curves of a smooth complete toric surface."""
    nbrs = {i: [] for i in range(F.n_rays)}
    for a, b in F.max_cones:
        nbrs[a].append(b)
        nbrs[b].append(a)
    M = [[0] * F.n_rays for _ in range(F.n_rays)]
    for i, (p, q) in nbrs.items():
        s = tuple(x + y for x, y in zip(F.rays[p], F.rays[q]))
        r = F.rays[i]
        a = s[0] // r[0] if r[0] else s[1] // r[1]
        M[i][i] = -a
        M[i][p] = M[i][q] = 1
    return M


def riemann_roch_surface(F, D):
    M = intersection_form(F)
    K = [-1] * F.n_rays

    def dot(x, y):
        return sum(x[i] * M[i][j] * y[j] for i in range(F.n_rays) for j in range(F.n_rays))

    return 1 + (dot(D, D) - dot(D, K)) // 2


def euler(t):
    return sum((-1) ** p * v for p, v in enumerate(t))


# -- worked examples -------------------------------------------------------------------------

class TestExamples:
    def test_p1_positive_boundary(self):
        assert positive_boundary(P1, [2, 0], [-3]).facets == {0}
        assert polytope_cohomology(P1, [2, 0], [-3]) == (0, 0)
        assert positive_boundary(P1, [-2, 0], [1]).facets == {0, 1}
        assert polytope_cohomology(P1, [-2, 0], [1]) == (0, 1)

    def test_boundary_empty_inside_polytope(self):
        for m in lattice_points(divisor_polytope(F3, [1, 0, 4, 3])):
            assert positive_boundary(F3, [1, 0, 4, 3], m).facets == frozenset()

    def test_polytope_model(self):
        assert polytope_cohomology(P2, [-1, -1, -1], (0, 0)) == (0, 0, 1)
        assert polytope_cohomology(P2, [1, 0, 0], (-1, 0)) == (1, 0, 0)
        assert polytope_cohomology(P2, [0, 0, 0], (5, 5)) == (0, 0, 0)

    def test_cech_model(self):
        assert cech_cohomology(P1, [-2, 0], [1]) == (0, 1)
        assert totals(P2, [1, 0, 0]) == (3, 0, 0)
        assert totals(P3, [0, 0, 0, 0]) == (1, 0, 0, 0)
        g = line_bundle_cohomology(P3, [0, 0, 0, 0])
        assert g.dims == {(0, (0, 0, 0)): 1}

    def test_reference_polytope_for_p1(self):
        ref = reference_polytope(P1)
        assert ref.divisor == ToricDivisor((1, 1))

    def test_weight_support_examples(self):
        ws = weight_support(P2, [3, 0, 0])
        assert set(lattice_points(divisor_polytope(P2, [3, 0, 0]))) <= set(ws.candidates)
        assert len(ws.shell) > 0
        ws0 = weight_support(P2, [0, 0, 0])
        assert sorted(ws0.candidates) == sorted(itertools.product((-1, 0, 1), repeat=2))
        assert (0, 0) not in ws0.shell
        assert (0, 0) in weight_support(P2, [-1, -1, -1]).candidates

    def test_hom_examples(self):
        z = zero_section(P2)
        g = hom_graded_dims(P2, z, section_from_divisor(P2, [3, 0, 0]), "all")
        assert g.totals(2) == (10, 0, 0)
        g = hom_graded_dims(P2, z, section_from_divisor(P2, [-3, 0, 0]), "all")
        assert g.totals(2) == (0, 0, 1)
        g = hom_graded_dims(P1P1, zero_section(P1P1),
                            section_from_divisor(P1P1, [1, 0, 0, -2]), "all")
        assert g.totals(2) == (0, 2, 0)

    def test_weight_complex_has_square_zero(self):
        for model in ("cech", "polytope"):
            W = weight_complex(P3, [-4, 0, 0, 0], (3, -1, -1), model)
            W.complex.check_square_zero()
            assert W.betti == (0, 0, 0, 1)

    def test_unknown_model(self):
        with pytest.raises(InputError):
            model_cohomology(P2, [0, 0, 0], (0, 0), "morse")


# -- oracle comparisons ------------------------------------------------------------------------

@pytest.mark.parametrize("n,fan", [(1, P1), (2, P2), (3, P3)])
@pytest.mark.parametrize("d", range(-6, 5))
def test_projective_space_totals(n, fan, d):
    D = [d] + [0] * n
    assert line_bundle_cohomology(fan, D, "all").totals(n) == projective_space_oracle(n, d)


@pytest.mark.parametrize("a", range(-4, 4))
@pytest.mark.parametrize("b", range(-4, 4))
def test_p1xp1_kunneth_by_weight(a, b):
    g = line_bundle_cohomology(P1P1, [a, b, 0, 0], "all")
    box = range(-7, 8)
    for m1, m2 in itertools.product(box, box):
        x, y = p1_weight_oracle(a, 0, m1), p1_weight_oracle(b, 0, m2)
        expect = (x[0] * y[0], x[0] * y[1] + x[1] * y[0], x[1] * y[1])
        got = tuple(g.dims.get((p, (m1, m2)), 0) for p in range(3))
        assert got == expect, (m1, m2)


@pytest.mark.parametrize("a", range(-4, 5))
@pytest.mark.parametrize("b", range(-4, 5))
def test_p1_by_weight(a, b):
    g = line_bundle_cohomology(P1, [a, b], "all")
    for m in range(-10, 11):
        assert tuple(g.dims.get((p, (m,)), 0) for p in range(2)) == p1_weight_oracle(a, b, m)


@pytest.mark.parametrize("name", ["P2", "P1xP1", "Bl1P2", "F2", "F3"])
def test_riemann_roch(name):
    F = CORPUS[name]
    rng = random.Random(name)
    for _ in range(15):
        D = [rng.randint(-4, 4) for _ in F.rays]
        assert euler(totals(F, D)) == riemann_roch_surface(F, D)


def test_riemann_roch_p3():
    rng = random.Random(3)
    for _ in range(10):
        D = [rng.randint(-4, 4) for _ in range(4)]
        d = sum(D)
        assert euler(totals(P3, D)) == (d + 3) * (d + 2) * (d + 1) // 6


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_points_model_where_defined(name):
    F = CORPUS[name]
    rng = random.Random(name)
    seen = 0
    for _ in range(60):
        D = ToricDivisor(tuple(rng.randint(-3, 3) for _ in F.rays))
        if not (is_nef(F, D) or is_ample(F, -D)):
            with pytest.raises(UnsupportedError):
                points_cohomology(F, D, (0,) * F.dim)
            continue
        seen += 1
        line_bundle_cohomology(F, D, "all")  # raises on any disagreement
    assert seen > 0


@pytest.mark.parametrize("name", ["P1", "P2", "Bl1P2", "F3"])
def test_weight_support_covers_all_cohomology(name):
    F = CORPUS[name]
    rng = random.Random(name)
    R = 12 if F.dim == 1 else 9
    for _ in range(6):
        D = [rng.randint(-4, 4) for _ in F.rays]
        cands = set(weight_support(F, D).candidates)
        for m in itertools.product(range(-R, R + 1), repeat=F.dim):
            if any(cech_cohomology(F, D, m)):
                assert m in cands


@pytest.mark.parametrize("name", ["P2", "F3", "P3"])
def test_principal_twist_shifts_weights(name):
    F = CORPUS[name]
    rng = random.Random(name)
    for _ in range(5):
        D = ToricDivisor(tuple(rng.randint(-3, 3) for _ in F.rays))
        u = tuple(rng.randint(-2, 2) for _ in range(F.dim))
        g = line_bundle_cohomology(F, D)
        h = line_bundle_cohomology(F, D + character_divisor(F, u))
        shifted = {(p, tuple(a - b for a, b in zip(m, u))): v for (p, m), v in g.dims.items()}
        assert h.dims == shifted


def test_serre_duality_spot_check():
    rng = random.Random(5)
    for F in (P2, F3, P3):
        K = ToricDivisor((-1,) * F.n_rays)
        for _ in range(5):
            D = ToricDivisor(tuple(rng.randint(-4, 4) for _ in F.rays))
            g, h = line_bundle_cohomology(F, D), line_bundle_cohomology(F, K - D)
            dual = {(F.dim - p, tuple(-x for x in m)): v for (p, m), v in h.dims.items()}
            assert g.dims == dual


def test_workers_give_same_answer():
    D = [2, -3, 1, 0]
    assert line_bundle_cohomology(F3, D, workers=4).dims == line_bundle_cohomology(F3, D).dims


# -- stacky fans ----------------------------------------------------------------------------------

class TestWeightedProjective:
    def test_polytope_model_gated(self):
        with pytest.raises(UnsupportedError):
            polytope_cohomology(SIGMA3_PRIME, [1, 0, 0], (0, 0))

    @pytest.mark.parametrize("k", range(0, 8))
    def test_section_counts(self, k):
        expect = sum(1 for a, b, c in itertools.product(range(k + 1), repeat=3)
                     if a + b + 3 * c == k)
        D = [k, 0, 0]
        g = line_bundle_cohomology(SIGMA3_PRIME, D, "cech")
        assert g.totals(2) == (expect, 0, 0)
        gp = line_bundle_cohomology(SIGMA3_PRIME, D, "polytope", experimental=True)
        assert gp.dims == g.dims


# -- ring, monodromy, natural transformations ----------------------------------------------------

class TestSectionRing:
    def test_p1(self):
        R = section_ring(P1, [1, 0], 2)
        assert R.dims == (1, 2, 3)

    def test_p2(self):
        assert section_ring(P2, [1, 0, 0], 3).dims == (1, 3, 6, 10)

    def test_unit(self):
        R = section_ring(P2, [1, 0, 0], 3)
        for q in R.pieces[2]:
            assert R.multiply(0, R.pieces[0][0], 2, q) == (2, q, 1)

    def test_not_ample(self):
        with pytest.raises(PreconditionError):
            section_ring(P2, [0, 0, 0], 3)

    def test_kmax(self):
        with pytest.raises(InputError):
            section_ring(P2, [1, 0, 0], 1)

    def test_bad_factor(self):
        R = section_ring(P1, [1, 0], 2)
        with pytest.raises(InputError):
            R.multiply(1, (5,), 1, (0,))


class TestMonodromyInvariance:
    def test_p2_example(self):
        assert monodromy_invariance_check(P2, [0, 1, 0], zero_section(P2),
                                          section_from_divisor(P2, [1, 0, 0]))

    def test_p1_scan(self):
        nus = list(itertools.product(range(-3, 4), repeat=2))
        for a in nus[::3]:
            for b in nus[::2]:
                assert monodromy_invariance_check(P1, [1, 0], SectionClass(P1, a),
                                                  SectionClass(P1, b))

    def test_zero_twist(self):
        assert monodromy_invariance_check(F3, [0, 0, 0, 0], zero_section(F3),
                                          SectionClass(F3, (1, -2, 0, 1)))


class TestDefiningSectionAction:
    def test_p1(self):
        act = apply_defining_section(P1, defining_section(P1, [1, 0]), zero_section(P1),
                                     zero_section(P1))
        assert act.mapping == {(0,): (0,)}
        assert act.target == ((-1,), (0,))

    def test_p2_anticanonical(self):
        act = apply_defining_section(P2, defining_section(P2, [1, 1, 1]), zero_section(P2),
                                     section_from_divisor(P2, [1, 0, 0]))
        assert len(act.source) == 3 and act.injective
        assert set(act.mapping.values()) <= set(act.target)

    def test_zero_divisor_is_identity(self):
        act = apply_defining_section(P2, defining_section(P2, [0, 0, 0]), zero_section(P2),
                                     section_from_divisor(P2, [2, 0, 0]))
        assert act.source == act.target
        assert all(k == v for k, v in act.mapping.items())

    def test_intertwines(self):
        R = section_ring(P2, [1, 0, 0], 3)
        for D in ([1, 1, 1], [1, 0, 0], [0, 0, 2]):
            assert section_intertwines(P2, defining_section(P2, D), R)

    def test_not_effective(self):
        from monotoric.sections import DefiningSection
        with pytest.raises(EffectivenessError):
            apply_defining_section(P2, DefiningSection(ToricDivisor((-1, 0, 0)), (0, 0)),
                                   zero_section(P2), zero_section(P2))


class TestLocalize:
    def test_affine_line(self):
        res = localize(P1, [1, 0], [0, 0], 5)
        assert all(res.dims[(m,)] == int(m <= 0) for m in range(-5, 6))
        assert all(res.stabilization[(m,)] == max(0, -m) for m in range(-5, 6))
        assert res.agrees

    def test_torus(self):
        res = localize(P2, [1, 1, 1], [0, 0, 0], 3)
        assert set(res.dims.values()) == {1} and res.agrees

    def test_no_cut(self):
        res = localize(P2, [0, 0, 0], [2, 0, 0], 3)
        h0 = set(lattice_points(divisor_polytope(P2, [2, 0, 0])))
        assert {m for m, v in res.dims.items() if v} == h0
        assert res.agrees

    def test_single_ray_cut(self):
        res = localize(P2, [1, 0, 0], [0, 0, 0], 3)
        assert res.agrees
        # C^2 with coordinates given by the remaining two rays
        assert all(v == int(m[1] >= 0 and -m[0] - m[1] >= 0) for m, v in res.dims.items())

    def test_errors(self):
        with pytest.raises(EffectivenessError):
            localize(P2, [-1, 0, 0], [0, 0, 0], 2)
        with pytest.raises(InputError):
            localize(P2, [1, 0, 0], [0, 0, 0], None)

    def test_subfan(self):
        assert subfan_cover(P2, frozenset({0, 1, 2})) == (frozenset(),)
        assert subfan_cover(P2, frozenset({0})) == (frozenset({1, 2}),)
