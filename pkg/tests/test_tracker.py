import math
import warnings

import numpy as np
import pytest

from monotoric.errors import ContinuationError, InputError
from monotoric.tracker import (SuperpotentialConfig, _grad, critical_points, expected_count,
                               projective_closed_form, projective_config, track_monodromy)


def nearest_gap(values, reference):
    return max(min(abs(v - r) for r in reference) for v in values)


class TestCriticalPoints:
    def test_p1(self):
        cps = critical_points(projective_config(1), 0.0)
        assert sorted(round(cp.value.real, 12) for cp in cps) == [-2.0, 2.0]
        assert sorted(round(float(cp.z[0].real), 12) for cp in cps) == [-1.0, 1.0]

    def test_p2(self):
        cps = critical_points(projective_config(2), 0.0)
        zeta = np.exp(2j * math.pi / 3)
        assert nearest_gap([cp.value for cp in cps], [3 * zeta ** j for j in range(3)]) < 1e-10
        for cp in cps:
            assert abs(cp.z[0] - cp.z[1]) < 1e-10

    def test_p2_twisted(self):
        cps = critical_points(projective_config(2), math.pi)
        zeta = np.exp(2j * math.pi / 3)
        ref = [3 * np.exp(1j * math.pi / 3) * zeta ** j for j in range(3)]
        assert nearest_gap([cp.value for cp in cps], ref) < 1e-10

    def test_residuals(self):
        cfg = projective_config(3)
        for cp in critical_points(cfg, 0.7):
            assert np.linalg.norm(_grad(cfg.A, cfg.twisted_coeffs(0.7), cp.w)) < 1e-10

    def test_deterministic(self):
        a = critical_points(projective_config(2), 0.3, seed=4)
        b = critical_points(projective_config(2), 0.3, seed=4)
        assert [x.value for x in a] == [x.value for x in b]

    def test_counts(self):
        assert expected_count(projective_config(3).rays) == 4
        assert expected_count([(1, 0), (0, 1), (-1, 0), (0, -1)]) == 4
        assert expected_count([(1, 0), (0, 1), (-1, -1), (1, 1)]) == 4

    def test_incomplete_warns(self):
        with pytest.warns(RuntimeWarning):
            critical_points(projective_config(3), 0.0, starts=1)

    def test_bad_config(self):
        with pytest.raises(InputError):
            SuperpotentialConfig(((1,), (-1,)), (1.0, 0.0), (0, 1))
        with pytest.raises(InputError):
            SuperpotentialConfig(((1,), (-1,)), (1.0,), (0, 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projective_traces(n):
    tr = track_monodromy(projective_config(n))
    assert tr.cycle_type() == [n + 1]
    for w in tr.windings:
        assert abs(w - 1 / (n + 1)) < 1e-6
    for k, th in enumerate(tr.thetas):
        assert nearest_gap(tr.values[:, k], projective_closed_form(n, th)) < 1e-8


def test_twist_on_other_ray():
    tr = track_monodromy(projective_config(2, twist_ray=0))
    assert tr.cycle_type() == [3]


def test_inverse_twist_composes_to_identity():
    fwd = track_monodromy(projective_config(2))
    cfg = projective_config(2)
    back = track_monodromy(SuperpotentialConfig(cfg.rays, cfg.coeffs, (0, 0, -1), cfg.steps))
    assert [fwd.permutation[back.permutation[i]] for i in range(3)] == [0, 1, 2]
    for a, b in zip(fwd.windings, back.windings):
        assert abs(a + b) < 1e-9


def test_untwisted_is_identity():
    cfg = projective_config(2)
    tr = track_monodromy(SuperpotentialConfig(cfg.rays, cfg.coeffs, (0, 0, 0), 32))
    assert tr.permutation == (0, 1, 2)
    assert all(abs(w) < 1e-12 for w in tr.windings)


def test_too_few_steps():
    with pytest.raises(InputError):
        track_monodromy(projective_config(2, steps=10))


def test_p1xp1_twist():
    cfg = SuperpotentialConfig(((1, 0), (0, 1), (-1, 0), (0, -1)), (1, 1, 1, 1), (0, 0, 1, 0), 64)
    tr = track_monodromy(cfg)
    # twisting one ruling swaps the two critical values of that factor
    assert tr.cycle_type() == [2, 2]
