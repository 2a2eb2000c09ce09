"""Fans used across the test-suite."""
import itertools
import random

from monotoric.division import fan_from_rays_2d
from monotoric.fan import Fan

P1 = Fan(((1,), (-1,)), ((0,), (1,)))
P2 = Fan(((1, 0), (0, 1), (-1, -1)), ((0, 1), (0, 2), (1, 2)))
P1P1 = Fan(((1, 0), (0, 1), (-1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))
BL1P2 = Fan(((1, 0), (0, 1), (1, 1), (-1, -1)), ((0, 2), (1, 2), (1, 3), (0, 3)))
F2 = Fan(((1, 2), (0, 1), (-1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))
F3 = Fan(((1, 3), (0, 1), (-1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))
P3 = Fan(((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)),
         tuple(itertools.combinations(range(4), 3)))
SIGMA3_PRIME = Fan(((1, 3), (-1, 0), (0, -1)), ((0, 1), (0, 2), (1, 2)))
NONSTANDARD_P2 = Fan(((1, 0), (2, 1), (-3, -1)), ((0, 1), (1, 2), (0, 2)))

CORPUS = {"P1": P1, "P2": P2, "P1xP1": P1P1, "Bl1P2": BL1P2, "F2": F2, "F3": F3, "P3": P3}


def hirzebruch(m):
    return Fan(((1, m), (0, 1), (-1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))


def random_smooth_fan_2d(rng: random.Random, max_height=6, max_blowups=6):
    """Repeated stellar subdivision of the fan of P^2, rays kept of height <= max_height."""
    rays = [(1, 0), (0, 1), (-1, -1)]
    F = fan_from_rays_2d(rays)
    for _ in range(rng.randint(1, max_blowups)):
        cones = list(F.max_cones)
        rng.shuffle(cones)
        for c in cones:
            a, b = (F.rays[i] for i in c)
            new = (a[0] + b[0], a[1] + b[1])
            if max(abs(new[0]), abs(new[1])) <= max_height:
                rays = list(F.rays) + [new]
                F = fan_from_rays_2d(rays)
                break
    return F
