"""Numerical continuation of critical points of W = sum c_a e^{i n_a theta} z^a.

Everything here is floating point and works in log coordinates w = log z,
where the critical equations read
    F_j(w) = sum_a c_a e^{i n_a theta} a_j e^{<a, w>} = 0.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull

from .errors import ContinuationError, DegeneracyError, InputError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SuperpotentialConfig:
    rays: tuple
    coeffs: tuple
    twist: tuple
    steps: int = 256

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        coeffs = tuple(complex(c) for c in self.coeffs)
        twist = tuple(int(x) for x in self.twist)
        if not rays or len(coeffs) != len(rays) or len(twist) != len(rays):
            raise InputError("need one coefficient and one twist value per ray")
        if any(abs(c) == 0 for c in coeffs):
            raise InputError("coefficients must be nonzero")
        if int(self.steps) < 1:
            raise InputError("steps must be positive")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "twist", twist)
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    @property
    def A(self) -> np.ndarray:
        return np.array(self.rays, dtype=float)

    def twisted_coeffs(self, theta: float) -> np.ndarray:
        return np.array(self.coeffs) * np.exp(1j * np.array(self.twist) * theta)


def expected_count(rays: Sequence) -> int:
    """n! Vol(conv A), the generic number of critical points in the torus."""
    A = np.array(rays, dtype=float)
    n = A.shape[1]
    if n == 1:
        return int(round(A.max() - A.min()))
    vol = ConvexHull(A).volume
    return int(round(math.factorial(n) * vol))


def _grad(A, c, w):
    e = c * np.exp(A @ w)
    return A.T @ e


def _jac(A, c, w):
    e = c * np.exp(A @ w)
    return (A.T * e) @ A


def _value(A, c, w):
    return complex(np.sum(c * np.exp(A @ w)))


def _reduce(w):
    """Representative of w modulo 2 pi i Z^n, imaginary parts in (-pi, pi]."""
    im = np.mod(w.imag + math.pi, TWO_PI) - math.pi
    im[np.isclose(im, -math.pi)] = math.pi
    return w.real + 1j * im


def _distance(w1, w2):
    d = w1 - w2
    im = np.mod(d.imag + math.pi, TWO_PI) - math.pi
    return float(np.linalg.norm(d.real + 1j * im))


def _newton(A, c, w, tol=1e-13, maxit=60):
    for _ in range(maxit):
        g = _grad(A, c, w)
        if not np.all(np.isfinite(g)):
            return None
        if np.linalg.norm(g) < tol:
            return w
        try:
            step = np.linalg.solve(_jac(A, c, w), g)
        except np.linalg.LinAlgError:
            return None
        w = w - step
        if not np.all(np.isfinite(w)) or np.abs(w.real).max() > 50:
            return None
    g = _grad(A, c, w)
    return w if np.linalg.norm(g) < 1e-10 else None


@dataclass(frozen=True)
class CriticalPoint:
    w: np.ndarray = field(compare=False)
    value: complex

    @property
    def z(self) -> np.ndarray:
        return np.exp(self.w)


def critical_points(cfg: SuperpotentialConfig, theta: float = 0.0, seed: int = 0,
                    starts: int | None = None) -> list[CriticalPoint]:
    A = cfg.A
    c = cfg.twisted_coeffs(theta)
    n = cfg.dim
    want = expected_count(cfg.rays)
    rng = np.random.default_rng(seed)
    starts = starts or max(200, 60 * want)
    found: list[np.ndarray] = []
    for _ in range(starts):
        w0 = rng.uniform(-1.5, 1.5, n) + 1j * rng.uniform(-math.pi, math.pi, n)
        w = _newton(A, c, w0)
        if w is None:
            continue
        w = _reduce(w)
        if all(_distance(w, f) > 1e-6 for f in found):
            found.append(w)
            if len(found) == want:
                break
    for w in found:
        if np.linalg.cond(_jac(A, c, w)) > 1e12:
            raise DegeneracyError(f"singular Hessian at critical point {np.exp(w)}")
    if len(found) < want:
        warnings.warn(f"found {len(found)} of {want} critical points", RuntimeWarning)
    found.sort(key=lambda w: (round(float(np.angle(_value(A, c, w))), 9),
                              round(abs(_value(A, c, w)), 9)))
    return [CriticalPoint(w, _value(A, c, w)) for w in found]


@dataclass(frozen=True)
class MonodromyTrace:
    thetas: np.ndarray = field(compare=False)
    points: np.ndarray = field(compare=False)   # (paths, steps + 1, n) log coordinates
    values: np.ndarray = field(compare=False)   # (paths, steps + 1)
    permutation: tuple = ()
    windings: tuple = ()

    def cycle_type(self) -> list[int]:
        seen, out = set(), []
        for i in range(len(self.permutation)):
            if i in seen:
                continue
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = self.permutation[j]
                length += 1
            out.append(length)
        return sorted(out, reverse=True)


def _dtheta(A, c, tw, w):
    """Tangent dw/dtheta of the critical point as theta moves."""
    e = c * np.exp(A @ w)
    dF = A.T @ (1j * tw * e)
    return -np.linalg.solve(_jac(A, c, w), dF)


def _advance(cfg, A, tw, w, t0, t1, max_halvings=30):
    """Move a critical point from theta=t0 to theta=t1 with adaptive halving."""
    t = t0
    h = t1 - t0
    halvings = 0
    while t < t1 - 1e-15:
        h = min(h, t1 - t)
        c0 = cfg.twisted_coeffs(t)
        k1 = _dtheta(A, c0, tw, w)
        mid = cfg.twisted_coeffs(t + h / 2)
        k2 = _dtheta(A, mid, tw, w + h / 2 * k1)
        k3 = _dtheta(A, mid, tw, w + h / 2 * k2)
        k4 = _dtheta(A, cfg.twisted_coeffs(t + h), tw, w + h * k3)
        pred = w + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        corr = _newton(A, cfg.twisted_coeffs(t + h), pred, maxit=8)
        if corr is None or np.linalg.norm(corr - pred) > 1e-4:
            h /= 2
            halvings += 1
            if halvings > max_halvings:
                raise ContinuationError(f"step refinement failed near theta={t:.6f}")
            continue
        w, t = corr, t + h
    return w


def track_monodromy(cfg: SuperpotentialConfig, seed: int = 0) -> MonodromyTrace:
    A = cfg.A
    tw = np.array(cfg.twist, dtype=float)
    start = critical_points(cfg, 0.0, seed=seed)
    want = expected_count(cfg.rays)
    if len(start) < want:
        raise ContinuationError(f"only {len(start)} of {want} critical points at theta=0")
    if cfg.steps < 8 * len(start):
        raise InputError(f"need at least {8 * len(start)} steps for {len(start)} critical points")
    thetas = np.linspace(0.0, TWO_PI, cfg.steps + 1)
    P = np.zeros((len(start), cfg.steps + 1, cfg.dim), dtype=complex)
    V = np.zeros((len(start), cfg.steps + 1), dtype=complex)
    for i, cp in enumerate(start):
        w = cp.w.copy()
        P[i, 0], V[i, 0] = w, cp.value
        for k in range(cfg.steps):
            w = _advance(cfg, A, tw, w, thetas[k], thetas[k + 1])
            c = cfg.twisted_coeffs(thetas[k + 1])
            if np.linalg.norm(_grad(A, c, w)) > 1e-9:
                raise ContinuationError("residual too large along the path")
            P[i, k + 1], V[i, k + 1] = w, _value(A, c, w)
    for k in range(cfg.steps + 1):
        for i in range(len(start)):
            for j in range(i):
                if _distance(P[i, k], P[j, k]) < 1e-6:
                    raise ContinuationError(
                        f"paths {j} and {i} collide at theta={thetas[k]:.6f}; refine steps")
    perm = []
    for i in range(len(start)):
        d = [_distance(P[i, -1], P[j, 0]) for j in range(len(start))]
        j = int(np.argmin(d))
        if d[j] > 1e-6:
            raise ContinuationError(f"path {i} does not return to a critical point")
        perm.append(j)
    if sorted(perm) != list(range(len(start))):
        raise ContinuationError("endpoint matching is not a bijection")
    windings = tuple(float(np.sum(np.angle(V[i, 1:] * np.conj(V[i, :-1]))) / TWO_PI)
                     for i in range(len(start)))
    return MonodromyTrace(thetas, P, V, tuple(perm), windings)


def projective_config(n: int, steps: int = 256, twist_ray: int | None = None) -> SuperpotentialConfig:
    """z_1 + ... + z_n + e^{i theta}/(z_1...z_n), the twist sitting on the last ray."""
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    twist = [0] * (n + 1)
    twist[n if twist_ray is None else twist_ray] = 1
    return SuperpotentialConfig(tuple(rays), (1.0,) * (n + 1), tuple(twist), steps)


def projective_closed_form(n: int, theta: float) -> np.ndarray:
    """The critical values (n+1) e^{i theta/(n+1)} zeta^j."""
    zeta = np.exp(2j * math.pi * np.arange(n + 1) / (n + 1))
    return (n + 1) * np.exp(1j * theta / (n + 1)) * zeta
