"""
L1 approximation on the ball ``B(0, r)``.

For a Taylor model ``T_k`` about the origin,

    int_B |f - T_k f| <= r^k / k! * int_0^r S(d_nu^(k+1) f, s) ds

when the ball has volume one, where ``S(g, s)`` is the average of ``|g|`` over
the sphere of radius ``s``.  Hence the error is at most ``r^k/k!`` on ``F3``
and ``r^(k+1)/k!`` on ``F4``; growth ``c`` multiplies both by ``c^(k+1)``.

Monte Carlo estimates here are deterministic given a seed: samples are drawn
in fixed-size chunks, chunk ``i`` from the counter-based substream
``SeedSequence(seed, spawn_key=(i,))``, and chunk results are combined in
chunk order.  The thread count therefore never changes a result.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import lgamma, log
from typing import NamedTuple

import numpy as np

from .errors import MissingOracleError
from .funcspace import SmoothFunction, log_ball_volume

MC_CHUNK = 8192
GL_NODES = 32
ORIGIN_CUTOFF = 1e-12


def substream(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def sphere_points(rng: np.random.Generator, m: int, d: int) -> np.ndarray:
    """``m`` points uniform on the unit sphere (normalised Gaussians)."""
    g = rng.standard_normal((m, d))
    norms = np.linalg.norm(g, axis=1)
    while np.any(norms == 0):  # probability zero, kept for safety
        bad = norms == 0
        g[bad] = rng.standard_normal((bad.sum(), d))
        norms = np.linalg.norm(g, axis=1)
    return g / norms[:, None]


def ball_points(rng: np.random.Generator, m: int, d: int, r: float) -> np.ndarray:
    """``m`` points uniform in ``B(0, r)``: Gaussian direction times ``r U^(1/d)``.

    Radii below ``1e-12 r`` are redrawn since radial derivatives are undefined at 0.
    """
    u = sphere_points(rng, m, d)
    radii = r * rng.random(m) ** (1.0 / d)
    small = radii < ORIGIN_CUTOFF * r
    while np.any(small):
        radii[small] = r * rng.random(small.sum()) ** (1.0 / d)
        small = radii < ORIGIN_CUTOFF * r
    return u * radii[:, None]


def chunked_samples(m: int, seed: int, draw, threads: int = 1) -> np.ndarray:
    """Concatenate ``draw(rng, size)`` over fixed chunks, in chunk order."""
    sizes = [min(MC_CHUNK, m - s) for s in range(0, m, MC_CHUNK)]

    def run(i):
        return draw(substream(seed, i), sizes[i])

    if threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]
    return np.concatenate(parts)


def _mean_stderr(values: np.ndarray):
    m = len(values)
    mean = math.fsum(values) / m
    std = math.sqrt(math.fsum((values - mean) ** 2) / (m - 1))
    return mean, std / math.sqrt(m)


@dataclass(frozen=True)
class SphereAverageEstimate:
    """Monte Carlo estimate of the sphere average ``S(d_nu^k f, r)``."""

    k: int
    r: float
    estimate: float
    stderr: float
    m: int
    seed: int

    def to_dict(self):
        return {
            "quantity": f"S(d_nu^{self.k} f, {self.r!r})",
            "estimate": self.estimate,
            "stderr": self.stderr,
            "m": self.m,
            "seed": self.seed,
        }


class L1Estimate(NamedTuple):
    estimate: float
    stderr: float


@dataclass(frozen=True)
class L1Certificate:
    """Guaranteed L1 error ``l1_bound(tag, r, k, c)`` for class members."""

    tag: str
    c: float
    k: int
    r: float

    @property
    def bound(self) -> float:
        return l1_bound(self.tag, self.r, self.k, self.c)


def sphere_average(f: SmoothFunction, k: int, r: float, m: int, seed: int, threads: int = 1) -> SphereAverageEstimate:
    """Mean of ``|d_nu^k f(r u)|`` over ``m`` uniform ``u`` on the unit sphere."""
    if not f.has_ray:
        raise MissingOracleError(f"{f.name} has no directional-derivative oracle")
    if not r > 0:
        raise ValueError("radius must be positive")
    if m < 2:
        raise ValueError("need at least two samples")

    def draw(rng, size):
        return np.abs(f.directional(k, r * sphere_points(rng, size, f.d)))

    values = chunked_samples(m, seed, draw, threads)
    mean, se = _mean_stderr(values)
    return SphereAverageEstimate(k, r, mean, se, m, seed)


def _node_seed(seed, i):
    return int(np.random.SeedSequence(seed, spawn_key=(10_000 + i,)).generate_state(1)[0])


def radial_integral(f, k, r, m, seed, nodes=GL_NODES, threads=1) -> L1Estimate:
    """``int_0^r S(d_nu^k f, s) ds`` by Gauss-Legendre in ``s`` with sphere averages at the nodes."""
    t, w = np.polynomial.legendre.leggauss(nodes)
    radii = 0.5 * r * (t + 1)
    weights = 0.5 * r * w
    est = [sphere_average(f, k, s, m, _node_seed(seed, i), threads) for i, s in enumerate(radii)]
    value = math.fsum(wi * e.estimate for wi, e in zip(weights, est))
    se = math.sqrt(math.fsum((wi * e.stderr) ** 2 for wi, e in zip(weights, est)))
    return L1Estimate(value, se)


def sphere_average_sup(f, k, r, m, seed, nodes=GL_NODES, threads=1) -> SphereAverageEstimate:
    """Largest sphere average over the Gauss-Legendre radii in ``(0, r)``."""
    t, _ = np.polynomial.legendre.leggauss(nodes)
    radii = 0.5 * r * (t + 1)
    est = [sphere_average(f, k, s, m, _node_seed(seed, i), threads) for i, s in enumerate(radii)]
    return max(est, key=lambda e: e.estimate)


def l1_bound(tag: str, r: float, k: int, c: float = 1.0) -> float:
    """``c^(k+1) r^k / k!`` for ``F3`` and ``c^(k+1) r^(k+1) / k!`` for ``F4``."""
    if k < 0 or not r > 0:
        raise ValueError("need k >= 0 and r > 0")
    if c == 0:
        return 0.0
    power = {"F3": k, "F4": k + 1}.get(tag)
    if power is None:
        raise ValueError(f"L1 bounds are defined for F3 and F4, not {tag!r}")
    return math.exp(min((k + 1) * log(c) + power * log(r) - lgamma(k + 1), 700.0))


def select_order_l1(eps: float, r: float, tag: str, c: float = 1.0) -> int:
    """Smallest ``k`` with ``l1_bound(tag, r, k, c) <= eps``."""
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    k = 0
    while l1_bound(tag, r, k, c) > eps:
        k += 1
    return k


def mc_l1_error(f: SmoothFunction, model, r: float = None, m: int = 100_000, seed: int = 0, threads: int = 1) -> L1Estimate:
    """Monte Carlo estimate of ``int_{B(0,r)} |f - T|`` with its standard error."""
    if m < 2:
        raise ValueError("need at least two samples")
    r = f.domain.radius if r is None else r
    volume = math.exp(log_ball_volume(f.d, r))

    def draw(rng, size):
        x = ball_points(rng, size, f.d, r)
        return np.abs(f(x) - model(x))

    values = chunked_samples(m, seed, draw, threads)
    mean, se = _mean_stderr(values)
    return L1Estimate(volume * mean, volume * se)
