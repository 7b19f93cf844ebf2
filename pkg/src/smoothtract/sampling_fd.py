"""
Sample grids and Taylor coefficients from function values.

The grid of order ``k`` with step ``h`` is ``{h*alpha : |alpha| <= k}``; it has
``C(d+k, k)`` points and is exactly what the mixed forward differences

    Delta_h^alpha f(0) = sum_{beta <= alpha} (-1)^{|alpha|-|beta|} prod_i C(alpha_i, beta_i) f(h beta)

need for every ``|alpha| <= k``.  The coefficient estimate is
``Delta_h^alpha f(0) / (h^|alpha| alpha!)``.

Step-size lemma
---------------
A mixed forward difference is an average of ``D^alpha f`` over the box
``prod_i [0, alpha_i h]`` (B-spline Peano kernel), so
``|Delta_h^alpha f(0)/h^|alpha| - D^alpha f(0)| <= h sum_i alpha_i ||D^{alpha+e_i} f||``.
With ``beta = alpha + e_i`` one has ``alpha_i/alpha! = alpha_i (alpha_i+1)/beta!``;
summing against ``|x^alpha| <= 2^-|alpha|`` on the cube and the ``F1(c)`` bound gives

    sup |T_k^fd f - T_k f| <= h sum_{m<=k} m (m+1) 2^-m c^(m+1) <= 8 h max(c, 1)^(k+2),

since ``sum_m m (m+1) 2^-m = 8``.  On a ball of radius ``r`` the same argument
runs in the coordinates ``y = x / (2r)`` of the enclosing cube, with the
growth ``2 r g`` where ``g`` bounds partial derivatives on ``[-r, r]^d``.

Rounding
--------
Each difference has coefficients of absolute sum ``2^|alpha|``.  With unit
roundoff ``u`` and ``|f| <= S`` the rounding part of the sup-norm perturbation
is at most ``(k+2) u S sum_{m<=k} (2 rho d / h)^m / m!`` where ``rho`` bounds the
coordinates.  When this exceeds the budget in double precision, samples are
taken with an ``mpmath`` evaluator at a higher working precision.
"""

import csv
import io
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, lgamma, log, log2

import mpmath
import numpy as np

from .errors import CertificateError, DomainError, InfeasibleStepError, MissingOracleError, OrderExceededError
from .funcspace import ClassCertificate, Domain, SmoothFunction
from .multiindex import count, enumerate_indices, exponent_array, factorial_mi, rank_table
from .taylor import TaylorModel, check_size

DOUBLE_BITS = 53
# bits kept after the cancellation of an order-k difference (53 - 40)
GUARD_MARGIN_BITS = 13
WARN_ORDER = 20
LEMMA_CONSTANT = 8.0
_EVAL_CHUNK = 4096


@dataclass
class SampleGrid:
    """Values of ``f`` on ``{h*alpha : |alpha| <= k}`` in graded lexicographic order."""

    d: int
    k: int
    h: float
    exponents: np.ndarray
    points: np.ndarray
    values: np.ndarray
    evaluations: int
    precision: int = DOUBLE_BITS

    @property
    def scale(self) -> float:
        return float(max((abs(float(v)) for v in self.values), default=0.0))

    def value(self, beta) -> float:
        return self.values[rank_table(self.d, self.k)[tuple(beta)]]

    def to_csv(self, fh=None) -> str:
        """Write ``rank, alpha, x1..xd, value`` rows; returns the text when ``fh`` is None."""
        out = io.StringIO() if fh is None else fh
        writer = csv.writer(out, lineterminator="\r\n")
        writer.writerow(["rank", "alpha"] + [f"x{i + 1}" for i in range(self.d)] + ["value"])
        for r, (alpha, pt, v) in enumerate(zip(self.exponents, self.points, self.values)):
            writer.writerow(
                [r, ";".join(str(int(a)) for a in alpha)] + [repr(float(p)) for p in pt] + [repr(float(v))]
            )
        return out.getvalue() if fh is None else ""


def max_step(domain: Domain, k: int) -> float:
    """Largest ``h`` keeping ``{h*alpha : |alpha| <= k}`` inside the domain."""
    if k == 0:
        return math.inf
    return domain.coordinate_bound / k


def guard_ok(h: float, k: int, scale: float, precision: int = DOUBLE_BITS) -> bool:
    """Cancellation guard: ``h^k >= 2^-(precision - 13) * scale``."""
    if k == 0 or scale == 0:
        return True
    return k * log2(h) >= -(precision - GUARD_MARGIN_BITS) + log2(scale)


def _guard_floor(k, scale, precision):
    if k == 0 or scale == 0:
        return 0.0
    return 2.0 ** ((log2(scale) - (precision - GUARD_MARGIN_BITS)) / k)


def sample(f: SmoothFunction, k: int, h: float, precision: int = DOUBLE_BITS, threads: int = 1) -> SampleGrid:
    """
    Evaluate ``f`` on the order-``k`` grid with step ``h``.

    With ``precision > 53`` the function's ``mpmath`` evaluator is used at
    that many bits and the values are kept as ``mpf`` objects.
    """
    d = f.d
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    if k * h > f.domain.coordinate_bound * (1 + 1e-12):
        raise DomainError(
            f"grid of order {k} with step {h} leaves the {f.domain.kind} (needs k*h <= {f.domain.coordinate_bound})"
        )
    if k >= WARN_ORDER:
        warnings.warn(f"order-{k} differences lose about {k} bits to cancellation", RuntimeWarning, stacklevel=2)
    check_size(d, k)
    exps = exponent_array(d, k)
    points = exps * h
    if precision > DOUBLE_BITS:
        values = _sample_mp(f, exps, h, precision, threads)
    else:
        values = _sample_double(f, points, threads)
    grid = SampleGrid(d, k, h, exps, points, values, len(points), precision)
    if not guard_ok(h, k, grid.scale, precision):
        raise InfeasibleStepError(
            f"step {h:.3g} cancels too many bits for order {k} at {precision}-bit precision",
            floor=_guard_floor(k, grid.scale, precision),
            ceiling=h,
        )
    return grid


def _chunks(n, size):
    return [(s, min(s + size, n)) for s in range(0, n, size)]


def _sample_double(f, points, threads):
    pieces = _chunks(len(points), _EVAL_CHUNK)
    if threads > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda ab: f(points[ab[0]: ab[1]]), pieces))
    else:
        parts = [f(points[a:b]) for a, b in pieces]
    return np.concatenate(parts)


def _sample_mp(f, exps, h, precision, threads):
    if f.mp_evaluator is None:
        raise MissingOracleError(
            f"{f.name} has no high-precision evaluator but {precision}-bit samples are required"
        )
    ctx = mpmath.mp.clone()
    ctx.prec = precision
    step = ctx.mpf(h)

    def run(ab):
        return [f.evaluate_mp(ctx, [step * int(a) for a in row]) for row in exps[ab[0]: ab[1]]]

    pieces = _chunks(len(exps), 256)
    if threads > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(run, pieces))
    else:
        parts = [run(ab) for ab in pieces]
    values = np.empty(len(exps), dtype=object)
    values[:] = [v for part in parts for v in part]
    return values


def mixed_forward_difference(grid: SampleGrid, alpha) -> float:
    """``Delta_h^alpha f(0)`` from the grid values by the explicit alternating sum."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != grid.d:
        raise ValueError("multi-index dimension does not match the grid")
    m = sum(alpha)
    if m > grid.k:
        raise OrderExceededError(f"|alpha| = {m} exceeds the grid order {grid.k}")
    table = rank_table(grid.d, grid.k)
    terms = []
    for beta in np.ndindex(*(a + 1 for a in alpha)):
        weight = math.prod(comb(a, b) for a, b in zip(alpha, beta))
        sign = -1 if (m - sum(beta)) % 2 else 1
        terms.append(sign * weight * grid.values[table[tuple(beta)]])
    if grid.precision > DOUBLE_BITS:
        ctx = mpmath.mp.clone()
        ctx.prec = grid.precision
        return ctx.fsum(terms)
    return math.fsum(terms)


def forward_differences(grid: SampleGrid) -> np.ndarray:
    """
    All ``Delta_h^alpha f(0)`` for ``|alpha| <= k`` by sweeping one axis at a time.

    Mixed differences factor into one-dimensional differences along each
    axis; every value the sweep touches has degree ``<= |alpha|`` and so is on
    the grid.
    """
    d, k = grid.d, grid.k
    exps = grid.exponents
    table = rank_table(d, k)
    v = grid.values.copy()
    for axis in range(d):
        new = v.copy()
        for b in range(1, k + 1):
            sel = np.flatnonzero(exps[:, axis] == b)
            if sel.size == 0:
                continue
            acc = None
            for j in range(b + 1):
                shifted = exps[sel].copy()
                shifted[:, axis] = j
                idx = np.fromiter((table[tuple(row)] for row in shifted), dtype=np.int64, count=len(sel))
                term = v[idx] * ((-1) ** (b - j) * comb(b, j))
                acc = term if acc is None else acc + term
            new[sel] = acc
        v = new
    return v


def build_from_samples(f: SmoothFunction, k: int, h: float, precision: int = DOUBLE_BITS, threads: int = 1) -> TaylorModel:
    """Taylor model from ``C(d+k, k)`` function values via mixed forward differences."""
    grid = sample(f, k, h, precision, threads)
    return model_from_grid(grid)


def model_from_grid(grid: SampleGrid) -> TaylorModel:
    diffs = forward_differences(grid)
    alphas = enumerate_indices(grid.d, grid.k)
    if grid.precision > DOUBLE_BITS:
        ctx = mpmath.mp.clone()
        ctx.prec = grid.precision
        step = ctx.mpf(grid.h)
        coef = [float(diff / (step ** sum(a) * factorial_mi(a))) for diff, a in zip(diffs, alphas)]
    else:
        coef = [float(diff) / (grid.h ** sum(a) * factorial_mi(a)) for diff, a in zip(diffs, alphas)]
    provenance = f"finite-difference(h={grid.h!r})"
    if grid.precision > DOUBLE_BITS:
        provenance = f"finite-difference(h={grid.h!r},bits={grid.precision})"
    return TaylorModel(grid.d, grid.k, np.array(coef), provenance)


# -- step selection ------------------------------------------------------------


def lemma_bound(h: float, k: int, growth: float, domain: Domain = None) -> float:
    """Sup-norm perturbation bound ``8 h max(c,1)^(k+2)`` (scaled for a ball)."""
    if domain is None or domain.kind == "cube":
        return LEMMA_CONSTANT * h * max(growth, 1.0) ** (k + 2)
    r = domain.radius
    return LEMMA_CONSTANT * (h / (2 * r)) * max(2 * r * growth, 1.0) ** (k + 2)


def coefficient_error_bound(alpha, h: float, growth: float) -> float:
    """Per-coefficient bound ``h |alpha| (|alpha|+1) max(c,1)^(|alpha|+1)`` from the lemma."""
    m = sum(alpha)
    return h * m * (m + 1) * max(growth, 1.0) ** (m + 1)


def _step_growth(cert: ClassCertificate, domain: Domain):
    if domain is None or domain.kind == "cube":
        if cert.tag != "F1":
            raise CertificateError(f"finite-difference steps on the cube need an F1 certificate, got {cert.tag}")
        return cert.c
    if cert.partial_growth is None:
        raise CertificateError(
            "finite-difference steps on the ball need a certificate with partial_growth"
        )
    return cert.partial_growth


def default_step(
    cert: ClassCertificate,
    k: int,
    eps_fd: float,
    domain: Domain = None,
    precision: int = DOUBLE_BITS,
    scale: float = 1.0,
) -> float:
    """
    Step ``h`` whose finite-difference perturbation of ``T_k`` is at most ``eps_fd``.

    On the cube ``h = eps_fd / (8 max(c, 1)^(k+2))``, capped at ``1/(2k)`` so
    the grid stays in the domain.  Raises :class:`InfeasibleStepError` when the
    cancellation floor ``(2^-(precision-13) scale)^(1/k)`` is above that.
    """
    if not eps_fd > 0:
        raise ValueError("eps_fd must be positive")
    growth = _step_growth(cert, domain)
    if domain is None or domain.kind == "cube":
        ceiling = eps_fd / (LEMMA_CONSTANT * max(growth, 1.0) ** (k + 2))
        cap = 0.5 / k if k else 0.5
    else:
        r = domain.radius
        ceiling = 2 * r * eps_fd / (LEMMA_CONSTANT * max(2 * r * growth, 1.0) ** (k + 2))
        cap = r / k if k else r
    h = min(ceiling, cap)
    floor = _guard_floor(k, scale, precision)
    if floor > h:
        raise InfeasibleStepError(
            f"cancellation floor {floor:.3e} exceeds the accuracy ceiling {h:.3e} "
            f"(order {k}, {precision}-bit samples)",
            floor=floor,
            ceiling=h,
        )
    return h


def _log_series(z, k):
    # log of sum_{m<=k} z^m / m!
    terms = [m * log(z) - lgamma(m + 1) for m in range(k + 1)]
    top = max(terms)
    return top + log(math.fsum(math.exp(t - top) for t in terms))


def rounding_bound(d: int, k: int, h: float, rho: float, precision: int = DOUBLE_BITS, scale: float = 1.0) -> float:
    """Bound on the sup-norm perturbation of ``T_k`` caused by rounding the samples."""
    if scale == 0:
        return 0.0
    logb = log(k + 2) + (1 - precision) * log(2) + log(scale) + _log_series(2 * rho * d / h, k)
    return math.exp(min(logb, 700.0))


def required_precision(d: int, k: int, h: float, rho: float, eps_round: float, scale: float = 1.0) -> int:
    """Smallest working precision (>= 53 bits) meeting the rounding budget and the guard."""
    if scale == 0:
        return DOUBLE_BITS
    need_round = 1 + (log(k + 2) + log(scale) + _log_series(2 * rho * d / h, k) - log(eps_round)) / log(2)
    need_guard = GUARD_MARGIN_BITS + log2(scale) - k * log2(h)
    bits = math.ceil(max(need_round, need_guard))
    if bits <= DOUBLE_BITS:
        return DOUBLE_BITS
    # headroom for the evaluator's own rounding at that precision
    return bits + 8
