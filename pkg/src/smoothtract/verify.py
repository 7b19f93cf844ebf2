"""
Empirical verification of the error bounds.

The sup norm of ``f - T`` is *estimated* from random and structured points,
so the estimate is a lower witness of the true sup: a pass is evidence, a
failure is definitive.  All random points come from the chunked counter-based
substreams of :mod:`smoothtract.l1_spherical`, so estimates depend only on
the seed and never on the thread count.
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import MissingOracleError
from .funcspace import Domain, SmoothFunction
from .l1_spherical import (
    L1Estimate,
    ball_points,
    chunked_samples,
    mc_l1_error,
    radial_integral,
    sphere_average_sup,
)
from .multiindex import degree_block, factorial_mi
from .sampling_fd import coefficient_error_bound, mixed_forward_difference, model_from_grid, sample
from .taylor import TaylorModel, build_from_oracle

DEFAULT_POINTS = 10_000
HIGH_DIM_POINTS = 1_000
HIGH_DIM = 50
MAX_VERTEX_DIM = 10
CERT_RTOL = 1e-6


def default_points(d: int) -> int:
    return HIGH_DIM_POINTS if d >= HIGH_DIM else DEFAULT_POINTS


def random_points(domain: Domain, n: int, seed: int, threads: int = 1) -> np.ndarray:
    """``n`` uniform points of the domain, deterministic given ``seed``."""
    if domain.kind == "cube":
        draw = lambda rng, size: rng.random((size, domain.d)) - 0.5
    else:
        draw = lambda rng, size: ball_points(rng, size, domain.d, domain.radius)
    return chunked_samples(n, seed, draw, threads)


def structured_points(domain: Domain) -> tuple[np.ndarray, list]:
    """Center, plus the vertices of a cube with ``d <= 10`` or the ``2d`` poles of a ball."""
    d = domain.d
    parts = [np.zeros((1, d))]
    names = ["center"]
    if domain.kind == "cube" and d <= MAX_VERTEX_DIM:
        parts.append(np.array(list(itertools.product((-0.5, 0.5), repeat=d))))
        names.append(f"{2**d} vertices")
    elif domain.kind == "ball":
        poles = np.vstack([np.eye(d), -np.eye(d)]) * domain.radius
        parts.append(poles)
        names.append(f"{2 * d} poles")
    return np.vstack(parts), names


@dataclass
class ErrorEstimate:
    """Sup-norm (and optionally L1) error of a model against a bound."""

    sup: float
    argmax: list
    bound: Optional[float]
    evaluation_set: dict
    l1: Optional[L1Estimate] = None
    notes: list = field(default_factory=list)

    @property
    def margin(self) -> Optional[float]:
        return None if self.bound is None else self.bound - self.sup

    @property
    def passed(self) -> Optional[bool]:
        if self.bound is None:
            return None
        return self.sup <= self.bound

    def to_dict(self) -> dict:
        out = {
            "sup": self.sup,
            "argmax": self.argmax,
            "bound": self.bound,
            "margin": self.margin,
            "pass": self.passed,
            "evaluation_set": self.evaluation_set,
            "notes": list(self.notes),
        }
        if self.l1 is not None:
            out["l1"] = {"estimate": self.l1.estimate, "stderr": self.l1.stderr}
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def sup_error(
    f: SmoothFunction,
    model: TaylorModel,
    domain: Domain = None,
    n_points: int = None,
    seed: int = 0,
    bound: float = None,
    threads: int = 1,
) -> ErrorEstimate:
    """Largest ``|f - T|`` over random points and the structured extras of the domain."""
    domain = f.domain if domain is None else domain
    notes = []
    if n_points is None:
        n_points = default_points(domain.d)
        if domain.d >= HIGH_DIM:
            notes.append(f"random points reduced to {n_points} for d >= {HIGH_DIM}")
    if n_points < 1:
        raise ValueError("need at least one evaluation point")
    extras, names = structured_points(domain)
    pts = np.vstack([random_points(domain, n_points, seed, threads), extras])
    err = np.abs(f(pts) - model(pts))
    i = int(np.argmax(err))
    notes.append("sampled sup: a lower witness of the true sup norm")
    return ErrorEstimate(
        float(err[i]),
        pts[i].tolist(),
        bound,
        {"random": n_points, "seed": seed, "extras": names, "n_extra": len(extras)},
        notes=notes,
    )


def verify_plan(f: SmoothFunction, p, n_points=None, seed=0, threads=1, l1_m=None) -> tuple[TaylorModel, ErrorEstimate]:
    """Build the model prescribed by ``p`` and compare its sup error with ``p.bound``."""
    from .approximate import approximate

    model = approximate(f, p, threads=threads)
    est = sup_error(f, model, p.domain, n_points, seed, p.bound, threads)
    if l1_m and p.domain.kind == "ball":
        est.l1 = mc_l1_error(f, model, p.domain.radius, l1_m, seed, threads)
    return model, est


# -- finite-difference studies ---------------------------------------------------


@dataclass
class FDRow:
    h: float
    estimate: float
    oracle: float
    error: float
    order: Optional[float]


def fd_convergence(f: SmoothFunction, alpha, hs, precision: int = 53) -> list[FDRow]:
    """
    Errors of ``Delta_h^alpha f(0) / h^|alpha|`` against ``D^alpha f(0)`` for each ``h``.

    ``order`` on a row compares it with the previous row:
    ``log(err_prev / err) / log(h_prev / h)``, which is ``log2`` of the error
    ratio for halved steps.
    """
    alpha = tuple(int(a) for a in alpha)
    hs = [float(h) for h in hs]
    if any(h <= 0 for h in hs) or any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("steps must be positive and strictly decreasing")
    if not f.has_partial:
        raise MissingOracleError(f"{f.name} has no partial-derivative oracle")
    m = sum(alpha)
    oracle = float(f.derivative(alpha, np.zeros(f.d))) + 0.0  # no signed zeros in reports
    rows = []
    for h in hs:
        grid = sample(f, m, h, precision)
        est = float(mixed_forward_difference(grid, alpha)) / h**m
        err = abs(est - oracle)
        order = None
        if rows and rows[-1].error > 0 and err > 0:
            order = math.log(rows[-1].error / err) / math.log(rows[-1].h / h)
        rows.append(FDRow(h, est, oracle, err, order))
    return rows


@dataclass
class CoefficientAgreement:
    max_difference: float
    worst_ratio: float
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations


def coefficient_agreement(f: SmoothFunction, k: int, h: float, growth: float, precision: int = 53) -> CoefficientAgreement:
    """
    Compare oracle and finite-difference coefficients with the per-coefficient
    bound ``h |alpha| (|alpha|+1) max(c,1)^(|alpha|+1)`` of the step-size lemma.
    """
    exact = build_from_oracle(f, k)
    grid = sample(f, k, h, precision)
    fd = model_from_grid(grid)
    diff = np.abs(exact.coefficients - fd.coefficients)
    unit = 2.0 ** -precision
    scale = float(grid.scale)
    violations = []
    worst = 0.0
    for i, alpha in enumerate(exact.indices):
        m = sum(alpha)
        # rounding of the samples, amplified by the 2^m weight of the difference
        slack = (m + 2) * unit * scale * 2**m / (h**m * factorial_mi(alpha))
        b = coefficient_error_bound(alpha, h, growth) + slack
        if diff[i] > 0:
            worst = max(worst, float(diff[i] / b))
        if diff[i] > b:
            violations.append((alpha, float(diff[i]), b))
    return CoefficientAgreement(float(diff.max()), worst, violations)


# -- class certificates -------------------------------------------------------------


@dataclass
class CertificateRow:
    tag: str
    k: int
    estimate: float
    stderr: float
    bound: float
    closed_form: Optional[float]

    @property
    def passed(self) -> bool:
        return self.estimate <= self.bound * (1 + CERT_RTOL) + 3 * self.stderr


@dataclass
class CertificateReport:
    function: str
    domain: Domain
    rows: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "domain": self.domain.to_dict(),
            "pass": self.passed,
            "rows": [
                {
                    "class": r.tag,
                    "k": r.k,
                    "estimate": r.estimate,
                    "stderr": r.stderr,
                    "bound": r.bound,
                    "closed_form": r.closed_form,
                    "pass": r.passed,
                }
                for r in self.rows
            ],
            "notes": ["sampled sups are lower witnesses; a pass is evidence, a failure is definitive"],
        }


def _f1_quantity(f, k, pts):
    return math.fsum(
        float(np.abs(f.derivative(beta, pts)).max()) / factorial_mi(beta) for beta in degree_block(f.d, k)
    )


def _f2_quantity(f, k, pts):
    if k == 0:
        return float(np.abs(f(pts)).max())
    nonzero = pts[np.linalg.norm(pts, axis=1) > 0]
    return float(np.abs(f.directional(k, nonzero)).max())


def certificate_check(
    f: SmoothFunction,
    k_max: int,
    n_points: int = 2000,
    seed: int = 0,
    m: int = 4000,
    nodes: int = 16,
    tags=None,
) -> CertificateReport:
    """
    Estimate each certified class quantity for ``k <= k_max`` and compare with ``c^k``.

    F1 and F2 use sampled sups (plus the structured points); F3 a
    Gauss-Legendre radial integral of sphere averages; F4 the largest sphere
    average over the radial nodes, for ``k >= 1``.
    """
    certs = [c for c in f.certificates if tags is None or c.tag in tags]
    pts = None
    rows = []
    for cert in certs:
        if cert.tag in ("F1", "F2") and pts is None:
            extras, _ = structured_points(f.domain)
            pts = np.vstack([random_points(f.domain, n_points, seed), extras])
        for k in range(k_max + 1):
            stderr = 0.0
            if cert.tag == "F1":
                if not f.has_partial:
                    raise MissingOracleError(f"{f.name} has no partial-derivative oracle")
                est = _f1_quantity(f, k, pts)
            elif cert.tag == "F2":
                est = _f2_quantity(f, k, pts)
            elif cert.tag == "F3":
                est, stderr = radial_integral(f, k, f.domain.radius, m, seed, nodes)
            else:
                if k == 0:
                    continue
                e = sphere_average_sup(f, k, f.domain.radius, m, seed, nodes)
                est, stderr = e.estimate, e.stderr
            closed = cert.closed_form(k) if cert.closed_form else None
            rows.append(CertificateRow(cert.tag, k, float(est), float(stderr), cert.c**k, closed))
    return CertificateReport(f.name, f.domain, rows)
