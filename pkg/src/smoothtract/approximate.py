"""
Uniform approximation by Taylor models: order selection, planning and the
end-to-end approximation operator.

Cube, class ``F1(c)`` with ``c < 2``:
    ``sup |f - T_k f| <= (c/2)^(k+1)``; ``k`` is the smallest order with
    ``(c/2)^(k+1) <= eps``.
Ball ``B(0, r)``, class ``F2(c)``:
    ``sup |f - T_k f| <= (c r)^(k+1) / (k+1)!``; ``k`` is the smallest order
    with that bound ``<= eps``.  Any ``k >= max(e^2 c r, ln(1/eps))`` works.

In both cases the approximation uses ``C(d+k, k)`` samples.
"""

import json
import math
from dataclasses import dataclass
from math import lgamma, log
from typing import Optional

from .errors import CertificateError, InfeasibleStepError
from .funcspace import ClassCertificate, Domain, SmoothFunction
from .multiindex import count
from .sampling_fd import (
    DOUBLE_BITS,
    build_from_samples,
    default_step,
    rounding_bound,
    required_precision,
)
from .taylor import TaylorModel, build_from_oracle

DEFAULT_SPLIT = 0.5
# share of the finite-difference budget reserved for rounding of the samples
ROUNDING_SHARE = 1 / 16


def cube_truncation_bound(k: int, c: float = 1.0) -> float:
    """``(c/2)^(k+1)``."""
    return (c / 2) ** (k + 1)


def ball_truncation_bound(k: int, r: float, c: float = 1.0) -> float:
    """``(c r)^(k+1) / (k+1)!`` evaluated in the log domain."""
    if c * r == 0:
        return 0.0
    return math.exp(min((k + 1) * log(c * r) - lgamma(k + 2), 700.0))


def _check_eps(eps):
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")


def select_order_cube(eps: float, c: float = 1.0) -> int:
    """Smallest ``k >= 0`` with ``(c/2)^(k+1) <= eps``."""
    _check_eps(eps)
    if not 0 <= c < 2:
        raise ValueError(f"growth constant must lie in [0, 2), got {c}")
    if c == 0:
        return 0
    q = c / 2
    # direct powers keep exact powers of two exact; fall back to logs past underflow
    k = max(0, math.ceil(log(eps) / log(q)) - 3)
    while True:
        p = q ** (k + 1)
        ok = p <= eps if p > 0 else (k + 1) * log(q) <= log(eps)
        if ok:
            return k
        k += 1


def sufficient_order_ball(eps: float, r: float, c: float = 1.0) -> int:
    """``ceil(max(e^2 c r, ln(1/eps)))``: an order that always satisfies the ball rule."""
    _check_eps(eps)
    return math.ceil(max(math.e**2 * c * r, log(1 / eps)))


def select_order_ball(eps: float, r: float, c: float = 1.0) -> int:
    """Smallest ``k >= 0`` with ``(c r)^(k+1) / (k+1)! <= eps`` (log-domain scan)."""
    _check_eps(eps)
    if not r > 0 or c < 0:
        raise ValueError("need r > 0 and c >= 0")
    if c == 0:
        return 0
    lcr = log(c * r)
    target = log(eps)
    k = 0
    while (k + 1) * lcr - lgamma(k + 2) > target:
        k += 1
    assert k <= sufficient_order_ball(eps, r, c), "selection exceeded the sufficient order"
    return k


@dataclass(frozen=True)
class ApproximationPlan:
    """Everything needed to build and certify an approximant.

    ``bound = b_trunc + eps_fd`` is the guaranteed sup-norm error for
    functions certified in ``class_tag(c)``.  A plan with ``k is None`` is the
    zero approximant, which needs no samples and has error at most 1.

    ``budget`` is ``"split"`` when ``eps`` is shared between truncation and
    finite differences (``bound <= eps``), and ``"additive"`` when ``k`` is
    chosen for ``eps`` alone and ``eps_fd`` is an extra allowance
    (``bound <= eps + eps_fd``).
    """

    domain: Domain
    class_tag: str
    c: float
    eps: float
    mode: str
    k: Optional[int]
    n: int
    b_trunc: float
    eps_fd: float = 0.0
    h: Optional[float] = None
    precision: int = DOUBLE_BITS
    k_suff: Optional[int] = None
    partial_growth: Optional[float] = None
    formula: str = ""
    budget: str = "split"

    @property
    def bound(self) -> float:
        return self.b_trunc + self.eps_fd

    @property
    def degenerate(self) -> bool:
        return self.k is None

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.kind,
            "d": self.domain.d,
            "radius": self.domain.radius,
            "class": self.class_tag,
            "c": self.c,
            "eps": self.eps,
            "mode": self.mode,
            "k": self.k,
            "n": self.n,
            "B_trunc": self.b_trunc,
            "eps_fd": self.eps_fd,
            "B": self.bound,
            "h": self.h,
            "precision": self.precision,
            "k_suff": self.k_suff,
            "partial_growth": self.partial_growth,
            "formula": self.formula,
            "budget": self.budget,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "ApproximationPlan":
        return cls(
            domain=Domain(data["domain"], int(data["d"]), data.get("radius")),
            class_tag=data["class"],
            c=data["c"],
            eps=data["eps"],
            mode=data["mode"],
            k=data["k"],
            n=data["n"],
            b_trunc=data["B_trunc"],
            eps_fd=data["eps_fd"],
            h=data["h"],
            precision=data["precision"],
            k_suff=data["k_suff"],
            partial_growth=data.get("partial_growth"),
            formula=data["formula"],
            budget=data.get("budget", "split"),
        )

    @classmethod
    def from_json(cls, text: str) -> "ApproximationPlan":
        return cls.from_dict(json.loads(text))


def _expected_class(domain):
    return "F1" if domain.kind == "cube" else "F2"


def plan(
    domain: Domain,
    cert: ClassCertificate,
    eps: float,
    mode: str = "oracle",
    split: float = DEFAULT_SPLIT,
    precision="auto",
    fd_budget: Optional[float] = None,
) -> ApproximationPlan:
    """
    Choose the order, sample budget and (in samples mode) the step size.

    In samples mode ``split * eps`` goes to the finite-difference error and
    the rest to truncation; 1/16 of the finite-difference share is reserved
    for rounding, which fixes the working precision of the samples.

    With ``fd_budget`` the order is chosen for ``eps`` alone, as in oracle
    mode, and the finite differences get the extra allowance ``fd_budget``:
    the sample count is then that of the exact Taylor model and the bound is
    ``eps + fd_budget`` at most.
    """
    if mode not in ("oracle", "samples"):
        raise ValueError(f"mode must be 'oracle' or 'samples', got {mode!r}")
    if cert.tag != _expected_class(domain):
        raise CertificateError(f"class {cert.tag} does not match the {domain.kind} (expected {_expected_class(domain)})")
    if eps >= 1:
        return ApproximationPlan(
            domain, cert.tag, cert.c, eps, mode, None, 0, 1.0,
            partial_growth=cert.partial_growth,
            formula="zero approximant: every class contains the constants in [-1, 1], initial error 1",
        )
    _check_eps(eps)
    budget = "split"
    if mode == "samples" and fd_budget is not None:
        if not fd_budget > 0:
            raise ValueError("fd_budget must be positive")
        eps_fd, eps_trunc, budget = float(fd_budget), eps, "additive"
    elif mode == "samples":
        if not 0 < split < 1:
            raise ValueError("split must lie in (0, 1)")
        eps_fd = split * eps
        eps_trunc = eps - eps_fd
    else:
        eps_fd, eps_trunc = 0.0, eps

    k_suff = None
    if domain.kind == "cube":
        k = select_order_cube(eps_trunc, cert.c)
        b_trunc = cube_truncation_bound(k, cert.c)
        formula = "(c/2)^(k+1)"
    else:
        k = select_order_ball(eps_trunc, domain.radius, cert.c)
        k_suff = sufficient_order_ball(eps_trunc, domain.radius, cert.c)
        b_trunc = ball_truncation_bound(k, domain.radius, cert.c)
        formula = "(c r)^(k+1)/(k+1)!"
    n = count(domain.d, k)

    h = None
    bits = DOUBLE_BITS
    if mode == "samples":
        lemma_budget = eps_fd * (1 - ROUNDING_SHARE)
        rounding_budget = eps_fd * ROUNDING_SHARE
        if precision == "auto":
            h = default_step(cert, k, lemma_budget, domain, precision=10**6)
            bits = required_precision(domain.d, k, h, domain.coordinate_bound, rounding_budget)
        else:
            bits = int(precision)
            h = default_step(cert, k, lemma_budget, domain, precision=bits)
            if rounding_bound(domain.d, k, h, domain.coordinate_bound, bits) > rounding_budget:
                raise InfeasibleStepError(
                    f"{bits}-bit samples cannot meet the rounding budget {rounding_budget:.3e}",
                    ceiling=h,
                )
        formula += " + finite differences (8 h max(c,1)^(k+2) + rounding)"
    return ApproximationPlan(
        domain, cert.tag, cert.c, eps, mode, k, n, b_trunc, eps_fd, h, bits, k_suff,
        cert.partial_growth, formula, budget,
    )


def _check_membership(f: SmoothFunction, p: ApproximationPlan):
    cert = f.certificate(p.class_tag)
    if cert is None:
        raise CertificateError(f"{f.name} carries no {p.class_tag} certificate")
    if cert.c > p.c:
        raise CertificateError(f"{f.name} is certified in {cert.label}, not in {p.class_tag}({p.c:g})")
    if p.mode == "samples" and p.domain.kind == "ball":
        if cert.partial_growth is None or p.partial_growth is None or cert.partial_growth > p.partial_growth:
            raise CertificateError(f"{f.name} lacks the partial-derivative growth the plan assumes")


def approximate(f: SmoothFunction, p: ApproximationPlan, threads: int = 1, require_certificate: bool = True) -> TaylorModel:
    """Build the Taylor model prescribed by the plan."""
    if f.domain != p.domain:
        raise ValueError(f"function domain {f.domain} differs from the plan's {p.domain}")
    if p.degenerate:
        return TaylorModel.zero(f.d)
    if require_certificate:
        _check_membership(f, p)
    if p.mode == "oracle":
        return build_from_oracle(f, p.k)
    return build_from_samples(f, p.k, p.h, p.precision, threads)
