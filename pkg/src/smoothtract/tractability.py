"""
Information cost of the Taylor algorithms and tractability diagnostics.

``n(eps, d)`` here is the cost ``C(d+k, k)`` of the constructive algorithm,
an upper bound on the minimal cost; how far it is from the minimum is not
known.  Costs are handled as ``ln n`` so that extreme ``(eps, d)`` stay finite.

Tractability labels are empirical: they say that a finite grid of costs is
*consistent with* a notion, never that the notion is proved.

* quasi-polynomial: ``t* = max ln n / ((1 + ln 1/eps)(1 + ln d))`` stays
  bounded as the grid grows; witnessed by non-increasing growth of ``t*``
  over successive doublings of the largest dimension,
* weak: ``ln n / (1/eps + d)`` decreases along a diagonal ``eps = 1/d``,
* polynomial: least squares ``ln n ~ ln C + p ln(1/eps) + q ln d`` with
  maximal residual at most 0.5.
"""

import csv
import io
import math
from dataclasses import dataclass, field
from math import lgamma, log
from typing import NamedTuple, Optional

import numpy as np

from .approximate import select_order_ball, select_order_cube
from .funcspace import unit_volume_radius

UPPER_BOUND_NOTE = (
    "n is the cost C(d+k,k) of the Taylor algorithm, an upper bound on the minimal "
    "information cost n(eps,d); the gap to the minimum is unknown"
)
QPT_REL_CHANGE = 0.05
POLY_MAX_RESIDUAL = 0.5
WT_FROM_D = 16
CSV_COLUMNS = ("eps", "d", "k", "ln_n", "ratio_wt", "qpt_term")


def log_count(d: int, k: int) -> float:
    """``ln C(d+k, k)``.

    Sums ``log1p`` terms when ``min(d, k)`` is small (accurate even for huge
    ``d``) and uses log-gamma otherwise.
    """
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    small, big = min(d, k), max(d, k)
    if small <= 2000:
        return math.fsum(math.log1p(big / j) for j in range(1, small + 1))
    return lgamma(d + k + 1) - lgamma(k + 1) - lgamma(d + 1)


def binomial_log_upper(d: int, k: int) -> float:
    """``k (1 + ln(d+k) - ln k)``, the estimate of ``ln C(d+k,k)`` from ``C(d+k,k) <= (e(d+k)/k)^k``."""
    if k < 1:
        raise ValueError("the estimate needs k >= 1")
    return k * (1 + log(d + k) - log(k))


def cost_cube(eps: float, d: int, c: float = 1.0) -> tuple[int, float]:
    """``(k, ln n)`` for the cube algorithm on ``F1(c)``."""
    k = select_order_cube(eps, c)
    return k, log_count(d, k)


def cost_ball(eps: float, d: int, c: float = 1.0) -> tuple[int, float]:
    """``(k, ln n)`` for the ball algorithm on ``F2(c)`` with the unit-volume radius."""
    k = select_order_ball(eps, unit_volume_radius(d), c)
    return k, log_count(d, k)


_COSTS = {"cube": cost_cube, "ball": cost_ball}


class CostRecord(NamedTuple):
    eps: float
    d: int
    k: int
    ln_n: float

    @property
    def ratio_wt(self) -> float:
        return self.ln_n / (1 / self.eps + self.d)

    @property
    def qpt_term(self) -> float:
        return self.ln_n / ((1 + log(1 / self.eps)) * (1 + log(self.d)))


@dataclass
class CostGrid:
    domain: str
    c: float
    records: list

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\r\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.records:
            writer.writerow([repr(r.eps), r.d, r.k, repr(r.ln_n), repr(r.ratio_wt), repr(r.qpt_term)])
        return out.getvalue()


def cost_grid(eps_values, d_values, domain: str = "cube", c: float = 1.0) -> CostGrid:
    """Costs on the product grid, eps-major."""
    cost = _COSTS[domain]
    records = []
    for eps in eps_values:
        for d in d_values:
            k, ln_n = cost(eps, d, c)
            records.append(CostRecord(float(eps), int(d), k, ln_n))
    return CostGrid(domain, c, records)


def qpt_fit(eps_values, d_values, c: float = 1.0, domain: str = "cube") -> float:
    """``t* = max over the grid of ln n / ((1 + ln 1/eps)(1 + ln d))``."""
    grid = cost_grid(sorted(set(eps_values)), sorted(set(d_values)), domain, c)
    return max(r.qpt_term for r in grid.records)


class WTRow(NamedTuple):
    d: int
    eps: float
    k: int
    ln_n: float
    ratio: float


def wt_diagonal(d_values, c: float = 1.0, domain: str = "ball", eps_of_d=None) -> list[WTRow]:
    """Rows ``(d, eps, k, ln n, ln n / (1/eps + d))`` along ``eps = eps_of_d(d)`` (default ``1/d``)."""
    eps_of_d = eps_of_d or (lambda d: 1.0 / d)
    cost = _COSTS[domain]
    rows = []
    for d in d_values:
        eps = eps_of_d(d)
        k, ln_n = cost(eps, d, c)
        rows.append(WTRow(int(d), eps, k, ln_n, ln_n / (1 / eps + d)))
    return rows


class CurseRow(NamedTuple):
    d: int
    eps: float
    k: int
    n: int
    lower_bound_unrenormed: int
    ours_smaller: bool


def curse_contrast(eps: float, d_values, c: float = 1.0) -> list[CurseRow]:
    """
    Cube cost ``n`` next to ``2^floor(d/2)``, the known lower bound for the class
    of functions with all derivatives bounded by 1 (a different, unrenormed
    class; the rows are a contrast, not a contradiction).
    """
    from .multiindex import count

    rows = []
    for d in d_values:
        k = select_order_cube(eps, c)
        n = count(d, k)
        lb = 2 ** (d // 2)
        rows.append(CurseRow(int(d), eps, k, n, lb, n < lb))
    return rows


@dataclass
class PolyFit:
    ln_c: float
    p: float
    q: float
    max_residual: float


def poly_fit(records) -> Optional[PolyFit]:
    """Least squares ``ln n ~ ln C + p ln(1/eps) + q ln d``; None when underdetermined."""
    if len(records) < 3:
        return None
    a = np.array([[1.0, log(1 / r.eps), log(r.d)] for r in records])
    y = np.array([r.ln_n for r in records])
    if np.linalg.matrix_rank(a) < 3:
        return None
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    res = np.abs(a @ coef - y).max()
    return PolyFit(float(coef[0]), float(coef[1]), float(coef[2]), float(res))


@dataclass
class TractabilityReport:
    domain: str
    c: float
    grid: CostGrid
    t_star: float
    qpt_sequence: list = field(default_factory=list)
    wt_rows: list = field(default_factory=list)
    curse_rows: list = field(default_factory=list)
    polynomial: Optional[PolyFit] = None
    notes: list = field(default_factory=lambda: [UPPER_BOUND_NOTE])

    @property
    def qpt_relative_change(self) -> Optional[float]:
        if len(self.qpt_sequence) < 2:
            return None
        return abs(self.qpt_sequence[1][1] - self.qpt_sequence[0][1]) / self.qpt_sequence[0][1]

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "c": self.c,
            "t_star": self.t_star,
            "qpt_sequence": [{"d_max": d, "t_star": t} for d, t in self.qpt_sequence],
            "qpt_relative_change": self.qpt_relative_change,
            "wt_diagonal": [r._asdict() for r in self.wt_rows],
            "curse_contrast": [r._asdict() for r in self.curse_rows],
            "polynomial_fit": None if self.polynomial is None else vars(self.polynomial),
            "labels": sorted(classify(self)),
            "notes": list(self.notes),
        }


def build_report(
    eps_values,
    d_values,
    domain: str = "cube",
    c: float = 1.0,
    doublings: int = 3,
    wt_d_values=None,
    curse_eps: float = 0.5,
) -> TractabilityReport:
    """
    Cost grid plus diagnostics.  ``qpt_sequence`` holds ``t*`` for the grid
    with the largest dimension doubled ``0..doublings`` times.
    """
    eps_values = sorted(set(float(e) for e in eps_values), reverse=True)
    d_values = sorted(set(int(d) for d in d_values))
    grid = cost_grid(eps_values, d_values, domain, c)
    t_star = max(r.qpt_term for r in grid.records)
    sequence = [(d_values[-1], t_star)]
    if len(d_values) > 1:
        best = t_star
        d_max = d_values[-1]
        for _ in range(doublings):
            new_max = 2 * d_max
            extra = cost_grid(eps_values, range(d_max + 1, new_max + 1), domain, c)
            best = max(best, max(r.qpt_term for r in extra.records))
            sequence.append((new_max, best))
            d_max = new_max
    wt_rows = wt_diagonal(wt_d_values, c, domain) if wt_d_values else []
    curse_rows = curse_contrast(curse_eps, d_values, c) if domain == "cube" and curse_eps < 1 else []
    return TractabilityReport(
        domain, c, grid, t_star, sequence, wt_rows, curse_rows, poly_fit(grid.records)
    )


def classify(report: TractabilityReport) -> set:
    """Empirical labels for a report; each is a 'consistent with' statement about the tested grid."""
    labels = set()
    n_points = len(report.grid.records) if report.grid else 0
    if n_points < 2 and len(report.wt_rows) < 3:
        return {"insufficient data"}

    seq = [t for _, t in report.qpt_sequence]
    if len(seq) >= 3:
        steps = np.diff(seq)
        if np.all(steps[1:] <= steps[:-1] + 1e-12):
            labels.add("consistent with QPT on tested grid")
        else:
            labels.add("QPT not witnessed on tested grid")

    tail = [r.ratio for r in report.wt_rows if r.d >= WT_FROM_D]
    if len(tail) >= 2:
        if all(b < a for a, b in zip(tail, tail[1:])):
            labels.add("consistent with WT on tested diagonal")
        else:
            labels.add("WT not witnessed on tested diagonal")

    fit = report.polynomial
    if fit is not None:
        if fit.max_residual <= POLY_MAX_RESIDUAL:
            labels.add("consistent with polynomial tractability on tested grid")
            if abs(fit.q) < 1e-9:
                labels.add("consistent with strong polynomial tractability on tested grid")
        else:
            labels.add("poor polynomial fit")
    return labels or {"insufficient data"}
