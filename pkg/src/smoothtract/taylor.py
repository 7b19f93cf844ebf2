"""
Taylor models about the origin.

A :class:`TaylorModel` stores ``c_alpha = D^alpha f(0) / alpha!`` for all
``|alpha| <= k`` in graded lexicographic order and evaluates
``sum_alpha c_alpha x^alpha``.  The same object serves the cube and the ball:
by the multinomial identity ``g_x^(j)(0) = sum_{|alpha|=j} j!/alpha! D^alpha f(0) x^alpha``
the truncated radial series of ``t -> f(t x)`` at ``t = 1`` equals this
polynomial.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import MissingOracleError, ResourceLimitError
from .funcspace import SmoothFunction
from .multiindex import count, degree_offsets, enumerate_indices, factorial_mi, parent_table, rank

MAX_COEFFICIENTS = 10**8
# points per evaluation chunk times number of coefficients
_CHUNK_BUDGET = 4_000_000


def check_size(d: int, k: int) -> int:
    """Return ``C(d+k, k)``, refusing sizes above :data:`MAX_COEFFICIENTS`."""
    try:
        n = count(d, k)
    except OverflowError:
        n = None
    if n is None or n > MAX_COEFFICIENTS:
        raise ResourceLimitError(
            f"a degree-{k} model in {d} variables needs more than {MAX_COEFFICIENTS:.0e} coefficients"
        )
    return n


def _cascade_rowsum(terms: np.ndarray) -> np.ndarray:
    # Pairwise summation along axis 1 carrying the TwoSum error of every
    # addition; the collected errors are added back at the end.
    err = np.zeros(terms.shape[0])
    while terms.shape[1] > 1:
        if terms.shape[1] % 2:
            terms = np.concatenate([terms, np.zeros((terms.shape[0], 1))], axis=1)
        a = terms[:, 0::2]
        b = terms[:, 1::2]
        s = a + b
        bp = s - a
        err += ((a - (s - bp)) + (b - bp)).sum(axis=1)
        terms = s
    return terms[:, 0] + err


def _neumaier(columns) -> np.ndarray:
    total = np.zeros_like(columns[0])
    comp = np.zeros_like(columns[0])
    for col in columns:
        t = total + col
        big = np.abs(total) >= np.abs(col)
        comp += np.where(big, (total - t) + col, (col - t) + total)
        total = t
    return total + comp


@dataclass(frozen=True, eq=False)
class TaylorModel:
    """Degree-``k`` Taylor polynomial in ``d`` variables about the origin."""

    d: int
    k: int
    coefficients: np.ndarray
    provenance: str = "exact-oracle"

    def __post_init__(self):
        n = check_size(self.d, self.k)
        coef = np.array(self.coefficients, dtype=float).reshape(-1)
        if coef.shape != (n,):
            raise ValueError(f"expected {n} coefficients for d={self.d}, k={self.k}, got {coef.shape[0]}")
        if not np.all(np.isfinite(coef)):
            raise ValueError("Taylor coefficients must be finite")
        coef.setflags(write=False)
        object.__setattr__(self, "coefficients", coef)

    def __eq__(self, other):
        if not isinstance(other, TaylorModel):
            return NotImplemented
        return (
            (self.d, self.k, self.provenance) == (other.d, other.k, other.provenance)
            and np.array_equal(self.coefficients, other.coefficients)
        )

    @classmethod
    def zero(cls, d: int) -> "TaylorModel":
        """The identically zero approximant (used when no samples are taken)."""
        return cls(d, 0, np.zeros(1), "zero")

    @property
    def indices(self):
        return enumerate_indices(self.d, self.k)

    def coefficient(self, alpha) -> float:
        return float(self.coefficients[rank(alpha)])

    def truncate(self, k: int) -> "TaylorModel":
        """The model restricted to degrees ``<= k`` (a prefix of the coefficients)."""
        if k > self.k:
            raise ValueError("cannot truncate to a higher order")
        return TaylorModel(self.d, k, self.coefficients[: count(self.d, k)], self.provenance)

    def evaluate(self, x):
        """Evaluate at a point ``(d,)`` or a stack of points ``(n, d)``."""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        pts = np.atleast_2d(x)
        if pts.shape[1] != self.d:
            raise ValueError(f"expected points of dimension {self.d}")
        n_coef = self.coefficients.shape[0]
        chunk = max(1, _CHUNK_BUDGET // n_coef)
        out = np.empty(len(pts))
        for start in range(0, len(pts), chunk):
            out[start : start + chunk] = self._evaluate_chunk(pts[start : start + chunk])
        return float(out[0]) if single else out

    __call__ = evaluate

    def _evaluate_chunk(self, pts):
        offsets = degree_offsets(self.d, self.k)
        parent, var = parent_table(self.d, self.k)
        coef = self.coefficients
        prev = np.ones((len(pts), 1))
        per_degree = [np.full(len(pts), coef[0])]
        for m in range(1, self.k + 1):
            lo, hi = offsets[m], offsets[m + 1]
            # monomials of degree m from their parents of degree m - 1
            block = prev[:, parent[lo:hi] - offsets[m - 1]] * pts[:, var[lo:hi]]
            per_degree.append(_cascade_rowsum(block * coef[lo:hi]))
            prev = block
        return _neumaier(per_degree)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "ordering": "gradedlex",
            "coefficients": [float(c) for c in self.coefficients],
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data) -> "TaylorModel":
        if data.get("ordering", "gradedlex") != "gradedlex":
            raise ValueError(f"unsupported ordering {data['ordering']!r}")
        return cls(int(data["d"]), int(data["k"]), np.asarray(data["coefficients"], dtype=float), data["provenance"])

    @classmethod
    def from_json(cls, text: str) -> "TaylorModel":
        return cls.from_dict(json.loads(text))


def build_from_oracle(f: SmoothFunction, k: int, d: int = None) -> TaylorModel:
    """Taylor model with ``c_alpha = D^alpha f(0) / alpha!`` from the exact oracle."""
    d = f.d if d is None else d
    if d != f.d:
        raise ValueError(f"function has dimension {f.d}, not {d}")
    if not f.has_partial:
        raise MissingOracleError(f"{f.name} has no partial-derivative oracle")
    check_size(d, k)
    origin = np.zeros((1, d))
    coef = np.array(
        [float(f.derivative(alpha, origin)[0]) / factorial_mi(alpha) for alpha in enumerate_indices(d, k)]
    )
    return TaylorModel(d, k, coef, "exact-oracle")


def directional_series(f: SmoothFunction, x, k: int):
    """``sum_{j<=k} g_x^(j)(0) / j!`` with ``g_x(t) = f(t x)``, from the ray oracle."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    terms = [f.ray_derivative(j, x, 0.0) / math.factorial(j) for j in range(k + 1)]
    return _neumaier(terms)
