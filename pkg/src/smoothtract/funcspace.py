"""
Domains, black-box smooth functions and a registry of reference functions.

Functions are vectorised: evaluators take an ``(n, d)`` array and return
``(n,)``.  Besides the evaluator a :class:`SmoothFunction` may carry

* ``partial(alpha, x)``: the partial derivative ``D^alpha f(x)``,
* ``ray(j, x, t)``: the j-th derivative of ``t -> f(t x)``; the radial
  derivative used on the ball is ``ray(j, x/|x|, |x|)``,
* ``mp_evaluator(ctx, point)``: a high precision evaluator working in the
  ``mpmath`` context ``ctx``, used when finite differences need more than
  double precision.

Class membership is recorded in :class:`ClassCertificate` objects whose
statements were derived analytically for each family; numerical checks in
:mod:`smoothtract.verify` only spot-check them.
"""

import math
import re
from dataclasses import dataclass, field
from math import comb, lgamma, log, pi
from typing import Callable, Optional

import numpy as np

from .errors import CertificateError, DomainError, MissingOracleError, UnknownFunctionError
from .multiindex import MultiIndex

CLASS_TAGS = ("F1", "F2", "F3", "F4")
_DOMAIN_TOL = 1e-12


def unit_volume_radius(d: int) -> float:
    """Radius of the Euclidean ball in R^d with Lebesgue measure one.

    Computed as ``exp(lgamma(d/2 + 1)/d - log(pi)/2)``; behaves like
    ``sqrt(d / (2 pi e))`` for large ``d``.
    """
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    return math.exp(lgamma(d / 2 + 1) / d - 0.5 * log(pi))


def log_ball_volume(d: int, r: float) -> float:
    """Natural log of the volume of the ball of radius ``r`` in R^d."""
    return 0.5 * d * log(pi) + d * log(r) - lgamma(d / 2 + 1)


@dataclass(frozen=True)
class Domain:
    """The cube ``[-1/2, 1/2]^d`` or the ball ``B(0, radius)``."""

    kind: str
    d: int
    radius: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("cube", "ball"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d!r}")
        if self.kind == "ball":
            if self.radius is None or not self.radius > 0:
                raise ValueError("ball radius must be positive")
        elif self.radius is not None:
            raise ValueError("the cube has fixed half-width 1/2; radius must be None")

    @classmethod
    def cube(cls, d):
        return cls("cube", d)

    @classmethod
    def ball(cls, d, radius=None):
        """Ball of the given radius; default is the unit-volume radius."""
        return cls("ball", d, unit_volume_radius(d) if radius is None else float(radius))

    @property
    def coordinate_bound(self) -> float:
        """Largest possible ``|x_i|`` over the domain."""
        return 0.5 if self.kind == "cube" else self.radius

    @property
    def volume(self) -> float:
        if self.kind == "cube":
            return 1.0
        return math.exp(log_ball_volume(self.d, self.radius))

    def contains(self, x) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self.kind == "cube":
            return np.all(np.abs(x) <= 0.5 + _DOMAIN_TOL, axis=-1)
        return np.linalg.norm(x, axis=-1) <= self.radius * (1 + _DOMAIN_TOL)

    def check(self, x) -> np.ndarray:
        """Return ``x`` as an ``(n, d)`` array, raising if any point is outside."""
        x = np.asarray(x, dtype=float)
        x2 = np.atleast_2d(x)
        if x2.shape[-1] != self.d:
            raise ValueError(f"expected points of dimension {self.d}, got shape {x.shape}")
        inside = self.contains(x2)
        if not np.all(inside):
            bad = x2[~inside][0]
            raise DomainError(f"point {bad.tolist()} lies outside the {self.kind} domain")
        return x2

    def to_dict(self):
        return {"kind": self.kind, "d": self.d, "radius": self.radius}

    @classmethod
    def from_dict(cls, data):
        return cls(data["kind"], int(data["d"]), data.get("radius"))


@dataclass(frozen=True)
class ClassCertificate:
    """
    Certified membership of a function in one of the classes

    * ``F1(c)``: ``sum_{|b|=k} ||D^b f||_inf / b! <= c^k`` on the cube (``c < 2``),
    * ``F2(c)``: ``||d_nu^k f||_inf <= c^k`` on the ball,
    * ``F3(c)``: ``int_0^r S(d_nu^k f, s) ds <= c^k`` on the ball,
    * ``F4(c)``: ``sup_s S(d_nu^k f, s) <= c^k`` for ``k >= 1`` on the ball,

    where ``S`` is the sphere average of the absolute value.

    ``partial_growth`` optionally bounds partial derivatives on the cube
    ``[-r, r]^d`` enclosing a ball: ``sum_{|b|=k} sup |D^b f| / b! <= g^k``
    for ``k >= 1``.  It is needed to choose finite-difference steps on the ball.
    ``closed_form(k)``, when present, is an analytic upper bound for the
    certified quantity at order ``k``.
    """

    tag: str
    c: float
    statement: str
    partial_growth: Optional[float] = None
    closed_form: Optional[Callable[[int], float]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.tag not in CLASS_TAGS:
            raise CertificateError(f"unknown class tag {self.tag!r}")
        if not (self.c >= 0 and math.isfinite(self.c)):
            raise CertificateError(f"growth constant must be finite and >= 0, got {self.c}")
        if self.tag == "F1" and not self.c < 2:
            raise CertificateError(f"F1(c) requires c < 2, got {self.c}")

    @property
    def label(self):
        return f"{self.tag}({self.c:g})"


def _sin_deriv(m: int, t):
    return (np.sin(t), np.cos(t), -np.sin(t), -np.cos(t))[m % 4]


def _cos_deriv(m: int, t):
    return (np.cos(t), -np.sin(t), -np.cos(t), np.sin(t))[m % 4]


class SmoothFunction:
    """A black-box function on a domain with optional exact oracles."""

    def __init__(
        self,
        name: str,
        domain: Domain,
        evaluator: Callable[[np.ndarray], np.ndarray],
        partial=None,
        ray=None,
        certificates=(),
        mp_evaluator=None,
    ):
        self.name = name
        self.domain = domain
        self._evaluator = evaluator
        self._partial = partial
        self._ray = ray
        self.certificates = tuple(certificates)
        self.mp_evaluator = mp_evaluator

    def __repr__(self):
        tags = ", ".join(c.label for c in self.certificates) or "uncertified"
        return f"SmoothFunction({self.name!r}, {self.domain.kind}, d={self.d}, {tags})"

    @property
    def d(self) -> int:
        return self.domain.d

    @property
    def has_partial(self) -> bool:
        return self._partial is not None

    @property
    def has_ray(self) -> bool:
        return self._ray is not None

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        values = self._evaluator(self.domain.check(x))
        return values[0] if x.ndim == 1 else values

    def evaluate_mp(self, ctx, point):
        """Evaluate at one point (a sequence of ``ctx.mpf``) in working precision."""
        if self.mp_evaluator is None:
            raise MissingOracleError(f"{self.name} has no high-precision evaluator")
        return self.mp_evaluator(ctx, point)

    def derivative(self, alpha: MultiIndex, x):
        """``D^alpha f(x)`` from the exact oracle."""
        if self._partial is None:
            raise MissingOracleError(f"{self.name} has no partial-derivative oracle")
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.d:
            raise ValueError(f"multi-index {alpha} does not match dimension {self.d}")
        x = np.asarray(x, dtype=float)
        values = self._partial(alpha, self.domain.check(x))
        return values[0] if x.ndim == 1 else values

    def ray_derivative(self, j: int, x, t=1.0):
        """j-th derivative of ``s -> f(s x)`` at ``s = t``."""
        if self._ray is None:
            raise MissingOracleError(f"{self.name} has no directional-derivative oracle")
        x = np.asarray(x, dtype=float)
        x2 = np.atleast_2d(x)
        t = np.broadcast_to(np.asarray(t, dtype=float), x2.shape[:1])
        self.domain.check(x2 * t[:, None])
        values = self._ray(int(j), x2, t)
        return values[0] if x.ndim == 1 else values

    def directional(self, j: int, x):
        """Radial derivative ``d_nu^j f(x)`` with ``nu = x/|x|``; undefined at 0."""
        x = np.asarray(x, dtype=float)
        x2 = np.atleast_2d(x)
        norms = np.linalg.norm(x2, axis=-1)
        if np.any(norms == 0):
            raise DomainError("the radial derivative is undefined at the origin")
        values = self.ray_derivative(j, x2 / norms[:, None], norms)
        return values[0] if x.ndim == 1 else values

    def certificate(self, tag: str) -> Optional[ClassCertificate]:
        for cert in self.certificates:
            if cert.tag == tag:
                return cert
        return None


class CountingFunction(SmoothFunction):
    """Wraps a function and counts how many points its evaluator was asked for."""

    def __init__(self, inner: SmoothFunction):
        self.inner = inner
        self.evaluations = 0
        super().__init__(
            inner.name,
            inner.domain,
            self._count,
            inner._partial,
            inner._ray,
            inner.certificates,
            self._count_mp if inner.mp_evaluator is not None else None,
        )

    def _count(self, x):
        self.evaluations += len(x)
        return self.inner._evaluator(x)

    def _count_mp(self, ctx, point):
        self.evaluations += 1
        return self.inner.mp_evaluator(ctx, point)


# -- reference families -------------------------------------------------------


def constant(value: float, domain: Domain) -> SmoothFunction:
    """``f = value``; member of every class when ``|value| <= 1``."""
    value = float(value)
    d = domain.d

    def partial(alpha, x):
        return np.full(len(x), value if not any(alpha) else 0.0)

    def ray(j, x, t):
        return np.full(len(x), value if j == 0 else 0.0)

    certs = ()
    if abs(value) <= 1:
        if domain.kind == "cube":
            certs = (
                ClassCertificate(
                    "F1", 1.0, "|f| <= 1 and every derivative vanishes",
                    closed_form=lambda k: abs(value) if k == 0 else 0.0,
                ),
            )
        else:
            certs = _ball_certificates(
                domain, 1.0, 0.0, "|f| <= 1 and every derivative vanishes",
                lambda k: abs(value) if k == 0 else 0.0,
            )
    return SmoothFunction(
        f"const:{value:g}",
        domain,
        lambda x: np.full(len(x), value),
        partial,
        ray,
        certs,
        lambda ctx, p: ctx.mpf(value),
    )


def prodcos(domain: Domain) -> SmoothFunction:
    """``f(x) = prod_i cos(x_i / d)``."""
    d = domain.d

    def evaluate(x):
        return np.prod(np.cos(x / d), axis=-1)

    def partial(alpha, x):
        out = np.ones(len(x))
        for i, a in enumerate(alpha):
            out = out * d ** (-a) * _cos_deriv(a, x[:, i] / d)
        return out

    def ray(j, x, t):
        # Leibniz rule over the d factors cos(t x_i / d)
        acc = None
        for i in range(d):
            a = x[:, i] / d
            factor = [a**m * _cos_deriv(m, t * a) for m in range(j + 1)]
            if acc is None:
                acc = factor
                continue
            acc = [
                sum(comb(m, l) * acc[l] * factor[m - l] for l in range(m + 1))
                for m in range(j + 1)
            ]
        return acc[j]

    def mp_eval(ctx, p):
        out = ctx.mpf(1)
        for xi in p:
            out *= ctx.cos(xi / d)
        return out

    if domain.kind == "cube":
        certs = (
            ClassCertificate(
                "F1", 1.0,
                "sum_{|b|=k} ||D^b f||/b! <= d^-k sum_{|b|=k} 1/b! = 1/k! <= 1",
                closed_form=lambda k: 1.0 / math.factorial(k),
            ),
        )
    else:
        certs = _ball_certificates(
            domain, 1.0, 1.0,
            "Leibniz: |d_nu^k f| <= (sum_i |nu_i|/d)^k <= d^(-k/2) <= 1",
            lambda k: d ** (-k / 2),
        )
    return SmoothFunction("prodcos", domain, evaluate, partial, ray, certs, mp_eval)


def sinsum(domain: Domain) -> SmoothFunction:
    """``f(x) = sin((x_1 + ... + x_d) / d)``."""
    d = domain.d

    def evaluate(x):
        return np.sin(x.sum(axis=-1) / d)

    def partial(alpha, x):
        m = sum(alpha)
        return d ** (-m) * _sin_deriv(m, x.sum(axis=-1) / d)

    def ray(j, x, t):
        s = x.sum(axis=-1) / d
        return s**j * _sin_deriv(j, t * s)

    def mp_eval(ctx, p):
        return ctx.sin(ctx.fsum(p) / d)

    if domain.kind == "cube":
        certs = (
            ClassCertificate(
                "F1", 1.0,
                "sum_{|b|=k} ||g^(k)||/b! = d^-k d^k/k! = 1/k! <= 1",
                closed_form=lambda k: 1.0 / math.factorial(k),
            ),
        )
    else:
        certs = _ball_certificates(
            domain, 1.0, 1.0,
            "|d_nu^k f| = |<1,nu>/d|^k |sin^(k)| <= d^(-k/2) <= 1",
            lambda k: d ** (-k / 2),
        )
    return SmoothFunction("sinsum", domain, evaluate, partial, ray, certs, mp_eval)


def ridge_sin(domain: Domain, a=None, name="ridge-sin") -> SmoothFunction:
    """``f(x) = sin(<a, x>)`` with ``|a|_2 = 1``; default ``a = e_1``."""
    d = domain.d
    if a is None:
        a = np.zeros(d)
        a[0] = 1.0
    a = np.asarray(a, dtype=float)
    if a.shape != (d,) or abs(np.linalg.norm(a) - 1) > 1e-12:
        raise ValueError("ridge direction must be a unit vector of dimension d")
    a_list = [float(v) for v in a]
    l1 = float(np.abs(a).sum())

    def evaluate(x):
        return np.sin(x @ a)

    def partial(alpha, x):
        return np.prod(a**np.asarray(alpha)) * _sin_deriv(sum(alpha), x @ a)

    def ray(j, x, t):
        u = x @ a
        return u**j * _sin_deriv(j, t * u)

    def mp_eval(ctx, p):
        return ctx.sin(ctx.fdot(p, a_list))

    if domain.kind == "cube":
        certs = ()
        if l1 < 2:
            certs = (
                ClassCertificate(
                    "F1", l1,
                    "sum_{|b|=k} |a^b|/b! = |a|_1^k/k! <= |a|_1^k",
                    closed_form=lambda k: l1**k / math.factorial(k),
                ),
            )
    else:
        certs = _ball_certificates(
            domain, 1.0, l1,
            "|d_nu^k f| = |<a,nu>|^k |sin^(k)| <= 1",
            lambda k: 1.0,
        )
    return SmoothFunction(name, domain, evaluate, partial, ray, certs, mp_eval)


def _ball_certificates(domain, c, partial_growth, statement, closed_form):
    # F2(c) implies F4(c): sphere averages never exceed the sup norm.
    # It implies F3(c) when the radius is at most 1 (integral <= radius * sup).
    certs = [
        ClassCertificate("F2", c, statement, partial_growth, closed_form),
        ClassCertificate("F4", c, "sphere averages <= sup norm; " + statement, partial_growth),
    ]
    if domain.radius <= 1:
        certs.append(
            ClassCertificate(
                "F3", c, f"radial integral <= r * sup <= r = {domain.radius:.6g}; " + statement,
                partial_growth,
            )
        )
    return tuple(certs)


# -- polynomials ---------------------------------------------------------------


def _falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


class Polynomial(SmoothFunction):
    """``p(x) = sum_g c_g x^g`` with exact oracles and computed certificates."""

    def __init__(self, terms: dict, domain: Domain, name=None):
        d = domain.d
        clean = {}
        for g, cval in terms.items():
            g = tuple(int(v) for v in g)
            if len(g) != d or any(v < 0 for v in g):
                raise ValueError(f"bad exponent {g} for dimension {d}")
            if cval != 0:
                clean[g] = clean.get(g, 0.0) + float(cval)
        self.terms = clean
        self.degree = max((sum(g) for g in clean), default=0)
        exps = np.array(list(clean) or [(0,) * d], dtype=float).reshape(-1, d)
        coefs = np.array(list(clean.values()) or [0.0])

        def evaluate(x):
            return (np.prod(x[:, None, :] ** exps[None], axis=-1) * coefs).sum(axis=-1)

        def partial(alpha, x):
            out = np.zeros(len(x))
            for g, cval in clean.items():
                if all(gi >= ai for gi, ai in zip(g, alpha)):
                    scale = cval * math.prod(_falling(gi, ai) for gi, ai in zip(g, alpha))
                    rest = np.array(g) - np.array(alpha)
                    out = out + scale * np.prod(x**rest, axis=-1)
            return out

        def ray(j, x, t):
            out = np.zeros(len(x))
            for g, cval in clean.items():
                m = sum(g)
                if m >= j:
                    out = out + cval * _falling(m, j) * t ** (m - j) * np.prod(x**np.array(g), axis=-1)
            return out

        def mp_eval(ctx, p):
            return ctx.fsum(
                ctx.mpf(cval) * ctx.fprod(pi_**gi for pi_, gi in zip(p, g))
                for g, cval in clean.items()
            )

        super().__init__(
            name or "poly:" + format_polynomial(clean),
            domain, evaluate, partial, ray, self._certify(domain), mp_eval,
        )

    def _class_sums(self, rho, radial):
        # Upper bounds b_k of the class quantity at order k = 0..degree.
        out = []
        for k in range(self.degree + 1):
            total = 0.0
            for g, cval in self.terms.items():
                m = sum(g)
                if m < k:
                    continue
                weight = _falling(m, k) if radial else comb(m, k)
                total += abs(cval) * weight * rho ** (m - k)
            out.append(total)
        return out

    @staticmethod
    def _growth(sums):
        # rounded up so that c^k stays above the exact sums in floating point
        return max([0.0] + [s ** (1 / k) for k, s in enumerate(sums) if k >= 1 and s > 0]) * (1 + 1e-12)

    def _certify(self, domain):
        if domain.kind == "cube":
            # sum_{|b|=k} ||D^b x^g||/b! = C(|g|, k) 2^(k-|g|) on [-1/2,1/2]^d
            sums = self._class_sums(0.5, radial=False)
            c = self._growth(sums)
            if sums[0] <= 1 and c < 2:
                return (
                    ClassCertificate(
                        "F1", c,
                        "termwise bound sum_g |c_g| C(|g|,k) 2^(k-|g|) <= c^k",
                        closed_form=lambda k, s=tuple(sums): s[k] if k < len(s) else 0.0,
                    ),
                )
            return ()
        r = domain.radius
        # |d_nu^k x^g| <= falling(|g|, k) r^(|g|-k) on B(0, r)
        sums = self._class_sums(r, radial=True)
        c = self._growth(sums)
        growth = self._growth(self._class_sums(r, radial=False))
        if sums[0] <= 1:
            return _ball_certificates(
                domain, c, growth,
                "termwise bound sum_g |c_g| falling(|g|,k) r^(|g|-k) <= c^k",
                lambda k, s=tuple(sums): s[k] if k < len(s) else 0.0,
            )
        return ()


def format_polynomial(terms: dict) -> str:
    parts = []
    for g, cval in sorted(terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(g) if e]
        coef = f"{cval:g}"
        if factors:
            lead = {"1": [], "-1": ["-"]}.get(coef, [coef + "*"])
            parts.append("".join(lead) + "*".join(factors))
        else:
            parts.append(coef)
    text = "+".join(parts) or "0"
    return text.replace("+-", "-")


_TERM_SPLIT = re.compile(r"(?<![eE*^])(?=[+-])")


def parse_polynomial(spec: str, d: int) -> dict:
    """Parse ``"0.5*x1^2*x3 - x2 + 1"`` into ``{exponent tuple: coefficient}``."""
    text = spec.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    terms = {}
    for chunk in _TERM_SPLIT.split(text):
        if not chunk:
            continue
        sign = -1.0 if chunk[0] == "-" else 1.0
        body = chunk.lstrip("+-")
        if not body:
            raise ValueError(f"dangling sign in polynomial {spec!r}")
        coef = sign
        expo = [0] * d
        for factor in body.split("*"):
            m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", factor)
            if m:
                i = int(m.group(1))
                if not 1 <= i <= d:
                    raise ValueError(f"variable x{i} out of range for d={d}")
                expo[i - 1] += int(m.group(2) or 1)
            else:
                try:
                    coef *= float(factor)
                except ValueError:
                    raise ValueError(f"cannot parse factor {factor!r} in {spec!r}") from None
        key = tuple(expo)
        terms[key] = terms.get(key, 0.0) + coef
    return terms


def polynomial(spec, domain: Domain) -> Polynomial:
    """Polynomial from a dict of terms or a string such as ``"x1*x2 + 0.5"``."""
    terms = parse_polynomial(spec, domain.d) if isinstance(spec, str) else spec
    return Polynomial(terms, domain)


# -- combinations (used to test linearity and equivariance) --------------------


def linear_combination(weights, functions, name=None) -> SmoothFunction:
    """``sum_i w_i f_i`` with combined oracles; uncertified."""
    weights = [float(w) for w in weights]
    functions = list(functions)
    domain = functions[0].domain
    if any(f.domain != domain for f in functions):
        raise ValueError("functions must share a domain")

    def evaluate(x):
        return sum(w * f._evaluator(x) for w, f in zip(weights, functions))

    partial = ray = mp_eval = None
    if all(f.has_partial for f in functions):
        def partial(alpha, x):
            return sum(w * f._partial(alpha, x) for w, f in zip(weights, functions))
    if all(f.has_ray for f in functions):
        def ray(j, x, t):
            return sum(w * f._ray(j, x, t) for w, f in zip(weights, functions))
    if all(f.mp_evaluator for f in functions):
        def mp_eval(ctx, p):
            return ctx.fsum(w * f.mp_evaluator(ctx, p) for w, f in zip(weights, functions))

    name = name or " + ".join(f"{w:g}*{f.name}" for w, f in zip(weights, functions))
    return SmoothFunction(name, domain, evaluate, partial, ray, (), mp_eval)


def permuted(f: SmoothFunction, perm) -> SmoothFunction:
    """``g(x) = f(x[perm])``; keeps the certificates (the classes are permutation invariant)."""
    perm = np.asarray(perm, dtype=int)
    if sorted(perm.tolist()) != list(range(f.d)):
        raise ValueError("perm must be a permutation of range(d)")

    def partial(alpha, x):
        return f._partial(tuple(alpha[p] for p in perm), x[:, perm])

    def ray(j, x, t):
        return f._ray(j, x[:, perm], t)

    def mp_eval(ctx, p):
        return f.mp_evaluator(ctx, [p[i] for i in perm])

    return SmoothFunction(
        f"{f.name}[perm={perm.tolist()}]",
        f.domain,
        lambda x: f._evaluator(x[:, perm]),
        partial if f.has_partial else None,
        ray if f.has_ray else None,
        f.certificates,
        mp_eval if f.mp_evaluator else None,
    )


# -- registry -----------------------------------------------------------------

FAMILY_IDS = ("const:<value>", "prodcos", "sinsum", "ridge-sin", "ridge-sin:diag", "poly:<spec>")


def get_function(identifier: str, d: int, kind: str = "cube", radius=None) -> SmoothFunction:
    """Build a registry function from its string identifier."""
    domain = Domain.cube(d) if kind == "cube" else Domain.ball(d, radius)
    ident = identifier.strip()
    if ident.startswith("const:"):
        return constant(float(ident[len("const:"):]), domain)
    if ident == "prodcos":
        return prodcos(domain)
    if ident == "sinsum":
        return sinsum(domain)
    if ident == "ridge-sin":
        return ridge_sin(domain)
    if ident == "ridge-sin:diag":
        return ridge_sin(domain, np.full(d, 1 / math.sqrt(d)), name="ridge-sin:diag")
    if ident.startswith("poly:"):
        return polynomial(ident[len("poly:"):], domain)
    raise UnknownFunctionError(f"unknown function id {identifier!r}; known ids: {', '.join(FAMILY_IDS)}")


def registry(d: int, kind: str = "cube", radius=None) -> list[SmoothFunction]:
    """Reference functions for dimension ``d`` on the cube or ball."""
    ids = ["const:1", "const:-0.5", "const:0.7", "prodcos", "sinsum", "ridge-sin", "ridge-sin:diag"]
    # low-degree polynomials small enough to be class members
    ids.append("poly:0.25+0.125*x1-0.0625*x1^2")
    if d >= 2:
        ids.append("poly:0.125*x1*x2+0.0625*x2^3")
    if d >= 3:
        ids.append("poly:0.1*x1*x2*x3-0.05*x3^2+0.2")
    return [get_function(i, d, kind, radius) for i in ids]
