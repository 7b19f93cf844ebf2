import math

import numpy as np
import pytest

from smoothtract.errors import CertificateError, DomainError, MissingOracleError, UnknownFunctionError
from smoothtract.funcspace import (
    ClassCertificate,
    CountingFunction,
    Domain,
    format_polynomial,
    get_function,
    log_ball_volume,
    parse_polynomial,
    polynomial,
    registry,
    unit_volume_radius,
)
from smoothtract.multiindex import degree_block, factorial_mi
from smoothtract.verify import random_points


def test_unit_volume_radius_examples():
    assert unit_volume_radius(1) == pytest.approx(0.5, rel=1e-15)
    assert unit_volume_radius(2) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-14)
    assert unit_volume_radius(3) == pytest.approx((3 / (4 * math.pi)) ** (1 / 3), rel=1e-14)


def test_unit_volume_radius_volume_and_bracket():
    for d in range(1, 1001):
        r = unit_volume_radius(d)
        assert abs(log_ball_volume(d, r)) < 1e-12
        assert 0.2 <= r / math.sqrt(d) <= 0.5
    # large-d constant 1/sqrt(2 pi e)
    assert unit_volume_radius(10**6) / 1e3 == pytest.approx(1 / math.sqrt(2 * math.pi * math.e), rel=1e-4)


def test_domain_contract():
    cube = Domain.cube(3)
    assert cube.coordinate_bound == 0.5
    with pytest.raises(DomainError):
        cube.check([0.6, 0, 0])
    ball = Domain.ball(3)
    assert ball.volume == pytest.approx(1.0)
    with pytest.raises(ValueError):
        Domain("ball", 2, -1.0)
    with pytest.raises(ValueError):
        Domain("cube", 2, 1.0)
    f = get_function("prodcos", 3)
    with pytest.raises(DomainError):
        f(np.array([0.0, 0.0, 0.7]))
    assert Domain.from_dict(ball.to_dict()) == ball


def test_certificate_contract():
    with pytest.raises(CertificateError):
        ClassCertificate("F1", 2.0, "c must be < 2")
    with pytest.raises(CertificateError):
        ClassCertificate("F7", 1.0, "unknown class")
    assert ClassCertificate("F2", 3.5, "ok").label == "F2(3.5)"


def test_registry_examples():
    one = get_function("const:1", 4)
    assert one(np.zeros(4)) == 1.0
    assert one.certificate("F1").c == 1.0
    f = get_function("prodcos", 3)
    assert f.derivative((1, 0, 0), np.zeros(3)) == 0.0
    g = get_function("ridge-sin", 2, "ball")
    r = 0.3
    assert g.directional(1, np.array([r, 0.0])) == pytest.approx(math.cos(r), abs=1e-15)


def test_registry_coverage():
    for kind in ("cube", "ball"):
        names = {f.name for f in registry(3, kind)}
        assert {"prodcos", "sinsum", "ridge-sin"} <= names
        assert any(n.startswith("const") for n in names)
        assert any(n.startswith("poly") for n in names)
    for f in registry(3, "ball"):
        assert f.has_partial and f.has_ray


def test_unknown_id_lists_known_ids():
    with pytest.raises(UnknownFunctionError, match="prodcos"):
        get_function("gauss", 2)


def test_directional_undefined_at_origin():
    with pytest.raises(DomainError):
        get_function("sinsum", 2, "ball").directional(1, np.zeros(2))


def test_missing_oracle():
    from smoothtract.funcspace import SmoothFunction

    f = SmoothFunction("bare", Domain.cube(2), lambda x: x.sum(axis=-1))
    with pytest.raises(MissingOracleError):
        f.derivative((1, 0), np.zeros(2))
    with pytest.raises(MissingOracleError):
        f.ray_derivative(1, np.zeros(2))


def _forward_errors(f, alpha, i, x, hs):
    e = np.zeros(f.d)
    e[i] = 1
    beta = list(alpha)
    beta[i] += 1
    exact = f.derivative(tuple(beta), x)
    return [abs((f.derivative(alpha, x + h * e) - f.derivative(alpha, x)) / h - exact) for h in hs]


@pytest.mark.parametrize("kind", ["cube", "ball"])
def test_partial_oracles_match_differences(kind, rng):
    # one-sided differences of the oracle itself, and of the evaluator for |alpha| = 0;
    # the error halves with h (first order) at points where the next derivative is nonzero
    hs = [1e-2, 5e-3, 2.5e-3]
    for f in registry(3, kind):
        if f.name.startswith("const"):
            continue
        x = 0.3 * random_points(f.domain, 1, seed=7)[0]
        for alpha in [(0, 0, 0), (1, 0, 0), (0, 1, 1), (2, 0, 1)]:
            for i in range(3):
                errs = _forward_errors(f, alpha, i, x, hs)
                if max(errs) < 1e-11:  # polynomial direction, exact up to rounding
                    continue
                for a, b in zip(errs, errs[1:]):
                    assert 1.5 <= a / b <= 2.5, (f.name, alpha, i, errs)


@pytest.mark.parametrize("kind", ["cube", "ball"])
def test_evaluator_matches_zeroth_oracle(kind):
    for f in registry(4, kind):
        pts = random_points(f.domain, 200, seed=3)
        assert np.allclose(f(pts), f.derivative((0,) * 4, pts), atol=1e-15)


def test_ray_oracle_matches_differences():
    hs = [1e-2, 5e-3, 2.5e-3]
    for f in registry(3, "ball"):
        if f.name.startswith("const"):
            continue
        x = random_points(f.domain, 1, seed=11)[0] * 0.5
        for j in range(4):
            exact = f.ray_derivative(j + 1, x, 1.0)
            errs = [abs((f.ray_derivative(j, x, 1.0 + h) - f.ray_derivative(j, x, 1.0)) / h - exact) for h in hs]
            if max(errs) < 1e-11:
                continue
            for a, b in zip(errs, errs[1:]):
                assert 1.5 <= a / b <= 2.5, (f.name, j, errs)


def test_ray_oracle_is_multinomial_sum_of_partials(rng):
    # g^(j)(t) = sum_{|a| = j} j!/a! D^a f(t x) x^a
    for f in registry(3, "ball"):
        x = random_points(f.domain, 1, seed=5)[0] * 0.8
        for j in range(5):
            total = math.fsum(
                math.factorial(j) / factorial_mi(a) * f.derivative(a, 0.5 * x) * np.prod(x ** np.array(a))
                for a in degree_block(3, j)
            )
            assert f.ray_derivative(j, x, 0.5) == pytest.approx(total, abs=1e-13)


def test_certificates_f1_closed_forms():
    # F1 quantity sum_{|b|=k} sup|D^b f|/b! over sampled cube points never exceeds c^k
    for d in (1, 2, 4):
        for f in registry(d, "cube"):
            cert = f.certificate("F1")
            if cert is None:
                continue
            pts = random_points(f.domain, 10_000, seed=1)
            for k in range(9):
                q = math.fsum(np.abs(f.derivative(b, pts)).max() / factorial_mi(b) for b in degree_block(d, k))
                assert q <= cert.c**k * (1 + 1e-6), (f.name, k)
                if cert.closed_form is not None:
                    assert q <= cert.closed_form(k) * (1 + 1e-6) + 1e-15


def test_certificates_f2_sampled():
    for d in (2, 3, 5):
        for f in registry(d, "ball"):
            cert = f.certificate("F2")
            if cert is None:
                continue
            pts = random_points(f.domain, 10_000, seed=2)
            assert np.abs(f(pts)).max() <= 1 + 1e-12
            for k in range(1, 9):
                q = np.abs(f.directional(k, pts)).max()
                assert q <= cert.c**k * (1 + 1e-6), (f.name, k)


def test_ridge_diag_cube_certificate_only_when_small():
    assert get_function("ridge-sin:diag", 2).certificate("F1") is not None  # |a|_1 = sqrt 2
    assert get_function("ridge-sin:diag", 4).certificate("F1") is None  # |a|_1 = 2


def test_polynomial_parse_format_roundtrip():
    terms = parse_polynomial("0.5*x1^2*x3 - x2 + 1e-3", 3)
    assert terms == {(2, 0, 1): 0.5, (0, 1, 0): -1.0, (0, 0, 0): 1e-3}
    assert format_polynomial(terms) == "0.001-x2+0.5*x1^2*x3"
    assert parse_polynomial(format_polynomial(terms), 3) == terms
    with pytest.raises(ValueError):
        parse_polynomial("x4", 3)
    p = polynomial("x1*x2", Domain.cube(2))
    assert p(np.array([0.5, -0.5])) == -0.25


def test_polynomial_derivatives():
    p = polynomial("3*x1^2*x2 - x2^3 + 0.25", Domain.cube(2))
    x = np.array([0.3, -0.2])
    assert p.derivative((1, 1), x) == pytest.approx(6 * 0.3)
    assert p.derivative((0, 3), x) == pytest.approx(-6.0)
    assert p.derivative((0, 4), x) == 0.0
    assert p.certificate("F1") is None  # |p| can exceed 1


def test_counting_wrapper():
    f = CountingFunction(get_function("sinsum", 3))
    f(np.zeros((5, 3)))
    f(np.zeros(3))
    assert f.evaluations == 6
