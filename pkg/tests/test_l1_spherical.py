import json
import math

import numpy as np
import pytest
from scipy.integrate import quad

from conftest import certified
from smoothtract.approximate import plan
from smoothtract.errors import MissingOracleError
from smoothtract.funcspace import ClassCertificate, Domain, SmoothFunction, get_function, polynomial, unit_volume_radius
from smoothtract.l1_spherical import (
    L1Certificate,
    ball_points,
    chunked_samples,
    l1_bound,
    mc_l1_error,
    radial_integral,
    select_order_l1,
    sphere_average,
    sphere_points,
    substream,
)
from smoothtract.taylor import TaylorModel, build_from_oracle
from smoothtract.verify import sup_error


def test_sphere_average_constants():
    f = get_function("const:-0.7", 3, "ball")
    e = sphere_average(f, 0, 0.4, 1000, seed=1)
    assert e.estimate == 0.7 and e.stderr == 0.0
    for k in (1, 2, 5):
        assert sphere_average(f, k, 0.4, 1000, seed=1).estimate == 0.0


def test_sphere_average_against_quadrature():
    f = get_function("ridge-sin", 2, "ball", radius=1.0)
    e = sphere_average(f, 0, 1.0, 100_000, seed=2024)
    oracle = 2 / math.pi * quad(lambda t: abs(math.sin(math.cos(t))), 0, math.pi / 2)[0]
    assert abs(e.estimate - oracle) <= 3 * e.stderr


def test_sphere_average_radial_derivative_against_quadrature():
    # d = 2, k = 1: d_nu f(r u) = cos(theta) cos(r cos(theta)) for a = e_1
    f = get_function("ridge-sin", 2, "ball", radius=1.0)
    e = sphere_average(f, 1, 0.8, 100_000, seed=5)
    oracle = 2 / math.pi * quad(lambda t: abs(math.cos(t) * math.cos(0.8 * math.cos(t))), 0, math.pi / 2)[0]
    assert abs(e.estimate - oracle) <= 3 * e.stderr


def test_sphere_average_contract():
    bare = SmoothFunction("bare", Domain.ball(2), lambda x: x[:, 0])
    with pytest.raises(MissingOracleError):
        sphere_average(bare, 0, 0.5, 10, 0)
    f = get_function("sinsum", 2, "ball")
    with pytest.raises(ValueError):
        sphere_average(f, 0, 0.5, 1, 0)
    with pytest.raises(ValueError):
        sphere_average(f, 0, 0.0, 10, 0)


def test_estimate_json():
    e = sphere_average(get_function("sinsum", 3, "ball"), 1, 0.5, 500, seed=9)
    data = json.loads(json.dumps(e.to_dict()))
    assert set(data) == {"quantity", "estimate", "stderr", "m", "seed"}
    assert data["estimate"] >= 0


def test_l1_bound_examples():
    assert l1_bound("F3", 0.5, 0) == 1.0
    assert l1_bound("F4", 0.5, 0) == 0.5
    assert l1_bound("F3", 2.0, 4) == pytest.approx(16 / 24, rel=1e-14)
    assert l1_bound("F4", 2.0, 4, c=1.5) == pytest.approx(1.5**5 * 32 / 24, rel=1e-14)
    assert math.isfinite(l1_bound("F4", 50.0, 3000))
    assert L1Certificate("F3", 1.0, 4, 2.0).bound == l1_bound("F3", 2.0, 4)
    with pytest.raises(ValueError):
        l1_bound("F2", 1.0, 1)


def test_select_order_l1_examples():
    assert select_order_l1(0.5, 0.5, "F4") == 0
    # 0.5^k/k!: 1, 0.5, 0.125, 0.0208
    assert select_order_l1(0.1, 0.5, "F3") == 3
    assert select_order_l1(0.999, 0.9, "F4") == 0


def test_select_order_l1_is_minimal():
    for eps in np.geomspace(1e-9, 0.9, 20):
        for r in (0.3, 1.0, 2.5, 7.0):
            for tag in ("F3", "F4"):
                k = select_order_l1(eps, r, tag)
                assert l1_bound(tag, r, k) <= eps
                assert k == 0 or l1_bound(tag, r, k - 1) > eps


def test_mc_l1_error_examples():
    dom = Domain.ball(3)
    p = polynomial("0.1*x1*x2 - 0.05*x3^2 + 0.2", dom)
    est = mc_l1_error(p, build_from_oracle(p, 2), m=10_000, seed=1)
    assert est.estimate <= 1e-10
    c = get_function("const:0.3", 3, "ball")
    est = mc_l1_error(c, TaylorModel.zero(3), m=10_000, seed=1)
    assert abs(est.estimate - 0.3) <= 3 * est.stderr + 1e-15
    f = get_function("ridge-sin", 3, "ball")
    k = select_order_l1(0.1, f.domain.radius, "F4")
    est = mc_l1_error(f, build_from_oracle(f, k), m=100_000, seed=3)
    assert est.estimate <= l1_bound("F4", f.domain.radius, k) + 3 * est.stderr


@pytest.mark.parametrize("d", [2, 3, 5])
def test_certificate_soundness(d):
    r = unit_volume_radius(d)
    for f in certified(d, "ball", "F2", c_max=1.0):
        for eps in (0.3, 0.1, 0.01):
            k = select_order_l1(eps, r, "F4")
            est = mc_l1_error(f, build_from_oracle(f, k), m=20_000, seed=d)
            assert est.estimate <= l1_bound("F4", r, k) + 3 * est.stderr, (f.name, k)


@pytest.mark.parametrize("d", [2, 3])
def test_l1_below_sup(d):
    for f in certified(d, "ball", "F2"):
        for j in (2, 4):
            T = build_from_oracle(f, plan(f.domain, f.certificate("F2"), 2.0**-j).k)
            l1 = mc_l1_error(f, T, m=20_000, seed=j)
            sup = sup_error(f, T, n_points=5000, seed=j).sup
            assert l1.estimate <= sup + 3 * l1.stderr


def test_sampler_correctness():
    for d in (1, 2, 5, 20):
        r = unit_volume_radius(d)
        x = ball_points(substream(7, 0), 200_000, d, r)
        sq = (x**2).sum(axis=1)
        se = sq.std(ddof=1) / math.sqrt(len(sq))
        assert abs(sq.mean() - d / (d + 2) * r**2) <= 3 * se
        assert np.all(np.sqrt(sq) <= r * (1 + 1e-15))
        u = sphere_points(substream(7, 1), 10_000, d)
        assert np.all(np.abs(np.linalg.norm(u, axis=1) - 1) <= 1e-12)


def test_ball_points_avoid_origin():
    x = ball_points(substream(0, 0), 50_000, 1, 1.0)
    assert np.all(np.abs(x) >= 1e-12)


def test_seed_determinism_across_threads():
    f = get_function("prodcos", 4, "ball")
    T = build_from_oracle(f, 2)
    a = mc_l1_error(f, T, m=50_000, seed=11, threads=1)
    b = mc_l1_error(f, T, m=50_000, seed=11, threads=4)
    assert a == b
    assert mc_l1_error(f, T, m=50_000, seed=12) != a
    s1 = sphere_average(f, 2, 0.5, 30_000, seed=3, threads=1)
    s2 = sphere_average(f, 2, 0.5, 30_000, seed=3, threads=3)
    assert s1 == s2


def test_chunks_are_independent_of_total():
    # the first chunk depends only on the seed, so a longer run extends a shorter one
    draw = lambda rng, n: rng.random(n)
    a = chunked_samples(10_000, 5, draw)
    b = chunked_samples(20_000, 5, draw)
    assert np.array_equal(a[:8192], b[:8192])


def test_radial_integral_constant():
    f = get_function("const:0.5", 2, "ball")
    est = radial_integral(f, 0, 0.5, 100, seed=0)
    assert est.estimate == pytest.approx(0.25, rel=1e-14)
    assert est.stderr == 0.0
