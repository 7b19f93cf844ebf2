import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smoothtract.errors import MissingOracleError, ResourceLimitError
from smoothtract.funcspace import Domain, SmoothFunction, get_function, linear_combination, permuted, polynomial, registry
from smoothtract.multiindex import enumerate_indices, rank
from smoothtract.taylor import TaylorModel, build_from_oracle, check_size, directional_series
from smoothtract.verify import random_points


def test_constant_model():
    T = build_from_oracle(get_function("const:0.7", 3), 4)
    assert T.coefficients[0] == 0.7
    assert not np.any(T.coefficients[1:])
    assert T.provenance == "exact-oracle"


def test_bilinear_model():
    T = build_from_oracle(polynomial("x1*x2", Domain.cube(2)), 2)
    expected = np.zeros(6)
    expected[rank((1, 1))] = 1.0
    assert np.array_equal(T.coefficients, expected)
    assert T(np.array([0.5, -0.5])) == -0.25


def test_sin_model():
    f = SmoothFunction(
        "sin-x1",
        Domain.cube(2),
        lambda x: np.sin(x[:, 0]),
        partial=lambda a, x: (np.sin, np.cos, lambda t: -np.sin(t), lambda t: -np.cos(t))[a[0] % 4](x[:, 0]) * (a[1] == 0),
    )
    T = build_from_oracle(f, 3)
    for alpha, c in zip(T.indices, T.coefficients):
        assert c == {(1, 0): 1.0, (3, 0): -1 / 6}.get(alpha, 0.0)
    assert T(np.array([0.5, 0.0])) == pytest.approx(0.5 - 0.125 / 6, abs=1e-15)


def test_value_at_origin_is_constant_term():
    f = get_function("prodcos", 4)
    T = build_from_oracle(f, 5)
    assert T(np.zeros(4)) == T.coefficients[0] == 1.0


@pytest.mark.parametrize("d", range(1, 7))
def test_polynomial_exactness(d):
    rng = np.random.default_rng(d)
    for k in range(6):
        for _ in range(3):
            idx = enumerate_indices(d, k)
            chosen = rng.choice(len(idx), size=min(6, len(idx)), replace=False)
            terms = {idx[i]: rng.uniform(-1, 1) for i in chosen}
            p = polynomial(terms, Domain.cube(d))
            T = build_from_oracle(p, k)
            pts = random_points(p.domain, 1000, seed=k)
            assert np.max(np.abs(T(pts) - p(pts))) <= 1e-10


def test_permutation_equivariance():
    f = polynomial("0.3*x1^2*x2 - 0.2*x3 + 0.1*x1*x3^2", Domain.cube(3))
    perm = [2, 0, 1]
    g = permuted(f, perm)
    Tf = build_from_oracle(f, 4)
    Tg = build_from_oracle(g, 4)
    for alpha in Tg.indices:
        # g(x) = f(x[perm]): y^beta with y = x[perm] is x^alpha where alpha[perm[i]] = beta[i]
        beta = [alpha[p] for p in perm]
        assert Tg.coefficient(alpha) == Tf.coefficient(beta)
    for fam in ("prodcos", "sinsum", "ridge-sin"):
        f = get_function(fam, 3)
        Tf, Tg = build_from_oracle(f, 3), build_from_oracle(permuted(f, perm), 3)
        pts = random_points(f.domain, 50, seed=2)
        assert np.allclose(Tg(pts), Tf(pts[:, perm]), atol=1e-15)


def test_linearity():
    d = 3
    f, g = get_function("prodcos", d), get_function("ridge-sin", d)
    a, b = 0.75, -1.25
    h = linear_combination([a, b], [f, g])
    Th = build_from_oracle(h, 4)
    combo = a * build_from_oracle(f, 4).coefficients + b * build_from_oracle(g, 4).coefficients
    assert np.allclose(Th.coefficients, combo, rtol=0, atol=1e-16)


def test_cube_ball_operator_identity():
    for d in (2, 3, 5):
        for f in registry(d, "ball"):
            pts = random_points(f.domain, 100, seed=d)
            for k in (0, 2, 5):
                T = build_from_oracle(f, k)
                assert np.max(np.abs(T(pts) - directional_series(f, pts, k))) <= 1e-9


def test_json_roundtrip():
    T = build_from_oracle(get_function("sinsum", 3), 3)
    data = T.to_dict()
    assert set(data) == {"d", "k", "ordering", "coefficients", "provenance"}
    assert data["ordering"] == "gradedlex"
    assert TaylorModel.from_json(T.to_json()) == T


def test_truncate_is_prefix():
    T = build_from_oracle(get_function("prodcos", 3), 5)
    assert T.truncate(3) == build_from_oracle(get_function("prodcos", 3), 3)


def test_size_guard():
    with pytest.raises(ResourceLimitError):
        check_size(1000, 10)
    with pytest.raises(ValueError):
        TaylorModel(2, 1, np.zeros(4))
    with pytest.raises(ValueError):
        TaylorModel(1, 0, np.array([np.nan]))


def test_missing_oracle():
    f = SmoothFunction("bare", Domain.cube(2), lambda x: x[:, 0])
    with pytest.raises(MissingOracleError):
        build_from_oracle(f, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 2**31))
def test_compensated_evaluation_matches_exact_sum(d, k, seed):
    # compare with exact rational arithmetic on random coefficients and points
    from fractions import Fraction

    rng = np.random.default_rng(seed)
    n = len(enumerate_indices(d, k))
    T = TaylorModel(d, k, rng.uniform(-1, 1, n))
    x = rng.uniform(-0.5, 0.5, d)
    exact = sum(
        Fraction(c) * np.prod([Fraction(v) ** a for v, a in zip(x, alpha)], dtype=object)
        for c, alpha in zip(T.coefficients, T.indices)
    )
    assert abs(T(x) - float(exact)) <= 4 * np.finfo(float).eps * max(1.0, abs(float(exact)))
