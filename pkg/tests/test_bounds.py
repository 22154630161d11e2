import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ddinv.bounds import (
    c_constant,
    corollary_limit,
    f_lambda,
    f_max_closed_form,
    g_lambda,
    g_max_closed_form,
    theorem1_bound,
)
from ddinv.errors import DomainError, InvalidParams


def c_exact(n, m, M):
    n, m, M = Fraction(n), Fraction(m), Fraction(M)
    return (
        2 * (n - 2) * m / (n * M + (n - 2) * m)
        - (n - 2) * M * m / (((n - 2) * m + M) * ((n - 2) * m + 2 * M))
        - M / (m * (n - 1))
    )


def ulps(a, b):
    return abs(a - b) / math.ulp(max(abs(a), abs(b)))


# -- C(m, M) -----------------------------------------------------------------------------


def test_c_equal_params_simplification():
    # for M = m the constant reduces to (n^2 - 4n + 2) / (n (n - 1))
    for n in range(3, 40):
        assert c_exact(n, 1, 1) == Fraction(n * n - 4 * n + 2, n * (n - 1))


@pytest.mark.parametrize(
    "n, m, M, expected",
    [
        (4, 1, 1, Fraction(1, 6)),
        (3, 1, 1, Fraction(-1, 6)),
        (10, 1, 2, Fraction(16, 28) - Fraction(16, 120) - Fraction(2, 9)),
    ],
)
def test_c_values(n, m, M, expected):
    assert c_exact(n, m, M) == expected
    assert c_constant(n, m, M) == pytest.approx(float(expected), rel=1e-15)


def test_c_10_1_2_is_68_over_315():
    assert c_exact(10, 1, 2) == Fraction(68, 315)
    assert c_constant(10, 1, 2) == pytest.approx(0.2158730, abs=1e-7)


@pytest.mark.parametrize("args", [(2, 1, 1), (3, 0, 1), (3, 2, 1), (3, -1, -1)])
def test_c_invalid(args):
    with pytest.raises(InvalidParams):
        c_constant(*args)


@settings(max_examples=200)
@given(n=st.integers(3, 10**6), m=st.floats(1e-3, 1e3), k=st.floats(1, 1e3))
def test_c_matches_exact_rational(n, m, k):
    M = m * k
    exact = c_exact(n, m, M)
    # cancellation between terms: control absolute error relative to the term sizes
    scale = 2 + M / (m * (n - 1))
    assert abs(c_constant(n, m, M) - float(exact)) <= 8 * np.finfo(float).eps * scale


@pytest.mark.parametrize("s", [0.5, 2, 10])
@pytest.mark.parametrize("n, m, M", [(4, 1, 1), (10, 1, 2), (50, 1, 5), (100, 1, 1.01), (1000, 0.3, 7), (37, 2, 3)])
def test_c_scale_invariance(n, m, M, s):
    assert ulps(c_constant(n, s * m, s * M), c_constant(n, m, M)) <= 4


# -- bound ------------------------------------------------------------------------------


def test_bound_4_1_1():
    out = theorem1_bound(4, 1, 1)
    assert out.applicable
    assert out.bound == pytest.approx(2 / 3, abs=1e-12)


def test_bound_3_1_1_not_applicable():
    out = theorem1_bound(3, 1, 1)
    assert not out.applicable
    assert out.bound is None
    assert out.c_value == pytest.approx(-1 / 6, abs=1e-15)


def test_bound_10_1_2():
    # 2 / (81 * 68/315) = 35/306
    out = theorem1_bound(10, 1, 2)
    exact = Fraction(2) / (81 * c_exact(10, 1, 2))
    assert exact == Fraction(35, 306)
    assert out.applicable
    assert out.bound == pytest.approx(float(exact), rel=1e-14)
    assert out.bound == pytest.approx(0.114379, abs=5e-7)


def test_bound_n2_reports_c_but_not_applicable():
    out = theorem1_bound(2, 1, 1)
    assert not out.applicable
    assert out.c_value == -1.0


@pytest.mark.parametrize("args", [(4, 0, 1), (4, 2, 1), (1, 1, 1)])
def test_bound_invalid(args):
    with pytest.raises(InvalidParams):
        theorem1_bound(*args)


@settings(max_examples=200)
@given(n=st.integers(2, 10**5), m=st.floats(1e-2, 1e2), k=st.floats(1, 100))
def test_bound_outcome_invariants(n, m, k):
    M = m * k
    out = theorem1_bound(n, m, M)
    assert out.applicable == (n >= 3 and out.c_value > 0)
    if out.applicable:
        assert out.bound == M / (m**2 * (n - 1) ** 2 * out.c_value)
        assert out.bound > 0


# -- f and g -----------------------------------------------------------------------------


@pytest.mark.parametrize("lam", [1, 1.5, 2, 2.5, 3, 3.7, 4])
def test_f_constant_when_equal(lam):
    assert f_lambda(lam, 5, 1, 1) == pytest.approx(0.25, abs=1e-15)


def test_f_hand_value():
    assert f_lambda(5, 10, 1, 2) == pytest.approx(3 / 7, abs=1e-15)


@pytest.mark.parametrize("n, m, M", [(3, 1, 1), (10, 1, 2), (7, 0.5, 4)])
def test_f_at_one(n, m, M):
    assert f_lambda(1, n, m, M) == M / (M + (n - 2) * m)


def test_g_at_one_is_zero():
    assert g_lambda(1, 10, 1, 2) == 0.0


def test_g_hand_values():
    assert g_lambda(9, 10, 1, 2) == pytest.approx(Fraction(8, 10) - Fraction(8, 12), abs=1e-15)
    assert g_lambda(9, 10, 1, 2) == pytest.approx(2 / 15, abs=1e-15)
    assert g_lambda(5, 10, 1, 2) == pytest.approx(1 / 28, abs=1e-15)


@pytest.mark.parametrize("fn", [f_lambda, g_lambda])
@pytest.mark.parametrize("lam", [0.999, 9.001, -1, 20])
def test_lambda_domain(fn, lam):
    with pytest.raises(DomainError):
        fn(lam, 10, 1, 2)


def test_f_max_values():
    assert f_max_closed_form(10, 1, 2) == pytest.approx(3 / 7, abs=1e-15)
    assert f_max_closed_form(5, 1, 1) == 0.25
    assert f_max_closed_form(10, 1, 2) == pytest.approx(f_lambda(5, 10, 1, 2), abs=1e-15)


def test_f_max_general_formula_continuous_at_equality():
    # just above M = m the general branch must land next to 1/(n-1)
    assert f_max_closed_form(7, 1, 1 + 1e-12) == pytest.approx(1 / 6, abs=1e-11)


def test_g_max_values():
    assert g_max_closed_form(10, 1, 2) == pytest.approx(2 / 15, abs=1e-15)
    assert g_max_closed_form(3, 1, 1) == pytest.approx(1 / 6, abs=1e-15)


@settings(max_examples=50)
@given(n=st.integers(3, 10**5), m=st.floats(1e-3, 1e3), k=st.floats(1, 1e3))
def test_g_max_matches_g_at_end(n, m, k):
    M = m * k
    assert ulps(g_max_closed_form(n, m, M), g_lambda(n - 1, n, m, M)) <= 4


def test_g_max_matches_g_at_end_50_fixed_triples():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        n = int(rng.integers(3, 2000))
        m = float(rng.uniform(0.1, 10))
        M = m * float(rng.uniform(1, 20))
        assert ulps(g_max_closed_form(n, m, M), g_lambda(n - 1, n, m, M)) <= 4


GRID_CASES = [(10, 1, 2), (50, 1, 5), (100, 1, 1.01), (7, 0.2, 3), (300, 1, 40)]


@pytest.mark.parametrize("n, m, M", GRID_CASES)
def test_f_concave_on_grid(n, m, M):
    lam = np.linspace(1, n - 1, 2001)
    f = np.array([f_lambda(x, n, m, M) for x in lam])
    h = lam[1] - lam[0]
    second = (f[:-2] - 2 * f[1:-1] + f[2:]) / h**2
    assert second.max() <= 1e-9
    assert f.max() <= f_max_closed_form(n, m, M) + 1e-12
    # maximum sits at n/2
    assert abs(lam[np.argmax(f)] - n / 2) <= h


@pytest.mark.parametrize("n, m, M", GRID_CASES)
def test_g_monotone_on_grid(n, m, M):
    lam = np.linspace(1, n - 1, 2001)
    g = np.array([g_lambda(x, n, m, M) for x in lam])
    assert np.all(np.diff(g) >= 0)
    assert g.min() >= 0
    assert g.max() <= g_max_closed_form(n, m, M) + 1e-12


@settings(max_examples=200)
@given(n=st.integers(3, 10**6), m=st.floats(1e-3, 1e3), k=st.floats(1, 1e3))
def test_contraction_below_one_when_applicable(n, m, k):
    M = m * k
    if c_constant(n, m, M) > 0:
        assert f_max_closed_form(n, m, M) + g_max_closed_form(n, m, M) < 1


# -- corollary ----------------------------------------------------------------------------


def test_corollary_values():
    assert corollary_limit(1, 1) == 1.0
    assert corollary_limit(1, 2) == pytest.approx(2 / 3, abs=1e-16)
    assert abs(c_constant(10**4, 1, 2) - 2 / 3) < 0.01


def test_corollary_invalid():
    with pytest.raises(InvalidParams):
        corollary_limit(2, 1)


@pytest.mark.parametrize("ratio", [1, 1.5, 2, 5, 10, 30])
@pytest.mark.parametrize("m", [0.1, 1, 7])
def test_limit_rate(ratio, m):
    M = m * ratio
    limit = corollary_limit(m, M)
    gaps = []
    for n in [100, 200, 500, 1000, 10**4, 10**5, 10**6]:
        gap = abs(c_constant(n, m, M) - limit)
        assert gap <= 5 * ratio / n
        gaps.append(gap)
    # the gap shrinks along the tail
    assert all(b <= a for a, b in zip(gaps, gaps[1:]))
