"""Probability budgets and worst-case distribution maximization."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ciesdro.ambiguity import (
    compute_budgets, fixed_budgets, worst_case_greedy, worst_case_lp,
)


def test_budget_reference_values():
    b = compute_budgets(5000, 8, 0.99, 0.99)
    assert b.theta1 == pytest.approx(8 / 10000 * math.log(1600), abs=1e-12)
    assert b.theta1 == pytest.approx(5.9022e-3, abs=1e-6)
    assert b.thetainf == pytest.approx(7.3778e-4, abs=1e-7)


def test_budget_small_case():
    b = compute_budgets(100, 2, 0.5, 0.5)
    assert b.theta1 == pytest.approx(0.01 * math.log(8), abs=1e-12)
    assert b.thetainf == pytest.approx(0.005 * math.log(8), abs=1e-12)


@given(m=st.integers(1, 10 ** 6), n=st.integers(1, 64),
       a=st.floats(0.01, 0.99))
@settings(max_examples=60, deadline=None)
def test_doubling_history_halves_budgets(m, n, a):
    b1 = compute_budgets(m, n, a, a)
    b2 = compute_budgets(2 * m, n, a, a)
    assert b2.theta1 == pytest.approx(b1.theta1 / 2, rel=1e-12)
    assert b2.thetainf == pytest.approx(b1.thetainf / 2, rel=1e-12)


@given(m=st.integers(10, 10 ** 5), n=st.integers(2, 32),
       a1=st.floats(0.05, 0.995), ai=st.floats(0.05, 0.995))
@settings(max_examples=60, deadline=None)
def test_concentration_inverse_identity(m, n, a1, ai):
    b = compute_budgets(m, n, a1, ai)
    assert 1 - 2 * n * math.exp(-2 * m * b.theta1 / n) == pytest.approx(a1, abs=1e-9)
    assert 1 - 2 * n * math.exp(-2 * m * b.thetainf) == pytest.approx(ai, abs=1e-9)


def test_budget_input_validation():
    with pytest.raises(ValueError):
        compute_budgets(100, 4, 0.0, 0.5)
    with pytest.raises(ValueError):
        compute_budgets(100, 4, 0.5, 1.0)
    with pytest.raises(ValueError):
        compute_budgets(0, 4, 0.5, 0.5)


def test_zero_budgets_return_initial_distribution():
    p0 = np.array([0.3, 0.5, 0.2])
    f = np.array([7.0, 1.0, 3.0])
    wc = worst_case_lp(p0, f, fixed_budgets(3, 0.0, 0.0))
    assert wc.p == pytest.approx(p0, abs=1e-9)
    assert wc.objective == pytest.approx(float(p0 @ f), abs=1e-9)


def test_four_scenario_vertex():
    p0 = np.full(4, 0.25)
    f = np.array([4.0, 3.0, 2.0, 1.0])
    budget = fixed_budgets(4, 0.2, 0.15)
    for solver in (worst_case_lp, worst_case_greedy):
        wc = solver(p0, f, budget)
        assert wc.objective == pytest.approx(2.8, abs=1e-9)
    assert worst_case_greedy(p0, f, budget).p == pytest.approx(
        [0.35, 0.25, 0.25, 0.15], abs=1e-9)


def test_single_scenario_forced():
    wc = worst_case_lp(np.array([1.0]), np.array([42.0]), fixed_budgets(1, 0.5, 0.5))
    assert wc.p == pytest.approx([1.0])
    assert wc.objective == pytest.approx(42.0)


def test_unconstrained_budgets_concentrate_on_worst():
    p0 = np.array([0.4, 0.3, 0.3])
    f = np.array([2.0, 9.0, 5.0])
    budget = fixed_budgets(3, 2.0, 1.0)
    for solver in (worst_case_lp, worst_case_greedy):
        wc = solver(p0, f, budget)
        assert wc.objective == pytest.approx(9.0, abs=1e-9)
    assert worst_case_greedy(p0, f, budget).p == pytest.approx([0, 1, 0], abs=1e-9)


def test_constant_costs_leave_objective_at_mean():
    p0 = np.array([0.25, 0.25, 0.5])
    f = np.array([3.0, 3.0, 3.0])
    wc = worst_case_greedy(p0, f, fixed_budgets(3, 0.4, 0.3))
    assert wc.p == pytest.approx(p0)
    assert wc.objective == pytest.approx(3.0)


def test_off_simplex_rejected():
    with pytest.raises(ValueError):
        worst_case_lp(np.array([0.5, 0.6]), np.array([1.0, 2.0]),
                      fixed_budgets(2, 0.1, 0.1))


def _random_case(rng):
    n = int(rng.integers(2, 11))
    p0 = rng.dirichlet(np.ones(n) * rng.uniform(0.5, 3.0))
    f = rng.normal(0, 100, size=n).round(4)
    theta1 = float(rng.uniform(0, 2.2))
    thetainf = float(rng.uniform(0, 1.1))
    return p0, f, fixed_budgets(n, theta1, thetainf)


def test_lp_equals_greedy_randomized():
    rng = np.random.default_rng(314)
    for _ in range(60):
        p0, f, budget = _random_case(rng)
        a = worst_case_lp(p0, f, budget)
        b = worst_case_greedy(p0, f, budget)
        assert abs(a.objective - b.objective) <= 1e-8
        for wc in (a, b):
            assert wc.p.sum() == pytest.approx(1.0, abs=1e-9)
            assert np.all(wc.p >= -1e-9)
            assert (wc.shift_pos + wc.shift_neg).sum() <= budget.theta1 + 1e-9
            assert (wc.shift_pos + wc.shift_neg).max() <= budget.thetainf + 1e-9


def test_objective_monotone_in_budgets():
    rng = np.random.default_rng(9)
    p0 = rng.dirichlet(np.ones(6))
    f = rng.normal(0, 50, size=6)
    prev = -np.inf
    for theta1 in (0.0, 0.05, 0.2, 0.8, 2.0):
        obj = worst_case_lp(p0, f, fixed_budgets(6, theta1, 0.5)).objective
        assert obj >= prev - 1e-9
        assert obj >= float(p0 @ f) - 1e-9
        prev = obj
    prev = -np.inf
    for thetainf in (0.0, 0.02, 0.1, 0.5, 1.0):
        obj = worst_case_lp(p0, f, fixed_budgets(6, 1.0, thetainf)).objective
        assert obj >= prev - 1e-9
        prev = obj


def test_comprehensive_set_inside_single_norm_sets():
    rng = np.random.default_rng(21)
    for _ in range(20):
        p0, f, budget = _random_case(rng)
        joint = worst_case_lp(p0, f, budget).objective
        only1 = worst_case_lp(p0, f, fixed_budgets(budget.n_s, budget.theta1, 1.0))
        onlyinf = worst_case_lp(p0, f, fixed_budgets(budget.n_s, 2.0, budget.thetainf))
        assert joint <= only1.objective + 1e-9
        assert joint <= onlyinf.objective + 1e-9
