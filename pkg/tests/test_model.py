"""Model assumptions, payoffs, best responses, grid validation."""

from __future__ import annotations

import math
import random

import pytest

from inflation_regimes import (
    Arity,
    EconomyState,
    FunctionSpec,
    ModelSpec,
    TieRule,
    best_response,
    payoff,
    validate_model,
)
from conftest import make_reference_spec


def test_reference_model_validates(reference_spec):
    report = validate_model(reference_spec)
    assert report.passed
    assert report.violations == ()
    assert report.probe_m_low == pytest.approx(0.01)
    assert report.probe_m_high == pytest.approx(200.0)


def test_flat_inflation_response_fails_everywhere(reference_spec):
    spec = ModelSpec(
        FunctionSpec.linear(-0.1, 0.0, 0.01),
        reference_spec.r,
        reference_spec.m_lo,
        reference_spec.m_hi,
    )
    report = validate_model(spec)
    assert not report.pi_increasing_in_A
    assert report.pi_increasing_in_M and report.r_decreasing_in_M
    bad = [v for v in report.violations if v.check == "pi_increasing_in_A"]
    assert len(bad) == spec.n_A * spec.n_M  # zero slope fails at every node


def test_increasing_interest_fails(reference_spec):
    spec = ModelSpec(
        reference_spec.pi,
        FunctionSpec.linear(0.05, 0.0, 0.001, Arity.OF_M),
        reference_spec.m_lo,
        reference_spec.m_hi,
    )
    report = validate_model(spec)
    assert not report.r_decreasing_in_M
    assert report.pi_increasing_in_A and report.pi_increasing_in_M


def test_flat_interest_passes(reference_spec):
    spec = ModelSpec(
        reference_spec.pi,
        FunctionSpec.linear(0.05, 0.0, 0.0, Arity.OF_M),
        reference_spec.m_lo,
        reference_spec.m_hi,
    )
    assert validate_model(spec).r_decreasing_in_M  # non-increasing is enough


def test_evaluation_error_becomes_violation():
    # grid hits M = 5 exactly, where pi blows up
    spec = ModelSpec(
        FunctionSpec.expression("0.01*M + 0.08*A + 1/(M-5)"),
        FunctionSpec.linear(0.05, 0.0, -0.003, Arity.OF_M),
        1.0,
        9.0,
        n_A=3,
        n_M=5,
    )
    report = validate_model(spec)
    assert not report.passed
    assert any(v.M == 5.0 and math.isnan(v.value) for v in report.violations)


def test_violations_found_on_coarse_grid_survive_refinement():
    # slope in A flips sign at M = 5: violations exactly at nodes with M <= 5
    pi = FunctionSpec.expression("0.01*M + 0.08*A*(M-5)")
    r = FunctionSpec.linear(0.05, 0.0, -0.003, Arity.OF_M)

    def violation_points(n):
        spec = ModelSpec(pi, r, 1.0, 17.0, n_A=n, n_M=n)
        return {
            (v.A, v.M)
            for v in validate_model(spec).violations
            if v.check == "pi_increasing_in_A"
        }

    coarse, fine = violation_points(5), violation_points(9)
    assert coarse  # the defect is visible already at 5x5
    assert coarse <= fine  # refinement only adds points, never loses one


def test_model_spec_invariants(reference_spec):
    pi, r = reference_spec.pi, reference_spec.r
    with pytest.raises(ValueError):
        ModelSpec(r, r, 0.1, 20.0)  # pi must read (A, M)
    with pytest.raises(ValueError):
        ModelSpec(pi, pi, 0.1, 20.0)  # r must read M alone
    with pytest.raises(ValueError):
        ModelSpec(pi, r, 0.0, 20.0)
    with pytest.raises(ValueError):
        ModelSpec(pi, r, 5.0, 5.0)
    with pytest.raises(ValueError):
        ModelSpec(pi, r, 0.1, 20.0, n_A=1)


def test_economy_state_bounds():
    EconomyState(M=1.0, A=0.0)
    EconomyState(M=1.0, A=1.0)
    with pytest.raises(ValueError):
        EconomyState(M=0.0, A=0.5)
    with pytest.raises(ValueError):
        EconomyState(M=1.0, A=1.5)
    state = EconomyState(M=8.0, A=0.5)
    pi_val, r_val = make_reference_spec().rates(state)
    assert pi_val == pytest.approx(0.02, abs=1e-15)
    assert r_val == pytest.approx(0.026, abs=1e-15)


def test_payoff_direct_cases():
    assert payoff(0, 0.02, 0.05) == pytest.approx(0.03, abs=1e-15)
    assert payoff(1, 0.02, 0.05) == pytest.approx(-0.03, abs=1e-15)
    assert payoff(0, 0.03, 0.03) == 0.0
    assert payoff(1, 0.03, 0.03) == 0.0
    with pytest.raises(ValueError):
        payoff(2, 0.0, 0.0)


def test_payoff_antisymmetry_exact():
    rng = random.Random(99)
    for _ in range(200):
        pi_val = rng.uniform(-0.5, 0.5)
        r_val = rng.uniform(-0.5, 0.5)
        assert payoff(0, pi_val, r_val) + payoff(1, pi_val, r_val) == 0.0


def test_best_response_branches():
    assert best_response(0.04, 0.02) == 1
    assert best_response(0.01, 0.02) == 0
    assert best_response(0.02, 0.02, TieRule.STAY_LOW) == 0
    assert best_response(0.02, 0.02, TieRule.STAY_HIGH) == 1
    assert best_response(0.02, 0.02, TieRule.INDIFFERENT) is None


def test_best_response_consistent_with_payoff():
    rng = random.Random(4242)
    for _ in range(500):
        pi_val = rng.uniform(-0.2, 0.2)
        r_val = rng.uniform(-0.2, 0.2)
        br = best_response(pi_val, r_val)
        if pi_val != r_val:
            assert payoff(br, pi_val, r_val) > 0.0


def test_validation_report_serializes(reference_spec):
    import json

    doc = validate_model(reference_spec).to_dict()
    json.dumps(doc)
    assert doc["passed"] is True
