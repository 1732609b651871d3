"""FunctionSpec families: closed-form evaluation, arity rules, derivatives."""

from __future__ import annotations

import math

import pytest

from inflation_regimes import Arity, EvaluationError, FunctionSpec
from inflation_regimes.util import linspace


def test_builtin_linear_closed_form():
    spec = FunctionSpec.linear(-0.1, 0.08, 0.01)
    assert spec.evaluate(0.0, 5.0) == pytest.approx(-0.05, abs=1e-15)
    assert spec.evaluate(1.0, 10.0) == pytest.approx(0.08, abs=1e-15)


def test_builtin_linear_of_m():
    spec = FunctionSpec.linear(0.05, 0.0, -0.003, Arity.OF_M)
    assert spec.evaluate(0.0, 10.0) == pytest.approx(0.02, abs=1e-15)
    # A is ignored by construction
    assert spec.evaluate(0.7, 10.0) == spec.evaluate(0.0, 10.0)


def test_builtin_log_linear_closed_form():
    spec = FunctionSpec.log_linear(-0.1, 0.08, 0.01)
    for a, m in [(0.0, 0.5), (0.5, 3.0), (1.0, 19.0)]:
        assert spec.evaluate(a, m) == pytest.approx(
            -0.1 + 0.08 * a + 0.01 * math.log(1 + m), abs=1e-15
        )


def test_evaluation_is_deterministic():
    for spec in (
        FunctionSpec.linear(-0.1, 0.08, 0.01),
        FunctionSpec.log_linear(0.0, 0.1, 0.02),
        FunctionSpec.expression("0.01*M + 0.08*A - 0.1"),
    ):
        assert spec.evaluate(0.3, 7.0) == spec.evaluate(0.3, 7.0)


def test_of_m_arity_rejects_a_dependence():
    with pytest.raises(ValueError):
        FunctionSpec.linear(0.05, 0.01, -0.003, Arity.OF_M)
    with pytest.raises(ValueError):
        FunctionSpec.expression("0.05 - 0.003*A", Arity.OF_M)
    # the same source over M alone is fine
    FunctionSpec.expression("0.05 - 0.003*M", Arity.OF_M)


def test_builtin_param_validation():
    with pytest.raises(ValueError):
        FunctionSpec(FunctionSpec.linear(0, 0, 0).kind, Arity.OF_AM, {"c9": 1.0})
    with pytest.raises(ValueError):
        FunctionSpec.expression("", Arity.OF_AM)
    # missing coefficients default to zero
    spec = FunctionSpec(FunctionSpec.linear(0, 0, 0).kind, Arity.OF_AM, {"c0": 0.25})
    assert spec.evaluate(1.0, 99.0) == 0.25


@pytest.mark.parametrize("h", [1e-3, 1e-4, 1e-5])
def test_partial_linear_equals_coefficient(h):
    spec = FunctionSpec.linear(-0.1, 0.08, 0.01)
    for a, m in [(0.5, 5.0), (0.25, 1.0), (0.75, 15.0)]:
        assert spec.partial("A", a, m, h) == pytest.approx(0.08, abs=1e-9)
        assert spec.partial("M", a, m, h) == pytest.approx(0.01, abs=1e-9)


def test_partial_one_sided_at_boundaries():
    spec = FunctionSpec.linear(-0.1, 0.08, 0.01)
    # exact for linear forms even one-sided
    assert spec.partial("A", 0.0, 5.0) == pytest.approx(0.08, abs=1e-9)
    assert spec.partial("A", 1.0, 5.0) == pytest.approx(0.08, abs=1e-9)


def test_partial_constant_is_zero():
    spec = FunctionSpec.expression("0.05", Arity.OF_M)
    assert spec.partial("M", 0.0, 3.0) == pytest.approx(0.0, abs=1e-9)


def test_partial_log_slope_at_money_floor():
    # analytic slope of 0.01*ln(1+M) is 0.01/(1+M); at M=0 a one-sided
    # difference must be used and lands near 0.01
    spec = FunctionSpec.expression("0.01*ln(1+M)", Arity.OF_M)
    assert spec.partial("M", 0.0, 0.0) == pytest.approx(0.01, abs=1e-6)


def test_partial_matches_log_linear_analytic_slope():
    spec = FunctionSpec.log_linear(-0.1, 0.08, 0.01)
    for m in (0.5, 2.0, 10.0):
        assert spec.partial("M", 0.3, m) == pytest.approx(0.01 / (1 + m), abs=1e-8)


def test_partial_rejects_bad_arguments():
    spec = FunctionSpec.linear(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        spec.partial("x", 0.5, 1.0)
    with pytest.raises(ValueError):
        spec.partial("A", 0.5, 1.0, h=0.0)


def test_partial_propagates_evaluation_errors():
    spec = FunctionSpec.expression("1/(M-5)")
    with pytest.raises(EvaluationError):
        spec.partial("A", 0.5, 5.0)


@pytest.mark.parametrize(
    "builtin,source",
    [
        (FunctionSpec.linear(-0.1, 0.08, 0.01), "-0.1 + 0.08*A + 0.01*M"),
        (FunctionSpec.log_linear(-0.1, 0.08, 0.01), "-0.1 + 0.08*A + 0.01*ln(1+M)"),
    ],
)
def test_builtin_matches_equivalent_expression_on_grid(builtin, source):
    expr = FunctionSpec.expression(source)
    for a in linspace(0.0, 1.0, 50):
        for m in linspace(0.1, 20.0, 50):
            assert abs(builtin.evaluate(a, m) - expr.evaluate(a, m)) < 1e-12


def test_function_spec_equality_ignores_cached_ast():
    a = FunctionSpec.expression("A + M")
    b = FunctionSpec.expression("A + M")
    assert a == b
