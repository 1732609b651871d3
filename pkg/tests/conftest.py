"""Shared fixtures and independent closed-form oracles.

The oracles here are exact rational arithmetic on linear calibrations; they
never touch the bisection code they check.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from inflation_regimes import (
    Arity,
    DynamicsConfig,
    FunctionSpec,
    GoodSpec,
    ModelSpec,
    solve_cutoffs,
)

# reference calibration: pi = -0.1 + 0.08 A + 0.01 M, r = 0.05 - 0.003 M
REF_PI = ("-0.1", "0.08", "0.01")
REF_R = ("0.05", "-0.003")
REF_M_DOMAIN = (0.1, 20.0)


def linear_cutoffs_oracle(
    pi_coeffs: tuple[str, str, str], r_coeffs: tuple[str, str]
) -> tuple[Fraction, Fraction]:
    """Exact roots of pi(1, M) = r(M) and pi(0, M) = r(M) for linear forms.

    Coefficients are decimal strings so Fraction keeps them exact.
    """
    c0p, cap, cmp_ = (Fraction(c) for c in pi_coeffs)
    c0r, cmr = (Fraction(c) for c in r_coeffs)
    m_star = (c0r - c0p - cap) / (cmp_ - cmr)
    m_star_star = (c0r - c0p) / (cmp_ - cmr)
    return m_star, m_star_star


def linear_interior_oracle(
    pi_coeffs: tuple[str, str, str], r_coeffs: tuple[str, str], M: Fraction
) -> Fraction:
    """Exact interior indifference share solving pi(A, M) = r(M)."""
    c0p, cap, cmp_ = (Fraction(c) for c in pi_coeffs)
    c0r, cmr = (Fraction(c) for c in r_coeffs)
    return (c0r + cmr * M - c0p - cmp_ * M) / cap


REF_M_STAR, REF_M_STAR_STAR = linear_cutoffs_oracle(REF_PI, REF_R)  # 70/13, 150/13

# exact band endpoints: pi(0, m_star_star) and pi(1, m_star)
REF_BAND_LO = Fraction(REF_PI[0]) + Fraction(REF_PI[2]) * REF_M_STAR_STAR
REF_BAND_HI = (
    Fraction(REF_PI[0]) + Fraction(REF_PI[1]) + Fraction(REF_PI[2]) * REF_M_STAR
)


def make_reference_spec() -> ModelSpec:
    pi = FunctionSpec.linear(*(float(Fraction(c)) for c in REF_PI))
    r = FunctionSpec.linear(
        float(Fraction(REF_R[0])), 0.0, float(Fraction(REF_R[1])), Arity.OF_M
    )
    return ModelSpec(pi, r, *REF_M_DOMAIN)


@pytest.fixture(scope="session")
def reference_spec() -> ModelSpec:
    return make_reference_spec()


@pytest.fixture(scope="session")
def reference_cutoffs(reference_spec):
    return solve_cutoffs(reference_spec)


@pytest.fixture(scope="session")
def two_good_ladder_goods() -> list[GoodSpec]:
    pi = FunctionSpec.linear(-0.1, 0.08, 0.01)
    durable = GoodSpec("houses", 1, pi, FunctionSpec.linear(0.04, 0.0, -0.003, Arity.OF_M))
    other = GoodSpec("meals", 2, pi, FunctionSpec.linear(0.05, 0.0, -0.003, Arity.OF_M))
    return [durable, other]


@pytest.fixture
def dynamics_config() -> DynamicsConfig:
    return DynamicsConfig()
