"""Single-good economy: inflation pi(A, M), carry cost r(M), and the
assumption checks that must pass before any solving.

The model is a binary-action coordination game. Each household either keeps
its money (a=0) or preemptively buys goods (a=1). Inflation rises with the
aggregate buying share A and with money supply M; the carry cost r of holding
goods instead of paper falls with M. All assumptions are certified on a
finite grid because pi and r may be arbitrary user expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .expr import EvaluationError
from .functions import Arity, FunctionSpec
from .util import linspace

__all__ = [
    "EconomyState",
    "ModelSpec",
    "TieRule",
    "ValidationReport",
    "Violation",
    "best_response",
    "payoff",
    "validate_model",
]

DEFAULT_GRID = (21, 41)


class TieRule(Enum):
    """What a household does when pi == r exactly (the knife edge the
    threshold rule leaves undefined)."""

    STAY_LOW = "stay_low"
    STAY_HIGH = "stay_high"
    INDIFFERENT = "indifferent"


@dataclass(frozen=True)
class EconomyState:
    """Money supply M > 0 and aggregate buying share A in [0, 1]."""

    M: float
    A: float

    def __post_init__(self) -> None:
        if not (self.M > 0.0 and math.isfinite(self.M)):
            raise ValueError(f"M must be a positive finite real, got {self.M!r}")
        if not (0.0 <= self.A <= 1.0):
            raise ValueError(f"A must lie in [0, 1], got {self.A!r}")


@dataclass(frozen=True)
class ModelSpec:
    """The economy: pi(A, M), r(M), the money range of interest, and the
    validation grid resolution."""

    pi: FunctionSpec
    r: FunctionSpec
    m_lo: float
    m_hi: float
    n_A: int = DEFAULT_GRID[0]
    n_M: int = DEFAULT_GRID[1]

    def __post_init__(self) -> None:
        if self.pi.arity is not Arity.OF_AM:
            raise ValueError("pi must be declared a function of (A, M)")
        if self.r.arity is not Arity.OF_M:
            raise ValueError("r must be declared a function of M alone")
        if not (self.m_lo > 0.0 and math.isfinite(self.m_lo)):
            raise ValueError("m_lo must be positive and finite")
        if not (self.m_hi > self.m_lo and math.isfinite(self.m_hi)):
            raise ValueError("m_hi must exceed m_lo and be finite")
        if self.n_A < 2 or self.n_M < 2:
            raise ValueError("validation grid needs n_A >= 2 and n_M >= 2")

    def pi_at(self, A: float, M: float) -> float:
        return self.pi.evaluate(A, M)

    def r_at(self, M: float) -> float:
        return self.r.evaluate(0.0, M)

    def rates(self, state: EconomyState) -> tuple[float, float]:
        """(inflation, carry cost) at a validated state."""
        return self.pi_at(state.A, state.M), self.r_at(state.M)


@dataclass(frozen=True)
class Violation:
    check: str
    A: float | None  # None for checks that do not fix an A value
    M: float
    value: float

    def to_dict(self) -> dict:
        return {"check": self.check, "A": self.A, "M": self.M, "value": self.value}


@dataclass(frozen=True)
class ValidationReport:
    """Grid certification of the model assumptions.

    The two limit conditions are probed at fixed multiples of the declared
    money range (m_lo/10 and 10*m_hi); these probes are proxies for the
    true limits, recorded as such.
    """

    pi_increasing_in_A: bool
    pi_increasing_in_M: bool
    r_decreasing_in_M: bool
    limit_high_ok: bool
    limit_low_ok: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)
    probe_m_low: float = float("nan")
    probe_m_high: float = float("nan")

    @property
    def passed(self) -> bool:
        return (
            self.pi_increasing_in_A
            and self.pi_increasing_in_M
            and self.r_decreasing_in_M
            and self.limit_high_ok
            and self.limit_low_ok
        )

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "pi_increasing_in_A": self.pi_increasing_in_A,
            "pi_increasing_in_M": self.pi_increasing_in_M,
            "r_decreasing_in_M": self.r_decreasing_in_M,
            "limit_high_ok": self.limit_high_ok,
            "limit_low_ok": self.limit_low_ok,
            "probe_m_low": self.probe_m_low,
            "probe_m_high": self.probe_m_high,
            "violations": [v.to_dict() for v in self.violations],
        }


def validate_model(spec: ModelSpec) -> ValidationReport:
    """Certify the model assumptions on the spec's grid.

    Checks, all by finite differences with the default step:

    * pi strictly increasing in A and in M at every grid node of
      [0, 1] x [m_lo, m_hi];
    * r non-increasing in M on the M grid;
    * r(M) - pi(1, M) negative at the high probe and positive at the low
      probe (preemptive buying must eventually dominate as money grows,
      and money must dominate as it vanishes).

    Evaluation errors count as violations at the offending point.
    """
    a_grid = linspace(0.0, 1.0, spec.n_A)
    m_grid = linspace(spec.m_lo, spec.m_hi, spec.n_M)
    violations: list[Violation] = []

    pi_inc_a = pi_inc_m = True
    for M in m_grid:
        for A in a_grid:
            for check, wrt in (("pi_increasing_in_A", "A"), ("pi_increasing_in_M", "M")):
                try:
                    slope = spec.pi.partial(wrt, A, M)
                except EvaluationError:
                    slope = math.nan
                if not slope > 0.0:
                    violations.append(Violation(check, A, M, slope))
                    if wrt == "A":
                        pi_inc_a = False
                    else:
                        pi_inc_m = False

    r_dec = True
    for M in m_grid:
        try:
            slope = spec.r.partial("M", 0.0, M)
        except EvaluationError:
            slope = math.nan
        if not slope <= 0.0:
            violations.append(Violation("r_decreasing_in_M", None, M, slope))
            r_dec = False

    probe_low = spec.m_lo / 10.0
    probe_high = 10.0 * spec.m_hi
    limit_low = limit_high = True
    try:
        gap_low = spec.r_at(probe_low) - spec.pi_at(1.0, probe_low)
    except EvaluationError:
        gap_low = math.nan
    if not gap_low > 0.0:
        violations.append(Violation("limit_low_ok", 1.0, probe_low, gap_low))
        limit_low = False
    try:
        gap_high = spec.r_at(probe_high) - spec.pi_at(1.0, probe_high)
    except EvaluationError:
        gap_high = math.nan
    if not gap_high < 0.0:
        violations.append(Violation("limit_high_ok", 1.0, probe_high, gap_high))
        limit_high = False

    return ValidationReport(
        pi_increasing_in_A=pi_inc_a,
        pi_increasing_in_M=pi_inc_m,
        r_decreasing_in_M=r_dec,
        limit_high_ok=limit_high,
        limit_low_ok=limit_low,
        violations=tuple(violations),
        probe_m_low=probe_low,
        probe_m_high=probe_high,
    )


def payoff(a: int, pi_val: float, r_val: float) -> float:
    """Net return of action a: keeping money earns r - pi, buying earns
    pi - r. Antisymmetric: payoff(1) == -payoff(0)."""
    if a not in (0, 1):
        raise ValueError(f"action must be 0 or 1, got {a!r}")
    return (1 - a) * (r_val - pi_val) + a * (pi_val - r_val)


def best_response(pi_val: float, r_val: float, tie_rule: TieRule = TieRule.STAY_LOW) -> int | None:
    """1 if pi > r, 0 if pi < r; ties resolved by tie_rule.

    Returns None for an indifferent household (only under
    TieRule.INDIFFERENT).
    """
    if pi_val > r_val:
        return 1
    if pi_val < r_val:
        return 0
    if tie_rule is TieRule.STAY_LOW:
        return 0
    if tie_rule is TieRule.STAY_HIGH:
        return 1
    return None
