"""Scalar model functions of (A, M): builtin parametric families plus the
expression language from :mod:`inflation_regimes.expr`.

Two builtin families are provided because they keep every model quantity
closed-form checkable:

* linear:      c0 + cA*A + cM*M
* log-linear:  c0 + cA*A + cM*ln(1+M)

Anything else is expressed in the expression DSL.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

from .expr import EvaluationError, ExprAst, evaluate_ast, parse_expression, variables_in

__all__ = [
    "Arity",
    "FunctionKind",
    "FunctionSpec",
    "EvaluationError",
]

_BUILTIN_PARAMS = ("c0", "cA", "cM")


class FunctionKind(Enum):
    LINEAR = "linear"
    LOG_LINEAR = "loglinear"
    EXPRESSION = "expression"


class Arity(Enum):
    """Whether a function reads both A and M, or M alone."""

    OF_AM = "of_am"
    OF_M = "of_m"


def _default_step(x: float) -> float:
    # balances truncation and rounding error for O(1)-scale quantities
    return 1e-5 * max(1.0, abs(x))


@dataclass(frozen=True)
class FunctionSpec:
    """Immutable description of a scalar function of (A, M).

    ``evaluate`` accepts any finite floats; the economic domain A in [0, 1],
    M > 0 is the caller's contract. Points outside it are still evaluated
    when the underlying function allows (finite differences clip to the
    boundary and may probe M = 0).
    """

    kind: FunctionKind
    arity: Arity
    params: dict[str, float] = field(default_factory=dict)
    expr_source: str | None = None
    _ast: ExprAst | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind is FunctionKind.EXPRESSION:
            if not self.expr_source:
                raise ValueError("expression spec requires source text")
            if self.params:
                raise ValueError("expression spec takes no params")
            ast = parse_expression(self.expr_source)
            if self.arity is Arity.OF_M and "A" in variables_in(ast):
                raise ValueError(
                    "function of M alone must not reference variable A: "
                    f"{self.expr_source!r}"
                )
            object.__setattr__(self, "_ast", ast)
            return
        if self.expr_source is not None:
            raise ValueError("builtin spec takes no expression source")
        unknown = set(self.params) - set(_BUILTIN_PARAMS)
        if unknown:
            raise ValueError(f"unknown builtin params: {sorted(unknown)}")
        coeffs = {name: float(self.params.get(name, 0.0)) for name in _BUILTIN_PARAMS}
        if self.arity is Arity.OF_M and coeffs["cA"] != 0.0:
            raise ValueError("function of M alone must have cA = 0")
        object.__setattr__(self, "params", coeffs)

    @classmethod
    def linear(cls, c0: float, cA: float, cM: float, arity: Arity = Arity.OF_AM) -> "FunctionSpec":
        return cls(FunctionKind.LINEAR, arity, {"c0": c0, "cA": cA, "cM": cM})

    @classmethod
    def log_linear(cls, c0: float, cA: float, cM: float, arity: Arity = Arity.OF_AM) -> "FunctionSpec":
        return cls(FunctionKind.LOG_LINEAR, arity, {"c0": c0, "cA": cA, "cM": cM})

    @classmethod
    def expression(cls, source: str, arity: Arity = Arity.OF_AM) -> "FunctionSpec":
        return cls(FunctionKind.EXPRESSION, arity, expr_source=source)

    def evaluate(self, A: float, M: float) -> float:
        if self.kind is FunctionKind.LINEAR:
            value = self.params["c0"] + self.params["cA"] * A + self.params["cM"] * M
        elif self.kind is FunctionKind.LOG_LINEAR:
            if 1.0 + M <= 0.0:
                raise EvaluationError(f"ln(1+M) undefined at M={M!r}")
            value = self.params["c0"] + self.params["cA"] * A + self.params["cM"] * math.log1p(M)
        else:
            assert self._ast is not None
            value = evaluate_ast(self._ast, A, M)
        if not math.isfinite(value):
            raise EvaluationError(f"non-finite value at A={A!r}, M={M!r}")
        return value

    def partial(
        self,
        wrt: Literal["A", "M"],
        A: float,
        M: float,
        h: float | None = None,
    ) -> float:
        """Finite-difference partial derivative at (A, M).

        Central difference in the interior; one-sided at a domain edge
        (A clips to [0, 1], M to [0, inf)). Default step 1e-5 * max(1, |x|).
        """
        if wrt not in ("A", "M"):
            raise ValueError(f"wrt must be 'A' or 'M', got {wrt!r}")
        x = A if wrt == "A" else M
        if h is None:
            h = _default_step(x)
        if h <= 0.0:
            raise ValueError("step h must be positive")
        lo, hi = (0.0, 1.0) if wrt == "A" else (0.0, math.inf)

        def at(xv: float) -> float:
            return self.evaluate(xv, M) if wrt == "A" else self.evaluate(A, xv)

        if x - h < lo:
            return (at(x + h) - at(x)) / h
        if x + h > hi:
            return (at(x) - at(x - h)) / h
        return (at(x + h) - at(x - h)) / (2.0 * h)
