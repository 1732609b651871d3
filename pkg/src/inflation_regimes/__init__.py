"""Numerical toolkit for a binary-action inflation coordination model.

Households either keep their money or preemptively convert it into goods.
The package validates a model's assumptions, solves the money-supply cutoffs
and the full equilibrium correspondence, simulates best-response dynamics and
hysteresis, and builds multi-good tipping schedules in which durable goods'
inflation leads the broad index.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .config import (
    ConfigError,
    LadderConfig,
    load_ladder_config,
    load_model_spec,
    model_spec_from_config,
    model_spec_to_config,
    save_model_spec,
)
from .dynamics import (
    TIP_THRESHOLD,
    DynamicsConfig,
    DynamicsTrace,
    HysteresisResult,
    default_jump_threshold,
    hysteresis_sweep,
    run_dynamics,
    scan_discontinuities,
    settle,
    step_dynamics,
)
from .equilibrium import (
    Band,
    CutoffOrderError,
    Cutoffs,
    Equilibrium,
    EquilibriumReport,
    NoSignChangeError,
    Regime,
    SolverError,
    Stability,
    brute_force_equilibria,
    equilibrium_set,
    solve_cutoffs,
    untargetable_band,
)
from .expr import (
    EvaluationError,
    ExpressionError,
    ExpressionSyntaxError,
    evaluate_ast,
    parse_expression,
    to_source,
)
from .functions import Arity, FunctionKind, FunctionSpec
from .ladder import (
    GoodSpec,
    GoodsLadder,
    LadderBuildError,
    LadderReport,
    OrderingMode,
    PathTooShortError,
    TipEvent,
    TippingSchedule,
    build_ladder,
    simulate_tipping,
    verify_ladder,
)
from .model import (
    EconomyState,
    ModelSpec,
    TieRule,
    ValidationReport,
    Violation,
    best_response,
    payoff,
    validate_model,
)

__all__ = [
    "__version__",
    "Arity",
    "Band",
    "ConfigError",
    "CutoffOrderError",
    "Cutoffs",
    "DynamicsConfig",
    "DynamicsTrace",
    "EconomyState",
    "Equilibrium",
    "EquilibriumReport",
    "EvaluationError",
    "ExpressionError",
    "ExpressionSyntaxError",
    "FunctionKind",
    "FunctionSpec",
    "GoodSpec",
    "GoodsLadder",
    "HysteresisResult",
    "LadderBuildError",
    "LadderConfig",
    "LadderReport",
    "ModelSpec",
    "NoSignChangeError",
    "OrderingMode",
    "PathTooShortError",
    "Regime",
    "SolverError",
    "Stability",
    "TIP_THRESHOLD",
    "TieRule",
    "TipEvent",
    "TippingSchedule",
    "ValidationReport",
    "Violation",
    "best_response",
    "brute_force_equilibria",
    "build_ladder",
    "default_jump_threshold",
    "equilibrium_set",
    "evaluate_ast",
    "hysteresis_sweep",
    "load_ladder_config",
    "load_model_spec",
    "model_spec_from_config",
    "model_spec_to_config",
    "parse_expression",
    "payoff",
    "run_dynamics",
    "save_model_spec",
    "scan_discontinuities",
    "settle",
    "simulate_tipping",
    "solve_cutoffs",
    "step_dynamics",
    "to_source",
    "untargetable_band",
    "validate_model",
    "verify_ladder",
]
