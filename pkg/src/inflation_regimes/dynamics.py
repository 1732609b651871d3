"""Best-response adjustment dynamics, hysteresis over money-supply paths,
and discontinuity detection on equilibrium-inflation selections.

The adjustment process is synchronous proportional revision: each step a
share ``inertia`` of households switches to the current best response.
Its fixed points are exactly the model's equilibria, corners attract, and
the interior indifference point repels, which is the whole job asked of it.
Indifferent households do not revise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import EconomyState, ModelSpec, TieRule, best_response

__all__ = [
    "DynamicsConfig",
    "DynamicsTrace",
    "HysteresisResult",
    "TIP_THRESHOLD",
    "default_jump_threshold",
    "hysteresis_sweep",
    "run_dynamics",
    "settle",
    "scan_discontinuities",
    "step_dynamics",
]

# a selection has "left" a corner once the settled share crosses this line
TIP_THRESHOLD = 0.5


@dataclass(frozen=True)
class DynamicsConfig:
    inertia: float = 1.0
    max_steps: int = 1000
    convergence_eps: float = 1e-9
    tie_rule: TieRule = TieRule.STAY_LOW

    def __post_init__(self) -> None:
        if not 0.0 < self.inertia <= 1.0:
            raise ValueError("inertia must lie in (0, 1]")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if self.convergence_eps <= 0.0:
            raise ValueError("convergence_eps must be positive")


@dataclass(frozen=True)
class DynamicsTrace:
    """Time path of (t, A_t, pi_t, r_t). ``converged_to`` is None when the
    step budget ran out before the path settled."""

    steps: tuple[tuple[int, float, float, float], ...]
    converged_to: float | None
    step_count: int

    @property
    def final_a(self) -> float:
        return self.steps[-1][1]


def step_dynamics(spec: ModelSpec, M: float, A_t: float, cfg: DynamicsConfig) -> float:
    """One revision step: move a share ``inertia`` of households to the best
    response at the current state. Indifference leaves the state unchanged."""
    b = best_response(spec.pi_at(A_t, M), spec.r_at(M), cfg.tie_rule)
    if b is None:
        return A_t
    return min(1.0, max(0.0, A_t + cfg.inertia * (b - A_t)))


def run_dynamics(spec: ModelSpec, M: float, A_0: float, cfg: DynamicsConfig) -> DynamicsTrace:
    """Iterate revisions from A_0 until the per-step movement drops below
    convergence_eps * inertia, or max_steps is exhausted."""
    EconomyState(M=M, A=A_0)  # validates the inputs
    r_val = spec.r_at(M)
    A = A_0
    steps = [(0, A, spec.pi_at(A, M), r_val)]
    converged: float | None = None
    for t in range(1, cfg.max_steps + 1):
        A_next = step_dynamics(spec, M, A, cfg)
        steps.append((t, A_next, spec.pi_at(A_next, M), r_val))
        if abs(A_next - A) < cfg.convergence_eps * cfg.inertia:
            converged = A_next
            break
        A = A_next
    return DynamicsTrace(tuple(steps), converged, len(steps) - 1)


def settle(spec: ModelSpec, M: float, A: float, cfg: DynamicsConfig) -> float:
    """Limit point of the dynamics at M started from A."""
    return run_dynamics(spec, M, A, cfg).final_a


@dataclass(frozen=True)
class HysteresisResult:
    """Selections along an ascending and a descending money-supply pass.

    Both paths are stored in traversal order: ``path_up`` ascending in M,
    ``path_down`` descending. The jump points are the first grid values at
    which a pass abandons the corner it started from; their gap is the width
    of the hysteresis loop.
    """

    path_up: tuple[tuple[float, float, float], ...]
    path_down: tuple[tuple[float, float, float], ...]
    jump_up_at: float | None
    jump_down_at: float | None
    loop_width: float | None
    warnings: tuple[str, ...] = field(default_factory=tuple)


def hysteresis_sweep(spec: ModelSpec, m_grid: list[float], cfg: DynamicsConfig) -> HysteresisResult:
    """Continuation sweep: settle the dynamics at each grid M, seeding each
    solve with the previous limit point (adaptive-expectations selection).

    The upward pass starts from A = 0, the downward pass from A = 1. A pass
    that never leaves its corner yields a GridTooCoarse warning instead of a
    jump point.
    """
    if len(m_grid) < 2:
        raise ValueError("m_grid needs at least two points")
    if any(m <= 0.0 for m in m_grid):
        raise ValueError("m_grid must be positive")
    if any(b <= a for a, b in zip(m_grid, m_grid[1:])):
        raise ValueError("m_grid must be strictly ascending")

    warnings: list[str] = []

    def one_pass(ms: list[float], A_start: float) -> tuple[list[tuple[float, float, float]], float | None]:
        A = A_start
        path = []
        jump_at = None
        for M in ms:
            A = settle(spec, M, A, cfg)
            path.append((M, A, spec.pi_at(A, M)))
            left_corner = abs(A - A_start) > TIP_THRESHOLD
            if jump_at is None and left_corner:
                jump_at = M
        return path, jump_at

    path_up, jump_up = one_pass(list(m_grid), 0.0)
    path_down, jump_down = one_pass(list(reversed(m_grid)), 1.0)
    if jump_up is None:
        warnings.append("GridTooCoarse: upward pass never left A=0")
    if jump_down is None:
        warnings.append("GridTooCoarse: downward pass never left A=1")
    loop_width = None
    if jump_up is not None and jump_down is not None:
        loop_width = jump_up - jump_down
    return HysteresisResult(
        path_up=tuple(path_up),
        path_down=tuple(path_down),
        jump_up_at=jump_up,
        jump_down_at=jump_down,
        loop_width=loop_width,
        warnings=tuple(warnings),
    )


def default_jump_threshold(spec: ModelSpec, m_values: list[float]) -> float:
    """Half the smallest gap pi(1, M) - pi(0, M) over the grid: separates a
    branch switch from slope-induced increments at any resolution."""
    gap = min(spec.pi_at(1.0, M) - spec.pi_at(0.0, M) for M in m_values)
    return 0.5 * gap


def scan_discontinuities(selection: list[tuple[float, float]], threshold: float) -> list[float]:
    """Money-supply values where an inflation selection jumps.

    ``selection`` is a list of (M, pi) sorted by M. A step from one point to
    the next counts as a jump when it exceeds the threshold plus a continuity
    allowance of three times the gentler neighboring slope times the grid
    step. Returns the M at which each jump lands.
    """
    if threshold <= 0.0:
        raise ValueError("threshold must be positive")
    ms = [m for m, _ in selection]
    if any(b <= a for a, b in zip(ms, ms[1:])):
        raise ValueError("selection must be sorted by strictly increasing M")
    jumps = []
    n = len(selection)
    for k in range(n - 1):
        m0, p0 = selection[k]
        m1, p1 = selection[k + 1]
        dm = m1 - m0
        neighbor_slopes = []
        if k > 0:
            pm, pp = selection[k - 1], selection[k]
            neighbor_slopes.append(abs(pp[1] - pm[1]) / (pp[0] - pm[0]))
        if k + 2 < n:
            pm, pp = selection[k + 1], selection[k + 2]
            neighbor_slopes.append(abs(pp[1] - pm[1]) / (pp[0] - pm[0]))
        slope = min(neighbor_slopes) if neighbor_slopes else 0.0
        if abs(p1 - p0) > threshold + 3.0 * slope * dm:
            jumps.append(m1)
    return jumps
