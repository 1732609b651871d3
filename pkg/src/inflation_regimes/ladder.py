"""Ladder of goods ordered by durability, per-good cutoffs, and tipping
simulation along a growing money-supply path.

Durable goods are cheap to hold (low carry cost) and slow to supply (large
price response to a demand surge). Either trait pushes both of a good's
money-supply cutoffs down, so durable markets flip to the high-inflation
equilibrium first as money grows: their inflation leads the broad index.

Each good carries an explicit ``durability_rank`` (1 = most durable) rather
than encoding durability in list position, and ``ordering_mode`` declares
which primitive ordering the ladder claims: carry costs rising with rank,
inflation response falling with rank, or both. Markets are uncoupled, so
each good simulates independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .dynamics import TIP_THRESHOLD, DynamicsConfig, settle
from .equilibrium import Cutoffs, SolverError, solve_cutoffs
from .functions import FunctionSpec
from .model import DEFAULT_GRID, ModelSpec, validate_model
from .util import linspace

__all__ = [
    "GoodSpec",
    "GoodsLadder",
    "LadderBuildError",
    "LadderReport",
    "OrderingMode",
    "PairMargin",
    "PathTooShortError",
    "TipEvent",
    "TippingSchedule",
    "build_ladder",
    "simulate_tipping",
    "verify_ladder",
]


class OrderingMode(Enum):
    BY_COST = "by_cost"
    BY_ELASTICITY = "by_elasticity"
    BOTH = "both"


class LadderBuildError(Exception):
    """A good failed validation or its cutoffs could not be solved."""

    def __init__(self, good: str, message: str):
        super().__init__(f"good {good!r}: {message}")
        self.good = good


class PathTooShortError(Exception):
    """The money path ended before every good tipped."""

    def __init__(self, untipped: list[str]):
        names = ", ".join(untipped)
        super().__init__(f"money path ends before these goods tip: {names}")
        self.untipped = tuple(untipped)


@dataclass(frozen=True)
class GoodSpec:
    """One consumption-good market: its inflation response and carry cost.

    ``durability_rank`` 1 is the most durable good in the ladder.
    """

    name: str
    durability_rank: int
    pi: FunctionSpec
    r: FunctionSpec

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("good needs a non-empty name")
        if self.durability_rank < 1:
            raise ValueError("durability_rank must be a positive integer")


@dataclass(frozen=True)
class GoodsLadder:
    """Goods sorted by durability rank, with per-good cutoffs solved on a
    shared money range."""

    goods: tuple[GoodSpec, ...]
    m_lo: float
    m_hi: float
    ordering_mode: OrderingMode
    cutoffs: tuple[Cutoffs, ...]
    n_A: int = DEFAULT_GRID[0]
    n_M: int = DEFAULT_GRID[1]

    def model_for(self, good: GoodSpec) -> ModelSpec:
        return ModelSpec(good.pi, good.r, self.m_lo, self.m_hi, self.n_A, self.n_M)


def build_ladder(
    goods: list[GoodSpec],
    m_domain: tuple[float, float],
    ordering_mode: OrderingMode,
    grid: tuple[int, int] = DEFAULT_GRID,
    tol: float = 1e-10,
) -> GoodsLadder:
    """Validate every good on the shared money range and solve its cutoffs.

    Ordering is not enforced here; verify_ladder reports on it.
    """
    if len(goods) < 2:
        raise ValueError("a ladder needs at least two goods")
    ranks = [g.durability_rank for g in goods]
    if len(set(ranks)) != len(ranks):
        raise ValueError("durability ranks must be distinct")
    m_lo, m_hi = m_domain
    n_A, n_M = grid
    ordered = tuple(sorted(goods, key=lambda g: g.durability_rank))
    cutoffs = []
    for good in ordered:
        model = ModelSpec(good.pi, good.r, m_lo, m_hi, n_A, n_M)
        report = validate_model(model)
        if not report.passed:
            failed = sorted({v.check for v in report.violations})
            raise LadderBuildError(good.name, f"validation failed: {', '.join(failed)}")
        try:
            cutoffs.append(solve_cutoffs(model, tol))
        except SolverError as exc:
            raise LadderBuildError(good.name, str(exc)) from exc
    return GoodsLadder(ordered, m_lo, m_hi, ordering_mode, tuple(cutoffs), n_A, n_M)


@dataclass(frozen=True)
class PairMargin:
    """Cutoff gaps between a good and the next less durable one; both must
    be strictly positive for the ladder to conform."""

    durable: str
    less_durable: str
    m_star_margin: float
    m_star_star_margin: float

    def to_dict(self) -> dict:
        return {
            "durable": self.durable,
            "less_durable": self.less_durable,
            "m_star_margin": self.m_star_margin,
            "m_star_star_margin": self.m_star_star_margin,
        }


@dataclass(frozen=True)
class LadderReport:
    conforming: bool
    mode: OrderingMode
    pairs: tuple[PairMargin, ...]
    violations: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "conforming": self.conforming,
            "mode": self.mode.value,
            "pairs": [p.to_dict() for p in self.pairs],
            "violations": list(self.violations),
        }


def verify_ladder(ladder: GoodsLadder) -> LadderReport:
    """Check that cutoffs rise strictly with durability rank, plus the
    primitive ordering the declared mode claims.

    Violations are report content, not exceptions.
    """
    violations: list[str] = []
    pairs: list[PairMargin] = []
    a_grid = linspace(0.0, 1.0, ladder.n_A)
    m_grid = linspace(ladder.m_lo, ladder.m_hi, ladder.n_M)

    for (g_d, c_d), (g_l, c_l) in zip(
        zip(ladder.goods, ladder.cutoffs), zip(ladder.goods[1:], ladder.cutoffs[1:])
    ):
        margin_star = c_l.m_star - c_d.m_star
        margin_star_star = c_l.m_star_star - c_d.m_star_star
        pairs.append(PairMargin(g_d.name, g_l.name, margin_star, margin_star_star))
        if not margin_star > 0.0:
            violations.append(
                f"m_star not increasing from {g_d.name!r} to {g_l.name!r} "
                f"(margin {margin_star!r})"
            )
        if not margin_star_star > 0.0:
            violations.append(
                f"m_star_star not increasing from {g_d.name!r} to {g_l.name!r} "
                f"(margin {margin_star_star!r})"
            )
        if ladder.ordering_mode in (OrderingMode.BY_COST, OrderingMode.BOTH):
            if not all(g_d.r.evaluate(0.0, M) < g_l.r.evaluate(0.0, M) for M in m_grid):
                violations.append(
                    f"carry cost of {g_d.name!r} not strictly below {g_l.name!r}"
                )
        if ladder.ordering_mode in (OrderingMode.BY_ELASTICITY, OrderingMode.BOTH):
            if not all(
                g_d.pi.evaluate(A, M) > g_l.pi.evaluate(A, M)
                for M in m_grid
                for A in a_grid
                if A > 0.0
            ):
                violations.append(
                    f"inflation response of {g_d.name!r} not strictly above {g_l.name!r}"
                )

    return LadderReport(
        conforming=not violations,
        mode=ladder.ordering_mode,
        pairs=tuple(pairs),
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class TipEvent:
    name: str
    rank: int
    t: float
    M: float

    def to_dict(self) -> dict:
        return {"good": self.name, "rank": self.rank, "t_tip": self.t, "M_tip": self.M}


@dataclass(frozen=True)
class TippingSchedule:
    """Per-good tipping events plus the full inflation series of every good
    along the money path (for lead-lag comparisons)."""

    events: tuple[TipEvent, ...]
    money_path: tuple[tuple[float, float], ...]
    series: dict[str, tuple[float, ...]]


def simulate_tipping(
    ladder: GoodsLadder,
    money_path: list[tuple[float, float]],
    cfg: DynamicsConfig,
) -> TippingSchedule:
    """Run each good's market independently along a weakly increasing money
    path, starting from the no-buying corner, and record when it tips.

    A good tips at the first path point where its settled buying share leaves
    A = 0 (crosses 0.5). Raises PathTooShortError when any good never tips.
    """
    if not money_path:
        raise ValueError("money path is empty")
    ms = [m for _, m in money_path]
    if any(m <= 0.0 for m in ms):
        raise ValueError("money path must stay positive")
    if any(b < a for a, b in zip(ms, ms[1:])):
        raise ValueError("money path must be weakly increasing in M")

    events: list[TipEvent] = []
    series: dict[str, tuple[float, ...]] = {}
    untipped: list[str] = []
    for good in ladder.goods:
        model = ladder.model_for(good)
        A = 0.0
        tip: TipEvent | None = None
        inflation: list[float] = []
        for t, M in money_path:
            A = settle(model, M, A, cfg)
            inflation.append(model.pi_at(A, M))
            if tip is None and A > TIP_THRESHOLD:
                tip = TipEvent(good.name, good.durability_rank, t, M)
        series[good.name] = tuple(inflation)
        if tip is None:
            untipped.append(good.name)
        else:
            events.append(tip)
    if untipped:
        raise PathTooShortError(untipped)
    events.sort(key=lambda e: (e.t, e.rank))
    return TippingSchedule(tuple(events), tuple(money_path), series)
