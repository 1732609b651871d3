"""Cutoffs, equilibrium correspondence, and the untargetable inflation band.

Two money-supply cutoffs organize everything:

* ``m_star``: root of pi(1, M) = r(M). Below it, buying cannot pay even if
  everyone buys, so A = 0 is the unique equilibrium.
* ``m_star_star``: root of pi(0, M) = r(M). Above it, keeping money cannot
  pay even if nobody buys, so A = 1 is the unique equilibrium.

Between the cutoffs both corner equilibria are self-fulfilling, separated by
an interior indifference point that is unstable (a marginal extra buyer makes
buying strictly better, so deviations feed on themselves).

All roots are found by bracketing bisection: pi and r are user expressions
whose smoothness is certified only on a grid, and bisection's contract is
unconditional once a sign change is bracketed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .model import ModelSpec, best_response, TieRule
from .util import linspace

__all__ = [
    "Band",
    "Cutoffs",
    "CutoffOrderError",
    "Equilibrium",
    "EquilibriumReport",
    "NoSignChangeError",
    "Regime",
    "SolverError",
    "Stability",
    "brute_force_equilibria",
    "equilibrium_set",
    "solve_cutoffs",
    "untargetable_band",
]

DEFAULT_TOL = 1e-10
_MAX_DOUBLINGS = 60
_MAX_BISECTIONS = 200


class SolverError(Exception):
    """Base class for cutoff-solver failures."""


class NoSignChangeError(SolverError):
    def __init__(self, label: str, lo: float, hi: float):
        super().__init__(
            f"{label} has no sign change on [{lo:g}, {hi:g}] "
            f"even after {_MAX_DOUBLINGS} bracket doublings"
        )
        self.label = label
        self.bracket = (lo, hi)


class CutoffOrderError(SolverError):
    """The solved cutoffs violate m_star < m_star_star, which a model
    satisfying the assumptions cannot do."""


def _bisect(g: Callable[[float], float], lo: float, hi: float, g_lo: float, tol: float) -> tuple[float, float]:
    """Root of g on a sign-changing bracket [lo, hi]; returns (root, residual).

    Stops when the bracket width falls below tol * max(1, |mid|)."""
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * max(1.0, abs(mid)):
            return mid, g(mid)
        g_mid = g(mid)
        if g_mid == 0.0:
            return mid, 0.0
        if (g_mid < 0.0) == (g_lo < 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    return mid, g(mid)


def _find_root(g: Callable[[float], float], lo: float, hi: float, tol: float, label: str) -> tuple[float, float]:
    """Bracket a sign change by geometric outward expansion, then bisect.

    Raises NoSignChangeError if 60 doublings of the bracket never produce
    strictly opposite signs. An exact zero is honored as a root only on the
    caller's original bracket: at hugely expanded endpoints a small constant
    gap can be absorbed into a large M term and read as 0.0, which must not
    pass for a crossing.
    """
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return lo, 0.0
    if g_hi == 0.0:
        return hi, 0.0
    for doubling in range(_MAX_DOUBLINGS + 1):
        if g_lo != 0.0 and g_hi != 0.0 and (g_lo < 0.0) != (g_hi < 0.0):
            return _bisect(g, lo, hi, g_lo, tol)
        if doubling == _MAX_DOUBLINGS:
            break
        lo *= 0.5
        hi *= 2.0
        g_lo, g_hi = g(lo), g(hi)
    raise NoSignChangeError(label, lo, hi)


class Regime(Enum):
    UNIQUE_LOW = "UniqueLow"
    MULTIPLICITY = "Multiplicity"
    UNIQUE_HIGH = "UniqueHigh"


class Stability(Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class Cutoffs:
    """Solved money-supply cutoffs with root residuals.

    ``m_star_star`` is +inf when pi(0, M) stays below r(M) on every expanded
    bracket; the multiplicity region then extends upward without bound and
    the matching residual is NaN.
    """

    m_star: float
    m_star_star: float
    residuals: tuple[float, float]
    tol: float = DEFAULT_TOL

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.m_star_star)

    def to_dict(self) -> dict:
        return {
            "m_star": self.m_star,
            "m_star_star": None if self.unbounded else self.m_star_star,
            "m_star_star_unbounded": self.unbounded,
            "residuals": {
                "m_star": self.residuals[0],
                "m_star_star": None if self.unbounded else self.residuals[1],
            },
            "tol": self.tol,
        }


def solve_cutoffs(spec: ModelSpec, tol: float = DEFAULT_TOL) -> Cutoffs:
    """Solve pi(1, M) = r(M) and pi(0, M) = r(M) by expanding bisection.

    The initial bracket is the spec's money range; it is doubled outward
    (lower end halved, upper end doubled) until each excess function changes
    sign. Callers are expected to have run validate_model first.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    def g1(M: float) -> float:
        return spec.pi_at(1.0, M) - spec.r_at(M)

    def g0(M: float) -> float:
        return spec.pi_at(0.0, M) - spec.r_at(M)

    m_star, res1 = _find_root(g1, spec.m_lo, spec.m_hi, tol, "pi(1,M) - r(M)")
    try:
        m_star_star, res0 = _find_root(g0, spec.m_lo, spec.m_hi, tol, "pi(0,M) - r(M)")
    except NoSignChangeError:
        # decide the direction at the user's own range top, where a small
        # gap is not yet absorbed by a huge M term
        if g0(spec.m_hi) < 0.0:
            # buying never pays at A=0: the upper cutoff is out of reach
            m_star_star, res0 = math.inf, math.nan
        else:
            raise CutoffOrderError(
                "pi(0, M) already exceeds r(M) at the smallest bracketed M; "
                "the upper cutoff would sit below the lower one"
            ) from exc
    if not m_star < m_star_star:
        raise CutoffOrderError(
            f"cutoff order violated: m_star={m_star!r} >= m_star_star={m_star_star!r}"
        )
    return Cutoffs(m_star, m_star_star, (res1, res0), tol)


@dataclass(frozen=True)
class Equilibrium:
    A: float
    stability: Stability
    inflation: float
    interest: float
    at_cutoff: bool = False

    def to_dict(self) -> dict:
        return {
            "A": self.A,
            "stability": self.stability.value,
            "inflation": self.inflation,
            "interest": self.interest,
            "at_cutoff": self.at_cutoff,
        }


@dataclass(frozen=True)
class EquilibriumReport:
    """All equilibria at one money supply, with the regime label."""

    M: float
    regime: Regime
    equilibria: tuple[Equilibrium, ...]
    cutoffs: Cutoffs

    def _single(self, predicate) -> Equilibrium | None:
        for eq in self.equilibria:
            if predicate(eq):
                return eq
        return None

    @property
    def low(self) -> Equilibrium | None:
        return self._single(lambda e: e.A == 0.0)

    @property
    def high(self) -> Equilibrium | None:
        return self._single(lambda e: e.A == 1.0)

    @property
    def interior(self) -> Equilibrium | None:
        return self._single(lambda e: 0.0 < e.A < 1.0)

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "regime": self.regime.value,
            "equilibria": [eq.to_dict() for eq in self.equilibria],
        }


def equilibrium_set(
    spec: ModelSpec,
    M: float,
    cutoffs: Cutoffs,
    tol: float = DEFAULT_TOL,
) -> EquilibriumReport:
    """Classify M against the cutoffs and list every equilibrium there.

    In the multiplicity region the interior indifference point solving
    pi(A, M) = r(M) is found by bisection on A and labeled unstable. Within
    root resolution of a cutoff the interior point coincides with a corner,
    so the interior solve is skipped and the corner is flagged ``at_cutoff``.
    """
    if M <= 0.0:
        raise ValueError("M must be positive")
    r_val = spec.r_at(M)

    def corner(A: float, at_cutoff: bool = False) -> Equilibrium:
        return Equilibrium(A, Stability.STABLE, spec.pi_at(A, M), r_val, at_cutoff)

    if M < cutoffs.m_star:
        return EquilibriumReport(M, Regime.UNIQUE_LOW, (corner(0.0),), cutoffs)
    if M > cutoffs.m_star_star:
        return EquilibriumReport(M, Regime.UNIQUE_HIGH, (corner(1.0),), cutoffs)

    edge = tol * max(1.0, abs(M))
    at_lower = abs(M - cutoffs.m_star) <= edge
    at_upper = (not cutoffs.unbounded) and abs(M - cutoffs.m_star_star) <= edge
    equilibria = [corner(0.0, at_cutoff=at_upper), corner(1.0, at_cutoff=at_lower)]
    g_low = spec.pi_at(0.0, M) - r_val
    g_high = spec.pi_at(1.0, M) - r_val
    if not (at_lower or at_upper) and g_low < 0.0 < g_high:
        interior, _ = _bisect(lambda A: spec.pi_at(A, M) - r_val, 0.0, 1.0, g_low, tol)
        equilibria.append(
            Equilibrium(interior, Stability.UNSTABLE, spec.pi_at(interior, M), r_val)
        )
    return EquilibriumReport(M, Regime.MULTIPLICITY, tuple(equilibria), cutoffs)


@dataclass(frozen=True)
class Band:
    """Open interval of inflation rates no equilibrium can produce."""

    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo < x < self.hi

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


def untargetable_band(spec: ModelSpec, cutoffs: Cutoffs) -> Band | None:
    """The open inflation interval (pi(0, m_star_star), pi(1, m_star)).

    Returns None when the interval is empty. Requires finite cutoffs.
    """
    if cutoffs.unbounded:
        raise ValueError("untargetable band needs a finite m_star_star")
    lo = spec.pi_at(0.0, cutoffs.m_star_star)
    hi = spec.pi_at(1.0, cutoffs.m_star)
    return Band(lo, hi) if lo < hi else None


def brute_force_equilibria(spec: ModelSpec, M: float, n_grid: int) -> list[tuple[float, bool]]:
    """Grid-enumeration test oracle: marks equilibrium candidates on a
    uniform A grid by directly applying the threshold rule.

    Corners qualify under the strict rule; interior points qualify when
    |pi - r| is below half a grid cell's worth of inflation movement.
    """
    if n_grid < 11:
        raise ValueError("n_grid must be at least 11")
    r_val = spec.r_at(M)
    slope_scale = abs(spec.pi_at(1.0, M) - spec.pi_at(0.0, M))
    interior_tol = 0.5 * slope_scale / (n_grid - 1)
    out = []
    for A in linspace(0.0, 1.0, n_grid):
        pi_val = spec.pi_at(A, M)
        br = best_response(pi_val, r_val, TieRule.INDIFFERENT)
        if A == 0.0:
            is_eq = br == 0
        elif A == 1.0:
            is_eq = br == 1
        else:
            is_eq = abs(pi_val - r_val) <= interior_tol
        out.append((A, is_eq))
    return out
