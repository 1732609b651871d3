"""Small shared numeric helpers."""

from __future__ import annotations


def linspace(lo: float, hi: float, n: int) -> list[float]:
    """n evenly spaced points from lo to hi inclusive (n >= 2)."""
    if n < 2:
        raise ValueError("linspace needs n >= 2")
    step = (hi - lo) / (n - 1)
    pts = [lo + i * step for i in range(n)]
    pts[-1] = hi  # guard against accumulated rounding at the top end
    return pts
