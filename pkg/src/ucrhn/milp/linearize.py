"""Piecewise-linear epigraph of convex quadratic cost curves.

A convex quadratic a*p^2 + b*p + c on [lo, hi] is over-estimated by the chords
over K equal-width segments; the cost variable sits above every chord, so the
minimized cost equals the chord interpolation.  The worst over-estimation is
a*((hi-lo)/K)^2/4, attained at segment midpoints.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Segment:
    slope: float
    intercept: float


@dataclass(frozen=True)
class PiecewiseCost:
    breakpoints: tuple[float, ...]
    segments: tuple[Segment, ...]

    def value(self, p: float) -> float:
        """Piecewise value = max over chords (valid inside the domain)."""
        return max(s.slope * p + s.intercept for s in self.segments)


def max_overestimation(a: float, lo: float, hi: float, segments: int) -> float:
    width = (hi - lo) / segments
    return a * width * width / 4.0


def piecewise_linearize(a: float, b: float, c: float,
                        lo: float, hi: float, segments: int) -> PiecewiseCost:
    """Chord segments of a*p^2 + b*p + c over [lo, hi].

    A linear curve (a == 0) collapses to the single exact segment regardless
    of the requested count.
    """
    if a < 0:
        raise ValueError(f"non-convex cost (a={a})")
    if segments < 1:
        raise ValueError("segment count must be >= 1")
    if lo > hi:
        raise ValueError(f"empty domain [{lo}, {hi}]")

    def f(p: float) -> float:
        return a * p * p + b * p + c

    if lo == hi:
        return PiecewiseCost((lo,), (Segment(0.0, f(lo)),))
    if a == 0.0:
        return PiecewiseCost((lo, hi), (Segment(b, c),))

    k = segments
    points = [lo + (hi - lo) * i / k for i in range(k + 1)]
    segs = []
    for x0, x1 in zip(points, points[1:]):
        slope = (f(x1) - f(x0)) / (x1 - x0)
        segs.append(Segment(slope, f(x0) - slope * x0))
    return PiecewiseCost(tuple(points), tuple(segs))
