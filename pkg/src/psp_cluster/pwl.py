"""Exact continuous piecewise-linear functions of the threshold gamma."""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

# Sentinel for "minus infinity" break values. Only ever compared, never used
# in arithmetic.
NEG_INF = -math.inf

ZERO = Fraction(0)


class CrossingError(ValueError):
    pass


@dataclass(frozen=True)
class PwlFunction:
    """``segments[i] = (slope, intercept)`` on the i-th piece.

    The pieces are ``(-inf, b_0]``, ``[b_0, b_1]``, ..., ``[b_{k-1}, inf)``
    with ``breakpoints = (b_0, ..., b_{k-1})`` strictly increasing.
    """

    breakpoints: tuple[Fraction, ...]
    segments: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if len(self.segments) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more segment than breakpoints")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        for i, b in enumerate(self.breakpoints):
            (s0, c0), (s1, c1) = self.segments[i], self.segments[i + 1]
            if s0 * b + c0 != s1 * b + c1:
                raise ValueError(f"discontinuity at {b}")

    @classmethod
    def linear(cls, slope=0, intercept=0) -> "PwlFunction":
        return cls((), ((Fraction(slope), Fraction(intercept)),))

    @classmethod
    def constant(cls, value) -> "PwlFunction":
        return cls.linear(0, value)

    @classmethod
    def _canonical(cls, breakpoints, segments) -> "PwlFunction":
        bps: list[Fraction] = []
        segs = [segments[0]]
        for b, seg in zip(breakpoints, segments[1:]):
            if seg == segs[-1]:
                continue
            bps.append(b)
            segs.append(seg)
        return cls(tuple(bps), tuple(segs))

    def segment_at(self, gamma) -> tuple[Fraction, Fraction]:
        return self.segments[bisect_right(self.breakpoints, gamma)]

    def __call__(self, gamma) -> Fraction:
        slope, intercept = self.segment_at(gamma)
        return slope * gamma + intercept

    evaluate = __call__

    def __add__(self, other) -> "PwlFunction":
        if not isinstance(other, PwlFunction):
            other = PwlFunction.constant(other)
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        # one probe per piece of the merged grid
        probes = [bps[0] - 1] + bps if bps else [ZERO]
        segs = []
        for p in probes:
            s0, c0 = self.segment_at(p)
            s1, c1 = other.segment_at(p)
            segs.append((s0 + s1, c0 + c1))
        return PwlFunction._canonical(bps, segs)

    __radd__ = __add__

    def __neg__(self) -> "PwlFunction":
        return PwlFunction(self.breakpoints, tuple((-s, -c) for s, c in self.segments))

    def __sub__(self, other) -> "PwlFunction":
        if not isinstance(other, PwlFunction):
            other = PwlFunction.constant(other)
        return self + (-other)

    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(s for s, _ in self.segments)

    def is_nondecreasing(self) -> bool:
        return all(s >= 0 for s in self.slopes())

    def is_nonincreasing(self) -> bool:
        return all(s <= 0 for s in self.slopes())

    def __repr__(self):
        pieces = []
        lo = "-inf"
        for i, (s, c) in enumerate(self.segments):
            hi = str(self.breakpoints[i]) if i < len(self.breakpoints) else "inf"
            pieces.append(f"[{lo},{hi}]: {s}*g + {c}")
            lo = hi
        return "PwlFunction(" + "; ".join(pieces) + ")"


def pwl_sum(fs: Iterable[PwlFunction]) -> PwlFunction:
    """Sum of many functions in one sweep over their slope changes."""
    slope = intercept = ZERO
    deltas: dict[Fraction, list[Fraction]] = {}
    for f in fs:
        s0, c0 = f.segments[0]
        slope += s0
        intercept += c0
        for b, (s1, c1), (s2, c2) in zip(f.breakpoints, f.segments, f.segments[1:]):
            dd = deltas.setdefault(b, [ZERO, ZERO])
            dd[0] += s2 - s1
            dd[1] += c2 - c1
    bps = sorted(deltas)
    segs = [(slope, intercept)]
    for b in bps:
        ds, dc = deltas[b]
        slope += ds
        intercept += dc
        segs.append((slope, intercept))
    return PwlFunction._canonical(bps, segs)


def make_x(g_i, mu) -> PwlFunction:
    """``gamma -> g_i - max(gamma, mu)``; ``mu`` may be ``NEG_INF``."""
    g_i = Fraction(g_i)
    if mu == NEG_INF:
        return PwlFunction.linear(-1, g_i)
    mu = Fraction(mu)
    return PwlFunction((mu,), ((ZERO, g_i - mu), (Fraction(-1), g_i)))


def pos_part(f: PwlFunction) -> PwlFunction:
    """Pointwise ``max(0, f)``."""
    bps: list[Fraction] = []
    segs: list[tuple[Fraction, Fraction]] = []
    edges = [None, *f.breakpoints, None]
    for i, (s, c) in enumerate(f.segments):
        lo, hi = edges[i], edges[i + 1]
        zero = (-c / s) if s != 0 else None
        if zero is not None and (lo is None or zero > lo) and (hi is None or zero < hi):
            # sign change inside the piece
            left, right = ((ZERO, ZERO), (s, c)) if s > 0 else ((s, c), (ZERO, ZERO))
            if segs:
                bps.append(lo)
            segs.append(left)
            bps.append(zero)
            segs.append(right)
            continue
        # no interior sign change: the sign of any interior point decides
        if lo is None and hi is None:
            probe = ZERO
        elif lo is None:
            probe = hi - 1
        elif hi is None:
            probe = lo + 1
        else:
            probe = (lo + hi) / 2
        seg = (s, c) if s * probe + c >= 0 else (ZERO, ZERO)
        if segs:
            bps.append(lo)
        segs.append(seg)
    return PwlFunction._canonical(bps, segs)


def solve_crossing(lhs: PwlFunction, rhs: PwlFunction, lo, hi) -> Fraction:
    """Smallest ``gamma`` in ``[lo, hi]`` with ``lhs(gamma) == rhs(gamma)``.

    ``lhs - rhs`` must be non-decreasing on ``[lo, hi]``, non-positive at
    ``lo`` and non-negative at ``hi``. When the two sides coincide on a whole
    sub-interval the left end of that interval is returned.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise CrossingError(f"empty interval [{lo}, {hi}]")
    d = lhs - rhs
    d_lo, d_hi = d(lo), d(hi)
    if d_lo > 0 or d_hi < 0:
        raise CrossingError(
            f"no sign change on [{lo}, {hi}]: lhs-rhs = {d_lo} at lo, {d_hi} at hi "
            f"(lhs {lhs(lo)} vs rhs {rhs(lo)}; lhs {lhs(hi)} vs rhs {rhs(hi)})"
        )
    if d_lo == 0:
        return lo
    # walk the pieces of d that meet (lo, hi]
    start = bisect_right(d.breakpoints, lo)
    edges = [lo, *[b for b in d.breakpoints[start:] if b < hi], hi]
    for a, b in zip(edges, edges[1:]):
        if d(b) >= 0:
            s, c = d.segment_at((a + b) / 2)
            if s == 0:
                return a if c == 0 else b
            root = -c / s
            if not a <= root <= b:
                raise CrossingError(f"lhs-rhs is not monotone on [{lo}, {hi}]")
            return root
    raise CrossingError(f"no crossing found on [{lo}, {hi}]")  # pragma: no cover
