"""Exact region counts for planar line arrangements, plus hypercube Euler checks.

A new line cut by ``k`` distinct points of previously inserted lines is
split into ``k + 1`` pieces, and each piece splits one region in two.
Intersections are exact rationals, so coincident points are merged
exactly and the count never depends on insertion order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DuplicateLine

__all__ = [
    "Line2D",
    "CellCount",
    "count_regions_2d",
    "max_regions",
    "hypercube_cells",
    "euler_check_hypercube",
    "random_lines",
    "region_growth_check",
]


@dataclass(frozen=True, order=True)
class Line2D:
    """The line a*x + b*y = c with coprime integers, first nonzero of (a, b) positive."""

    a: int
    b: int
    c: int

    @classmethod
    def make(cls, a, b, c) -> "Line2D":
        fr = [Fraction(v) for v in (a, b, c)]
        if fr[0] == 0 and fr[1] == 0:
            raise ValueError("(a, b) must not both vanish")
        den = math.lcm(*(v.denominator for v in fr))
        ints = [int(v * den) for v in fr]
        g = math.gcd(*ints)
        ints = [v // g for v in ints]
        if ints[0] < 0 or (ints[0] == 0 and ints[1] < 0):
            ints = [-v for v in ints]
        return cls(*ints)

    def meet(self, other: "Line2D") -> Optional[tuple[Fraction, Fraction]]:
        """Intersection point, or None for parallel lines (Cramer's rule)."""
        det = self.a * other.b - self.b * other.a
        if det == 0:
            return None
        x = Fraction(self.c * other.b - self.b * other.c, det)
        y = Fraction(self.a * other.c - self.c * other.a, det)
        return x, y

    def side(self, x, y) -> int:
        v = self.a * x + self.b * y - self.c
        return (v > 0) - (v < 0)


@dataclass(frozen=True)
class CellCount:
    """N[i] = number of i-dimensional cells."""

    N: tuple

    def euler(self) -> int:
        return sum((-1) ** i * v for i, v in enumerate(self.N))


def _as_line(l) -> Line2D:
    return l if isinstance(l, Line2D) else Line2D.make(*l)


def count_regions_2d(lines: Iterable) -> int:
    """Number of connected components of the plane minus the lines."""
    placed: list[Line2D] = []
    seen = set()
    regions = 1
    for raw in lines:
        line = _as_line(raw)
        if line in seen:
            raise DuplicateLine(f"line {line} inserted twice")
        pts = {p for p in (line.meet(o) for o in placed) if p is not None}
        regions += len(pts) + 1
        placed.append(line)
        seen.add(line)
    return regions


def max_regions(n: int) -> int:
    return 1 + n + n * (n - 1) // 2


def hypercube_cells(d: int) -> CellCount:
    """Face numbers of the boundary of [0,1]^d: N_i = C(d,i) 2^(d-i), i < d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return CellCount(tuple(math.comb(d, i) * 2 ** (d - i) for i in range(d)))


def euler_check_hypercube(d: int) -> dict:
    cells = hypercube_cells(d)
    lhs = cells.euler()
    rhs = 1 - (-1) ** d
    return {"d": d, "N": list(cells.N), "lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


def random_lines(n: int, rng: np.random.Generator, mode: str = "general",
                 height: int = 1000) -> list[Line2D]:
    """Distinct random lines with integer coefficients.

    ``general``: redrawn until no two are parallel and no three concurrent.
    ``parallel``: a*x + b*y = c_k for one random (a, b).
    ``mixed``: drawn from a few slopes and a few anchor points, so parallel
    and concurrent families both occur.
    """
    lines: list[Line2D] = []
    seen = set()
    if mode == "parallel":
        a, b = (int(v) for v in rng.integers(1, height, size=2))
        cs = rng.choice(np.arange(-10 * n * height, 10 * n * height), size=n, replace=False)
        return [Line2D.make(a, b, int(c)) for c in cs]
    if mode == "mixed":
        slopes = [tuple(int(v) for v in rng.integers(-5, 6, size=2)) for _ in range(3)]
        slopes = [s for s in slopes if s != (0, 0)] or [(1, 0)]
        anchors = [tuple(int(v) for v in rng.integers(-5, 6, size=2)) for _ in range(3)]
        attempts = 0
        while len(lines) < n:
            attempts += 1
            if attempts > 1000 * n:
                raise RuntimeError("could not draw enough distinct lines")
            kind = rng.integers(3)
            if kind == 0:
                a, b = slopes[rng.integers(len(slopes))]
                c = int(rng.integers(-20, 21))
            elif kind == 1:
                x, y = anchors[rng.integers(len(anchors))]
                a, b = (int(v) for v in rng.integers(-9, 10, size=2))
                c = a * x + b * y
            else:
                a, b, c = (int(v) for v in rng.integers(-9, 10, size=3))
            if a == 0 and b == 0:
                continue
            line = Line2D.make(a, b, c)
            if line not in seen:
                seen.add(line)
                lines.append(line)
        return lines
    if mode != "general":
        raise ValueError(f"unknown mode {mode!r}")
    points = set()
    while len(lines) < n:
        a, b, c = (int(v) for v in rng.integers(-height, height + 1, size=3))
        if a == 0 and b == 0:
            continue
        line = Line2D.make(a, b, c)
        new = [line.meet(o) for o in lines]
        if line in seen or any(p is None or p in points for p in new) or len(set(new)) < len(new):
            continue
        seen.add(line)
        lines.append(line)
        points.update(new)
    return lines


def region_growth_check(x: int = 2, n_max: int = 20, trials: int = 10, seed: int = 0,
                        mode: str = "general") -> dict:
    """Ratio regions(n)/n^x over random arrangements of n = 1..n_max lines.

    One arrangement of ``n_max`` lines is drawn per trial (seeds spawned
    from ``seed``) and its first ``n`` lines give the n-th data point.
    """
    if x != 2:
        raise ValueError("only planar arrangements (x=2) are counted exactly")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rows = []
    for t, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        lines = random_lines(n_max, np.random.default_rng(child), mode)
        for n in range(1, n_max + 1):
            r = count_regions_2d(lines[:n])
            rows.append({"trial": t, "n": n, "regions": r, "ratio": Fraction(r, n ** x)})
    tail = [r["ratio"] for r in rows if r["n"] == n_max]
    return {"x": x, "mode": mode, "rows": rows, "max_ratio": max(r["ratio"] for r in rows),
            "max_ratio_at_n_max": max(tail),
            "sandwich": all(r["n"] + 1 <= r["regions"] <= max_regions(r["n"]) for r in rows)}
