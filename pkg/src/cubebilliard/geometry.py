"""Exact tracing of billiard trajectories in the unit hypercube.

Trajectories are unfolded: instead of reflecting the ball at a face we
reflect the cube and follow a straight line through the tiling of R^d by
unit cubes.  A trajectory is coded by the axis of each integer hyperplane
it crosses, so parallel faces share a letter.

Points are tuples of :class:`fractions.Fraction`; directions are tuples of
coprime integers.  All comparisons are integer cross-multiplications, so
results are exact and deterministic.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .errors import EmptyProjection, TieAtEdge, ZeroComponent

__all__ = [
    "BilliardWord",
    "CrossingEvent",
    "as_point",
    "as_direction",
    "crossings",
    "iter_letters",
    "trace_word",
    "fold",
    "project_word",
    "project_trajectory",
    "reflect",
    "segment_code",
    "billiard_orbit",
]

ALPHABET = "0123456789"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(str(x).strip()) if isinstance(x, str) else Fraction(x)


def as_point(coords) -> tuple[Fraction, ...]:
    """Coerce ``coords`` (ints, Fractions or "a/b" strings) to a point."""
    return tuple(_frac(c) for c in coords)


def as_direction(coords) -> tuple[int, ...]:
    """Canonical direction: rational coordinates cleared to coprime integers.

    >>> as_direction(["1/2", "1/3"])
    (3, 2)
    """
    fr = [_frac(c) for c in coords]
    if any(c == 0 for c in fr):
        raise ZeroComponent(f"direction {tuple(str(c) for c in fr)} has a zero component")
    den = math.lcm(*(c.denominator for c in fr))
    ints = [int(c * den) for c in fr]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)


class CrossingEvent(NamedTuple):
    time: Fraction
    axis: int
    level: int


@dataclass(frozen=True)
class BilliardWord:
    """A finite billiard word over the alphabet {0, ..., d-1}."""

    letters: str
    d: int

    def __post_init__(self):
        if self.d < 1 or self.d > len(ALPHABET):
            raise ValueError(f"dimension must be in 1..{len(ALPHABET)}")
        bad = set(self.letters) - set(ALPHABET[: self.d])
        if bad:
            raise ValueError(f"letters {sorted(bad)} not in alphabet of size {self.d}")

    def __str__(self):
        return self.letters

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return (int(c) for c in self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BilliardWord(self.letters[i], self.d)
        return int(self.letters[i])


class _Tracer:
    """Integer state machine walking the crossings of m + t*omega, t > 0.

    With m = M/Q, the k-th crossing of axis a happens at time N_a/(Q|w_a|)
    where N_a grows by Q at every crossing of that axis.
    """

    __slots__ = ("d", "Q", "num", "wabs", "level", "sign")

    def __init__(self, m, omega):
        m = as_point(m)
        omega = as_direction(omega)
        if len(m) != len(omega):
            raise ValueError("point and direction dimensions differ")
        self.d = len(m)
        self.Q = Q = math.lcm(*(c.denominator for c in m))
        self.num, self.wabs, self.level, self.sign = [], [], [], []
        for ma, wa in zip(m, omega):
            M = ma.numerator * (Q // ma.denominator)
            s = 1 if wa > 0 else -1
            lvl = math.floor(ma) + 1 if s > 0 else math.ceil(ma) - 1
            self.num.append(s * (lvl * Q - M))
            self.wabs.append(abs(wa))
            self.level.append(lvl)
            self.sign.append(s)

    def _argmin(self):
        num, w = self.num, self.wabs
        best = 0
        tied = None
        for a in range(1, self.d):
            lhs, rhs = num[a] * w[best], num[best] * w[a]
            if lhs < rhs:
                best, tied = a, None
            elif lhs == rhs:
                tied = (tied or [best]) + [a]
        return best, tied

    def step(self):
        """Advance past the next crossing; return (axis, level, num, den)."""
        a, tied = self._argmin()
        if tied:
            raise TieAtEdge(Fraction(self.num[a], self.Q * self.wabs[a]), tied)
        out = (a, self.level[a], self.num[a], self.Q * self.wabs[a])
        self.num[a] += self.Q
        self.level[a] += self.sign[a]
        return out


def crossings(m, omega, n: int) -> list[CrossingEvent]:
    """First ``n`` crossings of integer hyperplanes by the ray m + t*omega.

    Raises :class:`TieAtEdge` as soon as two crossings coincide and
    :class:`ZeroComponent` when some omega_a == 0.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    tr = _Tracer(m, omega)
    out = []
    for _ in range(n):
        a, lvl, num, den = tr.step()
        out.append(CrossingEvent(Fraction(num, den), a, lvl))
    return out


def iter_letters(m, omega) -> Iterator[int]:
    """Unbounded generator of the axes crossed by the ray (fast path)."""
    tr = _Tracer(m, omega)
    while True:
        yield tr.step()[0]


def trace_word(m, omega, n: int) -> BilliardWord:
    """Code of the first ``n`` crossings; the starting face is not coded."""
    tr = _Tracer(m, omega)
    return BilliardWord("".join(ALPHABET[tr.step()[0]] for _ in range(n)), tr.d)


def trace_string(m, omega, n: int, stop_at_tie: bool = False) -> str:
    """Like :func:`trace_word` but returns a plain string.

    With ``stop_at_tie`` the code is truncated just before the first tie
    instead of raising.
    """
    tr = _Tracer(m, omega)
    out = []
    try:
        for _ in range(n):
            out.append(ALPHABET[tr.step()[0]])
    except TieAtEdge:
        if not stop_at_tie:
            raise
    return "".join(out)


def fold(p) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """Map an unfolded point back into [0,1]^d.

    Returns the folded point and, per axis, the integer part of the
    coordinate (its parity says whether that copy of the cube is mirrored).
    """
    q, par = [], []
    for x in as_point(p):
        k = math.floor(x)
        r = x - k
        q.append(r if k % 2 == 0 else 1 - r)
        par.append(k)
    return tuple(q), tuple(par)


def project_word(v: BilliardWord, axis: int) -> BilliardWord:
    """Erase ``axis`` from the word and relabel the remaining letters."""
    if v.d < 2:
        raise ValueError("projection needs d >= 2")
    if not 0 <= axis < v.d:
        raise ValueError(f"axis {axis} out of range")
    out = "".join(c if int(c) < axis else ALPHABET[int(c) - 1]
                  for c in v.letters if int(c) != axis)
    if v.letters and not out:
        warnings.warn(f"projection of {v.letters!r} along {axis} is empty", EmptyProjection)
    return BilliardWord(out, v.d - 1)


def project_trajectory(m, omega, axis: int):
    """Orthogonal projection of (m, omega) onto the face orthogonal to ``axis``."""
    m = as_point(m)
    omega = tuple(omega)
    return (m[:axis] + m[axis + 1:],
            as_direction(omega[:axis] + omega[axis + 1:]))


def reflect(m, omega, axis: int):
    """Mirror the trajectory in the hyperplane x_axis = 1/2.

    Letters are preserved, so the code is unchanged.
    """
    m = list(as_point(m))
    om = [_frac(c) for c in omega]
    m[axis] = 1 - m[axis]
    om[axis] = -om[axis]
    return tuple(m), as_direction(om)


def segment_code(a: Sequence, b: Sequence) -> str:
    """Code of the open segment (a, b): hyperplanes crossed strictly inside.

    Raises :class:`TieAtEdge` if two of them are crossed at the same time.
    """
    a, b = as_point(a), as_point(b)
    events = []
    for axis, (x, y) in enumerate(zip(a, b)):
        if x == y:
            continue
        if y > x:
            levels = range(math.floor(x) + 1, math.ceil(y))
        else:
            levels = range(math.ceil(x) - 1, math.floor(y), -1)
        span = y - x
        events.extend(((k - x) / span, axis) for k in levels)
    events.sort()
    for (t0, a0), (t1, a1) in zip(events, events[1:]):
        if t0 == t1:
            raise TieAtEdge(t0, (a0, a1))
    return "".join(ALPHABET[ax] for _, ax in events)


def billiard_orbit(m, omega, n: int):
    """Bounce points of the folded (actual) billiard orbit.

    Returns ``n`` tuples ``(point, axis, outgoing_direction)`` where the
    point lies on the boundary of [0,1]^d and the outgoing direction is
    the incoming one with the sign of ``axis`` flipped.
    """
    m = as_point(m)
    omega = as_direction(omega)
    out = []
    for ev in crossings(m, omega, n):
        p = tuple(x + ev.time * w for x, w in zip(m, omega))
        q, par = fold(p)
        # after the crossing the ray is in the copy indexed by `level` on that axis
        par = list(par)
        if omega[ev.axis] < 0:
            par[ev.axis] = ev.level - 1
        direction = tuple(w if k % 2 == 0 else -w for w, k in zip(omega, par))
        out.append((q, ev.axis, direction))
    return out
