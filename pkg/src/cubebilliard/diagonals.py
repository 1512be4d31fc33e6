"""Generalized diagonals of the cubic tessellation.

A diagonal is the family of segments joining the relative interiors of
two faces A, B of dimension d-2.  Faces are described by their fixed axes
(with integer levels) and, for every free axis, the integer part of the
free coordinate, so a free coordinate ranges over ``(floor, floor + 1)``.

The combinatorial length of (A, B) is the number of integer hyperplanes
met by a segment in the half-open ``(a, b]``: the sum of B's levels and
floors when A sits at the origin.  The open segment therefore crosses
``n - 2`` hyperplanes and its code has length ``n - 2``; the two
hyperplanes through B are met together at the endpoint.
"""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateDiagonal, EmptyProjection, InsufficientDepth, NotComparable, TieAtEdge
from .geometry import BilliardWord, as_point, project_word, segment_code
from .language import LanguageSet, SpecialStats, bispecial_words, special_stats

__all__ = [
    "Face",
    "Diagonal",
    "DiagonalEquation",
    "combinatorial_length",
    "is_positive",
    "enumerate_diagonals",
    "count_diagonals",
    "diagonal_equation",
    "words_in_diagonal",
    "bispecial_diagonal_budget",
    "projection_surjectivity_check",
]

DEFAULT_GRIDS = (5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True, order=True)
class Face:
    d: int
    fixed: tuple        # sorted fixed axes
    levels: tuple       # level of fixed axes, floor of free ones

    def __post_init__(self):
        if len(self.levels) != self.d:
            raise ValueError("levels must have one entry per axis")
        if list(self.fixed) != sorted(set(self.fixed)) or any(not 0 <= a < self.d for a in self.fixed):
            raise ValueError(f"bad fixed axes {self.fixed}")

    @classmethod
    def make(cls, d: int, fixed: dict, floors: Optional[dict] = None) -> "Face":
        levels = [0] * d
        for a, v in (floors or {}).items():
            levels[a] = v
        for a, v in fixed.items():
            levels[a] = v
        return cls(d, tuple(sorted(fixed)), tuple(levels))

    @classmethod
    def vertex(cls, coords: Sequence[int]) -> "Face":
        return cls(len(coords), tuple(range(len(coords))), tuple(coords))

    @property
    def dim(self) -> int:
        return self.d - len(self.fixed)

    @property
    def free(self) -> tuple:
        return tuple(a for a in range(self.d) if a not in self.fixed)

    def points(self, q: int):
        """Rational points of the relative interior on the grid of step 1/q."""
        free = self.free
        offsets = [Fraction(k, q) for k in range(1, q)]
        for combo in itertools.product(offsets, repeat=len(free)):
            p = [Fraction(v) for v in self.levels]
            for a, off in zip(free, combo):
                p[a] += off
            yield tuple(p)

    def __str__(self):
        parts = []
        for a in range(self.d):
            v = self.levels[a]
            parts.append(str(v) if a in self.fixed else f"({v},{v + 1})")
        return "[" + ", ".join(parts) + "]"


@dataclass(frozen=True, order=True)
class Diagonal:
    n: int
    A: Face
    B: Face
    kind: str           # "type1": same fixed axes (gcd filter applies), else "type2"
    positive: bool = True

    @property
    def word_length(self) -> int:
        return self.n - len(self.B.fixed)

    def to_dict(self):
        return {"n": self.n, "A_fixed": list(self.A.fixed), "A_levels": list(self.A.levels),
                "B_fixed": list(self.B.fixed), "B_levels": list(self.B.levels),
                "kind": self.kind, "positive": self.positive}


def _check_initial(A: Face):
    if any(v != 0 for v in A.levels):
        raise NotComparable(f"initial face {A} is not a face of [0,1]^d at the origin")


def _count_crossings(a, b) -> int:
    # integer hyperplanes met in the half-open segment (a, b]
    total = 0
    for x, y in zip(a, b):
        if y >= x:
            total += math.floor(y) - math.floor(x)
        else:
            total += math.ceil(x) - math.ceil(y)
    return total


def combinatorial_length(A: Face, B: Face) -> int:
    """Number of unit cubes entered by a segment from A to B."""
    _check_initial(A)
    if A.d != B.d:
        raise ValueError("faces live in different dimensions")
    for a in range(A.d):
        lvl = B.levels[a]
        if lvl < 0 or (a not in A.fixed and a in B.fixed and lvl <= 0):
            raise NotComparable(f"{B} is not above {A} along axis {a}")
    n = sum(B.levels)
    qa, qb = (3, 5)
    probes = [(next(A.points(qa)), next(B.points(qb))),
              (list(A.points(qb))[-1], list(B.points(qa))[-1])]
    for a, b in probes:
        got = _count_crossings(a, b)
        if got != n:
            raise AssertionError(f"length of {A}->{B} depends on the point ({got} != {n})")
    return n


def is_positive(A: Face, B: Face) -> bool:
    """Every segment from A to B has a strictly positive direction vector."""
    for a in range(A.d):
        lvl = B.levels[a]
        if a in B.fixed or a not in A.fixed:
            # fixed in B, or free in A: need level/floor >= 1
            if lvl < 1:
                return False
        elif lvl < 0:
            return False
    return True


def _compositions(total: int, lows: Sequence[int]):
    rest = total - sum(lows)
    if rest < 0:
        return
    k = len(lows)
    for cut in itertools.combinations(range(rest + k - 1), k - 1):
        prev = -1
        parts = []
        for c in cut + (rest + k - 1,):
            parts.append(c - prev - 1)
            prev = c
        yield tuple(lo + p for lo, p in zip(lows, parts))


def enumerate_diagonals(n: int, d: int, gcd_filter: bool = True) -> list[Diagonal]:
    """Positive diagonals of combinatorial length n between (d-2)-faces.

    The initial face is a (d-2)-face of [0,1]^d through the origin.  Pairs
    with the same fixed axes are kept only when the two levels are coprime
    (otherwise every segment passes through an intermediate lattice face).
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    out = []
    if n < 1:
        return out
    pairs = list(itertools.combinations(range(d), 2))
    for fa in pairs:
        A = Face(d, fa, (0,) * d)
        for fb in pairs:
            lows = [1 if (a in fb or a not in fa) else 0 for a in range(d)]
            same = fa == fb
            for levels in _compositions(n, lows):
                if same and gcd_filter and math.gcd(levels[fb[0]], levels[fb[1]]) != 1:
                    continue
                B = Face(d, fb, levels)
                out.append(Diagonal(n, A, B, "type1" if same else "type2", True))
    out.sort()
    return out


@dataclass(frozen=True)
class DiagonalCount:
    n: int
    d: int
    count: int
    type1: int
    type2: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.count, self.n ** (self.d - 1))


def count_diagonals(n: int, d: int) -> DiagonalCount:
    diags = enumerate_diagonals(n, d)
    t1 = sum(g.kind == "type1" for g in diags)
    return DiagonalCount(n, d, len(diags), t1, len(diags) - t1)


@dataclass(frozen=True)
class DiagonalEquation:
    """Equation satisfied by (m, omega) when m + R omega meets B, m in A.

    ``F``: ``n*omega_j = p*omega_i``            (B fixed on both axes of A)
    ``G``: ``m_i + n*omega_i/omega_j = p``      (one shared fixed axis j)
    ``H``: ``omega_j m_i - omega_i m_j = n*omega_i + p*omega_j``
    """

    variant: str
    i: int
    j: int
    n: int
    p: int
    permutation: tuple   # normalised order: free axes of A, then its fixed axes

    def residual(self, m, omega) -> Fraction:
        m = as_point(m)
        w = [Fraction(x) for x in omega]
        i, j, n, p = self.i, self.j, self.n, self.p
        if self.variant == "F":
            return n * w[j] - p * w[i]
        if self.variant == "G":
            return m[i] + n * w[i] / w[j] - p
        return w[j] * m[i] - w[i] * m[j] - (n * w[i] + p * w[j])


def diagonal_equation(A: Face, B: Face) -> DiagonalEquation:
    """Classify the diagonal (A, B) by how B's fixed axes meet A's."""
    _check_initial(A)
    if len(A.fixed) != 2 or len(B.fixed) != 2:
        raise ValueError("equations are defined for faces of dimension d-2")
    perm = tuple(a for a in range(A.d) if a not in A.fixed) + A.fixed
    shared = [a for a in B.fixed if a in A.fixed]
    L = B.levels
    if len(shared) == 2:
        i, j = A.fixed
        return DiagonalEquation("F", i, j, L[i], L[j], perm)
    if len(shared) == 1:
        j = shared[0]
        i = next(a for a in B.fixed if a != j)
        return DiagonalEquation("G", i, j, L[j], L[i], perm)
    i, j = B.fixed
    return DiagonalEquation("H", i, j, -L[j], L[i], perm)


@dataclass
class DiagonalWords:
    diagonal: Diagonal
    words: dict                  # code -> number of sampled segments
    stats: dict = field(default_factory=dict)   # code -> SpecialStats
    samples: int = 0
    ties: int = 0
    grids: tuple = ()


def words_in_diagonal(gamma: Diagonal, grids: Sequence[int] = DEFAULT_GRIDS, rounds: int = 2,
                      ls: Optional[LanguageSet] = None) -> DiagonalWords:
    """Distinct codes of tie-free segments of ``gamma``.

    Endpoints are sampled on grids of step 1/q for the successive q of
    ``grids``; sampling stops once ``rounds`` consecutive grids add no new
    code.  With ``ls`` each code is cross-referenced with its extension
    counts in the language.
    """
    if gamma.n < 2:
        raise ValueError("diagonals of length < 2 carry no segment code")
    found: dict = {}
    res = DiagonalWords(gamma, found)
    quiet = 0
    used = []
    for q in grids:
        before = len(found)
        for a in gamma.A.points(q):
            for b in gamma.B.points(q):
                res.samples += 1
                try:
                    code = segment_code(a, b)
                except TieAtEdge:
                    res.ties += 1
                    continue
                found[code] = found.get(code, 0) + 1
        used.append(q)
        if gamma.A.dim == 0 and gamma.B.dim == 0:
            break
        quiet = quiet + 1 if len(found) == before and found else 0
        if quiet >= rounds:
            break
    res.grids = tuple(used)
    if not found:
        raise DegenerateDiagonal(f"every sampled segment of {gamma.A}->{gamma.B} hits a lower face")
    if ls is not None:
        for v in found:
            if len(v) + 2 <= ls.n_max:
                res.stats[v] = special_stats(ls, v)
    return res


@dataclass
class BudgetReport:
    n: int
    d: int
    word_length: int
    diagonals: int
    degenerate: int
    X: int                       # sum over diagonals of the number of codes
    sum_i_plus: int              # sum of i(v) over bispecial codes of diagonals
    sum_i_all: int               # sum of i(v) over every bispecial word
    bispecial_plus: int
    bispecial_all: int
    shared_words: int            # codes found in more than one diagonal
    distinct_words: int          # codes counted once however many diagonals hold them
    not_bispecial: list          # diagonal codes that are not bispecial
    i_out_of_range: list         # codes with i outside [1, d^2]
    mb_not_product: list         # codes with m_b != m_l * m_r

    @property
    def chain_holds(self) -> bool:
        return self.X <= self.sum_i_plus <= self.d ** 2 * self.X

    @property
    def distinct_chain_holds(self) -> bool:
        return self.distinct_words <= self.sum_i_plus <= self.d ** 2 * self.distinct_words

    @property
    def clean(self) -> bool:
        return self.chain_holds and not (self.not_bispecial or self.i_out_of_range or self.mb_not_product)


def bispecial_diagonal_budget(n: int, d: int, ls: LanguageSet,
                              grids: Sequence[int] = DEFAULT_GRIDS) -> BudgetReport:
    """Compare codes of Diag(n) with the bispecial words they produce.

    ``n`` is the combinatorial length; the codes and the bispecial words
    compared have length ``n - 2``.
    """
    k = n - 2
    if ls.d != d:
        raise ValueError("language dimension mismatch")
    if k >= 0 and k + 2 > ls.n_max:
        raise InsufficientDepth(f"need words of length {k + 2}, have {ls.n_max}")
    owners: dict = {}
    X = degenerate = 0
    diags = enumerate_diagonals(n, d) if k >= 0 else []
    for g in diags:
        try:
            dw = words_in_diagonal(g, grids)
        except DegenerateDiagonal:
            degenerate += 1
            continue
        X += len(dw.words)
        for v in dw.words:
            owners.setdefault(v, []).append(g)
    bl = {st.word: st for st in bispecial_words(ls, k)} if k >= 0 else {}
    stats = {v: (bl.get(v) or special_stats(ls, v)) for v in owners}
    plus = [v for v in owners if v in bl]
    return BudgetReport(
        n=n, d=d, word_length=k, diagonals=len(diags), degenerate=degenerate, X=X,
        sum_i_plus=sum(bl[v].i for v in plus), sum_i_all=sum(st.i for st in bl.values()),
        bispecial_plus=len(plus), bispecial_all=len(bl),
        shared_words=sum(len(gs) > 1 for gs in owners.values()),
        distinct_words=len(owners),
        not_bispecial=sorted(v for v in owners if v not in bl),
        i_out_of_range=sorted(v for v, st in stats.items() if not 1 <= st.i <= d * d),
        mb_not_product=sorted(v for v, st in stats.items() if st.m_b != st.m_l * st.m_r),
    )


@dataclass
class ProjectionReport:
    n: int
    d: int
    projected: dict              # length -> set of projected codes
    not_in_lower: list           # projected codes missing from L(., d-1)
    missing: dict                # length -> lower-dimensional words never reached

    @property
    def lift_complete(self) -> bool:
        return not any(self.missing.values())

    @property
    def projections_valid(self) -> bool:
        return not self.not_in_lower


def projection_surjectivity_check(n: int, d: int, lower: LanguageSet,
                                  grids: Sequence[int] = DEFAULT_GRIDS) -> ProjectionReport:
    """Project the codes of Diag(n) onto the (d-1)-cube and compare.

    Only diagonals whose end faces share exactly one fixed axis project
    onto a (d-1)-dimensional cube; that axis is erased.  Every projected
    code must be a (d-1)-dimensional billiard word, and every such word of
    length <= n - 2 must be reached.
    """
    if lower.d != d - 1:
        raise ValueError("lower language must have dimension d-1")
    projected: dict = {}
    if n >= 2:
        for g in enumerate_diagonals(n, d):
            shared = [a for a in g.B.fixed if a in g.A.fixed]
            if len(shared) != 1:
                continue
            try:
                dw = words_in_diagonal(g, grids)
            except DegenerateDiagonal:
                continue
            with warnings.catch_warnings():
                # codes made only of the erased letter project to the empty word
                warnings.simplefilter("ignore", EmptyProjection)
                for v in dw.words:
                    pv = project_word(BilliardWord(v, d), shared[0]).letters
                    projected.setdefault(len(pv), set()).add(pv)
    not_in_lower = sorted(w for ws in projected.values() for w in ws
                          if len(w) <= lower.n_max and w not in lower)
    missing = {}
    for k in range(0, min(n - 2, lower.n_max) + 1):
        missing[k] = sorted(set(lower.words[k]) - projected.get(k, set()))
    return ProjectionReport(n, d, projected, not_in_lower, missing)
