"""Billiard languages, complexity functions and special words.

Two enumerators are available through :func:`enumerate_language`:

``method="exact"``
    Level-by-level extension.  A word is a billiard word iff the order of
    its crossings can be realised by some start point and positive
    direction.  Writing the crossing times of axis ``a`` as
    ``c_a + j*u_a`` (``u_a = 1/omega_a``, ``c_a = (1 - m_a) u_a``) makes
    that a strict homogeneous linear system in ``(c, u)``, decided with
    exact certificates by :mod:`cubebilliard.feasibility`.  Every stored
    word carries a rational witness trajectory.

``method="sample"``
    Trace every start point of a face grid with every coprime positive
    direction up to a height bound, refine along a schedule until the
    counts stop moving.  Optionally each missing candidate is decided per
    grid point by Fourier-Motzkin elimination in u-space.

Reflections preserve letters, so only positive directions are sampled.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import feasibility
from .errors import InsufficientDepth, NonPositiveValue, TieAtEdge, UnstableEnumeration
from .geometry import ALPHABET, as_direction, as_point, trace_string

__all__ = [
    "EnumerationConfig",
    "LanguageSet",
    "LanguageTable",
    "SpecialStats",
    "StabilityReport",
    "DirectionalResult",
    "FitResult",
    "enumerate_language",
    "complexity_table",
    "classify_special",
    "special_stats",
    "bispecial_words",
    "cassaigne_check",
    "directional_complexity",
    "exponent_fit",
    "joint_order_rows",
    "fixed_point_rows",
]


# ---------------------------------------------------------------- data types

@dataclass(frozen=True)
class EnumerationConfig:
    method: str = "exact"
    Q: int = 8
    D: int = 8
    schedule: tuple = ()
    rounds: int = 2
    lp_refine: bool = False
    refine_points: int = 16
    seed: int = 0
    retries: int = 8
    balance_filter: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.method not in ("exact", "sample"):
            raise ValueError(f"unknown method {self.method!r}")
        if min(self.Q, self.D, self.rounds, self.workers) < 1:
            raise ValueError("Q, D, rounds and workers must be >= 1")
        sched = self.full_schedule()
        for (q0, d0), (q1, d1) in zip(sched, sched[1:]):
            if not (q1 > q0 and d1 > d0):
                raise ValueError("refinement schedule must increase in both Q and D")

    def full_schedule(self) -> list[tuple[int, int]]:
        return [tuple(s) for s in self.schedule] if self.schedule else [(self.Q, self.D)]

    def to_dict(self):
        d = self.__dict__.copy()
        d["schedule"] = [list(s) for s in self.schedule]
        return d


@dataclass
class LanguageSet:
    d: int
    n_max: int
    words: dict                                   # n -> frozenset[str]
    witnesses: dict = field(default_factory=dict, repr=False)  # word -> (m, omega)

    def __contains__(self, w: str) -> bool:
        return w in self.words.get(len(w), ())

    def count(self, n: int) -> int:
        return len(self.words[n])

    def witness(self, w: str):
        """A start point and direction whose code begins with ``w``."""
        return self.witnesses.get(w)

    def factorial_violations(self) -> list[str]:
        bad = []
        for n in range(1, self.n_max + 1):
            lower = self.words[n - 1]
            bad.extend(w for w in self.words[n] if w[1:] not in lower or w[:-1] not in lower)
        return bad

    def extendability_violations(self) -> list[str]:
        bad = []
        letters = ALPHABET[: self.d]
        for n in range(self.n_max):
            upper = self.words[n + 1]
            for w in self.words[n]:
                if not any(w + a in upper for a in letters) or not any(a + w in upper for a in letters):
                    bad.append(w)
        return bad


@dataclass
class StabilityReport:
    method: str
    stable: dict                 # n -> bool
    history: list = field(default_factory=list)   # per round: list of p(n)
    certified: bool = False
    lp_calls: int = 0
    samples: int = 0
    ties: int = 0

    @property
    def all_stable(self) -> bool:
        return all(self.stable.values())


@dataclass(frozen=True)
class SpecialStats:
    word: str
    m_l: int
    m_r: int
    m_b: int

    @property
    def i(self) -> int:
        return self.m_b - self.m_r - self.m_l + 1

    @property
    def right_special(self) -> bool:
        return self.m_r >= 2

    @property
    def left_special(self) -> bool:
        return self.m_l >= 2

    @property
    def bispecial(self) -> bool:
        return self.m_l >= 2 and self.m_r >= 2


@dataclass
class LanguageTable:
    p: dict
    stable: dict = field(default_factory=dict)
    n_bispecial: dict = field(default_factory=dict)
    sum_i: dict = field(default_factory=dict)

    @property
    def s(self) -> dict:
        return {n: self.p[n + 1] - self.p[n] for n in self.p if n + 1 in self.p}

    @property
    def s2(self) -> dict:
        s = self.s
        return {n: s[n + 1] - s[n] for n in s if n + 1 in s}

    def series(self, target: str) -> dict:
        if target not in ("p", "s", "s2"):
            raise ValueError(f"unknown target {target!r}")
        return getattr(self, target)

    COLUMNS = ("n", "p", "s", "s2", "n_bispecial", "sum_i", "stable")

    def rows(self):
        s, s2 = self.s, self.s2
        for n in sorted(self.p):
            yield {
                "n": n, "p": self.p[n], "s": s.get(n, ""), "s2": s2.get(n, ""),
                "n_bispecial": self.n_bispecial.get(n, ""), "sum_i": self.sum_i.get(n, ""),
                "stable": int(self.stable.get(n, True)),
            }

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=self.COLUMNS, lineterminator="\n")
        wr.writeheader()
        wr.writerows(self.rows())
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"columns": list(self.COLUMNS), "rows": list(self.rows())}

    @classmethod
    def from_csv(cls, text: str) -> "LanguageTable":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        t = cls(p={})
        for row in csv.DictReader(lines):
            n = int(row["n"])
            t.p[n] = int(row["p"])
            if row.get("stable", "") != "":
                t.stable[n] = bool(int(row["stable"]))
            for key in ("n_bispecial", "sum_i"):
                if row.get(key, "") != "":
                    getattr(t, key)[n] = int(row[key])
        return t


# ---------------------------------------------------------- linear systems

def _events(word: str, d: int):
    cnt = [0] * d
    out = []
    for ch in word:
        a = int(ch)
        out.append((a, cnt[a]))
        cnt[a] += 1
    return out, cnt


def joint_order_rows(word: str, d: int) -> list[list[int]]:
    """Rows of ``A (c, u) > 0`` encoding 'the first crossings spell word'.

    Variables are ``c_0..c_{d-1}, u_0..u_{d-1}``; the j-th crossing of axis
    a happens at ``c_a + j u_a`` with ``0 < c_a < u_a``.
    """
    rows = []

    def diff(later, earlier):
        (b, k), (a, j) = later, earlier
        r = [0] * (2 * d)
        r[b] += 1
        r[d + b] += k
        r[a] -= 1
        r[d + a] -= j
        return r

    for a in range(d):
        r = [0] * (2 * d)
        r[a] = 1
        rows.append(r)
        r = [0] * (2 * d)
        r[a] = -1
        r[d + a] = 1
        rows.append(r)
    evs, cnt = _events(word, d)
    for e0, e1 in zip(evs, evs[1:]):
        if e0[0] != e1[0]:
            rows.append(diff(e1, e0))
    if evs:
        last = evs[-1]
        for b in range(d):
            if b != last[0]:
                rows.append(diff((b, cnt[b]), last))
    return rows


def fixed_point_rows(word: str, m) -> list[list[Fraction]]:
    """Rows of ``A u > 0`` for a fixed start point ``m``; ``u_a = 1/omega_a``."""
    m = as_point(m)
    d = len(m)
    first = [math.floor(x) + 1 for x in m]

    def coef(a, j):
        return first[a] + j - m[a]

    rows = []
    for a in range(d):
        r = [Fraction(0)] * d
        r[a] = Fraction(1)
        rows.append(r)

    def diff(later, earlier):
        (b, k), (a, j) = later, earlier
        r = [Fraction(0)] * d
        r[b] += coef(b, k)
        r[a] -= coef(a, j)
        return r

    evs, cnt = _events(word, d)
    for e0, e1 in zip(evs, evs[1:]):
        if e0[0] != e1[0]:
            rows.append(diff(e1, e0))
    if evs:
        last = evs[-1]
        for b in range(d):
            if b != last[0]:
                rows.append(diff((b, cnt[b]), last))
    return rows


def _joint_witness(x, d):
    c, u = x[:d], x[d:]
    m = tuple(1 - ci / ui for ci, ui in zip(c, u))
    omega = as_direction([1 / ui for ui in u])
    return m, omega


def _decide_word(args):
    word, d = args
    dec = feasibility.lp_feasible(joint_order_rows(word, d))
    return dec.feasible, (dec.witness if dec.feasible else None)


def _balanced_pairs(word: str, d: int) -> bool:
    """2-letter projections of ``word`` are balanced.

    Assumes ``word[:-1]`` and ``word[1:]`` already are billiard words, so
    only the prefix/suffix pairs of the projection can be unbalanced.
    """
    last = word[-1]
    for other in ALPHABET[:d]:
        if other == last:
            continue
        pair = (last, other)
        proj = [1 if ch == last else 0 for ch in word if ch in pair]
        k = len(proj)
        pre = suf = 0
        for L in range(1, k):
            pre += proj[L - 1]
            suf += proj[k - L]
            if abs(pre - suf) > 1:
                return False
    return True


# --------------------------------------------------------------- enumeration

def enumerate_language(d: int, n_max: int, cfg: Optional[EnumerationConfig] = None,
                       strict: bool = False):
    """Enumerate L(n, d) for n <= n_max.

    Returns ``(LanguageSet, LanguageTable, StabilityReport)``.  With the
    sampling method, counts that never stabilised are flagged in the
    report; ``strict=True`` turns that into :class:`UnstableEnumeration`.
    """
    if d < 2 or d > len(ALPHABET):
        raise ValueError(f"d must be in 2..{len(ALPHABET)}")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    cfg = cfg or EnumerationConfig()
    if cfg.method == "exact":
        ls, report = _enumerate_exact(d, n_max, cfg)
    else:
        ls, report = _enumerate_sampled(d, n_max, cfg)
    table = complexity_table(ls, report)
    if strict and not report.all_stable:
        raise UnstableEnumeration("schedule exhausted before stabilisation",
                                  result=(ls, table, report))
    return ls, table, report


def _enumerate_exact(d, n_max, cfg):
    letters = ALPHABET[:d]
    words = {0: frozenset([""])}
    witness_of = {}
    traces = []          # (m, omega, code up to n_max)
    report = StabilityReport("exact", stable={}, certified=True)
    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        for n in range(n_max):
            level = words[n]
            nxt = set()
            pending = []
            for w in sorted(level):
                free = None
                wi = witness_of.get(w)
                if wi is not None and len(traces[wi][2]) > n:
                    free = traces[wi][2][n]
                    nxt.add(w + free)
                    witness_of[w + free] = wi
                for a in letters:
                    if a == free:
                        continue
                    cand = w + a
                    if n and cand[1:] not in level:
                        continue
                    if cfg.balance_filter and n and not _balanced_pairs(cand, d):
                        continue
                    pending.append(cand)
            jobs = [(c, d) for c in pending]
            results = pool.map(_decide_word, jobs, chunksize=64) if pool else map(_decide_word, jobs)
            for cand, (ok, x) in zip(pending, results):
                report.lp_calls += 1
                if not ok:
                    continue
                m, omega = _joint_witness(x, d)
                code = trace_string(m, omega, n_max, stop_at_tie=True)
                if not code.startswith(cand):
                    raise AssertionError(f"witness for {cand!r} traces {code!r}")
                traces.append((m, omega, code))
                witness_of[cand] = len(traces) - 1
                nxt.add(cand)
            words[n + 1] = frozenset(nxt)
    finally:
        if pool:
            pool.shutdown()
    report.stable = {n: True for n in words}
    report.history = [[len(words[n]) for n in sorted(words)]]
    wit = {w: traces[i][:2] for w, i in witness_of.items()}
    return LanguageSet(d, n_max, words, wit), report


def _directions(d, D):
    for v in itertools.product(range(1, D + 1), repeat=d):
        if math.gcd(*v) == 1:
            yield v


def _face_points(d, Q):
    grid = [Fraction(k, Q) for k in range(Q)]
    for f in range(d):
        for rest in itertools.product(grid, repeat=d - 1):
            yield rest[:f] + (Fraction(0),) + rest[f:]


def _perturb(m, Q, rng, face):
    P = 10007
    return tuple(x if a == face else x + Fraction(rng.randrange(1, P), Q * P)
                 for a, x in enumerate(m))


def _add_factors(code, buckets, n_max):
    for n in range(1, min(len(code), n_max) + 1):
        b = buckets[n]
        for i in range(len(code) - n + 1):
            b.add(code[i:i + n])


def _enumerate_sampled(d, n_max, cfg):
    rng = random.Random(cfg.seed)
    buckets = {n: set() for n in range(n_max + 1)}
    buckets[0].add("")
    wit = {}
    report = StabilityReport("sample", stable={})
    history = []
    for Q, D in cfg.full_schedule():
        points = list(_face_points(d, Q))
        for omega in _directions(d, D):
            for m in points:
                face = next(a for a, x in enumerate(m) if x == 0)
                mm = m
                for _ in range(cfg.retries + 1):
                    report.samples += 1
                    try:
                        code = trace_string(mm, omega, n_max)
                    except TieAtEdge:
                        report.ties += 1
                        mm = _perturb(m, Q, rng, face)
                        continue
                    if code not in wit:
                        wit[code] = (mm, omega)
                    _add_factors(code, buckets, n_max)
                    break
        if cfg.lp_refine:
            _refine_with_fm(d, n_max, buckets, points, cfg, report, wit)
        history.append([len(buckets[n]) for n in range(n_max + 1)])
    r = cfg.rounds
    for n in range(n_max + 1):
        col = [h[n] for h in history]
        report.stable[n] = n == 0 or (len(col) > r and len(set(col[-(r + 1):])) == 1)
    report.history = history
    words = {n: frozenset(b) for n, b in buckets.items()}
    witnesses = {}
    for code, mo in wit.items():
        for n in range(len(code) + 1):
            witnesses.setdefault(code[:n], mo)
    return LanguageSet(d, n_max, words, witnesses), report


def _refine_with_fm(d, n_max, buckets, points, cfg, report, wit):
    """Decide unwitnessed candidates exactly at a few fixed start points."""
    pts = points[:: max(1, len(points) // cfg.refine_points)][: cfg.refine_points]
    letters = ALPHABET[:d]
    for n in range(1, n_max + 1):
        prev = buckets[n - 1]
        for w in sorted(prev):
            for a in letters:
                cand = w + a
                if cand in buckets[n] or (n > 1 and cand[1:] not in prev):
                    continue
                for m in pts:
                    report.lp_calls += 1
                    dec = feasibility.fm_feasible(fixed_point_rows(cand, m))
                    if not dec.feasible:
                        continue
                    omega = as_direction([Fraction(1, 1) / Fraction(u) for u in dec.witness])
                    code = trace_string(m, omega, n_max, stop_at_tie=True)
                    if code.startswith(cand):
                        wit.setdefault(code, (m, omega))
                        _add_factors(code, buckets, n_max)
                        break


# ---------------------------------------------------------------- statistics

def classify_special(ls: LanguageSet, n: int) -> list[SpecialStats]:
    """Left/right/both extension counts of every word of length n."""
    if n + 2 > ls.n_max:
        raise InsufficientDepth(f"need words of length {n + 2}, have {ls.n_max}")
    letters = ALPHABET[: ls.d]
    one, two = ls.words[n + 1], ls.words[n + 2]
    out = []
    for v in sorted(ls.words[n]):
        m_l = sum(a + v in one for a in letters)
        m_r = sum(v + b in one for b in letters)
        m_b = sum(a + v + b in two for a in letters for b in letters)
        out.append(SpecialStats(v, m_l, m_r, m_b))
    return out


def special_stats(ls: LanguageSet, v: str) -> SpecialStats:
    """Extension counts of a single word (needs lengths up to len(v) + 2)."""
    if len(v) + 2 > ls.n_max:
        raise InsufficientDepth(f"need words of length {len(v) + 2}, have {ls.n_max}")
    letters = ALPHABET[: ls.d]
    return SpecialStats(
        v,
        sum(a + v in ls for a in letters),
        sum(v + b in ls for b in letters),
        sum(a + v + b in ls for a in letters for b in letters),
    )


def bispecial_words(ls: LanguageSet, n: int) -> list[SpecialStats]:
    return [st for st in classify_special(ls, n) if st.bispecial]


def complexity_table(ls: LanguageSet, report: Optional[StabilityReport] = None) -> LanguageTable:
    p = {n: len(ws) for n, ws in sorted(ls.words.items())}
    table = LanguageTable(p=p)
    if report is not None:
        table.stable = dict(report.stable)
    for n in range(0, ls.n_max - 1):
        bl = bispecial_words(ls, n)
        table.n_bispecial[n] = len(bl)
        table.sum_i[n] = sum(st.i for st in bl)
    return table


@dataclass(frozen=True)
class CassaigneReport:
    n: int
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def cassaigne_check(ls: LanguageSet, n: int) -> CassaigneReport:
    """Compare s(n+1) - s(n) with the sum of i(v) over bispecial v of length n."""
    if n + 2 > ls.n_max:
        raise InsufficientDepth(f"need words of length {n + 2}, have {ls.n_max}")
    p = [ls.count(k) for k in (n, n + 1, n + 2)]
    lhs = p[2] - 2 * p[1] + p[0]
    rhs = sum(st.i for st in bispecial_words(ls, n))
    return CassaigneReport(n, lhs, rhs)


# --------------------------------------------------------------- directional

@dataclass
class DirectionalResult:
    omega: tuple
    p_dir: dict
    horizon: int
    generic: bool
    per_sample: list            # list of dicts n -> count (None for tied samples)
    skipped: list               # (sample, tie time, axes)

    @property
    def point_independent(self) -> bool:
        counts = [c for c in self.per_sample if c is not None]
        return all(c == counts[0] for c in counts)

    @property
    def sturmian(self) -> bool:
        return all(v == n + 1 for n, v in self.p_dir.items())


def _is_prime(q):
    return q > 1 and all(q % p for p in range(2, math.isqrt(q) + 1))


def _default_samples(omega, n_max, k=4):
    """Start points on the face x_0 = 0 that never produce a tie.

    Free coordinate a gets denominator Q_a, a prime > n_max not dividing
    any omega component, distinct across axes.  Then
    omega_b (k_a - m_a) = omega_a (k_b - m_b) has no solution: reduce
    modulo Q_a.
    """
    d = len(omega)
    primes = []
    q = max(n_max, 10)
    while len(primes) < d - 1:
        q += 1
        if _is_prime(q) and all(w % q for w in omega):
            primes.append(q)
    return [(Fraction(0),) + tuple(Fraction((j * (a + 2) + a) % (Q - 1) + 1, Q)
                                   for a, Q in enumerate(primes))
            for j in range(1, k + 1)]


def directional_complexity(omega, m_samples: Optional[Iterable] = None, n_max: int = 10,
                           horizon: Optional[int] = None, max_horizon: int = 500_000
                           ) -> DirectionalResult:
    """Factor complexity of the codes of trajectories with direction omega.

    Each sample is traced for ``horizon`` crossings (default: one full
    period ``sum|omega|`` plus ``n_max``).  Samples that hit a tie are
    skipped, recorded, and make the result non-generic.
    """
    omega = as_direction(omega)
    if horizon is None:
        horizon = min(sum(abs(w) for w in omega) + n_max, max_horizon)
    samples = [as_point(m) for m in (m_samples if m_samples is not None
                                     else _default_samples(omega, n_max))]
    union = {n: set() for n in range(1, n_max + 1)}
    per_sample, skipped = [], []
    for m in samples:
        try:
            code = trace_string(m, omega, horizon)
        except TieAtEdge as exc:
            skipped.append((m, exc.time, exc.axes))
            per_sample.append(None)
            continue
        counts = {}
        for n in range(1, n_max + 1):
            fac = {code[i:i + n] for i in range(len(code) - n + 1)}
            counts[n] = len(fac)
            union[n] |= fac
        per_sample.append(counts)
    p_dir = {n: len(v) for n, v in union.items()}
    return DirectionalResult(omega, p_dir, horizon, not skipped, per_sample, skipped)


# ----------------------------------------------------------------------- fit

@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    residual: float


def exponent_fit(table: LanguageTable, n_lo: int, n_hi: int, target: str = "p",
                 allow_unstable: bool = False) -> FitResult:
    """Least-squares slope of log(value) against log(n) over [n_lo, n_hi]."""
    series = table.series(target)
    ns = list(range(n_lo, n_hi + 1))
    missing = [n for n in ns if n not in series]
    if missing:
        raise ValueError(f"no {target} values for n in {missing}")
    if not allow_unstable:
        unstable = [n for n in ns if not table.stable.get(n, True)]
        if unstable:
            raise ValueError(f"unstable counts at n in {unstable}")
    vals = np.array([series[n] for n in ns], dtype=float)
    if np.any(vals <= 0) or n_lo <= 0:
        raise NonPositiveValue(f"{target} has non-positive values on [{n_lo}, {n_hi}]")
    x, y = np.log(ns), np.log(vals)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return FitResult(float(slope), float(intercept), resid)
