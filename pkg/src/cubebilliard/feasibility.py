"""Exact feasibility of strict homogeneous linear systems ``A x > 0``.

Two deciders are provided:

* :func:`fm_feasible` -- Fourier-Motzkin elimination over the integers,
  with back-substitution to produce a rational witness.  Complete and
  exact, but the row count can grow quickly with the number of variables.
* :func:`lp_feasible` -- floating-point LP (HiGHS through scipy) used only
  to *find* certificates.  A feasible answer carries a rational witness
  and an infeasible one an exact Gordan certificate ``y >= 0, y != 0,
  A^T y = 0``; both are checked in exact arithmetic before being trusted.
  If a check fails the system is handed to :func:`fm_feasible`.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog

stats: Counter = Counter()


@dataclass(frozen=True)
class Decision:
    feasible: bool
    witness: Optional[tuple] = None       # x with A x > 0
    certificate: Optional[tuple] = None   # y >= 0, y != 0, A^T y = 0
    method: str = ""


def _int_row(row) -> tuple[int, ...]:
    fr = [Fraction(c) for c in row]
    den = math.lcm(*(c.denominator for c in fr)) if fr else 1
    ints = [int(c * den) for c in fr]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints) if g > 1 else tuple(ints)


def check_witness(rows, x) -> bool:
    return all(sum(Fraction(r) * xi for r, xi in zip(row, x) if r) > 0 for row in rows)


def check_certificate(rows, y) -> bool:
    if any(v < 0 for v in y) or not any(y):
        return False
    nvar = len(rows[0])
    return all(sum(Fraction(row[k]) * v for row, v in zip(rows, y) if v) == 0
               for k in range(nvar))


def fm_feasible(rows: Sequence[Sequence], max_rows: int = 200_000) -> Decision:
    """Fourier-Motzkin decision of ``row . x > 0`` for every row.

    A row that becomes identically zero reads ``0 > 0``, so the system is
    infeasible; a variable with coefficients of one sign only can always
    be pushed far enough and is dropped together with its rows.
    """
    stats["fm"] += 1
    if not rows:
        return Decision(True, (), method="fm")
    nvar = len(rows[0])
    current = {_int_row(r) for r in rows}
    stages = []
    for k in range(nvar):
        if any(not any(r) for r in current):
            return Decision(False, method="fm")
        stages.append(current)
        pos = [r for r in current if r[k] > 0]
        neg = [r for r in current if r[k] < 0]
        nxt = {r for r in current if r[k] == 0}
        for p in pos:
            for q in neg:
                comb = [p[i] * -q[k] + q[i] * p[k] for i in range(nvar)]
                g = math.gcd(*comb)
                nxt.add(tuple(v // g for v in comb) if g > 1 else tuple(comb))
        if len(nxt) > max_rows:
            raise RuntimeError(f"Fourier-Motzkin blow-up ({len(nxt)} rows)")
        current = nxt
    if current:
        # only all-zero rows can remain once every variable is gone
        return Decision(False, method="fm")
    x = [Fraction(0)] * nvar
    for k in reversed(range(nvar)):
        lo = hi = None
        for r in stages[k]:
            if r[k] == 0:
                continue
            rest = sum(r[i] * x[i] for i in range(k + 1, nvar))
            bound = Fraction(-rest, r[k])
            if r[k] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            x[k] = (lo + hi) / 2
        elif lo is not None:
            x[k] = lo + 1
        elif hi is not None:
            x[k] = hi - 1
    return Decision(True, tuple(x), method="fm")


def _solve_exact(M, rhs):
    """Some solution of M y = rhs in Fractions (free variables set to 0)."""
    rows, cols = len(M), len(M[0])
    aug = [[Fraction(v) for v in M[i]] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(all(v == 0 for v in aug[i][:cols]) and aug[i][cols] != 0 for i in range(rows)):
        return None
    y = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        y[c] = aug[i][cols]
    return y


def _rationalise(x):
    for bound in (10**4, 10**8, 10**12):
        yield tuple(Fraction(v).limit_denominator(bound) for v in x)
    yield tuple(Fraction(float(v)) for v in x)


def lp_feasible(rows: Sequence[Sequence]) -> Decision:
    """Decide ``A x > 0`` with an LP search and exact certificate checks."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return Decision(True, (), method="lp")
    A = np.asarray(rows, dtype=float)
    m, nvar = A.shape
    res = linprog(np.zeros(nvar), A_ub=-A, b_ub=-np.ones(m),
                  bounds=[(None, None)] * nvar, method="highs")
    if res.status == 0:
        for x in _rationalise(res.x):
            if check_witness(rows, x):
                stats["lp_witness"] += 1
                return Decision(True, x, method="lp")
    elif res.status == 2:
        A_eq = np.vstack([A.T, np.ones((1, m))])
        b_eq = np.zeros(nvar + 1)
        b_eq[-1] = 1.0
        dual = linprog(np.zeros(m), A_eq=A_eq, b_eq=b_eq,
                       bounds=[(0, None)] * m, method="highs")
        if dual.status == 0:
            y = dual.x
            support = [i for i in range(m) if y[i] > 1e-12 * max(1.0, y.max())]
            M = [[rows[i][k] for i in support] for k in range(nvar)] + [[1] * len(support)]
            sol = _solve_exact(M, [0] * nvar + [1])
            if sol is not None:
                full = [Fraction(0)] * m
                for i, v in zip(support, sol):
                    full[i] = v
                if check_certificate(rows, full):
                    stats["lp_certificate"] += 1
                    return Decision(False, certificate=tuple(full), method="lp")
    stats["fm_fallback"] += 1
    return fm_feasible(rows)
