"""Euler totient, Moebius function and coprime power sums.

Everything is exact: Python integers and :class:`fractions.Fraction`.
The partial sums ``sum_{l<=n} S_l`` with ``S_l = sum_{m<=l, (m,l)=1} m^p``
are what the lower bound on the second difference of complexity rests on;
their ratio to ``n^{p+2}`` tends to a positive constant (``1/pi^2`` for p=1).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

__all__ = [
    "SieveTable",
    "build_sieve",
    "divisors",
    "mobius_identity_check",
    "coprime_power_sum",
    "power_prefix",
    "partial_sum",
    "partial_sum_ratio",
    "partial_sum_series",
    "square_complexity",
    "ratio_rows",
    "ratio_csv",
]


@dataclass(frozen=True)
class SieveTable:
    """phi and mu for 1..N; index 0 is unused (holds 0)."""

    N: int
    phi: tuple
    mu: tuple
    primes: tuple

    def __contains__(self, n):
        return 1 <= n <= self.N


def build_sieve(N: int) -> SieveTable:
    """Linear sieve: each composite is struck once by its least prime factor."""
    if N < 1:
        raise ValueError("N must be >= 1")
    phi = [0] * (N + 1)
    mu = [0] * (N + 1)
    phi[1] = mu[1] = 1
    composite = bytearray(N + 1)
    primes = []
    for i in range(2, N + 1):
        if not composite[i]:
            primes.append(i)
            phi[i] = i - 1
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > N:
                break
            composite[ip] = 1
            if i % p == 0:
                phi[ip] = phi[i] * p
                mu[ip] = 0
                break
            phi[ip] = phi[i] * (p - 1)
            mu[ip] = -mu[i]
    return SieveTable(N, tuple(phi), tuple(mu), tuple(primes))


def divisors(n: int) -> list[int]:
    small, large = [], []
    for k in range(1, math.isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def mobius_identity_check(table: SieveTable, n: int) -> tuple[bool, bool]:
    """Check sum_{k|n} mu(k) = [n == 1] and phi(n)/n = sum_{k|n} mu(k)/k exactly."""
    if n not in table:
        raise ValueError(f"n={n} outside sieve range 1..{table.N}")
    divs = divisors(n)
    mu_sum = sum(table.mu[k] for k in divs)
    phi_sum = sum(Fraction(table.mu[k], k) for k in divs)
    return mu_sum == (1 if n == 1 else 0), phi_sum == Fraction(table.phi[n], n)


def _mu(n: int) -> int:
    # trial division; fine for the l <= few thousands used per call
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def coprime_power_sum(l: int, p: int, method: str = "mobius", table: SieveTable | None = None) -> int:
    """S_l = sum of m^p over 1 <= m <= l with gcd(m, l) = 1.

    ``method="scan"`` is the direct gcd scan; ``"mobius"`` uses
    S_l = sum_{k|l} mu(k) k^p sum_{j <= l/k} j^p.
    """
    if l < 1 or p < 0:
        raise ValueError("need l >= 1 and p >= 0")
    if method == "scan":
        return sum(m ** p for m in range(1, l + 1) if math.gcd(m, l) == 1)
    if method != "mobius":
        raise ValueError(f"unknown method {method!r}")
    mu = (lambda k: table.mu[k]) if table is not None and l <= table.N else _mu
    F = _cached_prefix(l, p)
    total = 0
    for k in divisors(l):
        mk = mu(k)
        if mk:
            total += mk * k ** p * F[l // k]
    return total


_PREFIX: dict = {}


def _cached_prefix(n: int, p: int) -> list[int]:
    F = _PREFIX.get(p)
    if F is None or len(F) <= n:
        F = power_prefix(max(n, 2 * len(F) if F else 64), p)
        _PREFIX[p] = F
    return F


def power_prefix(n: int, p: int) -> list[int]:
    """F[k] = sum_{j<=k} j^p for k = 0..n."""
    F = [0] * (n + 1)
    acc = 0
    for j in range(1, n + 1):
        acc += j ** p
        F[j] = acc
    return F


def partial_sum(n: int, p: int, table: SieveTable | None = None) -> int:
    """sum_{l<=n} S_l in O(n) big-integer operations.

    Swapping the sums gives sum_{k<=n} mu(k) k^p G(n // k) with
    G(K) = sum_{q<=K} sum_{j<=q} j^p.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    table = table if table is not None and table.N >= n else build_sieve(n)
    F = power_prefix(n, p)
    G = [0] * (n + 1)
    acc = 0
    for q in range(1, n + 1):
        acc += F[q]
        G[q] = acc
    return sum(table.mu[k] * k ** p * G[n // k] for k in range(1, n + 1) if table.mu[k])


def partial_sum_ratio(n: int, p: int, table: SieveTable | None = None) -> Fraction:
    """sum_{l<=n} S_l / n^(p+2) as a reduced fraction."""
    return Fraction(partial_sum(n, p, table), n ** (p + 2))


def partial_sum_series(N: int, p: int, table: SieveTable | None = None) -> list[int]:
    """Cumulative sums P[n] = sum_{l<=n} S_l for every n = 0..N.

    Each S_l is assembled from its divisors, so the whole series costs
    O(N log N) big-integer operations.
    """
    table = table if table is not None and table.N >= N else build_sieve(max(N, 1))
    F = power_prefix(N, p)
    S = [0] * (N + 1)
    for k in range(1, N + 1):
        mk = table.mu[k]
        if not mk:
            continue
        c = mk * k ** p
        for q in range(1, N // k + 1):
            S[k * q] += c * F[q]
    out = [0] * (N + 1)
    acc = 0
    for l in range(1, N + 1):
        acc += S[l]
        out[l] = acc
    return out


def square_complexity(n: int, table: SieveTable | None = None) -> int:
    """Closed form 1 + sum_{i<=n} (n+1-i) phi(i) for the square billiard."""
    if n == 0:
        return 1
    table = table if table is not None and table.N >= n else build_sieve(n)
    return 1 + sum((n + 1 - i) * table.phi[i] for i in range(1, n + 1))


def ratio_rows(ns: Iterable[int], ps: Iterable[int]):
    ns, ps = list(ns), list(ps)
    table = build_sieve(max(ns))
    for p in ps:
        for n in ns:
            r = partial_sum_ratio(n, p, table)
            yield {"n": n, "p": p, "ratio": r, "decimal": float(r)}


def ratio_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p", "ratio", "decimal"])
    for r in rows:
        w.writerow([r["n"], r["p"], str(r["ratio"]), f"{r['decimal']:.12g}"])
    return buf.getvalue()
