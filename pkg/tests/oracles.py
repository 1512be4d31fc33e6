"""Independent reference implementations used only by the tests.

None of these import the package's tracer, enumerator or sieve; they
recompute the same quantities by the most direct method available.
"""
import math
from fractions import Fraction
from itertools import product


def phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def mu(n):
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def merged_crossings(m, omega, n):
    """First n crossings of m + t*omega by merging per-axis progressions.

    Returns a list of (time, axis) or raises ValueError('tie', time) when
    two of the first n+1 times coincide.
    """
    m = [Fraction(x) for x in m]
    events = []
    for a, (x, w) in enumerate(zip(m, omega)):
        w = Fraction(w)
        if w > 0:
            first = math.floor(x) + 1
            levels = range(first, first + n + 1)
        else:
            first = math.ceil(x) - 1
            levels = range(first, first - n - 1, -1)
        events.extend(((k - x) / w, a) for k in levels)
    events.sort()
    head = events[: n + 1]
    for (t0, _), (t1, _) in zip(head, head[1:]):
        if t0 == t1 and t0 <= head[min(n, len(head)) - 1][0]:
            raise ValueError("tie", t0)
    return head[:n]


def merged_code(m, omega, n):
    return "".join(str(a) for _, a in merged_crossings(m, omega, n))


def is_balanced(w):
    """Every two factors of equal length differ by at most one '1'."""
    n = len(w)
    for L in range(1, n + 1):
        ones = {w[i:i + L].count("1") for i in range(n - L + 1)}
        if max(ones) - min(ones) > 1:
            return False
    return True


def balanced_count(n):
    return sum(is_balanced("".join(t)) for t in product("01", repeat=n))


def mignosi(n):
    return 1 + sum((n + 1 - i) * phi(i) for i in range(1, n + 1))


def square_sampled_language(n_max, start=4, step=4, rounds=2, limit=40):
    """Factors of square-billiard codes over a growing Farey x grid sample.

    Directions (a, b), 1 <= a, b <= D coprime; starts on both sides of the
    unit square at denominators Q = 2D + 1 (coprime-friendly).  Returns
    ({n: set}, D) once p(1..n_max) is unchanged for ``rounds`` refinements.
    """
    words = {n: set() for n in range(1, n_max + 1)}
    history = []
    D = start
    while D <= limit:
        Q = 2 * D + 1
        for a in range(1, D + 1):
            for b in range(1, D + 1):
                if math.gcd(a, b) != 1:
                    continue
                for j in range(Q):
                    for m in ((0, Fraction(j, Q)), (Fraction(j, Q), 0)):
                        try:
                            code = merged_code(m, (a, b), n_max + 8)
                        except ValueError:
                            continue
                        for n in range(1, n_max + 1):
                            for i in range(len(code) - n + 1):
                                words[n].add(code[i:i + n])
        history.append([len(words[n]) for n in range(1, n_max + 1)])
        if len(history) > rounds and all(h == history[-1] for h in history[-rounds - 1:]):
            return words, D
        D += step
    return words, None


def visible_segment_count(n1, n2):
    """Interior lattice points on the segment (0,0)-(n1,n2), by scanning."""
    return sum(1 for x in range(1, n1) for y in range(1, n2)
               if Fraction(y, x) == Fraction(n2, n1))


def _open_crossings(a, b):
    """(count, tied) for hyperplanes crossed in the half-open segment (a, b]."""
    times = []
    for x, y in zip(a, b):
        if x == y:
            continue
        lo, hi = min(x, y), max(x, y)
        ks = [k for k in range(math.floor(lo), math.ceil(hi) + 1) if lo < k <= hi] if y > x else \
             [k for k in range(math.floor(lo), math.ceil(hi) + 1) if lo <= k < hi]
        times.extend((k - x) / (y - x) for k in ks)
    inner = sorted(t for t in times if t < 1)
    tied = len(set(inner)) < len(inner)
    return len(times), tied


def diagonal_oracle(n, d, q=7):
    """Brute-force the positive diagonals of length n from faces fixed on axes A0.

    A face is (fixed axes, levels); free coordinates range over the open
    unit interval above a floor.  A pair counts when every sampled segment
    between relative interiors is positive and some sampled segment is
    tie-free with exactly n crossings in (a, b].
    """
    from itertools import combinations
    pts = [Fraction(j, q) for j in range(1, q)]
    found = set()
    for Afix in combinations(range(d), 2):
        afree = [x for x in range(d) if x not in Afix]
        a_samples = []
        for vals in product(pts, repeat=len(afree)):
            a = [Fraction(0)] * d
            for x, v in zip(afree, vals):
                a[x] = v
            a_samples.append(a)
        for Bfix in combinations(range(d), 2):
            bfree = [x for x in range(d) if x not in Bfix]
            for levels in product(range(-1, n + 1), repeat=d):
                b_samples = []
                for vals in product(pts, repeat=len(bfree)):
                    b = [Fraction(levels[x]) for x in range(d)]
                    for x, v in zip(bfree, vals):
                        b[x] = levels[x] + v
                    b_samples.append(b)
                ok, hit = True, False
                for a in a_samples:
                    for b in b_samples:
                        if any(y <= x for x, y in zip(a, b)):
                            ok = False
                            break
                        cnt, tied = _open_crossings(a, b)
                        if cnt == n and not tied:
                            hit = True
                    if not ok:
                        break
                if ok and hit:
                    found.add((Afix, Bfix, levels))
    return found
