import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cubebilliard.arrangements import (Line2D, count_regions_2d, euler_check_hypercube,
                                       hypercube_cells, max_regions, random_lines,
                                       region_growth_check)
from cubebilliard.errors import DuplicateLine


def _bisectors(dirs):
    """Directions strictly inside each angular sector cut out by ``dirs``."""
    rays = {}
    for a, b in dirs:
        for v in ((b, -a), (-b, a)):
            rays[np.arctan2(v[1], v[0])] = v
    order = [rays[k] for k in sorted(rays)]
    out = []
    for u, v in zip(order, order[1:] + order[:1]):
        nu, nv = abs(u[0]) + abs(u[1]), abs(v[0]) + abs(v[1])
        w = (F(u[0], nu) + F(v[0], nv), F(u[1], nu) + F(v[1], nv))
        if w == (0, 0):
            # opposite rays: take the perpendicular on the counter-clockwise side
            w = (F(-u[1]), F(u[0]))
        out.append(w)
    return out


def point_location_regions(lines):
    """Count regions as distinct sign vectors of probe points.

    Regions of a line arrangement are convex, so a sign vector names one
    region.  Probes sit just off every vertex inside each sector between
    consecutive lines through it, and far out inside each sector at
    infinity; for a family with no vertex, around one point of each line.
    """
    lines = list(lines)
    if not lines:
        return 1
    verts = {p for a, b in itertools.combinations(lines, 2) if (p := a.meet(b)) is not None}
    for l in lines:
        verts.add((F(l.c, l.a), F(0)) if l.a else (F(0), F(l.c, l.b)))
    size = max(max(abs(x), abs(y)) for x, y in verts) + 1
    eps = F(1, 10 ** 30)
    probes = []
    for (x, y) in verts:
        through = [(l.a, l.b) for l in lines if l.a * x + l.b * y == l.c]
        for dx, dy in _bisectors(through):
            probes.append((x + eps * dx, y + eps * dy))
    R = size * 10 ** 30
    for dx, dy in _bisectors([(l.a, l.b) for l in lines]):
        probes.append((R * dx, R * dy))
    signs = set()
    for x, y in probes:
        s = tuple(l.side(x, y) for l in lines)
        if 0 not in s:
            signs.add(s)
    return len(signs)


def test_examples():
    assert count_regions_2d([]) == 1
    assert count_regions_2d([(1, 0, 0), (0, 1, 0), (1, 1, 5)]) == 7
    assert count_regions_2d([(1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 6


def test_oracle_examples():
    gp = [Line2D.make(1, 0, 0), Line2D.make(0, 1, 0), Line2D.make(1, 1, 5)]
    conc = [Line2D.make(1, 0, 0), Line2D.make(0, 1, 0), Line2D.make(1, 1, 0)]
    assert point_location_regions(gp) == 7
    assert point_location_regions(conc) == 6


def test_normalisation_and_duplicates():
    assert Line2D.make(-2, -4, 6) == Line2D.make(1, 2, -3)
    assert Line2D.make(0, -3, "1/2") == Line2D(0, 6, -1)
    with pytest.raises(DuplicateLine):
        count_regions_2d([(1, 1, 1), (2, 2, 2)])
    with pytest.raises(ValueError):
        Line2D.make(0, 0, 1)


def test_general_position_formula():
    rng = np.random.default_rng(0)
    lines = random_lines(20, rng, "general")
    for n in range(21):
        assert count_regions_2d(lines[:n]) == max_regions(n)
    assert count_regions_2d(lines) == 211


def test_parallel():
    lines = random_lines(20, np.random.default_rng(1), "parallel")
    assert count_regions_2d(lines) == 21


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("mode", ["general", "mixed", "parallel"])
def test_point_location_oracle(seed, mode):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    lines = random_lines(n, rng, mode)
    assert count_regions_2d(lines) == point_location_regions(lines)


lines_st = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-6, 6))
                    .filter(lambda t: t[:2] != (0, 0)).map(lambda t: Line2D.make(*t)),
                    max_size=9, unique=True)


@settings(max_examples=150, deadline=None)
@given(lines_st, st.randoms())
def test_permutation_invariance_and_sandwich(lines, rnd):
    r = count_regions_2d(lines)
    shuffled = list(lines)
    rnd.shuffle(shuffled)
    assert count_regions_2d(shuffled) == r
    n = len(lines)
    assert (n + 1 if n else 1) <= r <= max_regions(n)


@settings(max_examples=60, deadline=None)
@given(lines_st)
def test_hypothesis_oracle(lines):
    assert count_regions_2d(lines) == point_location_regions(lines)


@pytest.mark.parametrize("d", range(1, 9))
def test_euler_identity(d):
    res = euler_check_hypercube(d)
    assert res["equal"]
    assert sum(hypercube_cells(d).N) == 3 ** d - 1


def test_euler_cube_values():
    res = euler_check_hypercube(3)
    assert res["N"] == [8, 12, 6] and res["lhs"] == 2


def test_growth_check():
    res = region_growth_check(2, 20, 3, seed=4)
    assert res["sandwich"]
    assert res["max_ratio_at_n_max"] == F(211, 400)
    assert res["max_ratio"] <= 2
    mixed = region_growth_check(2, 20, 3, seed=4, mode="mixed")
    assert mixed["sandwich"]
    assert region_growth_check(2, 10, 2, seed=9) == region_growth_check(2, 10, 2, seed=9)
