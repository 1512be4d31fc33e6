import math
import random
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cubebilliard.errors import EmptyProjection, TieAtEdge, ZeroComponent
from cubebilliard.geometry import (BilliardWord, as_direction, billiard_orbit, crossings, fold,
                                   project_trajectory, project_word, reflect, segment_code,
                                   trace_string, trace_word)

from oracles import merged_crossings


def test_crossings_square_example():
    ev = crossings((0, F(1, 3)), (2, 1), 6)
    assert [e.time for e in ev] == [F(1, 2), F(2, 3), F(1), F(3, 2), F(5, 3), F(2)]
    assert [e.axis for e in ev] == [0, 1, 0, 0, 1, 0]
    assert [e.level for e in ev] == [1, 1, 2, 3, 2, 4]


def test_crossings_cube_example():
    ev = crossings((0, F(1, 2), F(1, 2)), (1, 3, 5), 3)
    assert [(e.axis, e.time) for e in ev] == [(2, F(1, 10)), (1, F(1, 6)), (2, F(3, 10))]


def test_corner_tie():
    with pytest.raises(TieAtEdge) as exc:
        crossings((0, 0), (1, 1), 1)
    assert exc.value.time == 1 and exc.value.axes == (0, 1)


def test_zero_component():
    with pytest.raises(ZeroComponent):
        trace_word((0, 0), (1, 0), 3)


def test_trace_word_examples():
    assert str(trace_word((0, F(1, 3)), (2, 1), 6)) == "010010"
    assert str(trace_word((1, F(1, 3)), (-2, 1), 6)) == "010010"
    assert str(trace_word((0, F(1, 2), F(1, 2)), (1, 3, 5), 3)) == "212"


def test_negative_direction_levels():
    ev = crossings((F(1, 2), F(1, 3)), (-1, 3), 6)
    assert [(e.axis, e.level) for e in ev if e.axis == 0] == [(0, 0), (0, -1)]


def test_rational_direction_is_canonicalised():
    assert as_direction(["1/2", "1/3"]) == (3, 2)
    assert trace_word((0, F(1, 3)), (F(1), F(1, 2)), 6) == trace_word((0, F(1, 3)), (2, 1), 6)


@pytest.mark.parametrize("p, q, par", [
    ((F(5, 2), F(1, 3)), (F(1, 2), F(1, 3)), (2, 0)),
    ((F(4, 3), 2), (F(2, 3), 0), (1, 2)),
    ((0, 0), (0, 0), (0, 0)),
])
def test_fold_examples(p, q, par):
    assert fold(p) == (tuple(F(x) for x in q), par)


def test_project_word_examples():
    v = BilliardWord("010010", 2)
    assert project_word(v, 1).letters == "0000"
    assert project_word(v, 0).letters == "00"
    w = trace_word((0, F(1, 2), F(1, 2)), (1, 3, 5), 3)
    pw = project_word(w, 2)
    assert pw.letters == "1"
    m2, om2 = project_trajectory((0, F(1, 2), F(1, 2)), (1, 3, 5), 2)
    assert trace_word(m2, om2, 1).letters == pw.letters


def test_project_word_empty_warns():
    with pytest.warns(EmptyProjection):
        assert project_word(BilliardWord("11", 2), 1).letters == ""


def test_reflect_examples():
    m, om = reflect((0, F(1, 3)), (2, 1), 0)
    assert m == (1, F(1, 3)) and om == (-2, 1)
    assert reflect(m, om, 0) == ((0, F(1, 3)), (2, 1))
    assert trace_word(m, om, 6) == trace_word((0, F(1, 3)), (2, 1), 6)


def test_billiard_word_validation():
    with pytest.raises(ValueError):
        BilliardWord("012", 2)
    assert BilliardWord("", 3).letters == ""


def test_segment_code():
    assert segment_code((0, 0), (1, 2)) == "1"
    assert segment_code((0, 0, F(1, 2)), (2, 1, F(1, 2))) == "0"
    with pytest.raises(TieAtEdge):
        segment_code((0, 0), (2, 2))


def test_stop_at_tie():
    # axis 1 at t=1/6, then both axes at t=1/2
    assert trace_string((F(1, 2), F(1, 2)), (1, 3), 5, stop_at_tie=True) == "1"
    with pytest.raises(TieAtEdge):
        trace_string((F(1, 2), F(1, 2)), (1, 3), 5)


# ------------------------------------------------------------- properties

coord = st.fractions(min_value=0, max_value=1, max_denominator=60)
comp = st.integers(1, 40).flatmap(lambda v: st.sampled_from([v, -v]))


@st.composite
def trajectories(draw, dims=(2, 3, 4)):
    d = draw(st.sampled_from(dims))
    m = tuple(draw(coord) for _ in range(d))
    om = tuple(draw(comp) for _ in range(d))
    g = math.gcd(*om)
    return m, tuple(w // g for w in om)


@settings(max_examples=300, deadline=None)
@given(trajectories(), st.integers(1, 30))
def test_times_increase_and_match_oracle(traj, n):
    m, om = traj
    try:
        ref = merged_crossings(m, om, n)
    except ValueError:
        with pytest.raises(TieAtEdge):
            crossings(m, om, n)
        return
    ev = crossings(m, om, n)
    assert [(e.time, e.axis) for e in ev] == ref
    assert all(a.time < b.time for a, b in zip(ev, ev[1:]))
    for axis in range(len(m)):
        lv = [e.level for e in ev if e.axis == axis]
        step = 1 if om[axis] > 0 else -1
        assert all(b - a == step for a, b in zip(lv, lv[1:]))


@settings(max_examples=200, deadline=None)
@given(trajectories(), st.integers(1, 25), st.data())
def test_reflection_equivariance(traj, n, data):
    m, om = traj
    axis = data.draw(st.integers(0, len(m) - 1))
    try:
        w = trace_string(m, om, n)
    except TieAtEdge:
        return
    assert trace_string(*reflect(m, om, axis), n) == w


@settings(max_examples=200, deadline=None)
@given(trajectories(), st.integers(1, 25), st.data())
def test_projection_commutes(traj, n, data):
    m, om = traj
    axis = data.draw(st.integers(0, len(m) - 1))
    try:
        w = trace_word(m, om, n)
    except TieAtEdge:
        return
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyProjection)
        pw = project_word(w, axis)
    m2, om2 = project_trajectory(m, om, axis)
    assert trace_string(m2, om2, len(pw)) == pw.letters


@settings(max_examples=150, deadline=None)
@given(trajectories(), st.integers(1, 20))
def test_folded_orbit_mirror_law(traj, n):
    m, om = traj
    try:
        orbit = billiard_orbit(m, om, n)
    except TieAtEdge:
        return
    # a start on the boundary heading outwards is already in a mirrored copy
    direction = tuple(-w if (x == 0 and w < 0) or (x == 1 and w > 0) else w
                      for x, w in zip(m, om))
    prev = tuple(F(x) for x in m)
    for q, axis, out in orbit:
        assert all(0 <= x <= 1 for x in q)
        assert q[axis] in (0, 1)
        # the chord from the previous bounce follows the incoming direction
        delta = [b - a for a, b in zip(prev, q)]
        lam = {delta[k] / direction[k] for k in range(len(q))}
        assert len(lam) == 1 and lam.pop() > 0
        assert [o == -w if k == axis else o == w for k, (o, w) in enumerate(zip(out, direction))] \
            == [True] * len(q)
        prev, direction = q, out


def test_determinism():
    rng = random.Random(5)
    for _ in range(50):
        m = tuple(F(rng.randrange(0, 30), 29) for _ in range(3))
        om = tuple(rng.randrange(1, 50) for _ in range(3))
        a = trace_string(m, om, 40, stop_at_tie=True)
        assert a == trace_string(m, om, 40, stop_at_tie=True)
