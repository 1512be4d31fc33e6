"""Tracing a billiard in the unit cube by unfolding.

A straight line m + t*omega in R^d is followed through the integer grid;
each crossing of a hyperplane x_a = k contributes the letter a.  Folding
the line back into [0,1]^d gives the actual billiard path, and the word
is the same.  Everything here is exact: points are Fractions.
"""
from fractions import Fraction as F

from cubebilliard import TieAtEdge
from cubebilliard.geometry import (billiard_orbit, crossings, project_trajectory, project_word,
                                   reflect, trace_string, trace_word)

m = (F(1, 7), F(2, 9), F(3, 11))
omega = (2, 3, 5)
w = trace_word(m, omega, 12)
print("start", m, "direction", omega)
print("first 12 letters:", w)

print("\ncrossing times (exact):")
for ev in crossings(m, omega, 5):
    print(f"  t={ev.time}  axis {ev.axis}  level {ev.level}")

# the folded orbit: each bounce flips exactly the crossed coordinate of the direction
print("\nfolded path inside the cube:")
for q, axis, out in billiard_orbit(m, omega, 4):
    print(f"  hit x_{axis} at {tuple(str(c) for c in q)}, new direction {out}")

# mirror symmetry: reflecting the start in one axis leaves the word unchanged
m2, om2 = reflect(m, omega, 1)
print("\nreflected in axis 1:", trace_string(m2, om2, 12), "(same word)")

# dropping an axis erases its letters and leaves a billiard word one dimension down
pw = project_word(w, 2)
m3, om3 = project_trajectory(m, omega, 2)
print("without axis 2:", pw, "traced directly:", trace_string(m3, om3, len(pw)))

# a corner hit has no well-defined letter order
try:
    trace_string((F(1, 2), F(1, 2)), (1, 1), 3)
except TieAtEdge as exc:
    print(f"\ntie: axes {exc.axes} crossed together at t={exc.time}")
print("prefix before the tie:", repr(trace_string((F(1, 2), F(1, 2)), (1, 3), 5, stop_at_tie=True)))
