"""Counting regions of line arrangements exactly.

Each new line is cut by the distinct points where it meets earlier
lines; k points make k+1 pieces, each adding one region.  In general
position this gives 1 + n + n(n-1)/2.  The Euler characteristic of the
boundary of the d-cube is a quick check on face counts.
"""
import numpy as np

from cubebilliard.arrangements import (Line2D, count_regions_2d, euler_check_hypercube,
                                       max_regions, random_lines, region_growth_check)

rng = np.random.default_rng(1)
lines = random_lines(8, rng, "general")
print("general position:", [count_regions_2d(lines[:n]) for n in range(9)])
print("formula:         ", [max_regions(n) for n in range(9)])

star = [Line2D.make(1, k, 0) for k in range(4)]
print("4 lines through one point:", count_regions_2d(star), "regions")
grid = [Line2D.make(1, 0, k) for k in range(3)] + [Line2D.make(0, 1, k) for k in range(3)]
print("3x3 grid of lines:", count_regions_2d(grid), "regions")

res = region_growth_check(n_max=15, trials=5, seed=3, mode="mixed")
print(f"mixed arrangements: regions/n^2 at n=15 at most {float(res['max_ratio_at_n_max']):.3f}, "
      f"n+1 <= regions <= max: {res['sandwich']}")

for d in range(1, 6):
    e = euler_check_hypercube(d)
    print(f"d={d}: faces {e['N']}  chi={e['lhs']}  expected {e['rhs']}")
