"""Complexity along one direction.

Fixing a totally irrational-looking direction and collecting factors of
orbits started at several points gives the directional complexity:
n + 1 in the square (Sturmian words) and n^2 + n + 1 in the cube.
Sample starts use a distinct prime denominator per axis, so no orbit
ever passes through an edge.
"""
from cubebilliard.language import directional_complexity, enumerate_language

sq = directional_complexity((985, 1393), n_max=12)
print("square, omega=(985,1393):", [sq.p_dir[n] for n in range(1, 13)])
print("  Sturmian:", sq.sturmian, " same count from every start:", sq.point_independent)

cu = directional_complexity((10007, 14159, 22619), n_max=10)
print("cube, omega=(10007,14159,22619):", [cu.p_dir[n] for n in range(1, 11)])
print("  n^2+n+1:", [n * n + n + 1 for n in range(1, 11)])

_, table, _ = enumerate_language(3, 5)
print("\nglobal cube complexity:", [table.p[n] for n in range(1, 6)])
print("one direction sees only a thin slice of it.")
