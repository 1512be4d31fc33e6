"""Diagonals: segments joining two faces of codimension 2.

A bispecial word of the cube language is the code of an orbit passing
near such a segment.  The number of positive diagonals of combinatorial
length n grows like n^(d-1), and the bispecial indices of their codes
are bounded by a multiple of the diagonal count.
"""
from cubebilliard.diagonals import (bispecial_diagonal_budget, count_diagonals,
                                    enumerate_diagonals, projection_surjectivity_check)
from cubebilliard.language import enumerate_language

print("square: |Diag(n)| equals phi(n):", [count_diagonals(n, 2).count for n in range(2, 13)])
print("cube:   |Diag(n)|/n^2:", [round(float(count_diagonals(n, 3).ratio), 3) for n in (5, 10, 20, 40)])

for g in enumerate_diagonals(3, 3)[:4]:
    print(f"  {g.kind}: {g.A} -> {g.B}  codes of length {g.word_length}")

ls2, _, _ = enumerate_language(2, 8)
print("\nsquare budget (n, X, sum i):")
for n in range(2, 9):
    rep = bispecial_diagonal_budget(n, 2, ls2)
    print(f"  {n}: {rep.X:3d} {rep.sum_i_plus:3d}  chain {rep.chain_holds}")

ls3, _, _ = enumerate_language(3, 5)
rep = bispecial_diagonal_budget(3, 3, ls3)
print(f"\ncube n=3: X={rep.X} counted with multiplicity, {rep.distinct_words} distinct codes, "
      f"sum i={rep.sum_i_plus}")
print("  multiplicity chain:", rep.chain_holds, " distinct-code chain:", rep.distinct_chain_holds)

pr = projection_surjectivity_check(6, 3, ls2)
missed = {k: v for k, v in pr.missing.items() if v}
print("\nsquare words missed by projecting the codes of cube diagonals of length 6:", missed)
