"""The square billiard language, enumerated exactly.

A word belongs to the language when some (m, omega) produces it.  That
is a strict homogeneous linear system; the enumerator solves it with an
LP and certifies every answer exactly.  In the square the counts follow
Mignosi's formula 1 + sum (n+1-i) phi(i), and the bispecial words obey
Cassaigne's identity s(n+1) - s(n) = sum of i(v) over bispecials.
"""
from cubebilliard.language import (bispecial_words, cassaigne_check, enumerate_language,
                                   special_stats)
from cubebilliard.numtheory import build_sieve, square_complexity

ls, table, report = enumerate_language(2, 9)
sieve = build_sieve(12)
print(" n    p(n)  closed form  s2(n)  phi(n+2)")
for n in range(1, 8):
    print(f"{n:2d} {table.p[n]:7d} {square_complexity(n):12d} {table.s2.get(n, '-'):>6} "
          f"{sieve.phi[n + 2]:9d}")
print("stable:", report.all_stable)

w = "01011"
print(f"\n{w!r} in language: {w in ls}; witness (m, omega) = {ls.witness(w)}")
print("'0011' in language:", "0011" in ls, "(unbalanced)")

print("\nbispecial words of length 3:")
for st in bispecial_words(ls, 3):
    print(f"  {st.word}  m_l={st.m_l} m_r={st.m_r} m_b={st.m_b}  i={st.i}")
st = special_stats(ls, "01")
print(f"'01' is bispecial with i={st.i}: a neutral bispecial")

for n in range(0, 7):
    rep = cassaigne_check(ls, n)
    print(f"n={n}: s(n+1)-s(n) = {rep.lhs}, sum of i = {rep.rhs}, equal {rep.equal}")
