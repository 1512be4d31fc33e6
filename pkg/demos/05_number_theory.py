"""Totients, Moebius inversion and coprime power sums.

S_l sums m^p over m <= l coprime to l.  Inverting over divisors gives
S_l = sum_{k|l} mu(k) k^p F_p(l/k), and the partial sums of S_l grow like
n^(p+2) with constant 6/pi^2 / ((p+1)(p+2)).
"""
import math

from cubebilliard.numtheory import (build_sieve, coprime_power_sum, mobius_identity_check,
                                    partial_sum_ratio)

t = build_sieve(30)
print("phi(1..12):", t.phi[1:13])
print("mu(1..12): ", t.mu[1:13])
print("identities hold for n <= 30:", all(mobius_identity_check(t, n) == (True, True) for n in range(1, 31)))

for l, p in ((12, 1), (30, 2), (97, 3)):
    print(f"S_{l} (p={p}): scan {coprime_power_sum(l, p, 'scan')}, Moebius {coprime_power_sum(l, p)}")

print("\n     n   p  ratio        limit")
for p in (1, 2, 3):
    limit = 6 / math.pi ** 2 / ((p + 1) * (p + 2))
    for n in (100, 1000, 10000):
        print(f"{n:6d}  {p}  {float(partial_sum_ratio(n, p)):.8f}  {limit:.8f}")
