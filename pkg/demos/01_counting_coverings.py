"""
Counting coverings by brute force and by recursion
==================================================

A Hurwitz number counts r-tuples of transpositions whose product has a
given cycle type and which together act transitively, divided by the
symmetry factor of that cycle type.
"""

from hurwitz.factorize import count_all_factorizations, count_transitive_factorizations
from hurwitz.foundation import theta
from hurwitz.cutjoin import hurwitz_table

# Degree 3, one cycle of length 3 at infinity, r = 2 transpositions: genus 0.
alpha, r = (3,), 2
print("all tuples      :", count_all_factorizations(alpha, r))
print("transitive      :", count_transitive_factorizations(alpha, r))
print("theta(alpha)    :", theta(alpha))

# Transitivity only starts to matter once alpha has several cycles.
alpha, r = (1, 1), 2
print("(1,1), r=2: all", count_all_factorizations(alpha, r),
      "transitive", count_transitive_factorizations(alpha, r))

# The cut-and-join recursion produces whole tables at once.
table = hurwitz_table(8, 4)
for g in range(3):
    row = {a: table.mu(g, a) for a in [(1, 1), (2,), (2, 1), (3,), (2, 2)]}
    print(f"genus {g}:", ", ".join(f"{a}={v}" for a, v in row.items()))

# Same numbers, the slow way.
from hurwitz.factorize import mu_via_factorizations
assert all(mu_via_factorizations(g, a) == table.mu(g, a)
           for g in range(3) for a in [(1, 1), (2,), (2, 1), (3,), (2, 2)])
print("brute force agrees with the recursion")
