"""
The genus-two generating series
===============================

F_2 is a short rational expression in the psi series and 1/(1 - psi_1).
We recover its six coefficients from Hurwitz numbers alone, then read
numbers back off the series and off an explicit formula.
"""

from fractions import Fraction

from hurwitz import cutjoin, genfun
from hurwitz.closedform import mu2_explicit

N = 8
data = cutjoin.hurwitz_table(2 * N + 2, N, max_genus=2)
kt = genfun.fit_K(2, data, N)
for (d, th), K in sorted(kt.terms.items()):
    psis = " ".join(f"psi_{i}" for i in th)
    print(f"{str(K * 5760):>4} / 5760   {psis} / (1 - psi_1)^{d}")

# Genus 3 works the same way, just with more terms and a higher order.
print("genus 3 ansatz size:", len(genfun.ansatz_index(3)))

# Three ways to get mu^(2)(alpha).
for alpha in [(1, 1), (2, 1), (3, 1), (2, 2), (4, 1)]:
    a = genfun.mu(2, alpha, sum(alpha))
    b = mu2_explicit(alpha)
    c = data.mu(2, alpha)
    print(alpha, a, "ok" if a == b == c else "MISMATCH")

# One-part coverings have their own closed form.
print([str(genfun.mu_single_part(2, n)) for n in range(1, 7)])
assert genfun.mu_single_part(2, 4) == genfun.mu(2, (4,), 4)
assert data.mu(2, (1, 1)) == Fraction(1, 2)
