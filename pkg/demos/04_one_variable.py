"""
One variable: p_i = 1
=====================

Setting every p_i to 1 turns the series into Laurent polynomials in
W = 1/(1 - w), with w the tree function.  The operator D = W^2 (W - 1) d/dW
makes it possible to search for recurrences by linear algebra.
"""

from hurwitz import genfun, univariate
from hurwitz.closedform import mu2_unramified

f2 = univariate.laurent_of_expression(genfun.psi_expression(2))
print("f_2 =", f2)
print("degree span of f_2:", univariate.degree_span(f2))

dim, rel = univariate.ansatz_nullspace()
print("ansatz solutions:", dim)
for k, v in sorted(rel.items()):
    print(f"  b{k} =", " + ".join(f"({c}) b{j}" for j, c in sorted(v.items())))

for which in ("mu2_recurrence", "second_order", "first_order", "genus1_form"):
    print(which, "holds for n <= 12:", univariate.recurrence_check(which, 12)["passed"])

# Unramified over infinity: alpha = (1^n).
print([str(mu2_unramified(n)) for n in range(1, 8)])
