"""
Checking the closed forms against the cut-and-join equation
===========================================================

Splitting the equation by genus gives one identity per genus.  The
genus-two identity reads T0 F2 = T1, where T1 is built from the genus-one
series.  Plugging in the closed forms should leave exactly nothing.
"""

from hurwitz import cutjoin, genfun
from hurwitz.series import psi_at_s

N = 8
Fs = [genfun.build_F(g, N) for g in range(4)]
for g in range(4):
    print(f"genus {g} slice residual is zero:", cutjoin.slice_residual(g, Fs).is_zero())

res = cutjoin.genus2_residual(N)
print("T0 F2 - T1 terms:", len(res.terms))

# A small change to F2 is caught immediately.
bad = Fs[2] + psi_at_s(2, N) * genfun.inverse_power(3, N)
print("perturbed residual terms:", len(cutjoin.genus2_residual(N, bad).terms))

# The derivative identities behind the computation.
for name, ok in cutjoin.verify_derivative_identities(N).items():
    print(f"  {'ok ' if ok else 'BAD'} {name}")
