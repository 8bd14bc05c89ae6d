"""Twisting a Maass lift gives zero, term by term in the Jacobi unknowns.

Each coefficient a(S) of a lift is a divisor sum of Jacobi coefficients
C(D).  Substituting that into a_chi(S) must cancel completely.  The sweep
below hits every branch of the five cases.
"""

from paratwist import TwistContext, a_chi_symbolic
from paratwist.maass import curated_sweep, maass_coeff_symbolic, verify_maass_vanishing

p, k = 3, 10
sweep = curated_sweep(p, per_branch=1)
for profile, S in sweep:
    rep = verify_maass_vanishing(S, p, k)
    status = "0" if rep.vanishes else repr(rep.residual)
    print(f"{str(S):>16}  {profile:<62} {rep.support_size:>3} terms -> {status}")

# the busiest case spelled out: the linear form before and after substitution
ctx = TwistContext(1, k, p)
S = max((S for _, S in sweep), key=lambda S: len(a_chi_symbolic(S, ctx).value))
sym = a_chi_symbolic(S, ctx).value
print("\na_chi for", S, "uses", len(sym), "coefficients:")
for key, c in sym.items():
    print(f"  {c} * a{list(key)}")
print("after substituting the lift:",
      sym.substitute(lambda key: maass_coeff_symbolic(key, k)))
