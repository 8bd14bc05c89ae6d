"""Twist of a weight 20 coefficient at S = [81, 44, 6] by the character mod 3.

The form has 2beta prime to 3, so only the three-by-three twist over the
units b contributes.  Two level-one coefficients are needed; both ship with
the package.
"""

from fractions import Fraction

from paratwist import HalfIntegralForm, TwistContext, a_chi, a_chi_symbolic, classify
from paratwist.data import upsilon20_table

S = HalfIntegralForm(81, 44, 6)
ctx = TwistContext(N=1, k=20, p=3)

print("form:", S, " 4det =", S.det4)
print("case:", classify(S, ctx).describe())

# symbolic first: which coefficients does the answer depend on?
sym = a_chi_symbolic(S, ctx)
for key, c in sym.value.items():
    print(f"  {c} * a{list(key)}")

table = upsilon20_table()
rep = a_chi(S, ctx, table)
print("a_chi(S) =", rep.value)
print("         =", float(rep.value))

# the same number written over 3^19
assert rep.value == -Fraction(2256995864880 + 4329978670800, 3**19)
print("check: -(a(1,0,18) - a(2,0,9)) / 3^19 agrees")
