"""Gauss reduction of binary forms and the det(A)^k law for coefficient lookup."""


from paratwist import (
    CoeffTable,
    HalfIntegralForm,
    RationalMatrix2,
    lookup,
    reduce_gl2z,
    transform,
)

S = HalfIntegralForm(81, 78, 19)
res = reduce_gl2z(S)
print(f"{S} reduces to {res.reduced} with det sign {res.det_sign:+d}")
print("transform:", res.transform)
assert transform(res.reduced, res.matrix()) == S

# a lookup table of weight 19 under a few changes of variables
table = CoeffTable(1, 19, {(2, 1, 3): 7, (3, 2, 4): -5})
flip = RationalMatrix2(1, 0, 0, -1)
shear = RationalMatrix2(1, 3, 0, 1)
for A in (shear, flip, flip @ shear):
    for key in table.entries:
        T = transform(HalfIntegralForm(*key), A)
        print(f"A det {int(A.det):+d}: a({T}) = {lookup(table, T)}")

# odd weight forces zero on classes fixed by an improper automorphism
try:
    CoeffTable(1, 19, {(2, 2, 3): 1})
except ValueError as exc:
    print("rejected:", exc)
