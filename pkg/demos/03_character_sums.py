"""Closed forms for the character sums behind the twist, against direct sums."""

from paratwist.charsum import (
    CyclotomicInt,
    gauss_bruteforce,
    legendre,
    sum_chi_quadratic,
    sum_chi_quadratic_bruteforce,
    sum_mm,
    sum_mm_bruteforce,
)

p = 7
print(f"sum over x of chi(x^2 + 3x + 1) mod {p}:",
      sum_chi_quadratic(1, 3, 1, p), "direct:", sum_chi_quadratic_bruteforce(1, 3, 1, p))

for A, B, C in ((1, 2, 3), (0, 1, 4), (0, 0, 3), (2, 0, 0)):
    print(f"M({A},{B},{C}) = {sum_mm(A, B, C, p)}  direct {sum_mm_bruteforce(A, B, C, p)}")

# the Gauss sum of chi squares to chi(-1) p inside Z[zeta_p]
W = gauss_bruteforce("chi", 1, p)
print("W(chi) =", W)
print("W(chi)^2 == chi(-1) p:", W * W == CyclotomicInt.constant(p, legendre(-1, p) * p))
