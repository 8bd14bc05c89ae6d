"""Quadratic characters, Gauss sums and closed forms for character sums.

Every closed form here has a literal brute-force counterpart (the
``*_bruteforce`` functions) used as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BothVanish, HypothesisViolated, InputError, NonPIntegral


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise InputError(f"p must be an odd prime, got {p!r}")


@lru_cache(maxsize=None)
def chi_table(p: int) -> tuple[int, ...]:
    """Legendre symbol values indexed by residue 0..p-1."""
    check_odd_prime(p)
    table = [-1] * p
    table[0] = 0
    for x in range(1, (p + 1) // 2):
        table[x * x % p] = 1
    return tuple(table)


def legendre(a: int, p: int) -> int:
    """The Legendre symbol (a/p)."""
    return chi_table(p)[a % p]


@dataclass(frozen=True, slots=True)
class QuadChar:
    """The quadratic character mod an odd prime ``p``."""

    p: int

    def __post_init__(self):
        check_odd_prime(self.p)

    def __call__(self, a) -> int:
        if isinstance(a, Fraction):
            return chi_rational(a, self.p)
        return legendre(a, self.p)


def chi_rational(q, p: int) -> int:
    """chi at a p-integral rational, via numerator times inverse denominator."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise NonPIntegral(f"{q} is not p-integral for p={p}")
    return legendre(q.numerator * q.denominator, p)


def gauss_trivial(a: int, p: int) -> int:
    """W(1, a): p-1 when p | a, else -1."""
    return p - 1 if a % p == 0 else -1


@dataclass(frozen=True, slots=True)
class GaussSymbolic:
    """``plain + w_chi_multiplier * W(chi)`` with W(chi) left unevaluated."""

    w_chi_multiplier: int
    plain: Fraction = Fraction(0)

    def __str__(self) -> str:
        parts = []
        if self.plain:
            parts.append(str(self.plain))
        if self.w_chi_multiplier:
            parts.append(f"{self.w_chi_multiplier}*W(chi)")
        return " + ".join(parts) or "0"


def gauss_chi(a: int, p: int) -> GaussSymbolic:
    """W(chi, a) = chi(a) W(chi)."""
    return GaussSymbolic(legendre(a, p))


class CyclotomicInt:
    """An element of Z[zeta_p], kept in the basis 1, zeta, ..., zeta^(p-2)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) == p:
            top = coeffs[-1]
            coeffs = [c - top for c in coeffs[:-1]]
        elif len(coeffs) != p - 1:
            raise InputError(f"need {p - 1} or {p} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_exponents(cls, p: int, terms) -> "CyclotomicInt":
        """Sum of ``c * zeta^e`` over ``(e, c)`` pairs."""
        vec = [0] * p
        for e, c in terms:
            vec[e % p] += c
        return cls(p, vec)

    @classmethod
    def constant(cls, p: int, n: int) -> "CyclotomicInt":
        return cls(p, [n] + [0] * (p - 2))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        return CyclotomicInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return self + (-other)

    def __mul__(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(self.p, [other * c for c in self.coeffs])
        self._check(other)
        p = self.p
        vec = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    vec[(i + j) % p] += a * b
        return CyclotomicInt(p, vec)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CyclotomicInt.constant(self.p, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicInt(p={self.p}, coeffs={list(self.coeffs)})"

    def _check(self, other) -> None:
        if not isinstance(other, CyclotomicInt) or other.p != self.p:
            raise InputError("cyclotomic integers over different primes")


def gauss_bruteforce(xi: str, a: int, p: int) -> CyclotomicInt:
    """W(xi, a) = sum over units b of xi(b) zeta^(ab), summed term by term.

    ``xi`` is ``"trivial"`` or ``"chi"``.
    """
    if xi == "trivial":
        weight = lambda b: 1
    elif xi == "chi":
        weight = lambda b: legendre(b, p)
    else:
        raise InputError(f"unknown character selector {xi!r}")
    return CyclotomicInt.from_exponents(p, ((a * b, weight(b)) for b in range(1, p)))


# Closed forms for character sums


def sum_chi_quadratic(A: int, B: int, C: int, p: int) -> int:
    """Sum over x mod p of chi(A x^2 + B x + C)."""
    A, B, C = A % p, B % p, C % p
    if A == 0:
        if B == 0:
            raise BothVanish("A and B both vanish mod p")
        return 0
    if (B * B - 4 * A * C) % p == 0:
        return (p - 1) * legendre(A, p)
    return -legendre(A, p)


def sum_chi_quadratic_bruteforce(A: int, B: int, C: int, p: int) -> int:
    chi = chi_table(p)
    return sum(chi[(A * x * x + B * x + C) % p] for x in range(p))


def sum_chi_linear_product(a1: int, b1: int, a2: int, b2: int, p: int) -> int:
    """Sum over x mod p of chi(a1 x + b1) chi(a2 x + b2), with p not dividing a1 a2."""
    if a1 % p == 0 or a2 % p == 0:
        raise HypothesisViolated("leading coefficients must be units mod p")
    if (a1 * b2 - a2 * b1) % p == 0:
        return (p - 1) * legendre(a1 * a2, p)
    return -legendre(a1 * a2, p)


def sum_chi_linear_product_bruteforce(a1: int, b1: int, a2: int, b2: int, p: int) -> int:
    chi = chi_table(p)
    return sum(chi[(a1 * x + b1) % p] * chi[(a2 * x + b2) % p] for x in range(p))


def sum_ms(A: int, B: int, C: int, p: int) -> int:
    """Closed value chi(C) + chi(-C) of the restricted sums; needs p not | A and p | B^2-4AC."""
    if A % p == 0:
        raise HypothesisViolated("A must be a unit mod p")
    if (B * B - 4 * A * C) % p:
        raise HypothesisViolated("B^2 - 4AC must vanish mod p")
    return legendre(C, p) + legendre(-C, p)


def _ms_summand(A, B, C, b, x, y, p):
    inv = lambda u: pow(u, -1, p)
    return legendre(y * (1 - x) * (A * inv(1 - y) * (y - x) * b * b - B * b - C * inv(x)), p)


def sum_ms_bruteforce(A: int, B: int, C: int, p: int) -> int:
    """First restricted sum: b is pinned to -B (2A)^(-1) mod p."""
    b0 = (-B * pow(2 * A, -1, p)) % p
    total = 0
    for b in range(1, p):
        if b != b0:
            continue
        for x in range(2, p):
            for y in range(2, p):
                total += _ms_summand(A, B, C, b, x, y, p)
    return total


def sum_ms_root_bruteforce(A: int, B: int, C: int, p: int) -> int:
    """Second restricted sum: b runs over unit roots of A b^2 + B b + C mod p."""
    total = 0
    for b in range(1, p):
        if (A * b * b + B * b + C) % p:
            continue
        for x in range(2, p):
            for y in range(2, p):
                total += legendre(y * (A * pow(1 - y, -1, p) * b * b - C * pow(x, -1, p)), p)
    return total


def sum_mm(A: int, B: int, C: int, p: int) -> int:
    """Closed form of the triple sum M(A, B, C) over units b, x, y with x, y != 1."""
    A, B, C = A % p, B % p, C % p
    chi = chi_table(p)
    cA, cmA, cC = chi[A], chi[-A % p], chi[C]
    D = (B * B - 4 * A * C) % p
    if A:
        if B:
            if C:
                if chi[D] == -1:
                    return (p - 1) * cC - cmA + (p - 1) * cA
                if chi[D] == 1:
                    return -(p + 1) * cC - cmA - (p + 1) * cA
                return -2 * cC - cmA
            return -cmA - cA
        if C:
            if chi[D] == 1:
                return -2 * cC - (p + 1) * cA
            return (p - 1) * cA
        return (p - 1) * cmA + (p - 1) * cA
    if B:
        return -cC if C else 0
    # A and B both vanish: the summand is chi(-C y (1-x) x^(-1))
    return (p - 1) * cC


def sum_mm_bruteforce(A: int, B: int, C: int, p: int) -> int:
    chi = chi_table(p)
    inv = [0] + [pow(u, -1, p) for u in range(1, p)]
    total = 0
    for x in range(2, p):
        cx = C * inv[x]
        for y in range(2, p):
            ay = A * inv[(1 - y) % p] * (y - x)
            w = y * (1 - x)
            for b in range(1, p):
                total += chi[(w * (ay * b * b - B * b - cx)) % p]
    return total
