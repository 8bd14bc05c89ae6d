"""Roots of quadratic polynomials modulo p and p^2.

Throughout, ``f(X) = A X^2 + B X + C`` and ``D = B^2 - 4AC``, so that
``4A f(X) = (2AX + B)^2 - D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisViolated, InputError, LeadingCoeffDivisible, NotInvertible


@dataclass(frozen=True, slots=True)
class QuadPoly:
    A: int
    B: int
    C: int
    D: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "D", self.B * self.B - 4 * self.A * self.C)

    def __call__(self, x: int) -> int:
        return (self.A * x + self.B) * x + self.C


@dataclass(frozen=True, slots=True)
class RootSetModP2:
    kind: str  # "empty", "pair" or "line"
    elements: tuple[int, ...]


def inv_mod(a: int, modulus: int) -> int:
    try:
        return pow(a, -1, modulus)
    except ValueError:
        raise NotInvertible(f"{a} is not invertible mod {modulus}") from None


def sqrt_mod(n: int, modulus: int) -> int | None:
    """Smallest s with s^2 = n mod ``modulus``, or None.  Direct enumeration."""
    if modulus < 1:
        raise InputError("modulus must be positive")
    n %= modulus
    for s in range(modulus):
        if s * s % modulus == n:
            return s
    return None


def _valuation(n: int, p: int, cap: int) -> int:
    v = 0
    while v < cap and n % p == 0:
        n //= p
        v += 1
    return v


def roots_mod_p2(f: QuadPoly, p: int) -> RootSetModP2:
    """All r mod p^2 with f(r) = 0 mod p^2, using the shape of D."""
    if f.A % p == 0:
        raise LeadingCoeffDivisible(f"p={p} divides the leading coefficient {f.A}")
    q = p * p
    inv2A = inv_mod(2 * f.A, q)
    vD = _valuation(f.D, p, 2)
    if vD == 0:
        s = sqrt_mod(f.D, q)
        if s is None:
            return RootSetModP2("empty", ())
        roots = sorted({(-f.B + s) * inv2A % q, (-f.B - s) * inv2A % q})
        return RootSetModP2("pair", tuple(roots))
    if vD == 1:
        return RootSetModP2("empty", ())
    r0 = -f.B * inv2A % p
    return RootSetModP2("line", tuple(r0 + p * y for y in range(p)))


def roots_mod_p2_bruteforce(f: QuadPoly, p: int) -> tuple[int, ...]:
    q = p * p
    return tuple(r for r in range(q) if f(r) % q == 0)


def satisfies_R(f: QuadPoly, r: int, k: int, level: str, p: int) -> bool:
    """Evaluate the predicate R(k) literally.

    ``level="p"``: ``2Ar + B = 0 mod p^(k-1)`` and ``f(r) = 0 mod p^k``.
    ``level="p2"``: ``2Ar = -B mod p^k`` and ``f(r) = 0 mod p^(k+2)``, for a
    root ``r`` of ``f`` mod p^2.
    """
    if f.A % p == 0:
        raise HypothesisViolated("A must be a unit mod p")
    if k not in (1, 2):
        raise HypothesisViolated("k must be 1 or 2")
    if level == "p":
        return (2 * f.A * r + f.B) % p ** (k - 1) == 0 and f(r) % p**k == 0
    if level == "p2":
        if f(r) % (p * p):
            raise HypothesisViolated(f"{r} is not a root of f mod p^2")
        return (2 * f.A * r + f.B) % p**k == 0 and f(r) % p ** (k + 2) == 0
    raise InputError(f"unknown level {level!r}")


def residues_R_mod_p(f: QuadPoly, k: int, p: int) -> tuple[int, ...]:
    """Closed-form description of the residues mod p satisfying R(k) at level p."""
    if f.A % p == 0:
        raise HypothesisViolated("A must be a unit mod p")
    r0 = -f.B * inv_mod(2 * f.A, p) % p
    if f.D % p:
        if k == 2:
            return ()
        s = sqrt_mod(f.D, p)
        if s is None:
            return ()
        inv2A = inv_mod(2 * f.A, p)
        return tuple(sorted({(-f.B + s) * inv2A % p, (-f.B - s) * inv2A % p}))
    if k == 1 or f.D % (p * p) == 0:
        return (r0,)
    return ()


def root_R_closed_form(f: QuadPoly, r: int, k: int, p: int) -> bool:
    """Closed-form truth value of R(k) at level p^2, by the valuation of D."""
    if f.A % p == 0:
        raise HypothesisViolated("A must be a unit mod p")
    q = p * p
    if f(r) % q:
        raise HypothesisViolated(f"{r} is not a root of f mod p^2")
    vD = _valuation(f.D, p, 4)
    r0 = -f.B * inv_mod(2 * f.A, q) % q
    if vD == 0 or k == 2 and vD < 4:
        return False
    if vD == 2:
        y = (r - r0) % q
        if y % p:
            return False
        y //= p
        return (2 * f.A * y) ** 2 % p == (f.D // q) % p
    return (r - r0) % q == 0
