"""Half-integral binary quadratic forms.

A form ``S = [[alpha, beta], [beta, gamma]]`` with ``alpha, gamma`` and
``2*beta`` integral is stored as the integer triple ``(alpha, two_beta,
gamma)``.  Transforms act by ``S[A] = A^T S A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Union

from .errors import InputError, NonIntegralResult, NotPositiveDefinite

Key = tuple[int, int, int]
Rational = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class HalfIntegralForm:
    alpha: int
    two_beta: int
    gamma: int

    def __post_init__(self):
        for v in (self.alpha, self.two_beta, self.gamma):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(f"form entries must be integers, got {v!r}")

    @classmethod
    def parse(cls, text: str) -> "HalfIntegralForm":
        """Parse the literal ``"alpha,two_beta,gamma"``."""
        parts = [s.strip() for s in text.strip().strip("[]()").split(",")]
        if len(parts) != 3:
            raise InputError(f"expected three comma-separated integers, got {text!r}")
        try:
            return cls(*(int(s) for s in parts))
        except ValueError:
            raise InputError(f"form entries must be integers: {text!r}") from None

    @classmethod
    def positive(cls, alpha: int, two_beta: int, gamma: int) -> "HalfIntegralForm":
        """Construct a form and insist it is positive definite."""
        S = cls(alpha, two_beta, gamma)
        if not S.is_positive():
            raise NotPositiveDefinite(f"{S} is not positive definite")
        return S

    @property
    def key(self) -> Key:
        return (self.alpha, self.two_beta, self.gamma)

    @property
    def det4(self) -> int:
        """Four times the determinant, ``4*alpha*gamma - two_beta**2``."""
        return 4 * self.alpha * self.gamma - self.two_beta * self.two_beta

    def is_positive(self) -> bool:
        return self.alpha > 0 and self.det4 > 0

    def __str__(self) -> str:
        return f"{self.alpha},{self.two_beta},{self.gamma}"


def as_form(S) -> HalfIntegralForm:
    if isinstance(S, HalfIntegralForm):
        return S
    if isinstance(S, str):
        return HalfIntegralForm.parse(S)
    return HalfIntegralForm(*S)


@dataclass(frozen=True, slots=True)
class RationalMatrix2:
    """A 2x2 matrix ``[[a11, a12], [a21, a22]]`` with rational entries."""

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def identity(cls) -> "RationalMatrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def upper(cls, a11: Rational, a12: Rational, a22: Rational) -> "RationalMatrix2":
        return cls(a11, a12, 0, a22)

    @property
    def det(self) -> Fraction:
        return self.a11 * self.a22 - self.a12 * self.a21

    def inverse(self) -> "RationalMatrix2":
        d = self.det
        if d == 0:
            raise InputError("singular matrix")
        return RationalMatrix2(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)

    def __matmul__(self, other: "RationalMatrix2") -> "RationalMatrix2":
        return RationalMatrix2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def rows(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.a11, self.a12), (self.a21, self.a22))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in (self.a11, self.a12, self.a21, self.a22))


@dataclass(frozen=True, slots=True)
class ReductionResult:
    reduced: HalfIntegralForm
    transform: tuple[tuple[int, int], tuple[int, int]]
    det_sign: int

    def matrix(self) -> RationalMatrix2:
        (a, b), (c, d) = self.transform
        return RationalMatrix2(a, b, c, d)


def discriminant4(S: HalfIntegralForm) -> int:
    """D(S) = two_beta^2 - 4 alpha gamma, which is -4 det(S)."""
    return S.two_beta * S.two_beta - 4 * S.alpha * S.gamma


def content(S: HalfIntegralForm) -> int:
    return gcd(gcd(S.alpha, S.two_beta), S.gamma)


def in_ANplus(S: HalfIntegralForm, N: int) -> bool:
    if N < 1:
        raise InputError("level N must be positive")
    return S.alpha > 0 and S.alpha % N == 0 and S.det4 > 0


def _as_int(x: Fraction, what: str, S, A) -> int:
    if x.denominator != 1:
        raise NonIntegralResult(f"{what} = {x} is not integral for S={S} and A={A.rows()}")
    return x.numerator


def transform(S: HalfIntegralForm, A: RationalMatrix2) -> HalfIntegralForm:
    """Return ``S[A] = A^T S A``."""
    al, tb, ga = S.alpha, S.two_beta, S.gamma
    a11, a12, a21, a22 = A.a11, A.a12, A.a21, A.a22
    new_alpha = a11 * a11 * al + a11 * a21 * tb + a21 * a21 * ga
    new_tb = 2 * a11 * a12 * al + (a11 * a22 + a12 * a21) * tb + 2 * a21 * a22 * ga
    new_gamma = a12 * a12 * al + a12 * a22 * tb + a22 * a22 * ga
    return HalfIntegralForm(
        _as_int(new_alpha, "alpha", S, A),
        _as_int(new_tb, "2*beta", S, A),
        _as_int(new_gamma, "gamma", S, A),
    )


def transform_upper_scaled(
    S: Key, n11: int, n12: int, n22: int, L: int
) -> Key:
    """``S[A]`` for ``A = [[n11, n12], [0, n22]] / L`` in pure integer arithmetic.

    Raises NonIntegralResult when the result is not half-integral.
    """
    al, tb, ga = S
    L2 = L * L
    x, r1 = divmod(n11 * n11 * al, L2)
    y, r2 = divmod(n11 * (2 * n12 * al + n22 * tb), L2)
    z, r3 = divmod(n12 * n12 * al + n12 * n22 * tb + n22 * n22 * ga, L2)
    if r1 or r2 or r3:
        raise NonIntegralResult(
            f"S={S} with A=[[{n11},{n12}],[0,{n22}]]/{L} is not half-integral"
        )
    return (x, y, z)


def reduced_key(a: int, b: int, c: int) -> tuple[int, int, int, int]:
    """Gauss-reduce a positive definite form given as integers.

    Returns ``(a', b', c', sign)`` with ``0 <= b' <= a' <= c'`` and ``sign`` the
    determinant of the witnessing transform.  Same move sequence as
    :func:`reduce_gl2z`, without tracking the matrix.
    """
    while True:
        if b > a or b <= -a:
            t = (a - b) // (2 * a)
            c += t * (b + t * a)
            b += 2 * t * a
        if a > c:
            a, b, c = c, -b, a
        else:
            break
    if b < 0:
        return a, -b, c, -1
    return a, b, c, 1


def reduce_gl2z(S: HalfIntegralForm) -> ReductionResult:
    """Canonical GL(2,Z) representative with ``0 <= b <= a <= c``.

    The returned transform ``U`` satisfies ``transform(reduced, U) == S``.
    """
    if not S.is_positive():
        raise NotPositiveDefinite(f"{S} is not positive definite")
    a, b, c = S.key
    # G accumulates the moves so that S[G] is the current form
    g11, g12, g21, g22 = 1, 0, 0, 1
    while True:
        if b > a or b <= -a:
            t = (a - b) // (2 * a)
            c += t * (b + t * a)
            b += 2 * t * a
            g12 += t * g11
            g22 += t * g21
        if a > c:
            a, b, c = c, -b, a
            g11, g12, g21, g22 = g12, -g11, g22, -g21
        else:
            break
    if b < 0:
        b = -b
        g12, g22 = -g12, -g22
    det = g11 * g22 - g12 * g21
    U = ((det * g22, -det * g12), (-det * g21, det * g11))
    return ReductionResult(HalfIntegralForm(a, b, c), U, det)


def normalize_translation(a: int, b: int, c: int) -> tuple[int, int, int, int]:
    """Normalize with translations and a sign flip only: ``0 <= b <= a``.

    Used as the key convention for levels N > 1.
    """
    if b > a or b <= -a:
        t = (a - b) // (2 * a)
        c += t * (b + t * a)
        b += 2 * t * a
    if b < 0:
        return a, -b, c, -1
    return a, b, c, 1


def is_reduced(S: HalfIntegralForm) -> bool:
    return 0 <= S.two_beta <= S.alpha <= S.gamma


def reduced_forms(max_det4: int) -> Iterator[HalfIntegralForm]:
    """All reduced positive forms with ``4 det <= max_det4``, in key order."""
    # 4ac - b^2 >= 3a^2 for reduced forms
    for a in range(1, isqrt(max_det4 // 3) + 1):
        for b in range(0, a + 1):
            c = a
            while 4 * a * c - b * b <= max_det4:
                yield HalfIntegralForm(a, b, c)
                c += 1


def p_adic_valuation(n: int, p: int) -> int | None:
    """Exponent of p in n, or None for n == 0."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
