"""Maass lifts and the vanishing check for their twists.

A Maass lift of weight k and level 1 has coefficients

    a(S) = sum over d | gcd(alpha, 2beta, gamma) of d^(k-1) C(D(S) / d^2)

for Jacobi coefficients C indexed by discriminants D <= 0.  Its quadratic
twist must vanish identically, which gives an end-to-end check of every
case formula in :mod:`paratwist.twist`.
"""

from __future__ import annotations

import io
import os
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, TextIO, Union

from .charsum import chi_table, check_odd_prime
from .coeffs import CoeffTable, LinearForm
from .errors import (
    InputError,
    InvalidHeader,
    MissingJacobiCoefficient,
    OutsideLevel,
    ParseError,
)
from .qform import HalfIntegralForm, as_form, content, discriminant4, in_ANplus, reduced_forms
from .twist import TwistContext, _label, a_chi_symbolic


class MaassLinearForm(LinearForm):
    """Linear form over the Jacobi unknowns C(D), keyed by the integer D."""

    __slots__ = ()

    def __repr__(self) -> str:
        if self.is_zero():
            return "MaassLinearForm(0)"
        body = " + ".join(f"({v})*C[{k}]" for k, v in self.items())
        return f"MaassLinearForm({body})"


@dataclass(frozen=True)
class JacobiCoeffs:
    """Jacobi coefficients C(D).  ``values is None`` means fully symbolic."""

    values: Mapping[int, Fraction] | None = None

    def __post_init__(self):
        if self.values is not None:
            clean = {}
            for D, v in self.values.items():
                if D > 0 or D % 4 not in (0, 1):
                    raise InputError(f"{D} is not a valid discriminant (D <= 0, D = 0,1 mod 4)")
                clean[int(D)] = Fraction(v)
            object.__setattr__(self, "values", clean)

    @property
    def mode(self) -> str:
        return "symbolic" if self.values is None else "numeric"

    @classmethod
    def symbolic(cls) -> "JacobiCoeffs":
        return cls(None)

    @classmethod
    def random(cls, keys: Iterable[int], seed: int = 0, bound: int = 10**6) -> "JacobiCoeffs":
        rng = random.Random(seed)
        return cls({D: rng.randint(-bound, bound) for D in sorted(set(keys))})


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=200_000)
def _maass_terms(key: tuple[int, int, int], k: int) -> tuple[tuple[int, int], ...]:
    S = HalfIntegralForm(*key)
    D = discriminant4(S)
    return tuple((D // (d * d), d ** (k - 1)) for d in _divisors(content(S)))


def maass_coeff_symbolic(S, k: int) -> MaassLinearForm:
    S = as_form(S)
    if not in_ANplus(S, 1):
        raise InputError(f"{S} is not positive definite")
    return MaassLinearForm(_maass_terms(S.key, k))


def maass_coeff(S, k: int, C: JacobiCoeffs) -> Fraction | MaassLinearForm:
    """The Maass lift coefficient a(S); symbolic when C carries no values."""
    form = maass_coeff_symbolic(S, k)
    if C.values is None:
        return form
    try:
        return form.evaluate(C.values)
    except KeyError as exc:
        raise MissingJacobiCoefficient(exc.args[0] if exc.args else []) from None


def maass_table(max_det4: int, k: int, C: JacobiCoeffs) -> CoeffTable:
    """Level-1 table of the lift over every reduced form with 4 det <= max_det4."""
    if C.values is None:
        raise InputError("maass_table needs numeric Jacobi coefficients")
    entries = {}
    missing = set()
    for S in reduced_forms(max_det4):
        form = maass_coeff_symbolic(S, k)
        absent = [D for D in form.support() if D not in C.values]
        if absent:
            missing.update(absent)
            continue
        entries[S.key] = form.evaluate(C.values)
    if missing:
        raise MissingJacobiCoefficient(missing)
    return CoeffTable(1, k, entries)


@dataclass(frozen=True)
class VanishingReport:
    form: HalfIntegralForm
    p: int
    k: int
    case: str
    residual: MaassLinearForm
    support_size: int
    notes: dict = field(default_factory=dict)

    @property
    def vanishes(self) -> bool:
        return self.residual.is_zero()

    @property
    def d_keys(self) -> list[int]:
        return self.residual.support()


def verify_maass_vanishing(S, p: int, k: int) -> VanishingReport:
    """Express a_chi(S) of a generic Maass lift in the unknowns C(D) and test for zero."""
    S = as_form(S)
    if k % 2:
        raise InputError("the vanishing statement needs even weight k")
    check_odd_prime(p)
    ctx = TwistContext(1, k, p)
    if not in_ANplus(S, p**4):
        raise OutsideLevel(f"{S} is not in A({p**4})^+")
    rep = a_chi_symbolic(S, ctx)
    residual = rep.value.substitute(lambda key: maass_coeff_symbolic(key, k), MaassLinearForm)
    return VanishingReport(S, p, k, rep.case.case, residual, len(rep.consumed_keys), rep.notes)


# Branch sweep


def _vp(n: int, p: int, cap: int = 64) -> int:
    if n == 0:
        return cap
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


def branch_profile(S, p: int) -> str:
    """A label for the branch of the twist formula that S exercises."""
    S = as_form(S)
    lab = _label(S.alpha, S.two_beta, p)
    if lab.case != "IV":
        return f"Case {lab.case} " + ("p|gamma" if S.gamma % p == 0 else "p!|gamma")
    det4 = S.det4
    vdet = min(_vp(det4, p), 9)
    g_div = S.gamma % p == 0
    parts = [f"Case IV v_p(4det){'>=9' if vdet == 9 else f'={vdet}'}"]
    parts.append("p|gamma" if g_div else "p!|gamma")
    if not g_div:
        a1 = S.alpha // p**4
        parts.append(f"chi(gamma alpha')={chi_table(p)[(S.gamma * a1) % p]:+d}")
    parts.append("p^2||2beta" if _vp(S.two_beta, p) == 2 else "p^3|2beta")
    return " ".join(parts)


def _candidate_forms(p: int) -> Iterable[HalfIntegralForm]:
    """Small forms from every case, with case IV forms spread over det valuations."""
    p4, q = p**4, p * p
    # cases I, II, III, V
    for u in (1, 2, p + 1):
        for tb in (1, 2, p, 2 * p, q, 2 * q, p**3, 0):
            for scale in (1, p):
                al = p4 * scale * u
                for ga in range(1, 4 * p):
                    if 4 * al * ga > tb * tb:
                        yield HalfIntegralForm(al, tb, ga)
    # case IV: alpha = p^4 u, 2beta = p^2 s, choose gamma to hit a target valuation
    for u in range(1, q):
        if u % p == 0:
            continue
        for s in range(0, 2 * p**3):
            for j in range(0, 7):
                mod = p ** (j + 1)
                base = s * s * pow(4 * u, -1, mod) % mod
                for n in range(0, 3):
                    ga = base + mod * n
                    if ga > 0 and 4 * u * ga > s * s:
                        yield HalfIntegralForm(p4 * u, q * s, ga)


def curated_sweep(p: int, per_branch: int = 2) -> list[tuple[str, HalfIntegralForm]]:
    """A deterministic list of forms hitting every branch of the five cases.

    Each entry is ``(profile, S)``; at most ``per_branch`` forms per profile
    are kept, smallest determinant first.
    """
    check_odd_prime(p)
    seen: dict[str, list[HalfIntegralForm]] = {}
    for S in sorted(set(_candidate_forms(p)), key=lambda S: (S.det4, S.key)):
        prof = branch_profile(S, p)
        bucket = seen.setdefault(prof, [])
        if len(bucket) < per_branch:
            bucket.append(S)
    return [(prof, S) for prof in sorted(seen) for S in seen[prof]]


def random_sweep(p: int, count: int, seed: int = 0, max_scale: int = 20, level: int = 1) -> list[HalfIntegralForm]:
    """Random forms in A(level p^4)^+ with bounded entries, reproducible under ``seed``."""
    rng = random.Random(seed)
    out = []
    p4 = level * p**4
    while len(out) < count:
        al = p4 * rng.randint(1, max_scale)
        tb = rng.randint(-200, 200)
        ga = rng.randint(1, 200)
        if 4 * al * ga > tb * tb:
            out.append(HalfIntegralForm(al, tb, ga))
    return out


# Jacobi coefficient files

_HEADER = re.compile(r"^k\s*=\s*(\d+)$")


def ingest_jacobi(source: Union[str, os.PathLike, TextIO]) -> tuple[int, JacobiCoeffs]:
    """Read ``k=<int>`` then lines ``D value``; ``#`` starts a comment."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return _ingest_jacobi_lines(fh)
    return _ingest_jacobi_lines(source)


def ingest_jacobi_text(text: str) -> tuple[int, JacobiCoeffs]:
    return _ingest_jacobi_lines(io.StringIO(text))


def _ingest_jacobi_lines(lines) -> tuple[int, JacobiCoeffs]:
    k = None
    values: dict[int, Fraction] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if k is None:
            m = _HEADER.match(line)
            if not m:
                raise InvalidHeader(f"expected 'k=<int>', got {line!r}", lineno)
            k = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'D value', got {line!r}", lineno)
        try:
            D = int(parts[0])
            v = Fraction(parts[1])
        except ValueError:
            raise ParseError(f"cannot parse {line!r}", lineno) from None
        if D > 0 or D % 4 not in (0, 1):
            raise ParseError(f"{D} is not a discriminant", lineno)
        if D in values and values[D] != v:
            raise ParseError(f"conflicting values for D={D}", lineno)
        values[D] = v
    if k is None:
        raise InvalidHeader("missing header line", None)
    return k, JacobiCoeffs(values)
