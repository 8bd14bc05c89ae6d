"""Fourier coefficients of the quadratic twist of a paramodular form.

For ``S`` in A(N p^4)^+, the twist has coefficient ``W(chi) * a_chi(S)``
where ``a_chi(S)`` is a finite rational combination of coefficients
``a(S[A])`` of the original form.  The combination depends on which of five
valuation patterns ``(v_p(2 beta), v_p(alpha))`` the form ``S`` falls into.

The engine always builds ``a_chi(S)`` as a :class:`LinearForm` over canonical
keys; numeric evaluation substitutes table values afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .charsum import chi_table, check_odd_prime, gauss_trivial
from .coeffs import CoeffTable, LinearForm, has_improper_automorphism
from .errors import (
    InputError,
    InternalInvariantError,
    NonIntegralCoefficient,
    NonIntegralResult,
    OutsideLevel,
)
from .qform import (
    HalfIntegralForm,
    Key,
    RationalMatrix2,
    as_form,
    normalize_translation,
    reduced_key,
    transform,
)
from .quadsolve import QuadPoly, roots_mod_p2

CASES = ("I", "II", "III", "IV", "V")

D_PART_VARIANTS = ("chi", "gauss")


@dataclass(frozen=True, slots=True)
class TwistContext:
    """Level N, weight k and the odd prime p (coprime to N) of the twist.

    ``d_part`` selects the weight of the last case IV correction term when
    p^6 | 4det(S).  The default ``"chi"`` weights it by chi(D(S) p^-6), so it
    drops out once p^8 | 4det(S).  ``"gauss"`` uses W(1, 4det(S) p^-6) and
    keeps a (p-1) p^(3k-5) term when p^8 | 4det(S).  Only ``"chi"`` makes the
    twist of a Maass lift vanish; ``"gauss"`` is kept for comparison.
    """

    N: int
    k: int
    p: int
    d_part: str = "chi"

    def __post_init__(self):
        if self.d_part not in D_PART_VARIANTS:
            raise InputError(f"d_part must be one of {D_PART_VARIANTS}")
        check_odd_prime(self.p)
        if not isinstance(self.N, int) or self.N < 1:
            raise InputError("level N must be a positive integer")
        if not isinstance(self.k, int) or self.k < 1:
            raise InputError("weight k must be a positive integer")
        if self.N % self.p == 0:
            raise InputError(f"p={self.p} must not divide N={self.N}")


@dataclass(frozen=True, slots=True)
class CaseLabel:
    case: str
    v_two_beta: int | None  # None stands for two_beta == 0
    v_alpha: int

    def __str__(self) -> str:
        return f"Case {self.case}"

    def describe(self) -> str:
        vb = "inf" if self.v_two_beta is None else self.v_two_beta
        return f"Case {self.case} (v_p(2beta)={vb}, v_p(alpha)={self.v_alpha})"


@dataclass(frozen=True, slots=True)
class TwistReport:
    case: CaseLabel
    value: Fraction | LinearForm
    consumed_keys: list[Key]
    notes: dict = field(default_factory=dict)
    approximate: bool = False
    missing_keys: list[Key] = field(default_factory=list)

    @property
    def symbolic(self) -> bool:
        return isinstance(self.value, LinearForm)


def _valuation(n: int, p: int) -> int | None:
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _exact(n: int, d: int, what: str) -> int:
    q, r = divmod(n, d)
    if r:
        raise InternalInvariantError(f"{what}: {n} is not divisible by {d}")
    return q


def f_S(S, p: int, X: int) -> int:
    """alpha p^-4 X^2 - 2beta p^-2 X + gamma."""
    S = as_form(S)
    if S.alpha % p**4 or S.two_beta % (p * p):
        raise NonIntegralCoefficient(f"f_S needs p^4 | alpha and p^2 | 2beta for S={S}, p={p}")
    return (S.alpha // p**4) * X * X - (S.two_beta // (p * p)) * X + S.gamma


def _check_level(S: HalfIntegralForm, ctx: TwistContext) -> None:
    level = ctx.N * ctx.p**4
    if S.alpha <= 0 or S.alpha % level or 4 * S.alpha * S.gamma <= S.two_beta * S.two_beta:
        raise OutsideLevel(f"{S} is not in A({level})^+ (N={ctx.N}, p={ctx.p})")


def _label(a: int, tb: int, p: int) -> CaseLabel:
    va = _valuation(a, p)
    vb = _valuation(tb, p)
    if vb == 0:
        case = "I"
    elif vb == 1:
        case = "II" if va == 4 else "III"
    else:
        case = "IV" if va == 4 else "V"
    return CaseLabel(case, vb, va)


def classify(S, ctx: TwistContext) -> CaseLabel:
    S = as_form(S)
    _check_level(S, ctx)
    return _label(S.alpha, S.two_beta, ctx.p)


@lru_cache(maxsize=64)
def _weights(p: int, k: int) -> tuple[int, dict[int, int]]:
    """Common denominator exponent and scaled powers for the exponents in use."""
    exps = (1 - k, -1, 0, k - 2, k - 3, 2 * k - 4, 3 * k - 5, 4 * k - 6)
    shift = max(0, -min(exps))
    return shift, {e: p ** (e + shift) for e in exps}


class _Accumulator:
    """Collects terms ``c * p^e * a(S[A])`` with ``A = [[n11, n12], [0, n22]] / L``."""

    __slots__ = ("S", "det4", "p", "odd", "normalize", "pw", "acc", "d_part")

    def __init__(self, S: Key, ctx: TwistContext):
        self.S = S
        self.det4 = 4 * S[0] * S[2] - S[1] * S[1]
        self.p = ctx.p
        self.odd = ctx.k % 2 == 1
        self.normalize = reduced_key if ctx.N == 1 else normalize_translation
        self.pw = _weights(ctx.p, ctx.k)[1]
        self.acc: dict[Key, int] = {}
        self.d_part = ctx.d_part

    def add(self, e: int, c: int, n11: int, n12: int, n22: int, L: int) -> None:
        if not c:
            return
        al, tb, ga = self.S
        L2 = L * L
        x, r1 = divmod(n11 * n11 * al, L2)
        y, r2 = divmod(n11 * (2 * n12 * al + n22 * tb), L2)
        z, r3 = divmod(n12 * n12 * al + n12 * n22 * tb + n22 * n22 * ga, L2)
        if r1 or r2 or r3:
            raise InternalInvariantError(
                f"S={self.S}: transform [[{n11},{n12}],[0,{n22}]]/{L} is not half-integral"
            )
        if (4 * x * z - y * y) * L2 * L2 != (n11 * n22) ** 2 * self.det4:
            raise InternalInvariantError(f"S={self.S}: determinant bookkeeping failed")
        a, b, cc, sign = self.normalize(x, y, z)
        v = c * self.pw[e]
        if sign < 0 and self.odd:
            v = -v
        key = (a, b, cc)
        acc = self.acc
        acc[key] = acc.get(key, 0) + v


def _case_i(S: Key, p: int, k: int, acc: _Accumulator, chi) -> dict:
    tb = S[1]
    ct = chi[tb % p]
    e = 1 - k
    for b in range(1, p):
        acc.add(e, ct * chi[b], p, -b, p * p, p)
    return {}


def _sum_shared_ii_iii(t1: int, ga: int, p: int, acc: _Accumulator, chi) -> None:
    # p^-1 sum_{a,b} chi(ab(t1 a - gamma)) a(S[[1, -(a+b)/p], [0, 1]])
    for a in range(1, p):
        ca = chi[a] * chi[(t1 * a - ga) % p]
        if not ca:
            continue
        for b in range(1, p):
            acc.add(-1, ca * chi[b], p, -(a + b), p, p)


def _case_ii(S: Key, p: int, k: int, acc: _Accumulator, chi) -> dict:
    al, tb, ga = S
    q = p * p
    a1 = _exact(al, p**4, "alpha/p^4")
    t1 = _exact(tb, p, "2beta/p")
    _sum_shared_ii_iii(t1, ga, p, acc, chi)
    for a in range(1, p):
        c = 0
        for z in range(2, p):
            c += chi[(a * z * (1 - z)) % p] * chi[(a * z * a1 - t1) % p]
        acc.add(-1, c, p, -a, p**3, q)
    acc.add(-1, -chi[a1 % p], 1, 0, p**4, q)
    x = t1 * pow(a1, -1, q) % q
    acc.add(k - 2, chi[-a1 % p], q, -x, p**3, p**3)
    y = -ga * pow(t1, -1, q) % q
    acc.add(k - 2, chi[-ga % p], q, y, p, q)
    return {}


def _case_iii(S: Key, p: int, k: int, acc: _Accumulator, chi) -> dict:
    al, tb, ga = S
    q = p * p
    _exact(al, p**5, "alpha/p^5")
    t1 = _exact(tb, p, "2beta/p")
    _sum_shared_ii_iii(t1, ga, p, acc, chi)
    if ga % p:
        y = -ga * pow(t1, -1, q) % q
        acc.add(k - 2, chi[-ga % p], q, y, p, q)
    ct = chi[t1 % p]
    for a in range(1, p):
        acc.add(-1, -ct * chi[a], p, -a, p**3, q)
    return {}


def _head_iv_v(ga: int, p: int, acc: _Accumulator, chi) -> None:
    # (1 - 1/p) chi(gamma) a(S) - p^-1 chi(gamma) sum_b a(S[[1, -b/p], [0, 1]])
    cg = chi[ga % p]
    acc.add(-1, (p - 1) * cg, 1, 0, 1, 1)
    for b in range(1, p):
        acc.add(-1, -cg, p, -b, p, p)


def _case_iv(S: Key, p: int, k: int, acc: _Accumulator, chi) -> dict:
    al, tb, ga = S
    q = p * p
    a1 = _exact(al, p**4, "alpha/p^4")
    t2 = _exact(tb, q, "2beta/p^2")
    det4 = 4 * al * ga - tb * tb
    D4 = -_exact(det4, p**4, "4det/p^4")
    inv = [0] + [pow(u, -1, p) for u in range(1, p)]
    ca, cma, cg = chi[a1 % p], chi[-a1 % p], chi[ga % p]
    notes = {}

    _head_iv_v(ga, p, acc, chi)
    for b in range(1, p):
        c = 0
        for x in range(2, p):
            gx = ga * inv[x]
            for y in range(2, p):
                arg = a1 * (y - x) * inv[(1 - y) % p] * b * b + t2 * b - gx
                c += chi[(y * (1 - x) * arg) % p]
        acc.add(k - 3, c, p, -b, q, q)
    c = cg + p * chi[(D4 * ga) % p] - cma * gauss_trivial(t2, p)
    acc.add(k - 3, c, 1, 0, p, p)
    for x in range(p):
        acc.add(k - 3, cma * gauss_trivial(t2 - x * a1, p), p, -x, q, q)
    for b in roots_mod_p2(QuadPoly(a1, -t2, ga), p).elements:
        if b % p == 0:
            continue
        c = 0
        for z in range(2, p):
            c += chi[(z * (1 - z)) % p] * chi[(ga - z * a1 * b * b) % p]
        acc.add(2 * k - 4, c, q, -b, q, p**3)
    for a in range(1, p):
        acc.add(-1, -ca, p, -a, p**3, q)
    acc.add(k - 3, ca * (p * chi[D4 % p] - gauss_trivial(ga, p)), 1, 0, p**3, q)
    acc.add(-1, (p - 1) * ca, 1, 0, p**4, q)

    # c-part
    if det4 % p**5 == 0 and chi[(ga * a1) % p] == 1:
        w = gauss_trivial(det4 // p**5, p)
        acc.add(2 * k - 4, ca * w, 1, 0, q, q)
        notes["c_chi"] = "p^5 | det, chi(gamma alpha p^-4) = 1"
    else:
        notes["c_chi"] = "zero"

    # d-part; the solutions a, b exist exactly when p does not divide 2beta/p^2
    gauss = acc.d_part == "gauss"
    if det4 % p**6 == 0 and t2 % p:
        inv2a = pow(2 * a1, -1, q)
        a_sol = t2 * inv2a % p
        b_sol = t2 * inv2a % q
        if det4 % p**8 == 0:
            if gauss:
                acc.add(3 * k - 5, (p - 1) * ca, p, -a_sol, q, p**3)
            acc.add(4 * k - 6, ca, q, -b_sol, q, p**4)
            notes["d_chi"] = "p^8 | 4det"
        else:
            if gauss:
                w = gauss_trivial(det4 // p**6, p)
            else:
                w = chi[(-det4 // p**6) % p]
            acc.add(3 * k - 5, ca * w, p, -a_sol, q, p**3)
            notes["d_chi"] = "p^6 | 4det, p^8 does not"
    elif det4 % p**6 == 0:
        notes["d_chi"] = "no solution a, b"
    else:
        notes["d_chi"] = "zero"
    return notes


def _case_v(S: Key, p: int, k: int, acc: _Accumulator, chi) -> dict:
    al, tb, ga = S
    q = p * p
    a1 = _exact(al, p**4, "alpha/p^4")
    _exact(al, p**5, "alpha/p^5")
    t2 = _exact(tb, q, "2beta/p^2")
    det4 = 4 * al * ga - tb * tb
    D4 = -_exact(det4, p**4, "4det/p^4")
    cg = chi[ga % p]

    _head_iv_v(ga, p, acc, chi)
    for b in range(1, p):
        c = 0
        for x in range(2, p):
            c += chi[((1 - x) * (t2 * b - ga * pow(x, -1, p))) % p]
        acc.add(k - 3, -c, p, -b, q, q)
    acc.add(k - 3, cg * (1 - p + p * chi[D4 % p]), 1, 0, p, p)
    cmg = chi[-ga % p]
    if cmg:
        for b in range(1, q):
            if b % p and (a1 * b * b - t2 * b + ga) % q == 0:
                acc.add(2 * k - 4, -cmg, q, -b, q, p**3)
    return {}


_DISPATCH = {"I": _case_i, "II": _case_ii, "III": _case_iii, "IV": _case_iv, "V": _case_v}


def a_chi_symbolic(S, ctx: TwistContext) -> TwistReport:
    """a_chi(S) as a linear form in the original coefficients."""
    S = as_form(S)
    _check_level(S, ctx)
    p = ctx.p
    label = _label(S.alpha, S.two_beta, p)
    acc = _Accumulator(S.key, ctx)
    try:
        notes = _DISPATCH[label.case](S.key, p, ctx.k, acc, chi_table(p))
    except NonIntegralResult as exc:
        raise InternalInvariantError(str(exc)) from exc
    shift = _weights(p, ctx.k)[0]
    value = LinearForm._from_scaled(acc.acc, p**shift)
    return TwistReport(label, value, value.support(), notes)


def a_chi(S, ctx: TwistContext, table: CoeffTable, assume_zero_outside_box: bool = False) -> TwistReport:
    """Numeric a_chi(S) from a coefficient table.

    Missing coefficients raise MissingCoefficient listing every needed key,
    unless ``assume_zero_outside_box`` is set; then they count as zero and the
    report is marked approximate.
    """
    if table.N != ctx.N or table.k != ctx.k:
        raise InputError(
            f"table has N={table.N}, k={table.k} but the context has N={ctx.N}, k={ctx.k}"
        )
    sym = a_chi_symbolic(S, ctx)
    entries = table.entries
    missing = [key for key in sym.consumed_keys if key not in entries]
    value = sym.value.evaluate(entries, missing_ok=assume_zero_outside_box)
    return TwistReport(
        sym.case,
        value,
        sym.consumed_keys,
        sym.notes,
        approximate=bool(missing),
        missing_keys=missing,
    )


def required_support(S, ctx: TwistContext) -> list[Key]:
    return a_chi_symbolic(S, ctx).consumed_keys


def symmetry_defect(S, ctx: TwistContext, A: RationalMatrix2) -> LinearForm:
    """``a_chi(S[A]) - det(A)^k a_chi(S)`` as a linear form.

    A must be integral and unimodular with lower-left entry divisible by
    N p^4, so that S[A] stays in A(N p^4)^+.  The twist of a genuine form
    obeys the same det(A)^k law, so the defect should be zero.  For odd k,
    classes fixed by an improper automorphism carry zero in every valid
    table and are dropped before comparing.
    """
    S = as_form(S)
    level = ctx.N * ctx.p**4
    if not A.is_integral() or abs(A.det) != 1 or A.a21 % level:
        raise InputError(f"A must be in GL2(Z) with lower-left entry divisible by {level}")
    sign = int(A.det) ** ctx.k
    diff = a_chi_symbolic(transform(S, A), ctx).value - a_chi_symbolic(S, ctx).value.scale(sign)
    if ctx.k % 2:
        diff = LinearForm({key: c for key, c in diff.items() if not has_improper_automorphism(key, ctx.N)})
    return diff
