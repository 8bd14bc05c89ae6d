"""Closed forms versus direct enumeration, packaged for reports.

Each check returns a :class:`CheckResult`; a check stops at the first
mismatch and records it as the counterexample.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from . import charsum as cs
from . import quadsolve as qs


@dataclass(frozen=True)
class CheckResult:
    name: str
    p: int
    cases: int
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def _run(name: str, p: int, inputs: Iterable, test: Callable) -> CheckResult:
    n = 0
    for args in inputs:
        n += 1
        msg = test(*args)
        if msg:
            return CheckResult(name, p, n, f"{args}: {msg}")
    return CheckResult(name, p, n)


def _triples(m: int, samples: int | None, rng: random.Random):
    if samples is None:
        return itertools.product(range(m), repeat=3)
    return [tuple(rng.randrange(m) for _ in range(3)) for _ in range(samples)]


def check_quadratic_sum(p: int, samples=None, rng=None) -> CheckResult:
    def test(A, B, C):
        if A % p == 0 and B % p == 0:
            return None
        a, b = cs.sum_chi_quadratic(A, B, C, p), cs.sum_chi_quadratic_bruteforce(A, B, C, p)
        return None if a == b else f"closed {a} != direct {b}"

    return _run("quadratic character sum", p, _triples(p, samples, rng), test)


def check_linear_product(p: int, samples=None, rng=None) -> CheckResult:
    def test(a1, b1, a2, b2):
        if a1 % p == 0 or a2 % p == 0:
            return None
        a = cs.sum_chi_linear_product(a1, b1, a2, b2, p)
        b = cs.sum_chi_linear_product_bruteforce(a1, b1, a2, b2, p)
        return None if a == b else f"closed {a} != direct {b}"

    if samples is None:
        inputs = itertools.product(range(p), repeat=4)
    else:
        inputs = [tuple(rng.randrange(p) for _ in range(4)) for _ in range(samples)]
    return _run("product of linear characters", p, inputs, test)


def check_restricted_sum(p: int, samples=None, rng=None) -> CheckResult:
    def test(A, B, C):
        if A % p == 0 or (B * B - 4 * A * C) % p:
            return None
        want = cs.sum_ms(A, B, C, p)
        got = (cs.sum_ms_bruteforce(A, B, C, p), cs.sum_ms_root_bruteforce(A, B, C, p))
        return None if got == (want, want) else f"closed {want} != direct {got}"

    return _run("restricted triple sum", p, _triples(p, samples, rng), test)


def check_triple_sum(p: int, samples=None, rng=None) -> CheckResult:
    def test(A, B, C):
        a, b = cs.sum_mm(A, B, C, p), cs.sum_mm_bruteforce(A, B, C, p)
        return None if a == b else f"closed {a} != direct {b}"

    return _run("triple character sum", p, _triples(p, samples, rng), test)


def check_sqrt_pm(p: int, samples=None, rng=None) -> CheckResult:
    """Square roots of units mod p^2 come in a single +- pair."""
    q = p * p

    def test(n):
        roots = [s for s in range(q) if s * s % q == n]
        s = qs.sqrt_mod(n, q)
        if not roots:
            return None if s is None else f"sqrt_mod returned {s} for a nonsquare"
        if s not in roots:
            return f"sqrt_mod returned {s}"
        if sorted(roots) != sorted({s, -s % q}):
            return f"roots {roots} are not +-{s}"
        return None

    return _run("square roots mod p^2", p, ((n,) for n in range(q) if n % p), test)


def check_R_mod_p(p: int, samples=None, rng=None) -> CheckResult:
    q = p * p

    def test(A, B, C):
        if A % p == 0:
            return None
        f = qs.QuadPoly(A, B, C)
        for k in (1, 2):
            literal = tuple(r for r in range(p) if qs.satisfies_R(f, r, k, "p", p))
            closed = qs.residues_R_mod_p(f, k, p)
            if literal != closed:
                return f"R({k}): literal {literal} != closed {closed}"
            # the predicate only depends on r mod p
            for r in range(p):
                if qs.satisfies_R(f, r, k, "p", p) != qs.satisfies_R(f, r + p * 7, k, "p", p):
                    return f"R({k}) not well defined at r={r}"
        return None

    return _run("R(k) mod p", p, _triples(q, samples, rng), test)


def check_roots_mod_p2(p: int, samples=None, rng=None) -> CheckResult:
    q = p * p

    def test(A, B, C):
        if A % p == 0:
            return None
        f = qs.QuadPoly(A, B, C)
        got = qs.roots_mod_p2(f, p).elements
        want = qs.roots_mod_p2_bruteforce(f, p)
        return None if got == want else f"closed {got} != direct {want}"

    return _run("roots mod p^2", p, _triples(q, samples, rng), test)


def _root_R_inputs(p: int, samples, rng):
    q = p * p
    # all residues mod p^2, then integer families reaching p^4 | D
    yield from _triples(q, samples, rng)
    if samples is None:
        for A in range(1, p):
            for B in range(q):
                for C in range(p**4):
                    yield (A, B, C)
    else:
        for _ in range(samples):
            yield (rng.randrange(1, p), rng.randrange(q), rng.randrange(p**4))


def check_R_at_roots(p: int, samples=None, rng=None) -> CheckResult:
    q = p * p

    def test(A, B, C):
        if A % p == 0:
            return None
        f = qs.QuadPoly(A, B, C)
        for r in qs.roots_mod_p2_bruteforce(f, p):
            for k in (1, 2):
                literal = qs.satisfies_R(f, r, k, "p2", p)
                if literal != qs.root_R_closed_form(f, r, k, p):
                    return f"R({k}) at r={r}: literal {literal}"
                if literal != qs.satisfies_R(f, r + q, k, "p2", p):
                    return f"R({k}) not well defined at r={r}"
        return None

    return _run("R(k) at roots mod p^2", p, _root_R_inputs(p, samples, rng), test)


ALL_CHECKS = (
    check_quadratic_sum,
    check_linear_product,
    check_sqrt_pm,
    check_R_mod_p,
    check_roots_mod_p2,
    check_R_at_roots,
    check_restricted_sum,
    check_triple_sum,
)


def run_all(primes: Iterable[int], samples: int | None = None, seed: int = 0) -> list[CheckResult]:
    """Run every check for every prime; ``samples=None`` means exhaustive."""
    rng = random.Random(seed)
    out = []
    for p in primes:
        cs.check_odd_prime(p)
        for check in ALL_CHECKS:
            out.append(check(p, samples, rng))
    return out
