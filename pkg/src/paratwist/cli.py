"""Command-line interface.

Exit codes: 0 success, 1 internal invariant violation, 2 input or level
error, 3 missing data, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import checks
from .charsum import check_odd_prime
from .coeffs import CoeffTable, LinearForm, format_rational, ingest
from .errors import (
    InputError,
    InternalInvariantError,
    MissingCoefficient,
    MissingJacobiCoefficient,
    ParatwistError,
)
from .maass import curated_sweep, ingest_jacobi, random_sweep, verify_maass_vanishing
from .qform import HalfIntegralForm, RationalMatrix2, reduce_gl2z
from .twist import D_PART_VARIANTS, TwistContext, a_chi, a_chi_symbolic, classify, symmetry_defect

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_MISSING, EXIT_VERIFY = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _form(text: str) -> HalfIntegralForm:
    try:
        return HalfIntegralForm.parse(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _odd_prime(text: str) -> int:
    try:
        p = int(text)
        check_odd_prime(p)
    except (ValueError, InputError):
        raise argparse.ArgumentTypeError(f"p must be an odd prime, got {text!r}")
    return p


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _prime_list(text: str) -> list[int]:
    ps = _int_list(text)
    for p in ps:
        _odd_prime(str(p))
    return ps


def _key_str(key) -> str:
    return ",".join(map(str, key))


def _value_str(x) -> str:
    if isinstance(x, LinearForm):
        return " ".join(f"{c}*a[{_key_str(k)}]" for k, c in x.items()) or "0"
    return str(Fraction(x))


def cmd_classify(args) -> int:
    label = classify(args.form, TwistContext(args.N, args.k, args.p))
    print(label.describe() if args.verbose else str(label))
    return EXIT_OK


def _report_dict(rep) -> dict:
    return {
        "case": rep.case.case,
        "value": _value_str(rep.value) if rep.symbolic else format_rational(Fraction(rep.value)),
        "w_chi_factor": True,
        "consumed": [list(k) for k in rep.consumed_keys],
        "branches": dict(sorted(rep.notes.items())),
        "approximate": rep.approximate,
    }


def _print_report(rep, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_report_dict(rep)))
        return
    print(rep.case.describe())
    tag = " (approximate: missing coefficients taken as zero)" if rep.approximate else ""
    print(f"a_chi = {_value_str(rep.value)}{tag}")
    print("coefficient of the twist = W(chi) * a_chi")
    print("consumed: " + " ".join(_key_str(k) for k in rep.consumed_keys))
    for name, note in sorted(rep.notes.items()):
        print(f"{name}: {note}")


def cmd_twist(args) -> int:
    ctx = TwistContext(args.N, args.k, args.p, args.d_part)
    if args.coeffs is None:
        rep = a_chi_symbolic(args.form, ctx)
    else:
        table = ingest(args.coeffs)
        rep = a_chi(args.form, ctx, table, assume_zero_outside_box=args.assume_zero_outside_box)
    _print_report(rep, args.format)
    return EXIT_OK


def cmd_support(args) -> int:
    rep = a_chi_symbolic(args.form, TwistContext(args.N, args.k, args.p, args.d_part))
    for key in rep.consumed_keys:
        print(_key_str(key))
    return EXIT_OK


def cmd_reduce(args) -> int:
    res = reduce_gl2z(args.form)
    (a, b), (c, d) = res.transform
    print(f"{res.reduced} det_sign={res.det_sign:+d} transform=[[{a},{b}],[{c},{d}]]")
    return EXIT_OK


def cmd_lemma_check(args) -> int:
    samples = None if args.exhaustive or args.samples is None else args.samples
    results = checks.run_all(args.p, samples=samples, seed=args.seed)
    for r in results:
        status = "ok" if r.ok else "MISMATCH"
        print(f"p={r.p} {r.name}: {status} ({r.cases} inputs)")
        if not r.ok:
            print(f"first counterexample: {r.counterexample}")
            return EXIT_VERIFY
    print("all character-sum and root-structure identities verified")
    return EXIT_OK


def cmd_maass_vanish(args) -> int:
    total = 0
    for p in args.p:
        if args.sweep == "default":
            forms = curated_sweep(p)
        else:
            forms = [("random", S) for S in random_sweep(p, args.count, seed=args.seed)]
        for k in args.k:
            for profile, S in forms:
                rep = verify_maass_vanishing(S, p, k)
                total += 1
                if args.verbose:
                    print(f"p={p} k={k} {S} [{profile}] terms={rep.support_size}: "
                          + ("zero" if rep.vanishes else "NONZERO"))
                if not rep.vanishes:
                    print(f"nonvanishing at p={p} k={k} S={S} ({profile}): {rep.residual!r}")
                    return EXIT_VERIFY
    print(f"all branches vanish ({total} cases)")
    return EXIT_OK


def cmd_symmetry_check(args) -> int:
    # exploratory: a_chi(S[A]) against det(A)^k a_chi(S) for random S and A
    rng = random.Random(args.seed)
    total = 0
    for p in args.p:
        # upper triangular moves only: level N > 1 keys are translation-normalized
        mats = [RationalMatrix2(1, 1, 0, 1), RationalMatrix2(1, -1, 0, 1),
                RationalMatrix2(1, 0, 0, -1), RationalMatrix2(-1, 0, 0, 1)]
        forms = random_sweep(p, args.count, seed=args.seed, level=args.N)
        for k in args.k:
            ctx = TwistContext(args.N, k, p, args.d_part)
            for S in forms:
                A = RationalMatrix2.identity()
                for _ in range(rng.randint(1, 4)):
                    A = A @ rng.choice(mats)
                total += 1
                defect = symmetry_defect(S, ctx, A)
                if not defect.is_zero():
                    (a, b), (c, d) = A.rows()
                    print(f"defect at p={p} k={k} S={S} A=[[{a},{b}],[{c},{d}]]: {defect!r}")
                    return EXIT_VERIFY
    print(f"a_chi(S[A]) = det(A)^k a_chi(S) held in all {total} cases")
    return EXIT_OK


def cmd_ingest_validate(args) -> int:
    if args.jacobi:
        k, C = ingest_jacobi(args.path)
        print(f"valid Jacobi coefficient file: k={k}, {len(C.values)} entries")
    else:
        table: CoeffTable = ingest(args.path)
        print(f"valid coefficient file: N={table.N} k={table.k}, {len(table)} entries")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paratwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def twist_args(sp, need_k=True):
        sp.add_argument("--form", type=_form, required=True, help="alpha,two_beta,gamma")
        sp.add_argument("--p", type=_odd_prime, required=True)
        sp.add_argument("--N", type=int, default=1)
        sp.add_argument("--k", type=int, required=need_k, default=2)

    sp = sub.add_parser("classify", help="print the case of a form")
    twist_args(sp, need_k=False)
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=cmd_classify)

    for name, func, help_ in (
        ("twist", cmd_twist, "compute a_chi(S)"),
        ("support", cmd_support, "list the coefficient keys a_chi(S) needs"),
    ):
        sp = sub.add_parser(name, help=help_)
        twist_args(sp)
        sp.add_argument("--d-part", choices=D_PART_VARIANTS, default="chi")
        if name == "twist":
            sp.add_argument("--coeffs", help="coefficient file; omit for symbolic output")
            sp.add_argument("--assume-zero-outside-box", action="store_true")
            sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.set_defaults(func=func)

    sp = sub.add_parser("reduce", help="Gauss-reduce a form")
    sp.add_argument("--form", type=_form, required=True)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("lemma-check", help="compare closed forms with direct enumeration")
    sp.add_argument("--p", type=_prime_list, default=[3, 5, 7])
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_lemma_check)

    sp = sub.add_parser("maass-vanish", help="check that twists of Maass lifts vanish")
    sp.add_argument("--p", type=_prime_list, default=[3, 5])
    sp.add_argument("--k", type=_int_list, default=[10, 20])
    sp.add_argument("--sweep", choices=("default", "random"), default="default")
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=cmd_maass_vanish)

    sp = sub.add_parser("symmetry-check", help="test a_chi(S[A]) = det(A)^k a_chi(S) on random inputs")
    sp.add_argument("--p", type=_prime_list, default=[3, 5])
    sp.add_argument("--k", type=_int_list, default=[19, 20])
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--d-part", choices=D_PART_VARIANTS, default="chi")
    sp.set_defaults(func=cmd_symmetry_check)

    sp = sub.add_parser("ingest-validate", help="validate a coefficient file")
    sp.add_argument("path")
    sp.add_argument("--jacobi", action="store_true", help="the file holds Jacobi coefficients")
    sp.set_defaults(func=cmd_ingest_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MissingCoefficient, MissingJacobiCoefficient) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, ParatwistError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
