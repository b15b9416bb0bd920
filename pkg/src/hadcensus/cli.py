"""Batch command-line front end.

Subcommands: build, verify, search, census, riesel, pi, psi.
Exit codes: 0 success, 1 I/O or parse failure, 2 prime search exhausted,
3 verification failure, 4 covering gap.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import census, construct, solver
from .errors import CoverageGap, NoPrimeInRange, PmParseError, WindowError
from .jsonio import canonical_json
from .matrix import MAX_ORDER_DEFAULT, is_hadamard, read_matrix, write_matrix

EXIT_OK = 0
EXIT_IO = 1
EXIT_NO_PRIME = 2
EXIT_NOT_HADAMARD = 3
EXIT_COVERAGE_GAP = 4


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _write_text(path, text):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def cmd_build(args):
    try:
        plan, matrix = construct.hadamard_for(
            args.k, args.epsilon, max_order=args.max_order,
            allow_probable=not args.strict_primality,
        )
    except NoPrimeInRange as exc:
        print(f"no prime in window m = {exc.m_lo}..{exc.m_hi} for k = {exc.k}",
              file=sys.stderr)
        return EXIT_NO_PRIME
    order = plan.claimed_order
    exponent = (order // args.k).bit_length() - 1
    if args.out:
        _write_text(args.out, canonical_json(plan.to_json_dict()))
        if matrix is not None:
            write_matrix(matrix, args.out + ".pm")
    print(f"order {order} = 2^{exponent} * {args.k} "
          f"(certified={plan.certified})")
    return EXIT_OK


def cmd_verify(args):
    try:
        matrix = read_matrix(args.path)
    except PmParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_IO
    ok = is_hadamard(matrix)
    print(f"order {matrix.n}: {'Hadamard' if ok else 'NOT Hadamard'}")
    return EXIT_OK if ok else EXIT_NOT_HADAMARD


def cmd_search(args):
    result = solver.find_m(args.k, args.epsilon,
                           allow_probable=not args.strict_primality)
    text = canonical_json(result.to_json_dict())
    if args.out:
        _write_text(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK if result.found_m is not None else EXIT_NO_PRIME


def cmd_census(args):
    try:
        report = census.density_report(
            args.x, args.epsilon, allow_probable=not args.strict_primality
        )
    except WindowError as exc:
        print(f"window error: {exc}", file=sys.stderr)
        return EXIT_IO
    text = canonical_json(report.to_json_dict())
    if args.out:
        _write_text(args.out, text)
        if args.format == "csv":
            _write_text(args.out + ".csv", report.to_csv())
    sys.stdout.write(text)
    return EXIT_OK


def cmd_riesel(args):
    try:
        cert = solver.riesel_certificate(
            args.k0, args.step, args.cover,
            spot_check_r=range(args.r_max + 1),
            spot_check_m=range(args.m_max + 1),
        )
    except CoverageGap as exc:
        print(f"coverage gap: {exc}", file=sys.stderr)
        return EXIT_COVERAGE_GAP
    text = canonical_json(cert.to_json_dict())
    if args.out:
        _write_text(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_pi(args):
    count = census.pi_count(args.x, args.q, args.a,
                            segment_size=args.segment_size)
    print(count)
    return EXIT_OK


def cmd_psi(args):
    value = census.psi(args.x, args.q, args.a)
    print(f"{value:.9g}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hadcensus",
        description="Hadamard matrix constructions and prime-density censuses",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="output file path")
        p.add_argument("--strict-primality", action="store_true",
                       help="reject probable primes")

    p = sub.add_parser("build", help="construct a Hadamard matrix for odd k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--max-order", type=int, default=MAX_ORDER_DEFAULT)
    add_common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check a .pm file for the Hadamard property")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="find the smallest window exponent m")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    add_common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("census", help="full density report for (x, epsilon)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    add_common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("riesel", help="covering-set certificate for a family")
    p.add_argument("--k0", type=int, default=509203)
    p.add_argument("--step", type=int, default=11184810)
    p.add_argument("--cover", type=int, nargs="+",
                   default=[3, 5, 7, 13, 17, 241])
    p.add_argument("--r-max", type=int, default=9)
    p.add_argument("--m-max", type=int, default=500)
    add_common(p)
    p.set_defaults(func=cmd_riesel)

    p = sub.add_parser("pi", help="count primes <= x congruent to a mod q")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--segment-size", type=int,
                   default=census.SEGMENT_SIZE_DEFAULT)
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("psi", help="Chebyshev psi(x; q, a)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=cmd_psi)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
