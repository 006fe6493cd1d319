"""Command-line entry point.

Exit status: 0 on success, 1 on usage errors, 2 when the data cannot
support the request.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .arith import is_prime
from .errors import DataError, UnsupportedWeight, UsageError
from .formats import atomic_write, cached_cuspform, dump_qexp, emit_report, ingest_newform
from .galois import IRREDUCIBILITY_TABLE, reducible_primes, table_discrepancies
from .newform import DEFAULT_BOUND, from_qexpansion
from .qseries import LEVEL_ONE_WEIGHTS
from .sieve import classify, local_screen_unramified

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _prime_list(text):
    items = [x.strip() for x in text.split(",") if x.strip()]
    try:
        ps = [int(x) for x in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}") from None
    for p in ps:
        if not is_prime(p):
            raise argparse.ArgumentTypeError(f"{p} is not prime")
    return ps


def _weight(text):
    k = int(text)
    if k not in LEVEL_ONE_WEIGHTS:
        raise UnsupportedWeight(k, LEVEL_ONE_WEIGHTS)
    return k


def build_parser():
    p = _Parser(prog="defsieve", description="Obstruction sieve for deformations of integral newforms.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("qexp", help="emit (and cache) a level-one q-expansion")
    q.add_argument("--weight", required=True, type=int)
    q.add_argument("--terms", required=True, type=int)
    q.add_argument("-o", "--output")

    e = sub.add_parser("eigen", help="print the Hecke eigenvalue a_p")
    e.add_argument("--weight", required=True, type=int)
    e.add_argument("--prime", required=True, type=int)

    r = sub.add_parser("reducible", help="detect primes with reducible mod-ell representation")
    r.add_argument("--weight", required=True, type=int)
    r.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    r.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("screen", help="unramified local screen at p")
    s.add_argument("--weight", required=True, type=int)
    s.add_argument("--prime", required=True, type=int)
    s.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("classify", help="classify primes ell as (un)obstructed")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--weight", type=int)
    src.add_argument("--ingest", metavar="FILE")
    c.add_argument("--set", type=_prime_list, default=[], help='auxiliary primes, e.g. "3,5" (default empty)')
    c.add_argument("--lmin", type=int, default=2)
    c.add_argument("--lmax", type=int, default=1000)
    c.add_argument("--format", choices=("text", "json"), default="json")
    c.add_argument("--detector-bound", type=int, default=None)
    c.add_argument("--timing", action="store_true", help="add wall-clock timing to the metadata")
    c.add_argument("-o", "--output")
    return p


def _builtin(k, bound):
    return from_qexpansion(cached_cuspform(k, bound + 1), k, bound)


def _emit(data: bytes, output=None):
    if output:
        atomic_write(output, data.decode("utf-8"))
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_qexp(args):
    k = _weight(args.weight)
    if args.terms < 1:
        raise UsageError("--terms must be positive")
    f = cached_cuspform(k, args.terms)
    _emit(dump_qexp(f, k).encode("utf-8"), args.output)


def cmd_eigen(args):
    k = _weight(args.weight)
    if not is_prime(args.prime):
        raise UsageError(f"{args.prime} is not prime")
    f = cached_cuspform(k, max(args.prime + 1, 2))
    print(f[args.prime])


def cmd_reducible(args):
    k = _weight(args.weight)
    if args.bound < 200:
        raise UsageError("--bound must be at least 200")
    data = _builtin(k, args.bound)
    certs = reducible_primes(data, args.bound)
    primes = [c.ell for c in certs]
    disc = table_discrepancies(k, primes)
    if args.format == "json":
        doc = {
            "weight": k,
            "bound": args.bound,
            "primes": primes,
            "certificates": [c.to_dict() for c in certs],
            "table": sorted(IRREDUCIBILITY_TABLE[k]),
            "discrepancies": disc,
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
        return
    print(",".join(map(str, primes)))
    for c in certs:
        print(f"  ell={c.ell}: a_p = p^{c.exponent_a} + p^{c.exponent_b} mod {c.ell} for all p <= {c.tested_bound}")
    if disc:
        print("discrepancies with the table:")
        for d in disc:
            print(f"  {d['kind']}: {d['ell']}")


def cmd_screen(args):
    k = _weight(args.weight)
    if not is_prime(args.prime):
        raise UsageError(f"{args.prime} is not prime")
    data = _builtin(k, max(args.prime, 2))
    rep = local_screen_unramified(data, args.prime)
    if args.format == "json":
        doc = rep.to_dict()
        doc["weight"] = k
        print(json.dumps(doc, sort_keys=True, indent=2))
        return
    fac = str(rep.factorization) if rep.factorization else f"partial, unfactored cofactor {rep.residual}"
    print(f"p={rep.p}  k={k}  a_p={rep.a_p}")
    print(f"screen integer: {rep.screen_integer} = {fac}")
    print(f"primes dividing p-1: {','.join(map(str, rep.eps_candidates)) or '-'}")
    print(f"candidates: {','.join(map(str, rep.candidates))}")


def cmd_classify(args):
    S = sorted(set(args.set))
    t0 = time.perf_counter()
    if args.ingest:
        data = ingest_newform(args.ingest)
        if data.ramanujan_violations:
            ps = ",".join(str(p) for p, _ in data.ramanujan_violations)
            print(f"warning: eigenvalues violate the Ramanujan bound at p={ps}; data is suspect", file=sys.stderr)
    else:
        k = _weight(args.weight)
        data = _builtin(k, max(2 * args.lmax, DEFAULT_BOUND, max(S, default=0)))
    c = classify(data, S, args.lmin, args.lmax, detector_bound=args.detector_bound)
    timing = {"seconds": round(time.perf_counter() - t0, 3)} if args.timing else None
    _emit(emit_report(c, args.format, timing), args.output)


COMMANDS = {
    "qexp": cmd_qexp,
    "eigen": cmd_eigen,
    "reducible": cmd_reducible,
    "screen": cmd_screen,
    "classify": cmd_classify,
}


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"defsieve: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"defsieve: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
