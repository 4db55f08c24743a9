"""Command-line entry point.

Exit codes: 0 equivalent / success, 1 not equivalent, 2 usage or input error,
3 budget exceeded. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from cfequiv import fastcheck, oracle
from cfequiv.encoding import describe_key, expand_key
from cfequiv.errors import BudgetExceeded, InstanceError
from cfequiv.genbench import (
    GenParams,
    bench_scaling,
    gen_random,
    perturb_equivalent,
    perturb_inequivalent,
)
from cfequiv.instance import Instance, format_word, int_to_decimal, parse_word, read_instance, serialize_instance
from cfequiv.words import CountingFunction, difference, evaluate, input_size

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

# witnesses expanding to more elementary terms than this are printed as keys only
_EXPAND_LIMIT = 16


def _load(path) -> Instance:
    return read_instance(path)


def _side(inst: Instance, side: str) -> CountingFunction:
    if side == "f":
        return inst.f
    if side == "g":
        return inst.g
    return difference(inst.f, inst.g)


def _expansion(key, rank) -> str | None:
    n = getattr(key, "K", 1) * getattr(key, "M", 1)
    if n > _EXPAND_LIMIT:
        return None
    terms = expand_key(key, rank)
    return " + ".join(f"rho({format_word(w)})" for _, w in terms)


def _report(equivalent: bool, witness_desc, witness_coef, args, expansion=None) -> int:
    if args.json:
        out = {"equivalent": equivalent, "witness": None}
        if not equivalent and witness_desc is not None:
            out["witness"] = {"element": witness_desc, "coefficient": witness_coef}
            if expansion:
                out["witness"]["expansion"] = expansion
        print(json.dumps(out, sort_keys=True))
    else:
        print("EQUIVALENT" if equivalent else "NOT_EQUIVALENT")
        if not equivalent and args.witness and witness_desc is not None:
            print(f"witness: {int_to_decimal(witness_coef)} * {witness_desc}")
            if expansion:
                print(f"  where {witness_desc} = {expansion}")
    return EXIT_OK if equivalent else EXIT_NOT_EQUIVALENT


def cmd_check(args) -> int:
    inst = _load(args.file)
    v = fastcheck.check_equivalent(inst.f, inst.g, backend=args.backend)
    if v.equivalent:
        return _report(True, None, None, args)
    w = v.witness
    return _report(False, w.describe(), w.coefficient, args, _expansion(w.element, inst.spec.rank))


def cmd_oracle(args) -> int:
    inst = _load(args.file)
    size = input_size(difference(inst.f, inst.g))
    if args.max_size is not None and size > args.max_size:
        raise BudgetExceeded(f"input size {size} exceeds --max-size {args.max_size}")
    v = oracle.oracle_equivalent(inst.f, inst.g, budget=args.budget)
    if v.equivalent:
        return _report(True, None, None, args)
    word, coef = v.witness
    return _report(False, f"rho({format_word(word)})", coef, args)


def cmd_eval(args) -> int:
    inst = _load(args.file)
    try:
        word = parse_word(args.word.split(), inst.spec.rank)
    except InstanceError as e:
        raise InstanceError(e.code, 0, f"--word: {e.message}") from None
    print(int_to_decimal(evaluate(_side(inst, args.side), word)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    inst = _load(args.file)
    fn = _side(inst, args.side)
    red = fastcheck.reduce_function(fn, backend=args.backend)
    for key, coef in red.elements():
        part = "V" if hasattr(key, "K") else "U"
        print(f"{part} {int_to_decimal(coef)} {describe_key(key)}")
    return EXIT_OK


def cmd_gen(args) -> int:
    p = GenParams(args.rank, args.terms, args.max_len, args.coef_bits, args.seed, args.a1_bias)
    f = gen_random(p)
    if args.mode == "equivalent":
        g = perturb_equivalent(f, args.seed + 1, args.relations)
    elif args.mode == "inequivalent":
        g = perturb_inequivalent(perturb_equivalent(f, args.seed + 1, args.relations), args.seed + 2)
    else:
        g = gen_random(GenParams(args.rank, args.terms, args.max_len, args.coef_bits, args.seed + 1, args.a1_bias))
    data = serialize_instance(Instance(f.spec, f, g))
    if args.output in (None, "-"):
        sys.stdout.write(data.decode("utf-8"))
    else:
        with open(args.output, "wb") as fh:
            fh.write(data)
    return EXIT_OK


def cmd_scan(args) -> int:
    inst = _load(args.file)
    print(oracle.exhaustive_bound_scan(inst.f, inst.g, args.max_len))
    return EXIT_OK


def cmd_bench(args) -> int:
    report = bench_scaling(
        args.sizes, seed=args.seed, rank=args.rank, reps=args.reps, oracle_cutoff=args.oracle_cutoff, backend=args.backend
    )
    print(report.table())
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cfequiv", description="Equivalence of counting functions on free monoids.")
    sub = ap.add_subparsers(dest="command", required=True)

    def verdict_flags(p):
        p.add_argument("file")
        p.add_argument("--witness", action="store_true", help="print a basis element with nonzero coefficient")
        p.add_argument("--json", action="store_true", help='emit {"equivalent": ..., "witness": ...}')

    p = sub.add_parser("check", help="linear-time equivalence check")
    verdict_flags(p)
    p.add_argument("--backend", choices=("hash", "radix"), default="hash")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("oracle", help="brute-force equivalence check by basis rewriting")
    verdict_flags(p)
    p.add_argument("--max-size", type=int, default=10**4, help="refuse inputs above this size (default 10000)")
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET, help="cap on intermediate terms")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("eval", help="evaluate f or g at a word")
    p.add_argument("file")
    p.add_argument("--side", choices=("f", "g"), default="f")
    p.add_argument("--word", required=True, help='space-separated letters, or "e"')
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", help="print the reduced basis representation")
    p.add_argument("file")
    p.add_argument("--side", choices=("f", "g", "diff"), default="f")
    p.add_argument("--backend", choices=("hash", "radix"), default="hash")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--terms", type=int, default=8)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--coef-bits", type=int, default=16)
    p.add_argument("--a1-bias", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("equivalent", "inequivalent", "random"), default="equivalent")
    p.add_argument("--relations", type=int, default=3, help="extension relations added to g")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("scan", help="max |f - g| over all words up to a length")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=8)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("bench", help="scaling benchmark of the fast check")
    p.add_argument("--sizes", type=int, nargs="+", default=[10**4, 4 * 10**4, 16 * 10**4, 64 * 10**4])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--oracle-cutoff", type=int, default=10**4)
    p.add_argument("--backend", choices=("hash", "radix"), default="hash")
    p.add_argument("--csv", help="also write the report as CSV")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
