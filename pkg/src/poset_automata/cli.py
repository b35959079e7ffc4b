"""Command-line front end.

Exit codes: 0 success, 1 meaningful negative (non-universal, class mismatch
against --expect, failed selftest), 2 input error, 3 resource-cap error.
``-`` names stdin for any file argument.  Resource caps come from the
POSET_AUTOMATA_CAPS environment variable (comma-separated key=value pairs).
"""

from __future__ import annotations

import argparse
import sys

from .caps import default_caps
from .classify import LABELS, classify, format_report
from .core import parse_automaton, print_automaton
from .dtm import parse_dtm
from .errors import InputError, ResourceLimitError
from .hardness import build_aknn, dag_gadget, parse_dag, trim_aknn, w_word
from .reduction import reduce as tm_reduce
from .selftest import run_selftest
from .universality import (format_result, universal, universal_antichain,
                           universal_brute, universal_sponfa, universal_subset,
                           universal_unary_po)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poset-automata",
        description="Partially ordered NFA toolkit: classify, decide "
                    "universality, generate hardness constructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="structural class report for an automaton")
    p.add_argument("file")
    p.add_argument("--expect", choices=LABELS,
                   help="exit 1 unless the derived class matches")

    p = sub.add_parser("universal", help="decide whether L(A) is all words")
    p.add_argument("file")
    p.add_argument("--method", default="auto",
                   choices=("auto", "sponfa", "unary", "antichain", "subset", "brute"))
    p.add_argument("--max-len", type=int, default=None,
                   help="word-length bound for --method brute")

    p = sub.add_parser("gen-word", help="print the word W_{k,n}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("gen-aknn", help="generate the ptNFA A_{k,n}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trim", action="store_true",
                   help="emit the trimmed rpoNFA variant instead")

    p = sub.add_parser("gen-trim", help="generate the trimmed rpoNFA variant of A_{k,n}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("gen-dag", help="unary reachability gadget for a DAG file")
    p.add_argument("file")

    p = sub.add_parser("reduce", help="space-bounded DTM word problem -> ptNFA universality")
    p.add_argument("--tm", required=True, help="machine description file")
    p.add_argument("--input", required=True,
                   help="input word: symbols separated by spaces or commas; '' for empty")
    p.add_argument("--space", type=int, required=True, help="space bound p(|x|)")

    p = sub.add_parser("selftest", help="run the cross-module oracle suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    return parser


def _cmd_classify(args) -> int:
    a = parse_automaton(_read(args.file))
    report = classify(a)
    sys.stdout.write(format_report(a, report))
    if args.expect and report.label != args.expect:
        return 1
    return 0


def _cmd_universal(args) -> int:
    a = parse_automaton(_read(args.file))
    caps = default_caps()
    if args.method == "auto":
        res = universal(a, caps)
    elif args.method == "sponfa":
        res = universal_sponfa(a)
    elif args.method == "unary":
        res = universal_unary_po(a)
    elif args.method == "antichain":
        res = universal_antichain(a, caps)
    elif args.method == "subset":
        res = universal_subset(a, caps)
    else:
        max_len = args.max_len
        if max_len is None:
            max_len = min(2 ** a.n_states, caps.enum_len)
        res = universal_brute(a, max_len, caps)
    sys.stdout.write(format_result(a, res))
    return 0 if res.universal else 1


def _cmd_gen_word(args) -> int:
    word = w_word(args.k, args.n)
    print(" ".join(f"a{x + 1}" for x in word))
    return 0


def _cmd_gen_aknn(args, trim: bool) -> int:
    a = build_aknn(args.k, args.n)
    if trim:
        a = trim_aknn(a, args.k, args.n)
    sys.stdout.write(print_automaton(a))
    return 0


def _cmd_gen_dag(args) -> int:
    gadget = dag_gadget(parse_dag(_read(args.file)))
    sys.stdout.write(print_automaton(gadget))
    return 0


def _cmd_reduce(args) -> int:
    machine = parse_dtm(_read(args.tm))
    word = [tok for tok in args.input.replace(",", " ").split() if tok]
    artifact = tm_reduce(machine, word, args.space, default_caps())
    header = [
        f"reduction: n={artifact.n} space={artifact.pval} "
        f"pi-letters={len(artifact.automaton.alphabet)}",
    ]
    header.extend(f"component {name}: offset={off} states={count}"
                  for (name, off, count) in artifact.components)
    header.append("attachment states: " + " ".join(artifact.attachment_states))
    sys.stdout.write(print_automaton(artifact.automaton, header=header))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "universal":
            return _cmd_universal(args)
        if args.command == "gen-word":
            return _cmd_gen_word(args)
        if args.command == "gen-aknn":
            return _cmd_gen_aknn(args, trim=args.trim)
        if args.command == "gen-trim":
            return _cmd_gen_aknn(args, trim=True)
        if args.command == "gen-dag":
            return _cmd_gen_dag(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
        if args.command == "selftest":
            return 0 if run_selftest(args.seed, args.samples) else 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    raise AssertionError("unreachable")


if __name__ == "__main__":
    raise SystemExit(main())
