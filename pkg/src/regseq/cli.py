"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for
usage or file-format errors.  Tables go to stdout as TSV; diagnostics
go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import factors, sequences, theorems
from . import linrep as lr
from . import relations as rel
from .words import text


class UsageError(Exception):
    pass


def _rep_for(args) -> lr.LinRep:
    if args.linrep:
        return lr.load(args.linrep)
    if args.name == "thue-morse":
        return lr.tm_fixture()
    raise UsageError("--method linrep needs --linrep FILE for this sequence")


def _count(args, n: int):
    if args.method == "linrep":
        return lr.eval(_rep_for(args), n)
    return factors.count_unbordered(args.name, n)


def cmd_seq_gen(args, out):
    out.write(text(sequences.sequence_prefix(args.name, args.length)) + "\n")
    return 0


def cmd_seq_eval(args, out):
    dfao = sequences.load_dfao(args.dfao)
    out.write(f"{sequences.dfao_eval(dfao, args.n)}\n")
    return 0


def cmd_unbordered_count(args, out):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    out.write(f"{lr.render(_count(args, args.n))}\n")
    return 0


def cmd_unbordered_table(args, out):
    out.write("n\tcount\tsource\n")
    # the empty word is the only length-0 factor; declared, never computed
    out.write("0\t1\tbase\n")
    for n in range(1, args.max + 1):
        out.write(f"{n}\t{lr.render(_count(args, n))}\t{args.method}\n")
    return 0


def cmd_linrep_eval(args, out):
    r = lr.load(args.file)
    out.write(lr.render(lr.eval(r, args.n)) + "\n")
    return 0


def _mode(args):
    return {"full": rel.FULL, "zero": rel.ZERO_PATTERN, "subspace": rel.SUBSPACE}[args.mode]


def cmd_relations_discover(args, out):
    r = lr.load(args.file)
    mode = _mode(args)
    depth = args.depth if mode == rel.SUBSPACE else None
    system = rel.discover(r, mode, depth=depth, max_len=args.max_len)
    out.write(system.render(args.symbol) + "\n")
    comp = rel.check_completeness(system)
    print(f"basis: {', '.join(t.label(args.symbol) for t in system.basis_terms)}", file=sys.stderr)
    print(comp.describe(), file=sys.stderr)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(system.to_dict(), fh, indent=1)
            fh.write("\n")
    return 0 if system.complete and comp.complete else 1


def cmd_relations_verify(args, out):
    r = lr.load(args.file)
    try:
        with open(args.identity) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise lr.FormatError(f"{args.identity}: {e}") from None
    ident = rel.Identity.from_dict(data, r.k)
    base = rel.parse_base_values(data.get("base_values", {}))
    for item in args.base or []:
        n, _, x = item.partition("=")
        base[int(n)] = Fraction(x)
    report = rel.verify(r, ident, numeric_extent=args.numeric_extent, base_values=base,
                        max_depth=args.max_depth)
    out.write(report.describe(args.symbol) + "\n")
    return 0 if report.ok else 1


def cmd_theorems_check(args, out):
    report = theorems.run_suite(args.suite, args.max, fault=args.self_test)
    out.write(report.to_text() + "\n")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json() + "\n")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="regseq",
        description="Automatic and k-regular sequences: evaluation, unbordered factors, recurrences.",
        epilog="REGSEQ_MAX_PREFIX overrides the prefix cap for brute-force factor enumeration.",
    )
    top = p.add_subparsers(dest="group", required=True)

    seq = top.add_parser("seq", help="generate or evaluate sequences").add_subparsers(dest="cmd", required=True)
    g = seq.add_parser("gen", help="print a prefix of a builtin sequence")
    g.add_argument("--name", required=True, help="thue-morse | rudin-shapiro | period-doubling:K")
    g.add_argument("--length", type=int, required=True)
    g.set_defaults(func=cmd_seq_gen)
    e = seq.add_parser("eval", help="evaluate a DFAO (JSON file) at n")
    e.add_argument("--dfao", required=True)
    e.add_argument("--n", type=int, required=True)
    e.set_defaults(func=cmd_seq_eval)

    unb = top.add_parser("unbordered", help="count unbordered factors").add_subparsers(dest="cmd", required=True)
    for name, func in (("count", cmd_unbordered_count), ("table", cmd_unbordered_table)):
        c = unb.add_parser(name)
        c.add_argument("--name", required=True, help="sequence name")
        if name == "count":
            c.add_argument("--n", type=int, required=True, help="factor length")
        else:
            c.add_argument("--max", type=int, required=True, help="largest length in the table")
        c.add_argument("--method", choices=("brute", "linrep"), default="brute")
        c.add_argument("--linrep", help="linear representation file for --method linrep")
        c.set_defaults(func=func)

    lin = top.add_parser("linrep", help="linear representations").add_subparsers(dest="cmd", required=True)
    c = lin.add_parser("eval", help="evaluate v M_(n)_k w")
    c.add_argument("--file", required=True)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_linrep_eval)

    rels = top.add_parser("relations", help="kernel relations").add_subparsers(dest="cmd", required=True)
    c = rels.add_parser("discover", help="find a closed recurrence system")
    c.add_argument("--file", required=True)
    c.add_argument("--mode", choices=("full", "zero", "subspace"), default="full")
    c.add_argument("--depth", type=int, default=1, help="subspace depth L (subspace mode)")
    c.add_argument("--max-len", type=int, default=16)
    c.add_argument("--out", help="write the system as JSON")
    c.add_argument("--symbol", default="g", help="sequence name used when printing")
    c.set_defaults(func=cmd_relations_discover)
    c = rels.add_parser("verify", help="verify one identity")
    c.add_argument("--file", required=True)
    c.add_argument("--identity", required=True)
    c.add_argument("--numeric-extent", type=int, default=64)
    c.add_argument("--max-depth", type=int, default=8, help="largest subspace depth to try")
    c.add_argument("--base", action="append", metavar="N=VALUE", help="declared base value")
    c.add_argument("--symbol", default="f")
    c.set_defaults(func=cmd_relations_verify)

    th = top.add_parser("theorems", help="theorem suites").add_subparsers(dest="cmd", required=True)
    c = th.add_parser("check", help="run one suite")
    c.add_argument("--suite", required=True, choices=sorted(theorems.SUITES))
    c.add_argument("--max", type=int, help="override the suite's range")
    c.add_argument("--self-test", action="store_true", help="perturb one input; the suite must fail")
    c.add_argument("--json", help="also write the report as JSON")
    c.set_defaults(func=cmd_theorems_check)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, lr.FormatError, sequences.UnknownSequence, OSError) as e:
        print(f"regseq: error: {e}", file=sys.stderr)
        return 2
    except factors.InconclusiveEnumeration as e:
        print(f"regseq: inconclusive: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"regseq: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
