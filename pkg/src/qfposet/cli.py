"""Command-line entry point: ``qfposet {seq,parts,poset,coeff,verify}``."""
from __future__ import annotations

import argparse
import sys

from . import coeffs, poset
from .errors import QFError
from .partitions import enumerate_partitions
from .qfseq import QFSequence
from .verify import run_sweep


def _seeds(text):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be comma-separated integers, got {text!r}") from None


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int, default=2, help="recurrence level N (default 2)")
    common.add_argument("--seeds", type=_seeds, default=[1, 2], help="comma-separated seeds (default 1,2)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for sweeps")

    parser = argparse.ArgumentParser(
        prog="qfposet",
        description="Partitions into distinct quasifibonacci numbers: posets and product coefficients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="terms, prefix sums and thresholds")
    p.add_argument("--upto", type=_positive, default=10, help="last index k")

    p = sub.add_parser("parts", parents=[common], help="list every partition of n")
    p.add_argument("--n", type=_positive, required=True)

    p = sub.add_parser("poset", parents=[common], help="cover diagram of P_n as Graphviz DOT")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--dot", action="store_true", help="emit DOT (the default and only format)")

    p = sub.add_parser("coeff", parents=[common], help="coefficients h_n with f_n, g_n")
    p.add_argument("--upto", type=_nonneg, default=20, help="largest degree")
    p.add_argument("--method", choices=("enum", "series", "recursive", "all"), default="all")

    p = sub.add_parser("verify", parents=[common], help="run every check for n = 1..upto")
    p.add_argument("--upto", type=_nonneg, default=200)
    return parser


def cmd_seq(seq: QFSequence, args) -> str:
    lines = ["# k\tA_k\tgamma_k\tA_k0\tA_k1\tA_k2"]
    for k in range(1, args.upto + 1):
        row = [k, seq.term(k), seq.gamma(k)]
        row += list(seq.thresholds(k).as_tuple()) if k > seq.level else ["-"] * 3
        lines.append("\t".join(map(str, row)))
    return "\n".join(lines) + "\n"


def cmd_parts(seq: QFSequence, args) -> str:
    reps = enumerate_partitions(seq, args.n)
    return "".join(f"{r.bitstring()}  {r.render_parts(seq)}\n" for r in reps)


def cmd_poset(seq: QFSequence, args) -> str:
    return poset.to_dot(poset.build_poset(seq, args.n), seq)


def cmd_coeff(seq: QFSequence, args) -> str:
    return coeffs.coeff_tsv(seq, args.upto, args.method)


def cmd_verify(seq: QFSequence, args) -> tuple[str, int]:
    result = run_sweep(seq, args.upto, jobs=args.jobs)
    return result.render(), 0 if result.ok else 1


COMMANDS = {"seq": cmd_seq, "parts": cmd_parts, "poset": cmd_poset, "coeff": cmd_coeff, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seq = QFSequence(args.level, args.seeds)
        result = COMMANDS[args.command](seq, args)
    except QFError as exc:
        print(f"qfposet: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text, status = result if isinstance(result, tuple) else (result, 0)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
