"""Command line front end.

Exit codes: 0 success, 1 runtime failure, 2 a socialist verdict was
produced somewhere (that is the headline result, so it gets its own
code), 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analytics import (
    DEFAULT_HISTOGRAM_BUDGET,
    expected_count_log,
    fp_histogram,
    heuristic,
    scientific_from_log,
)
from .engine import CheckpointError, RangeReport, SearchConfig, resume, search
from .filters import count_filters
from .primes import DEFAULT_SEGMENT_SIZE, PrimeRange
from .verifier import ScanMode, ScanStrategy, VerdictKind, verify_distinct

__all__ = ["main"]

_STRATEGIES = {"auto": ScanMode.AUTO, "birthday": ScanMode.BIRTHDAY, "bitset": ScanMode.NAIVE_BITSET}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    env = os.environ.get("SOCPRIMES_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"SOCPRIMES_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _report_as_dict(report: RangeReport) -> dict:
    c = report.counters
    return {
        "lo": report.lo,
        "hi": report.hi,
        "completed_through": report.completed_through,
        "complete": report.complete,
        "counters": c.as_dict(),
        "stage1_survivors": c.stage1_survivors,
        "stage2_survivors": c.stage2_survivors,
        "socialist": report.socialist_primes,
        "output": report.output_path,
        "wall_seconds": round(report.wall_seconds, 3),
        "resumed": report.resumed,
    }


def _print_report(report: RangeReport) -> None:
    status = "complete" if report.complete else f"paused at {report.completed_through}"
    suffix = " (resumed)" if report.resumed else ""
    print(f"search [{report.lo}, {report.hi}) {status} in {report.wall_seconds:.1f}s{suffix}")
    c = report.counters
    rows = [
        ("examined", c.examined),
        ("rejected mod 8", c.rejected_mod8),
        ("rejected (5/p)", c.rejected_legendre5),
        ("rejected (-23/p)", c.rejected_legendre23),
        ("rejected cubic", c.rejected_cubic),
        ("collisions", c.collisions),
        ("neg-half hits", c.neg_half_hits),
        ("socialist", c.socialist),
    ]
    for label, value in rows:
        print(f"  {label:<18}{value}")
    print(f"  {'results file':<18}{report.output_path}")
    for p in report.socialist_primes:
        print(f"!!! SOCIALIST PRIME FOUND: {p} (re-proved by an independent full scan)")


def _cmd_search(args: argparse.Namespace) -> int:
    threads = args.threads if args.threads is not None else _default_threads()
    if args.checkpoint and os.path.exists(args.checkpoint):
        report = resume(
            args.checkpoint,
            output_path=args.out,
            threads=threads,
            stop_after_segments=args.stop_after_segments,
        )
    else:
        if args.lo is None or args.hi is None:
            args.parser.error("--from and --to are required unless resuming from a checkpoint")
        config = SearchConfig(
            range=PrimeRange(args.lo, args.hi, args.segment_size),
            output_path=args.out or "results.jsonl",
            threads=threads,
            strategy=ScanStrategy(mode=_STRATEGIES[args.strategy], cap=args.cap),
            strict_cubic=args.strict_cubic,
            checkpoint_path=args.checkpoint,
            checkpoint_interval=args.checkpoint_interval,
            stop_after_segments=args.stop_after_segments,
        )
        report = search(config)
    if args.json:
        print(json.dumps(_report_as_dict(report)))
    else:
        _print_report(report)
    return 2 if report.socialist_primes else 0


def _cmd_verify(args: argparse.Namespace) -> int:
    strategy = ScanStrategy(
        mode=_STRATEGIES[args.strategy],
        cap=args.cap,
        escalate=not args.no_escalate,
        use_reflection=args.reflection,
    )
    verdict = verify_distinct(args.p, strategy, neg_half_check=not args.no_neg_half)
    if args.json:
        print(json.dumps({
            "p": verdict.p,
            "kind": verdict.kind.value,
            "j": verdict.j,
            "k": verdict.k,
            "residue": verdict.residue,
            "scanned_up_to": verdict.scanned_up_to,
        }))
    else:
        p = verdict.p
        if verdict.kind is VerdictKind.COLLISION:
            print(f"p={p}: Collision {verdict.j}! == {verdict.k}! == {verdict.residue} (mod {p})")
        elif verdict.kind is VerdictKind.NEG_HALF_HIT:
            print(f"p={p}: NegHalfHit {verdict.k}! == -(({p}-1)/2)! == {verdict.residue} (mod {p})")
        elif verdict.kind is VerdictKind.SOCIALIST:
            print(f"p={p}: SOCIALIST, 2! .. {p - 1}! are pairwise distinct mod {p}")
        else:
            print(f"p={p}: Inconclusive, no duplicate within the first {verdict.scanned_up_to} factorials")
    if verdict.kind is VerdictKind.SOCIALIST:
        return 2
    if verdict.kind is VerdictKind.INCONCLUSIVE:
        return 1
    return 0


def _cmd_filter_counts(args: argparse.Namespace) -> int:
    counts = count_filters(args.lo, args.hi, strict=args.strict_cubic)
    if args.json:
        print(json.dumps({
            "lo": counts.lo,
            "hi": counts.hi,
            "examined": counts.examined,
            "rejected_mod8": counts.rejected_mod8,
            "rejected_legendre5": counts.rejected_legendre5,
            "rejected_legendre23": counts.rejected_legendre23,
            "rejected_cubic": counts.rejected_cubic,
            "candidates": counts.candidates,
            "stage1_survivors": counts.stage1_survivors,
            "stage2_survivors": counts.stage2_survivors,
        }))
        return 0
    rows = [
        ("primes examined", counts.examined),
        ("rejected mod 8", counts.rejected_mod8),
        ("rejected (5/p)", counts.rejected_legendre5),
        ("rejected (-23/p)", counts.rejected_legendre23),
        ("rejected cubic", counts.rejected_cubic),
        ("candidates", counts.candidates),
        ("stage-1 survivors", len(counts.stage1_survivors)),
        ("stage-2 survivors", len(counts.stage2_survivors)),
    ]
    for label, value in rows:
        print(f"{label:<20}{value}")
    if 0 < len(counts.stage1_survivors) <= args.list_limit:
        print("stage-1 survivors:", " ".join(str(p) for p in counts.stage1_survivors))
    return 0


def _cmd_fp_stats(args: argparse.Namespace) -> int:
    hist = fp_histogram(args.max, jobs=args.jobs, budget=args.budget)
    alarm = [p for p in hist.min_f_primes if p > 5] if hist.min_f == 2 else []
    if args.json:
        print(json.dumps({
            "limit": hist.limit,
            "primes_scanned": hist.primes_scanned,
            "counts": hist.counts,
            "min_f": hist.min_f,
            "min_f_primes": list(hist.min_f_primes),
            "socialist": alarm,
        }))
    else:
        for f_value, n in hist.counts.items():
            print(f"{f_value} {n}")
        if hist.min_f is None:
            print(f"# no primes below {hist.limit}")
        else:
            sample = " ".join(str(p) for p in hist.min_f_primes[:8])
            print(f"# {hist.primes_scanned} primes below {hist.limit}; min F = {hist.min_f} at {sample}")
        for p in alarm:
            print(f"!!! F({p}) = 2: {p} is a SOCIALIST PRIME")
    return 2 if alarm else 0


def _cmd_heuristic(args: argparse.Namespace) -> int:
    if args.p is not None and (args.lo is not None or args.hi is not None):
        args.parser.error("give either --p or --from/--to, not both")
    if args.p is not None:
        est = heuristic(args.p)
        if args.json:
            em, ee = est.exact_scientific()
            lm, le = est.limit_scientific()
            print(json.dumps({
                "p": est.p,
                "log_exact": est.log_exact,
                "exact": {"mantissa": em, "exp10": ee},
                "limit_exponent": est.limit_exponent,
                "limit": {"mantissa": lm, "exp10": le},
            }))
        else:
            em, ee = est.exact_scientific()
            lm, le = est.limit_scientific()
            print(
                f"p={est.p}: exact {em:.3f}e{ee} (ln = {est.log_exact:.4f}), "
                f"limit e^{est.limit_exponent} = {lm:.3f}e{le}"
            )
        return 0
    if args.lo is None or args.hi is None:
        args.parser.error("need --p, or both --from and --to")
    log_sum = expected_count_log(args.lo, args.hi)
    if args.json:
        if log_sum == float("-inf"):
            print(json.dumps({"lo": args.lo, "hi": args.hi, "log_expected": None, "expected": {"mantissa": 0.0, "exp10": 0}}))
        else:
            m, e = scientific_from_log(log_sum)
            print(json.dumps({"lo": args.lo, "hi": args.hi, "log_expected": log_sum, "expected": {"mantissa": m, "exp10": e}}))
    else:
        if log_sum == float("-inf"):
            print(f"expected socialist primes in [{args.lo}, {args.hi}): 0 (empty range)")
        else:
            m, e = scientific_from_log(log_sum)
            print(f"expected socialist primes in [{args.lo}, {args.hi}): {m:.3f}e{e} (ln = {log_sum:.4f})")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="socprimes",
        description="Search for socialist primes: p > 5 with 2!, 3!, ..., (p-1)! pairwise distinct mod p.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    sp = sub.add_parser("search", help="filter a prime range and fully verify the survivors")
    sp.add_argument("--from", dest="lo", type=int, metavar="N", help="range start, inclusive")
    sp.add_argument("--to", dest="hi", type=int, metavar="N", help="range end, exclusive")
    sp.add_argument("--out", metavar="PATH", help="results JSONL file (default results.jsonl, or the checkpoint's)")
    sp.add_argument("--checkpoint", metavar="PATH", help="checkpoint file; if it exists the run resumes from it")
    sp.add_argument("--checkpoint-interval", type=int, default=16, metavar="SEGS",
                    help="segments between checkpoint writes (default 16)")
    sp.add_argument("--threads", type=int, metavar="N",
                    help="worker processes (default SOCPRIMES_THREADS, else CPU count)")
    sp.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE, metavar="N",
                    help=f"segment width (default {DEFAULT_SEGMENT_SIZE})")
    sp.add_argument("--strategy", choices=sorted(_STRATEGIES), default="auto",
                    help="duplicate scan strategy (default auto)")
    sp.add_argument("--cap", type=int, metavar="N",
                    help="birthday window size (default 64*ceil(sqrt(p)))")
    sp.add_argument("--strict-cubic", action="store_true",
                    help="test every cubic root even when (1957/p) = +1")
    sp.add_argument("--stop-after-segments", type=int, metavar="N",
                    help="commit N segments, write a checkpoint, and stop")
    sp.add_argument("--json", action="store_true", help="emit the final report as JSON")
    sp.set_defaults(func=_cmd_search, parser=sp)

    vp = sub.add_parser("verify", help="scan one p for a factorial duplicate")
    vp.add_argument("p", type=int, help="odd number >= 5 to scan")
    vp.add_argument("--strategy", choices=sorted(_STRATEGIES), default="auto",
                    help="scan strategy (default auto)")
    vp.add_argument("--cap", type=int, metavar="N", help="birthday window size")
    vp.add_argument("--no-escalate", action="store_true",
                    help="let an exhausted birthday window return Inconclusive")
    vp.add_argument("--reflection", action="store_true",
                    help="derive second-half factorials from the first half (bitset scans)")
    vp.add_argument("--no-neg-half", action="store_true",
                    help="skip the k! == -((p-1)/2)! early exit")
    vp.add_argument("--json", action="store_true", help="emit the verdict as JSON")
    vp.set_defaults(func=_cmd_verify, parser=vp)

    fp = sub.add_parser("filter-counts", help="tally filter verdicts over a range, no scanning")
    fp.add_argument("--from", dest="lo", type=int, required=True, metavar="N", help="range start, inclusive")
    fp.add_argument("--to", dest="hi", type=int, required=True, metavar="N", help="range end, exclusive")
    fp.add_argument("--strict-cubic", action="store_true",
                    help="test every cubic root even when (1957/p) = +1")
    fp.add_argument("--list-limit", type=int, default=200, metavar="N",
                    help="print the survivor list when it has at most N entries (default 200)")
    fp.add_argument("--json", action="store_true", help="emit counts and survivor lists as JSON")
    fp.set_defaults(func=_cmd_filter_counts, parser=fp)

    hp = sub.add_parser("fp-stats", help="histogram of F(p), the count of residues factorials miss")
    hp.add_argument("--max", type=int, required=True, metavar="N", help="scan primes 5 <= p < N")
    hp.add_argument("--jobs", type=int, default=1, metavar="N", help="parallel scan processes (default 1)")
    hp.add_argument("--budget", type=int, default=DEFAULT_HISTOGRAM_BUDGET, metavar="N",
                    help=f"refuse --max beyond this (default {DEFAULT_HISTOGRAM_BUDGET})")
    hp.add_argument("--json", action="store_true", help="emit the histogram as JSON")
    hp.set_defaults(func=_cmd_fp_stats, parser=hp)

    ep = sub.add_parser("heuristic", help="independence-model survival probabilities")
    ep.add_argument("--p", type=int, metavar="P", help="single prime form")
    ep.add_argument("--from", dest="lo", type=int, metavar="N", help="range start for the expected count")
    ep.add_argument("--to", dest="hi", type=int, metavar="N", help="range end for the expected count")
    ep.add_argument("--json", action="store_true", help="emit the estimate as JSON")
    ep.set_defaults(func=_cmd_heuristic, parser=ep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 64
    except (CheckpointError, OSError, MemoryError, ArithmeticError) as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
