"""Segment-parallel search driver with checkpointing and resume.

The range is cut into fixed-width segments.  Workers sieve and classify
their segment independently; the coordinator commits results strictly in
segment order, so the output stream and every counter are deterministic
functions of the range alone, independent of thread count and of how the
range is segmented.

The results file is line-delimited JSON holding one record per prime
that survived stage 1 of the filter pipeline: cubic rejections carry a
{y, x} witness, verified candidates a Collision {j, k, residue} or
NegHalfHit {k, residue} witness, and any Socialist verdict is re-proved
with an independent full bitset scan before being written.

A checkpoint is a small JSON document naming the range, the committed
high-water mark, the counters and the byte length of the results file at
commit time.  Writes are atomic (tmp file + os.replace), and resume
truncates the results file back to the recorded offset, so a run killed
at any instant restarts cleanly and reproduces the exact bytes an
uninterrupted run would have produced.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator

from .filters import FilterVerdict, run_pipeline
from .primes import DEFAULT_SEGMENT_SIZE, PrimeRange, primes_in_segment, small_primes
from .verifier import ScanMode, ScanStrategy, VerdictKind, factorial_mod, recheck_witness, verify_distinct

__all__ = [
    "DOMAIN_START",
    "CHECKPOINT_VERSION",
    "CheckpointError",
    "Counters",
    "SearchConfig",
    "RangeReport",
    "search",
    "resume",
]

logger = logging.getLogger(__name__)

#: Smallest prime the search examines; the problem statement is p > 5.
DOMAIN_START = 7

CHECKPOINT_VERSION = 1

_COUNTER_FIELDS = (
    "examined",
    "rejected_mod8",
    "rejected_legendre5",
    "rejected_legendre23",
    "rejected_cubic",
    "collisions",
    "neg_half_hits",
    "socialist",
)


class CheckpointError(RuntimeError):
    """Checkpoint file missing, malformed, or inconsistent with its outputs."""


@dataclass
class Counters:
    """Per-verdict tallies; examined always equals the sum of the rest."""

    examined: int = 0
    rejected_mod8: int = 0
    rejected_legendre5: int = 0
    rejected_legendre23: int = 0
    rejected_cubic: int = 0
    collisions: int = 0
    neg_half_hits: int = 0
    socialist: int = 0

    def merge(self, values: tuple[int, ...]) -> None:
        for name, v in zip(_COUNTER_FIELDS, values):
            setattr(self, name, getattr(self, name) + v)

    def as_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in _COUNTER_FIELDS}

    @classmethod
    def from_dict(cls, d: dict[str, int]) -> "Counters":
        try:
            return cls(**{name: int(d[name]) for name in _COUNTER_FIELDS})
        except (KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"bad counters block: {exc}") from exc

    def partitioned(self) -> bool:
        total = (
            self.rejected_mod8
            + self.rejected_legendre5
            + self.rejected_legendre23
            + self.rejected_cubic
            + self.collisions
            + self.neg_half_hits
            + self.socialist
        )
        return self.examined == total

    @property
    def stage1_survivors(self) -> int:
        return self.rejected_cubic + self.stage2_survivors

    @property
    def stage2_survivors(self) -> int:
        return self.collisions + self.neg_half_hits + self.socialist


@dataclass(frozen=True)
class SearchConfig:
    """One search run: what range, where results go, how hard to push.

    stop_after_segments is a cooperative interrupt: the run commits that
    many segments, writes a checkpoint and returns a partial report.  It
    exists so interruption and resume are testable without signals.
    """

    range: PrimeRange
    output_path: str
    threads: int = 1
    strategy: ScanStrategy = field(default_factory=ScanStrategy)
    strict_cubic: bool = False
    checkpoint_path: str | None = None
    checkpoint_interval: int = 16
    stop_after_segments: int | None = None


@dataclass
class RangeReport:
    """What one search (or one resumed leg of it) established."""

    lo: int
    hi: int
    completed_through: int
    counters: Counters
    socialist_primes: list[int]
    output_path: str
    wall_seconds: float
    resumed: bool = False

    @property
    def complete(self) -> bool:
        return self.completed_through >= self.hi


def _validate_config(config: SearchConfig) -> None:
    if config.threads < 1:
        raise ValueError("threads must be >= 1")
    if config.checkpoint_interval < 1:
        raise ValueError("checkpoint_interval must be >= 1")
    if not config.strategy.escalate:
        raise ValueError("search needs an escalating strategy; Inconclusive verdicts have no record form")
    if config.stop_after_segments is not None:
        if config.stop_after_segments < 1:
            raise ValueError("stop_after_segments must be >= 1")
        if config.checkpoint_path is None:
            raise ValueError("stop_after_segments without a checkpoint would strand the partial run")


# ----------------------------------------------------------------------
# worker side

_base_cache: dict[int, list[int]] = {}


def _base_primes(limit: int) -> list[int]:
    primes = _base_cache.get(limit)
    if primes is None:
        primes = small_primes(limit)
        _base_cache[limit] = primes
    return primes


def _classify(p: int, strict: bool, strategy: ScanStrategy) -> tuple[int, dict | None]:
    """Map one prime to its counter slot and (for stage-1 survivors) a record."""
    out = run_pipeline(p, strict)
    v = out.verdict
    if v is FilterVerdict.REJECTED_MOD8:
        return 1, None
    if v is FilterVerdict.REJECTED_LEGENDRE5:
        return 2, None
    if v is FilterVerdict.REJECTED_LEGENDRE23:
        return 3, None
    if v is FilterVerdict.REJECTED_CUBIC:
        return 4, {"p": p, "outcome": "RejectedCubic", "witness": {"y": out.y, "x": out.x}}

    verdict = verify_distinct(p, strategy)
    if verdict.kind is VerdictKind.COLLISION:
        if not recheck_witness(p, verdict.j, verdict.k):
            raise ArithmeticError(f"collision witness for p={p} failed recheck")
        return 5, {
            "p": p,
            "outcome": "Collision",
            "witness": {"j": verdict.j, "k": verdict.k, "residue": verdict.residue},
        }
    if verdict.kind is VerdictKind.NEG_HALF_HIT:
        half = (p - 1) >> 1
        if (factorial_mod(verdict.k, p) != verdict.residue
                or verdict.residue != p - factorial_mod(half, p)):
            raise ArithmeticError(f"neg-half witness for p={p} failed recheck")
        return 6, {
            "p": p,
            "outcome": "NegHalfHit",
            "witness": {"k": verdict.k, "residue": verdict.residue},
        }
    if verdict.kind is VerdictKind.SOCIALIST:
        confirm = verify_distinct(p, ScanStrategy(mode=ScanMode.NAIVE_BITSET), neg_half_check=False)
        if confirm.kind is not VerdictKind.SOCIALIST:
            raise ArithmeticError(f"socialist verdict for p={p} failed its confirmation scan")
        return 7, {"p": p, "outcome": "Socialist"}
    raise RuntimeError(f"scan of p={p} returned {verdict.kind}, which search cannot record")


def _segment_task(args: tuple) -> tuple[int, tuple[int, ...], list[dict]]:
    seg_lo, seg_hi, sqrt_limit, strict, strategy = args
    base = _base_primes(sqrt_limit)
    counters = [0] * len(_COUNTER_FIELDS)
    records: list[dict] = []
    for p in primes_in_segment(seg_lo, seg_hi, base):
        counters[0] += 1
        slot, record = _classify(p, strict, strategy)
        counters[slot] += 1
        if record is not None:
            records.append(record)
    return seg_hi, tuple(counters), records


# ----------------------------------------------------------------------
# coordinator side

@dataclass
class _RunState:
    lo: int
    hi: int
    counters: Counters
    completed_through: int
    socialist: list[int]
    bytes_written: int
    prior_elapsed: float
    resumed: bool = False
    segments_done_this_run: int = 0


def _segments_from(start: int, hi: int, width: int) -> Iterator[tuple[int, int]]:
    lo = start
    while lo < hi:
        seg_hi = min(lo + width, hi)
        yield lo, seg_hi
        lo = seg_hi


def _checkpoint_payload(config: SearchConfig, state: _RunState, elapsed: float) -> dict:
    return {
        "version": CHECKPOINT_VERSION,
        "lo": state.lo,
        "hi": state.hi,
        "segment_size": config.range.segment_size,
        "strict_cubic": config.strict_cubic,
        "strategy": {
            "mode": config.strategy.mode.value,
            "cap": config.strategy.cap,
            "use_reflection": config.strategy.use_reflection,
        },
        "checkpoint_interval": config.checkpoint_interval,
        "completed_through": state.completed_through,
        "counters": state.counters.as_dict(),
        "socialist": list(state.socialist),
        "output_path": config.output_path,
        "output_offset": state.bytes_written,
        "elapsed": state.prior_elapsed + elapsed,
    }


def _write_checkpoint(path: str, payload: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        json.dump(payload, fh)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _load_checkpoint(path: str) -> dict:
    try:
        with open(path, encoding="ascii") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"checkpoint {path} has unsupported version {payload.get('version')!r}")
    counters = Counters.from_dict(payload.get("counters", {}))
    if not counters.partitioned():
        raise CheckpointError("checkpoint counters do not partition examined")
    if not payload["lo"] <= payload["completed_through"] <= payload["hi"]:
        raise CheckpointError("checkpoint high-water mark outside its range")
    return payload


def _commit(state: _RunState, out, counters: tuple[int, ...], records: list[dict], seg_hi: int) -> None:
    pieces = []
    for rec in records:
        if rec["outcome"] == "Socialist":
            state.socialist.append(rec["p"])
            logger.critical("SOCIALIST PRIME FOUND: p=%d survived a full distinctness scan twice", rec["p"])
        pieces.append(json.dumps(rec, separators=(",", ":")))
    if pieces:
        data = ("\n".join(pieces) + "\n").encode("ascii")
        out.write(data)
        state.bytes_written += len(data)
    state.counters.merge(counters)
    state.completed_through = seg_hi
    state.segments_done_this_run += 1


def _run(config: SearchConfig, state: _RunState, out, started: float) -> RangeReport:
    width = config.range.segment_size
    sqrt_limit = isqrt(max(state.hi - 1, 2))
    _base_primes(sqrt_limit)  # warm before forking so workers inherit it
    args = (
        (lo, hi, sqrt_limit, config.strict_cubic, config.strategy)
        for lo, hi in _segments_from(state.completed_through, state.hi, width)
    )
    stop_after = config.stop_after_segments

    def handle(result: tuple[int, tuple[int, ...], list[dict]]) -> bool:
        seg_hi, counters, records = result
        _commit(state, out, counters, records, seg_hi)
        if config.checkpoint_path and state.segments_done_this_run % config.checkpoint_interval == 0:
            out.flush()
            os.fsync(out.fileno())
            _write_checkpoint(
                config.checkpoint_path,
                _checkpoint_payload(config, state, time.monotonic() - started),
            )
        return stop_after is not None and state.segments_done_this_run >= stop_after

    try:
        if config.threads == 1:
            for a in args:
                if handle(_segment_task(a)):
                    break
        else:
            with ProcessPoolExecutor(max_workers=config.threads) as pool:
                for result in pool.map(_segment_task, args):
                    if handle(result):
                        pool.shutdown(wait=False, cancel_futures=True)
                        break
        out.flush()
        os.fsync(out.fileno())
    finally:
        out.close()

    elapsed = time.monotonic() - started
    if config.checkpoint_path:
        _write_checkpoint(config.checkpoint_path, _checkpoint_payload(config, state, elapsed))

    if not state.counters.partitioned():
        raise RuntimeError("counter partition violated; search state is corrupt")
    return RangeReport(
        lo=state.lo,
        hi=state.hi,
        completed_through=state.completed_through,
        counters=state.counters,
        socialist_primes=list(state.socialist),
        output_path=config.output_path,
        wall_seconds=state.prior_elapsed + elapsed,
        resumed=state.resumed,
    )


def search(config: SearchConfig) -> RangeReport:
    """Run a fresh search over config.range, overwriting the output file."""
    _validate_config(config)
    started = time.monotonic()
    lo = max(config.range.lo, DOMAIN_START)
    hi = max(config.range.hi, lo)
    state = _RunState(
        lo=lo,
        hi=hi,
        counters=Counters(),
        completed_through=lo,
        socialist=[],
        bytes_written=0,
        prior_elapsed=0.0,
    )
    out = open(config.output_path, "wb")
    return _run(config, state, out, started)


def resume(checkpoint_path: str, output_path: str | None = None,
           threads: int | None = None, stop_after_segments: int | None = None) -> RangeReport:
    """Continue a checkpointed search to completion (or the next stop).

    The results file is truncated back to the checkpointed byte offset
    first, discarding any partially committed tail, so the final file is
    byte-identical to an uninterrupted run's.
    """
    payload = _load_checkpoint(checkpoint_path)
    started = time.monotonic()
    out_path = output_path or payload["output_path"]
    offset = int(payload["output_offset"])

    config = SearchConfig(
        range=PrimeRange(payload["lo"], payload["hi"], int(payload["segment_size"])),
        output_path=out_path,
        threads=threads if threads is not None else 1,
        strategy=ScanStrategy(
            mode=ScanMode(payload["strategy"]["mode"]),
            cap=payload["strategy"]["cap"],
            use_reflection=bool(payload["strategy"].get("use_reflection", False)),
        ),
        strict_cubic=bool(payload["strict_cubic"]),
        checkpoint_path=checkpoint_path,
        checkpoint_interval=int(payload.get("checkpoint_interval", 16)),
        stop_after_segments=stop_after_segments,
    )
    _validate_config(config)

    if offset == 0 and not os.path.exists(out_path):
        out = open(out_path, "wb")
    else:
        try:
            out = open(out_path, "r+b")
        except OSError as exc:
            raise CheckpointError(f"results file {out_path} is missing: {exc}") from exc
        if os.fstat(out.fileno()).st_size < offset:
            out.close()
            raise CheckpointError(f"results file {out_path} is shorter than the checkpoint's offset")
        out.truncate(offset)
        out.seek(offset)

    state = _RunState(
        lo=int(payload["lo"]),
        hi=int(payload["hi"]),
        counters=Counters.from_dict(payload["counters"]),
        completed_through=int(payload["completed_through"]),
        socialist=[int(p) for p in payload.get("socialist", [])],
        bytes_written=offset,
        prior_elapsed=float(payload.get("elapsed", 0.0)),
        resumed=True,
    )
    return _run(config, state, out, started)
