"""Exhaustive verification that 2!, 3!, ..., (p-1)! are distinct mod p.

The scan walks k = 2 .. p-1 keeping a running product f = k! mod p and
reports the first event it proves:

* Collision(j, k, residue): j! == k! mod p with j < k, the first such k in
  scan order and the smallest j for that k.
* NegHalfHit(k): k! == -((p-1)/2)! mod p for some k past the midpoint.
  Only checked when p == 1 (mod 4), where ((p-1)/2)! is a square root of
  -1 and the hit pins a genuine duplicate among the half factorials.  For
  p == 3 (mod 4) the midpoint factorial is one of +-1 and the analogous
  check would misfire on ordinary values, so it is skipped.
* Socialist: the scan exhausted k = p-1 with every value fresh.

Two scan strategies share these semantics and must agree event for
event.  Birthday keeps a dict of seen residues, bounded by a cap, and
escalates to the bitset scan in the astronomically unlikely case the cap
is reached without an event.  NaiveBitset allocates a p-bit table, so it
is never wrong and never escalates, at the price of O(p) memory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import isqrt

__all__ = [
    "VerdictKind",
    "Verdict",
    "CollisionWitness",
    "ScanMode",
    "ScanStrategy",
    "default_cap",
    "factorial_mod",
    "verify_distinct",
    "recheck_witness",
]


class VerdictKind(Enum):
    SOCIALIST = "Socialist"
    COLLISION = "Collision"
    NEG_HALF_HIT = "NegHalfHit"
    INCONCLUSIVE = "Inconclusive"


class ScanMode(Enum):
    AUTO = "auto"
    BIRTHDAY = "birthday"
    NAIVE_BITSET = "bitset"


@dataclass(frozen=True)
class ScanStrategy:
    """How verify_distinct hunts for the first duplicate.

    cap bounds the birthday dict (None means 64 * ceil(sqrt(p))).
    escalate controls whether an exhausted birthday window restarts as a
    bitset scan or returns an Inconclusive verdict.  use_reflection makes
    the bitset scan derive the second-half factorials from the stored
    first half through (p-1-k)! == (-1)^(k+1) / k! instead of extending
    the product chain; it exists as a checkable variant, not a speedup.
    """

    mode: ScanMode = ScanMode.AUTO
    cap: int | None = None
    escalate: bool = True
    use_reflection: bool = False


@dataclass(frozen=True)
class Verdict:
    """Outcome of one distinctness scan.

    j, k and residue are populated for Collision (j! == k! == residue);
    NegHalfHit fills k and residue only.  scanned_up_to is the last k
    whose factorial was examined.
    """

    p: int
    kind: VerdictKind
    j: int | None = None
    k: int | None = None
    residue: int | None = None
    scanned_up_to: int = 0


@dataclass(frozen=True)
class CollisionWitness:
    """A checkable claim that j! == k! == residue (mod p) with j < k."""

    p: int
    j: int
    k: int
    residue: int

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "CollisionWitness":
        if verdict.kind is not VerdictKind.COLLISION:
            raise ValueError(f"{verdict.kind.value} verdict carries no collision witness")
        assert verdict.j is not None and verdict.k is not None and verdict.residue is not None
        return cls(verdict.p, verdict.j, verdict.k, verdict.residue)

    def recheck(self) -> bool:
        return (
            recheck_witness(self.p, self.j, self.k)
            and factorial_mod(self.k, self.p) == self.residue
        )


def default_cap(p: int) -> int:
    """Birthday window bound: 64 * ceil(sqrt(p)) stored residues."""
    r = isqrt(p)
    if r * r < p:
        r += 1
    return 64 * r


def factorial_mod(n: int, p: int) -> int:
    """n! mod p for 0 <= n < p, by direct product."""
    if not 0 <= n < p:
        raise ValueError("need 0 <= n < p")
    f = 1
    for k in range(2, n + 1):
        f = f * k % p
    return f


def recheck_witness(p: int, j: int, k: int) -> bool:
    """Recompute j! and k! mod p independently and compare.

    Deliberately does not share the product prefix between the two
    factorials: the point is an arithmetic path distinct from the scan
    that produced the witness.
    """
    if not 2 <= j < k <= p - 1:
        raise ValueError("witness indices must satisfy 2 <= j < k <= p-1")
    return factorial_mod(j, p) == factorial_mod(k, p)


def verify_distinct(p: int, strategy: ScanStrategy | None = None, *, neg_half_check: bool = True) -> Verdict:
    """Scan 2! .. (p-1)! mod p and report the first proven event.

    p must be an odd number >= 5 (primality is the caller's business;
    the scan itself only needs oddness for the midpoint bookkeeping).
    The verdict is deterministic and strategy-independent: Birthday and
    NaiveBitset return identical verdicts, Birthday possibly after a
    silent escalation.  Raises MemoryError if a bitset scan cannot
    allocate its p-bit table.
    """
    if p < 5 or p & 1 == 0:
        raise ValueError("scan needs an odd p >= 5")
    if strategy is None:
        strategy = ScanStrategy()
    check_neg = neg_half_check and p & 3 == 1

    if strategy.mode is ScanMode.NAIVE_BITSET:
        return _scan_bitset(p, check_neg, strategy.use_reflection)

    cap = strategy.cap if strategy.cap is not None else default_cap(p)
    if cap < 1:
        raise ValueError("cap must be positive")
    verdict = _scan_birthday(p, cap, check_neg)
    if verdict is not None:
        return verdict
    if strategy.escalate:
        return _scan_bitset(p, check_neg, strategy.use_reflection)
    return Verdict(p, VerdictKind.INCONCLUSIVE, scanned_up_to=min(p - 1, cap + 1))


def _scan_birthday(p: int, cap: int, check_neg: bool) -> Verdict | None:
    """Dict-backed scan of at most cap residues; None if the window ends dry."""
    limit = min(p - 1, cap + 1)
    half = (p - 1) >> 1
    seen: dict[int, int] = {}
    get = seen.get
    f = 1

    phase1_end = min(limit, half - 1) if check_neg else limit
    for k in range(2, phase1_end + 1):
        f = f * k % p
        j = get(f)
        if j is not None:
            return Verdict(p, VerdictKind.COLLISION, j, k, f, scanned_up_to=k)
        seen[f] = k

    if check_neg and limit >= half:
        f = f * half % p
        j = get(f)
        if j is not None:
            return Verdict(p, VerdictKind.COLLISION, j, half, f, scanned_up_to=half)
        seen[f] = half
        neg_h = p - f
        for k in range(half + 1, limit + 1):
            f = f * k % p
            j = get(f)
            if j is not None:
                return Verdict(p, VerdictKind.COLLISION, j, k, f, scanned_up_to=k)
            if f == neg_h:
                return Verdict(p, VerdictKind.NEG_HALF_HIT, None, k, f, scanned_up_to=k)
            seen[f] = k

    if limit >= p - 1:
        return Verdict(p, VerdictKind.SOCIALIST, scanned_up_to=p - 1)
    return None


def _first_index_of(p: int, residue: int, below: int) -> int:
    # second pass: smallest j >= 2 with j! == residue, known to be < below
    f = 1
    for j in range(2, below):
        f = f * j % p
        if f == residue:
            return j
    raise AssertionError("collision residue vanished on re-scan")


def _scan_bitset(p: int, check_neg: bool, reflect: bool) -> Verdict:
    """Full scan against a p-bit membership table. Never inconclusive."""
    table = bytearray((p >> 3) + 1)
    half = (p - 1) >> 1
    f = 1
    # the midpoint is treated separately when either the -h check needs to
    # capture ((p-1)/2)! or reflection switches formulas there
    split = check_neg or reflect
    first_half: list[int] | None = [1] * (half + 1) if reflect else None
    neg_h = -1

    phase1_end = half - 1 if split else p - 1
    for k in range(2, phase1_end + 1):
        f = f * k % p
        i = f >> 3
        bit = 1 << (f & 7)
        if table[i] & bit:
            return Verdict(p, VerdictKind.COLLISION, _first_index_of(p, f, k), k, f, scanned_up_to=k)
        table[i] |= bit
        if first_half is not None:
            first_half[k] = f

    if split:
        f = f * half % p
        i = f >> 3
        bit = 1 << (f & 7)
        if table[i] & bit:
            return Verdict(p, VerdictKind.COLLISION, _first_index_of(p, f, half), half, f, scanned_up_to=half)
        table[i] |= bit
        if first_half is not None:
            first_half[half] = f
        if check_neg:
            neg_h = p - f

        inv_cur = 0
        for k in range(half + 1, p):
            if reflect:
                # k! == (-1)^(k+1) / (p-1-k)!, walking the inverse down:
                # inv((t-1)!) == inv(t!) * t with t == p - k
                if k == half + 1:
                    inv_cur = pow(first_half[half - 1], -1, p)
                else:
                    inv_cur = inv_cur * (p - k) % p
                f = inv_cur if k & 1 else p - inv_cur
            else:
                f = f * k % p
            i = f >> 3
            bit = 1 << (f & 7)
            if table[i] & bit:
                return Verdict(p, VerdictKind.COLLISION, _first_index_of(p, f, k), k, f, scanned_up_to=k)
            if f == neg_h:
                return Verdict(p, VerdictKind.NEG_HALF_HIT, None, k, f, scanned_up_to=k)
            table[i] |= bit

    return Verdict(p, VerdictKind.SOCIALIST, scanned_up_to=p - 1)
