"""Necessary conditions a socialist prime must satisfy, staged by cost.

A prime p > 5 with all of 2! .. (p-1)! distinct mod p cannot avoid any of
the conditions below, so each stage only ever discards safely:

* stage 0: p == 5 (mod 8).  Otherwise 2 is a quadratic residue or the
  half-factorial bookkeeping forces a repeat.
* stage 1: (5/p) == -1 and (-23/p) == +1.  The first would otherwise give
  x(x+1) == -1 two solutions and collide (x+1)! with (x-1)!; -23 is the
  discriminant of x(x+1)(x+2) - 1, whose split behaviour must keep that
  cubic rootless.
* stage 2: every root y of y^3 + 10y^2 + 24y - 1 must have
  (4y+25/p) == -1.  The cubic is x(x+1)...(x+5) - 1 compressed through
  y = x(x+5); a root y whose 4y+25 is a square lifts to an integer x with
  (x+5)! == (x-1)! mod p, an explicit collision.  When (1957/p) == +1 the
  stage passes without root work (1957 is this cubic's discriminant, and
  the only dangerous factor shape has exactly one root, forcing
  (1957/p) == -1).

Stage 2 returns the rejecting root and the lifted x so callers can hand
the collision to independent rechecking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .modarith import inv_mod, jacobi, sqrt_mod
from .polycong import MonicCubic, cubic_roots
from .primes import PrimeRange, enumerate_primes

__all__ = [
    "THREE_TERM_CUBIC",
    "SIX_TERM_CUBIC",
    "FilterVerdict",
    "FilterOutcome",
    "FilterCounts",
    "stage_mod8",
    "stage_legendre",
    "stage_cubic",
    "run_pipeline",
    "count_filters",
]

#: x(x+1)(x+2) - 1 in monic form; a root x would give (x+2)! == (x-1)!.
#: Its discriminant is -23, the constant behind stage 1's second symbol.
THREE_TERM_CUBIC = MonicCubic(b=3, c=2, d=-1)

#: y(y+4)(y+6) - 1 where y = x(x+5) compresses x(x+1)...(x+5) - 1.
#: Its discriminant is 1957, the constant behind stage 2's shortcut.
SIX_TERM_CUBIC = MonicCubic(b=10, c=24, d=-1)


class FilterVerdict(Enum):
    REJECTED_MOD8 = "RejectedMod8"
    REJECTED_LEGENDRE5 = "RejectedLegendre5"
    REJECTED_LEGENDRE23 = "RejectedLegendre23"
    REJECTED_CUBIC = "RejectedCubic"
    CANDIDATE = "Candidate"


@dataclass(frozen=True)
class FilterOutcome:
    """Pipeline result for one prime.

    stage_reached is the last stage that actually ran (0, 1 or 2).  For
    REJECTED_CUBIC, y is the offending cubic root and x the lifted
    collision seed with (x+5)! == (x-1)! mod p, equivalently
    x(x+1)...(x+5) == 1.
    """

    p: int
    verdict: FilterVerdict
    stage_reached: int
    y: int | None = None
    x: int | None = None


def stage_mod8(p: int) -> bool:
    """True when p survives stage 0, that is p == 5 (mod 8)."""
    return p % 8 == 5


def stage_legendre(p: int) -> FilterVerdict | None:
    """Stage 1 verdict: None on survival, else which symbol rejected p.

    The 5-test runs first, so a prime failing both is attributed to 5.
    """
    if jacobi(5, p) != -1:
        return FilterVerdict.REJECTED_LEGENDRE5
    if jacobi(-23, p) != 1:
        return FilterVerdict.REJECTED_LEGENDRE23
    return None


def stage_cubic(p: int, strict: bool = False) -> tuple[int, int] | None:
    """Stage 2: None on survival, else the rejecting root (y, x) pair.

    strict=True skips the (1957/p) == +1 shortcut and always enumerates
    the roots; it can only reject more, never fewer.  The returned x is
    checked here against x(x+1)...(x+5) == 1 before being released.
    """
    if not strict and jacobi(1957, p) == 1:
        return None
    roots = cubic_roots(SIX_TERM_CUBIC, p).roots
    failing = [y for y in roots if jacobi((4 * y + 25) % p, p) != -1]
    if not failing:
        return None

    y = failing[0]
    s = sqrt_mod((4 * y + 25) % p, p)
    if s is None:
        raise ArithmeticError(f"4y+25 flipped from residue to nonresidue mod {p}")
    # x(x+5) == y with x = (-5 + sqrt(4y+25)) / 2; sqrt_mod's canonical
    # root keeps the witness deterministic
    x = (s - 5) % p * inv_mod(2, p) % p
    prod = 1
    for i in range(6):
        prod = prod * (x + i) % p
    if prod != 1:
        raise ArithmeticError(f"lifted witness x={x} fails its product check mod {p}")
    assert 1 <= x <= p - 6, "product check should have excluded wrapped x"
    return y, x


def run_pipeline(p: int, strict: bool = False) -> FilterOutcome:
    """Run the stages in cost order for one prime p > 5."""
    if not stage_mod8(p):
        return FilterOutcome(p, FilterVerdict.REJECTED_MOD8, stage_reached=0)
    legendre = stage_legendre(p)
    if legendre is not None:
        return FilterOutcome(p, legendre, stage_reached=1)
    hit = stage_cubic(p, strict)
    if hit is not None:
        return FilterOutcome(p, FilterVerdict.REJECTED_CUBIC, stage_reached=2, y=hit[0], x=hit[1])
    return FilterOutcome(p, FilterVerdict.CANDIDATE, stage_reached=2)


@dataclass
class FilterCounts:
    """Aggregate pipeline statistics over a prime range.

    stage1_survivors are the primes that reached stage 2 (they passed the
    mod-8 and both symbol tests); stage2_survivors additionally passed
    the cubic stage and are the candidates a verifier must scan.
    """

    lo: int
    hi: int
    examined: int = 0
    rejected_mod8: int = 0
    rejected_legendre5: int = 0
    rejected_legendre23: int = 0
    rejected_cubic: int = 0
    candidates: int = 0
    stage1_survivors: list[int] = field(default_factory=list)
    stage2_survivors: list[int] = field(default_factory=list)

    def consistent(self) -> bool:
        rejected = (
            self.rejected_mod8
            + self.rejected_legendre5
            + self.rejected_legendre23
            + self.rejected_cubic
        )
        return (
            self.examined == rejected + self.candidates
            and len(self.stage1_survivors) == self.rejected_cubic + self.candidates
            and len(self.stage2_survivors) == self.candidates
        )


def count_filters(lo: int, hi: int, strict: bool = False) -> FilterCounts:
    """Tally every pipeline verdict for primes in [lo, hi).

    The domain starts at 7: lo is clamped up since 2, 3 and 5 are outside
    the p > 5 problem statement.
    """
    counts = FilterCounts(lo=lo, hi=hi)
    start = max(lo, 7)
    for p in enumerate_primes(PrimeRange(start, max(hi, start))):
        out = run_pipeline(p, strict)
        counts.examined += 1
        v = out.verdict
        if v is FilterVerdict.REJECTED_MOD8:
            counts.rejected_mod8 += 1
        elif v is FilterVerdict.REJECTED_LEGENDRE5:
            counts.rejected_legendre5 += 1
        elif v is FilterVerdict.REJECTED_LEGENDRE23:
            counts.rejected_legendre23 += 1
        elif v is FilterVerdict.REJECTED_CUBIC:
            counts.rejected_cubic += 1
            counts.stage1_survivors.append(p)
        else:
            counts.candidates += 1
            counts.stage1_survivors.append(p)
            counts.stage2_survivors.append(p)
    return counts
