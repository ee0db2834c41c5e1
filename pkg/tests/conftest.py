"""Shared oracles for the test suite.

Everything here is deliberately naive: trial division, Euler's criterion,
full-range root scans, a dict-only factorial walk.  The point is an
arithmetic path independent of the package's production code, so the two
can disagree loudly when one is wrong.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def naive_primes(limit: int) -> list[int]:
    """Trial-division primes below limit."""
    out = []
    for n in range(2, limit):
        if all(n % d for d in range(2, int(n**0.5) + 1)):
            out.append(n)
    return out


def euler_symbol(a: int, p: int) -> int:
    """Legendre symbol via Euler's criterion; p must be an odd prime."""
    r = pow(a % p, (p - 1) // 2, p)
    return r - p if r > 1 else r


def brute_cubic_roots(b: int, c: int, d: int, p: int) -> tuple[int, ...]:
    """Roots of y^3 + b y^2 + c y + d mod p by evaluating everywhere."""
    return tuple(y for y in range(p) if (((y + b) * y + c) * y + d) % p == 0)


def reference_scan(p: int) -> tuple:
    """Dict-backed factorial walk with the same event rules as the package.

    Returns ("Collision", j, k, residue), ("NegHalfHit", k, residue) or
    ("Socialist",).  The negative-half comparison runs only for
    p == 1 (mod 4), past the midpoint, and after the duplicate check at
    the same k.
    """
    half = (p - 1) // 2
    check_neg = p % 4 == 1
    seen: dict[int, int] = {}
    f = 1
    neg_h = None
    for k in range(2, p):
        f = f * k % p
        if f in seen:
            return ("Collision", seen[f], k, f)
        if check_neg:
            if k == half:
                neg_h = p - f
            elif k > half and f == neg_h:
                return ("NegHalfHit", k, f)
        seen[f] = k
    return ("Socialist",)


def verdict_tuple(v) -> tuple:
    """Flatten a package Verdict into the reference_scan tuple shape."""
    kind = v.kind.value
    if kind == "Collision":
        return ("Collision", v.j, v.k, v.residue)
    if kind == "NegHalfHit":
        return ("NegHalfHit", v.k, v.residue)
    return (kind,)
