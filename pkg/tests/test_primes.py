import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import naive_primes
from socprimes.primes import (
    DEFAULT_SEGMENT_SIZE,
    PrimeRange,
    enumerate_primes,
    is_prime,
    primes_in_segment,
    small_primes,
)

NAIVE_BELOW_10K = naive_primes(10**4)


class TestIsPrime:
    def test_exhaustive_below_ten_thousand(self):
        expected = set(NAIVE_BELOW_10K)
        for n in range(10**4):
            assert is_prime(n) == (n in expected), n

    def test_classic_pseudoprimes(self):
        # Carmichael numbers and strong pseudoprimes to small bases
        for n in (561, 1105, 1729, 2047, 3215031751, 3825123056546413051):
            assert not is_prime(n), n

    def test_large_primes(self):
        assert is_prime(2**61 - 1)
        assert is_prime(10**9 + 7)
        assert is_prime(18446744073709551557)  # largest prime below 2^64

    def test_large_composites(self):
        assert not is_prime(2**62 - 1)
        assert not is_prime((10**9 + 7) * (10**9 + 9))

    def test_edges(self):
        assert not is_prime(0)
        assert not is_prime(1)
        assert is_prime(2)
        assert not is_prime(-7)


class TestSmallPrimes:
    def test_known(self):
        assert small_primes(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert small_primes(2) == [2]
        assert small_primes(1) == []
        assert small_primes(0) == []

    def test_against_naive(self):
        assert small_primes(9999) == NAIVE_BELOW_10K


class TestPrimeRange:
    def test_validation(self):
        with pytest.raises(ValueError):
            PrimeRange(-1, 10)
        with pytest.raises(ValueError):
            PrimeRange(10, 9)
        with pytest.raises(ValueError):
            PrimeRange(0, 10, segment_size=1)
        with pytest.raises(ValueError):
            PrimeRange(0, (1 << 63) + 1)

    def test_empty_range_allowed(self):
        assert list(PrimeRange(100, 100).segments()) == []

    def test_default_segment(self):
        assert PrimeRange(0, 10).segment_size == DEFAULT_SEGMENT_SIZE

    @given(st.integers(0, 10**6), st.integers(0, 10**4), st.integers(2, 10**4))
    def test_segments_tile_the_range(self, lo, width, seg):
        rng = PrimeRange(lo, lo + width, seg)
        segs = list(rng.segments())
        if width == 0:
            assert segs == []
            return
        assert segs[0][0] == lo
        assert segs[-1][1] == lo + width
        for (a_lo, a_hi), (b_lo, b_hi) in zip(segs, segs[1:]):
            assert a_hi == b_lo
        assert all(0 < hi - lo_ <= seg for lo_, hi in segs)


class TestEnumeratePrimes:
    def test_against_naive_below_ten_thousand(self):
        got = list(enumerate_primes(PrimeRange(0, 10**4, segment_size=512)))
        assert got == NAIVE_BELOW_10K

    def test_windows(self):
        for lo, hi, seg in [(0, 100, 7), (90, 130, 8), (997, 1010, 3), (50, 50, 16), (0, 3, 2), (7919, 7920, 100)]:
            got = list(enumerate_primes(PrimeRange(lo, hi, seg)))
            want = [p for p in NAIVE_BELOW_10K if lo <= p < hi]
            assert got == want, (lo, hi, seg)

    def test_pi_at_powers_of_ten(self):
        assert sum(1 for _ in enumerate_primes(PrimeRange(0, 10**5))) == 9592

    @given(st.integers(0, 9000), st.integers(0, 900), st.integers(2, 257))
    def test_segmentation_invariance(self, lo, width, seg):
        hi = lo + width
        want = [p for p in NAIVE_BELOW_10K if lo <= p < hi]
        assert list(enumerate_primes(PrimeRange(lo, hi, seg))) == want

    def test_high_window(self):
        # window straddling 10^9 against is_prime as an independent check
        lo, hi = 10**9 - 100, 10**9 + 100
        got = list(enumerate_primes(PrimeRange(lo, hi)))
        want = [n for n in range(lo, hi) if is_prime(n)]
        assert got == want and len(got) > 0


class TestPrimesInSegment:
    def test_base_primes_inside_segment_survive(self):
        base = small_primes(31)
        assert list(primes_in_segment(2, 30, base)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_below_two_clamped(self):
        base = small_primes(10)
        assert list(primes_in_segment(0, 10, base)) == [2, 3, 5, 7]
        assert list(primes_in_segment(5, 5, base)) == []
