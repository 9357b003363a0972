"""Prime enumeration over half-open intervals and the derived interval statistics.

All intervals here are half-open (lo, hi]: the lower endpoint is excluded and
the upper endpoint included.  This convention is fixed once, in this module,
and reused by every consumer.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError, FactorizationError, ValidationError

DEFAULT_SIEVE_LIMIT = 100_000_000
TRIAL_DIVISION_BOUND = 10_000_000

_SEGMENT = 1 << 21


def sieve_limit() -> int:
    """Active sieve capacity: the SUNIT_MAX_SIEVE env override or the default."""
    raw = os.environ.get("SUNIT_MAX_SIEVE")
    return int(raw) if raw else DEFAULT_SIEVE_LIMIT


@dataclass(frozen=True)
class PrimeInterval:
    """The complete ascending list of primes in (lo, hi]."""

    lo: float
    hi: float
    primes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)

    def reciprocal_sum(self) -> Fraction:
        """Exact rational sum of 1/p over the listed primes."""
        return sum((Fraction(1, p) for p in self.primes), Fraction(0))


@dataclass(frozen=True)
class PrimeStats:
    """Interval statistics at scale y.

    ``recip_sum`` is the exact rational sum of 1/q over primes q in
    (y/4, y/2] (the modulus range) and ``prime_count`` the number of primes
    in (y/2, y] (the product range).  The ``*_asymptotic`` fields hold the
    reference values log(2)/log(y) and y/(2 log(y)) for diagnostics only.
    """

    y: float
    modulus_primes: tuple[int, ...]
    product_primes: tuple[int, ...]
    recip_sum: Fraction
    prime_count: int
    recip_sum_asymptotic: float
    prime_count_asymptotic: float


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_interval(lo: float, hi: float, limit: int | None = None) -> PrimeInterval:
    """Enumerate the primes in (lo, hi] with a segmented sieve.

    Raises CapacityError when hi exceeds the configured sieve limit; the
    limit exists so that a typo never silently turns into an hour-long run.
    """
    if lo < 0 or hi < lo:
        raise ValidationError(f"need 0 <= lo <= hi, got lo={lo}, hi={hi}")
    cap = sieve_limit() if limit is None else limit
    if hi > cap:
        raise CapacityError(f"sieve bound {hi} exceeds capacity {cap}")

    first = math.floor(lo) + 1  # smallest integer strictly above lo
    last = math.floor(hi)  # largest integer at most hi
    if last < 2 or last < first:
        return PrimeInterval(lo, hi, ())

    first = max(first, 2)
    base = _simple_sieve(math.isqrt(last))
    primes: list[int] = []
    for seg_lo in range(first, last + 1, _SEGMENT):
        seg_hi = min(seg_lo + _SEGMENT - 1, last)
        mask = np.ones(seg_hi - seg_lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((seg_lo + p - 1) // p) * p)
            if start > seg_hi:
                continue
            mask[start - seg_lo :: p] = False
        if seg_lo <= 1:
            mask[: 2 - seg_lo] = False
        primes.extend(int(n) for n in np.flatnonzero(mask) + seg_lo)
    return PrimeInterval(lo, hi, tuple(primes))


def interval_stats(y: float, limit: int | None = None) -> PrimeStats:
    """Compute the modulus-range reciprocal sum and the product-range count at y."""
    if y < 2:
        raise ValidationError(f"need y >= 2, got {y}")
    q_interval = sieve_interval(y / 4, y / 2, limit)
    p_interval = sieve_interval(y / 2, y, limit)
    log_y = math.log(y)
    return PrimeStats(
        y=y,
        modulus_primes=q_interval.primes,
        product_primes=p_interval.primes,
        recip_sum=q_interval.reciprocal_sum(),
        prime_count=len(p_interval),
        recip_sum_asymptotic=math.log(2) / log_y,
        prime_count_asymptotic=y / (2 * log_y),
    )


# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_VALID_BELOW = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test for n below the supported range."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _MR_VALID_BELOW:
        raise CapacityError(f"{n} is beyond the deterministic primality range")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a >= n:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Find a nontrivial factor of composite odd n; deterministic parameter walk."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y_cur, m = 2, 128
        g = r = q = 1
        x = ys = y_cur
        while g == 1:
            x = y_cur
            for _ in range(r):
                y_cur = (y_cur * y_cur + c) % n
            k = 0
            while k < r and g == 1:
                ys = y_cur
                for _ in range(min(m, r - k)):
                    y_cur = (y_cur * y_cur + c) % n
                    q = q * abs(x - y_cur) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise FactorizationError(f"no factor of {n} found")


def factorize(n: int, trial_bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Full prime factorization: trial division first, then deterministic rho.

    Returns an ascending prime -> exponent map; factorize(1) == {}.
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d <= trial_bound:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                factors[m] = factors.get(m, 0) + 1
                continue
            g = _pollard_brent(m)
            stack.extend((g, m // g))
    return dict(sorted(factors.items()))
