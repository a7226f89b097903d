"""Integer helpers: trial-division primality, factoring, divisors, sieves."""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as ((prime, exponent), ...)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    return f[0]


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n (plain Eratosthenes; use segmented_primes for large n)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def segmented_primes(limit: int, segment: int = 1 << 22) -> Iterator[np.ndarray]:
    """Yield primes < ``limit`` in increasing chunks, one chunk per odd-only segment."""
    if limit <= 2:
        return
    yield np.array([2], dtype=np.int64)
    base = primes_upto(math.isqrt(limit) + 1)[1:]
    low = 3
    while low < limit:
        high = min(low + 2 * segment, limit)  # exclusive
        count = (high - low + 1) // 2
        mask = np.ones(count, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2 :: p] = False
        vals = low + 2 * np.flatnonzero(mask).astype(np.int64)
        yield vals[vals < high]
        low = high if high % 2 == 1 else high + 1


def prime_powers_upto(n: int) -> list[int]:
    """Prime powers q with 2 <= q <= n, ascending."""
    out = []
    for p in primes_upto(n).tolist():
        q = p
        while q <= n:
            out.append(q)
            q *= p
    return sorted(out)


def proper_prime_powers_below(x: float) -> list[int]:
    """Prime powers p**e < x with e >= 2."""
    out = []
    for p in primes_upto(math.isqrt(int(x)) + 1).tolist():
        q = p * p
        while q < x:
            out.append(q)
            q *= p
    return sorted(out)
