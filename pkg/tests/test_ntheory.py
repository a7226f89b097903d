import numpy as np
import sympy

from permbinom.ntheory import (divisors, factorize, is_prime, prime_power, prime_powers_upto, primes_upto,
                               proper_prime_powers_below, segmented_primes)


def test_is_prime_matches_sympy():
    assert [n for n in range(3000) if is_prime(n)] == list(sympy.primerange(0, 3000))


def test_factorize_and_divisors():
    for n in range(1, 2000):
        assert dict(factorize(n)) == sympy.factorint(n)
        assert list(divisors(n)) == sympy.divisors(n)


def test_prime_power():
    assert prime_power(343) == (7, 3)
    assert prime_power(64) == (2, 6)
    assert prime_power(12) is None and prime_power(1) is None
    pp = [q for q in range(2, 500) if prime_power(q)]
    assert pp == list(prime_powers_upto(499))


def test_sieves():
    assert primes_upto(1000).tolist() == list(sympy.primerange(0, 1001))
    got = np.concatenate(list(segmented_primes(200_000, segment=1 << 12))).tolist()
    assert got == list(sympy.primerange(0, 200_000))
    assert list(proper_prime_powers_below(130)) == [4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128]
