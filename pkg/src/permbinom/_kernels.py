"""Compiled inner loops for the reduced permutation test.

Field elements enter only through the Zech table of F_q: for z = g^(k i) and
a = g^s, log(z + a) = s + zech[(k i - s) mod (q-1)], and z^n (z + a)^k is the
root of unity with index (n i + s + zech[...]) mod r.  ``half`` is log(-1).
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _passes(zech, Q, k, r, n0, s, seen, stamp):
    t = (Q - s) % Q
    for i in range(r):
        z = zech[t]
        if z < 0:
            return False
        idx = (n0 * i + s + z) % r
        if seen[idx] == stamp:
            return False
        seen[idx] = stamp
        t += k
        if t >= Q:
            t -= Q
    return True


@njit(cache=True)
def class_counts(zech, Q, k, half, first_only):
    """Permuting coset representatives per n-class (index 1..r; -1 marks an empty class)."""
    r = Q // k
    d = _gcd(k, r)
    out = np.full(r + 1, -1, np.int64)
    seen = np.zeros(r, np.int64)
    stamp = 0
    for n0 in range(1, r + 1):
        if _gcd(n0, d) != 1:
            continue
        cnt = 0
        for s in range(k):
            if (s + half) % k == 0:
                continue  # -a is an r-th root of unity
            stamp += 1
            if _passes(zech, Q, k, r, n0, s, seen, stamp):
                cnt += 1
                if first_only:
                    break
        out[n0] = cnt
    return out


@njit(cache=True)
def rep_verdicts(zech, Q, k, half, n0):
    """Verdict for each coset representative g^s, s = 0..k-1, of one n-class."""
    r = Q // k
    out = np.zeros(k, np.bool_)
    seen = np.zeros(r, np.int64)
    for s in range(k):
        if (s + half) % k == 0:
            continue
        out[s] = _passes(zech, Q, k, r, n0, s, seen, s + 1)
    return out
