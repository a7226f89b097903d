"""Non-permutation certificates and direct powering."""
import math

import numpy as np
import pytest

from permbinom.binomial import naive_verdicts
from permbinom.errors import ExponentOutOfRange, InvalidCertificate, PreconditionFailed
from permbinom.ff import construct_field
from permbinom.hermite import (DEGREE_DIVIDES, MULTIPLE_ROOTS, SMALL_CASE, UNIQUE_TERM, WitnessCertificate,
                               certificate_validate, divisible_term_count, intro1_certificate, intro1_eligible,
                               reduced_power, reduced_power_degrees, remark_impossible, search_unique_divisible,
                               wt_certificate, wt_inequality_holds)
from permbinom.ntheory import primes_upto


def _power_oracle(p, m, n, a, ell):
    # schoolbook expansion with explicit folding, independent of the FFT path
    poly = {m: 1}
    poly[n] = (poly.get(n, 0) + a) % p
    out = {0: 1}
    for _ in range(ell):
        nxt = {}
        for d1, c1 in out.items():
            for d2, c2 in poly.items():
                d = d1 + d2
                while d >= p:
                    d -= p - 1
                nxt[d] = (nxt.get(d, 0) + c1 * c2) % p
        out = {d: c for d, c in nxt.items() if c}
    vec = [0] * p
    for d, c in out.items():
        vec[d] = c
    return vec


def test_term_counts_frozen():
    assert divisible_term_count(13, 1, 3, 6) == 2
    assert divisible_term_count(17, 1, 2, 8) == 1
    assert divisible_term_count(11, 1, 5, 5) == 3
    with pytest.raises(ExponentOutOfRange):
        divisible_term_count(11, 1, 5, 11)


def test_intro1_frozen():
    assert intro1_certificate(17, 1, 2).exponent == 6
    assert intro1_certificate(11, 1, 2).exponent == 4
    with pytest.raises(PreconditionFailed):
        intro1_certificate(13, 1, 3)


def test_search_frozen():
    assert search_unique_divisible(17, 1, 2) == 6
    assert search_unique_divisible(11, 1, 5) is None
    assert search_unique_divisible(7, 1, 6) is None


def test_wt_frozen():
    c = wt_certificate(19, 5, 1)
    assert (c.kind, c.exponent) == (UNIQUE_TERM, 6)
    c = wt_certificate(13, 4, 1)
    assert (c.kind, c.exponent) == (DEGREE_DIVIDES, 3)
    assert wt_certificate(17, 5, 2).kind == MULTIPLE_ROOTS
    with pytest.raises(PreconditionFailed):
        wt_certificate(7, 4, 1)


def test_power_matches_schoolbook():
    for p, m, n, ell in [(7, 4, 1, 3), (11, 3, 1, 7), (13, 9, 2, 11), (17, 5, 3, 6), (31, 20, 7, 29)]:
        got = reduced_power(p, m, n, [1, 2, p - 1], ell)
        for row, a in zip(got, [1, 2, p - 1]):
            assert row.tolist() == _power_oracle(p, m, n, a, ell)


def test_power_degrees_match():
    p, m, n, a = 13, 5, 2, 3
    degs = reduced_power_degrees(p, m, n, a)
    for ell in range(1, p - 1):
        vec = _power_oracle(p, m, n, a, ell)
        nz = [d for d, c in enumerate(vec) if c]
        assert degs[ell - 1] == (nz[-1] if nz else -1)


def test_hermite_criterion_consistency():
    # permutation iff no f^l (0 < l < p-1) has degree p-1 and f has one root
    for p in (7, 11, 13):
        F = construct_field(p)
        for m in range(2, p - 1):
            for n in range(1, m):
                for a in range(1, p):
                    perm = bool(naive_verdicts(F, m, n, [a])[0])
                    degs = reduced_power_degrees(p, m, n, a)
                    hermite_bad = any(d == p - 1 for d in degs)
                    if perm:
                        assert not hermite_bad


@pytest.mark.parametrize("p", [int(p) for p in primes_upto(100) if p >= 5])
def test_intro1_sound_all_a(p):
    F = construct_field(p)
    for k in range(1, p - 1):
        if (p - 1) % k or not intro1_eligible(p, k):
            continue
        r = (p - 1) // k
        for n in range(1, r + 1):
            if math.gcd(n, k) != 1:
                continue
            cert = intro1_certificate(p, n, k)
            assert certificate_validate(F, cert, range(1, p))


@pytest.mark.parametrize("p", [int(p) for p in primes_upto(100) if p >= 5])
def test_wt_sound_all_a(p):
    F = construct_field(p)
    kinds = set()
    for m in range(2, p):
        for n in range(1, m):
            if math.gcd(m, n) != 1 or wt_inequality_holds(p, m, n):
                continue
            cert = wt_certificate(p, m, n)
            kinds.add(cert.kind)
            assert certificate_validate(F, cert, range(1, p))
            assert not naive_verdicts(F, m, n, np.arange(1, p)).any()


def test_search_none_beyond_remark_bound():
    for p in primes_upto(200).tolist():
        for k in range(1, p - 1):
            if (p - 1) % k == 0 and remark_impossible(p, k):
                for n in range(1, (p - 1) // k + 1):
                    if math.gcd(n, k) == 1:
                        assert search_unique_divisible(p, n, k) is None


def test_validate_rejects_forgery():
    F = construct_field(7)
    # x^4 + 3x permutes F_7, so no certificate can be valid
    with pytest.raises(InvalidCertificate):
        certificate_validate(F, WitnessCertificate(SMALL_CASE, 7, 4, 1), [3])
    with pytest.raises(InvalidCertificate):
        certificate_validate(construct_field(17), WitnessCertificate(UNIQUE_TERM, 17, 3, 1, exponent=2), [1])


def test_certificate_json():
    d = wt_certificate(19, 5, 1).to_json()
    assert d == {"kind": UNIQUE_TERM, "p": 19, "m": 5, "n": 1, "k": 4, "exponent": 6}
