"""Non-permutation certificates for binomials over prime fields.

Hermite's criterion: if some 0 < l < p-1 makes f^l mod (x^p - x) have degree
p-1, f is not a permutation.  For f = x^n (x^k + a) and l < p every binomial
coefficient C(l, i) is a unit mod p, so the terms of f^l have degrees
n*l + k*i (0 <= i <= l) independently of a != 0, and "exactly one of those
degrees is divisible by p-1" certifies every a at once.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .binomial import naive_verdicts
from .errors import ExponentOutOfRange, FieldMismatch, InvalidCertificate, PreconditionFailed, TheoremViolation
from .ff import FiniteField

UNIQUE_TERM = "UniqueHermiteTerm"
DEGREE_DIVIDES = "DegreeDividesQMinus1"
MULTIPLE_ROOTS = "MultipleRoots"
SMALL_CASE = "SmallCase"


@dataclass(frozen=True)
class WitnessCertificate:
    """Proof that x^m + a x^n (equivalently x^n (x^k + a), k = m - n) permutes F_p for no a != 0."""

    kind: str
    p: int
    m: int
    n: int
    exponent: int | None = None
    reason: str | None = None

    @property
    def k(self) -> int:
        return self.m - self.n

    def to_json(self) -> dict:
        d = asdict(self)
        d["k"] = self.k
        if d["reason"] is None:
            del d["reason"]
        return d


def intro1_eligible(p: int, k: int) -> bool:
    """k < sqrt(p - 3/4) - 1/2, compared exactly as (2k+1)^2 < 4p - 3."""
    return (2 * k + 1) ** 2 < 4 * p - 3


def remark_impossible(p: int, k: int) -> bool:
    """k >= sqrt(2p - 7/4) - 1/2, i.e. (2k+1)^2 >= 8p - 7."""
    return (2 * k + 1) ** 2 >= 8 * p - 7


def divisible_term_count(p: int, n: int, k: int, ell: int) -> int:
    """Number of i in [0, ell] with n*ell + k*i = 0 mod (p-1)."""
    if not 0 < ell < p or n <= 0 or k <= 0:
        raise ExponentOutOfRange(p, n, k, ell)
    Q = p - 1
    base = n * ell
    return sum(1 for i in range(ell + 1) if (base + k * i) % Q == 0)


def intro1_certificate(p: int, n: int, k: int) -> WitnessCertificate:
    if (p - 1) % k or math.gcd(n, k) != 1:
        raise PreconditionFailed(f"need k | p-1 and gcd(n, k) = 1 (p={p}, n={n}, k={k})")
    if not intro1_eligible(p, k):
        raise PreconditionFailed(f"k={k} >= sqrt(p - 3/4) - 1/2 for p={p}")
    r = -(-(p - 1 - k) // (k * k))
    for ell in (k * (r - 1), k * r):
        if divisible_term_count(p, n, k, ell) == 1:
            return WitnessCertificate(UNIQUE_TERM, p, n + k, n, exponent=ell)
    raise TheoremViolation(f"neither k(r-1) nor kr isolates a term for p={p}, n={n}, k={k}")


def search_unique_divisible(p: int, n: int, k: int) -> int | None:
    """Smallest multiple l of k with 0 < l < p-1 and exactly one term of f^l of degree = 0 mod p-1."""
    if (p - 1) % k or math.gcd(n, k) != 1:
        raise PreconditionFailed(f"need k | p-1 and gcd(n, k) = 1 (p={p}, n={n}, k={k})")
    ell = k
    while ell < p - 1:
        if divisible_term_count(p, n, k, ell) == 1:
            return ell
        ell += k
    return None


def wt_inequality_holds(p: int, m: int, n: int) -> bool:
    return p - 1 <= (m - 1) * max(n, math.gcd(m - n, p - 1))


def wt_certificate(p: int, m: int, n: int) -> WitnessCertificate:
    """Certificate for a pair violating p-1 <= (m-1) max(n, gcd(m-n, p-1)).

    Branches are tried in the order MultipleRoots, SmallCase, DegreeDividesQMinus1,
    UniqueHermiteTerm with exponent floor(p/m) + u, where n u - (m-n) v = r - 1,
    p = m floor(p/m) + r and 0 < u <= m-n.
    """
    if not 0 < n < m < p or math.gcd(m, n) != 1:
        raise PreconditionFailed(f"need gcd(m, n) = 1 and 0 < n < m < p (p={p}, m={m}, n={n})")
    if wt_inequality_holds(p, m, n):
        raise PreconditionFailed(f"p-1 <= (m-1) max(n, g) holds for p={p}, m={m}, n={n}")
    d = m - n
    if math.gcd(d, p - 1) == 1:
        return WitnessCertificate(MULTIPLE_ROOTS, p, m, n)
    k, r = divmod(p, m)
    u = (r - 1) * pow(n, -1, d) % d if d > 1 else 0
    u = u or d
    v, rem = divmod(n * u - (r - 1), d)
    assert rem == 0 and 0 <= v <= n
    if v > k:
        return WitnessCertificate(SMALL_CASE, p, m, n, reason="v>k")
    if 2 * m > p:
        return WitnessCertificate(SMALL_CASE, p, m, n, reason="m>p/2")
    if u + v == m:
        return WitnessCertificate(DEGREE_DIVIDES, p, m, n, exponent=(p - 1) // m)
    return WitnessCertificate(UNIQUE_TERM, p, m, n, exponent=k + u)


# --- direct powering modulo x^p - x ----------------------------------------------

def _fold_index(p: int, degrees: np.ndarray) -> np.ndarray:
    """Reduced degree of x^d modulo x^p - x."""
    return np.where(degrees < p, degrees, (degrees - 1) % (p - 1) + 1)


def _binomial_vectors(p: int, m: int, n: int, a_values: np.ndarray) -> np.ndarray:
    f = np.zeros((len(a_values), p), dtype=np.int64)
    dm, dn = _fold_index(p, np.array([m, n]))
    f[:, dm] += 1
    f[:, dn] += a_values
    return f % p


def _mulmod(u: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """Row-wise product of coefficient vectors modulo (p, x^p - x)."""
    full = 2 * p - 1
    if p**3 < 2**50:
        nfft = 1 << (full - 1).bit_length()
        prod = np.fft.irfft(np.fft.rfft(u, nfft) * np.fft.rfft(v, nfft), nfft)[:, :full]
        prod = np.rint(prod).astype(np.int64) % p
    else:
        prod = np.stack([np.convolve(a, b) % p for a, b in zip(u, v)])
    out = prod[:, :p].copy()
    out[:, 1:] += prod[:, p:]  # x^d -> x^(d-p+1) for p <= d <= 2p-2
    return out % p


def reduced_power(p: int, m: int, n: int, a_values, ell: int) -> np.ndarray:
    """Coefficients (degree 0..p-1) of (x^m + a x^n)^ell mod (p, x^p - x), one row per a."""
    a_values = np.asarray(a_values, dtype=np.int64).reshape(-1)
    base = _binomial_vectors(p, m, n, a_values)
    result = np.zeros_like(base)
    result[:, 0] = 1
    while ell:
        if ell & 1:
            result = _mulmod(result, base, p)
        ell >>= 1
        if ell:
            base = _mulmod(base, base, p)
    return result


def reduced_power_degrees(p: int, m: int, n: int, a: int) -> list[int]:
    """deg(f^l mod x^p - x) for l = 1..p-2, by repeated multiplication with f."""
    cur = np.zeros(p, dtype=np.int64)
    cur[0] = 1
    idx = np.arange(p)
    to_m, to_n = _fold_index(p, idx + m), _fold_index(p, idx + n)
    out = []
    for _ in range(1, p - 1):
        nxt = np.bincount(to_m, weights=cur, minlength=p) + a * np.bincount(to_n, weights=cur, minlength=p)
        cur = nxt.astype(np.int64) % p
        nz = np.flatnonzero(cur)
        out.append(int(nz[-1]) if len(nz) else -1)
    return out


def _degree(rows: np.ndarray) -> np.ndarray:
    nz = rows != 0
    return np.where(nz.any(axis=1), rows.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1), -1)


def certificate_validate(F: FiniteField, cert: WitnessCertificate, sample_as, power_samples: int | None = None) -> bool:
    """Check a certificate against naive evaluation and, where it applies, direct powering.

    ``power_samples`` limits how many of the sampled a also get the powering check
    (default: all of them).  Raises InvalidCertificate on any failed check.
    """
    if F.e != 1 or F.p != cert.p:
        raise FieldMismatch(f"certificate for F_{cert.p} checked in F_{F.q}")
    p, m, n = cert.p, cert.m, cert.n
    a_values = np.array([F.encode(a) for a in sample_as], dtype=np.int64)
    a_values = a_values[a_values != 0]
    if naive_verdicts(F, m, n, a_values).any():
        raise InvalidCertificate(f"{cert} but some sampled a permutes")
    powered = a_values if power_samples is None else a_values[:power_samples]

    if cert.kind == UNIQUE_TERM:
        ell = cert.exponent
        if not 0 < ell < p - 1:
            raise InvalidCertificate(f"exponent {ell} outside (0, p-1)")
        if divisible_term_count(p, n, cert.k, ell) != 1:
            raise InvalidCertificate(f"{cert}: term count is not 1")
        if len(powered) and (_degree(reduced_power(p, m, n, powered, ell)) != p - 1).any():
            raise InvalidCertificate(f"{cert}: f^{ell} does not reach degree p-1")
    elif cert.kind == DEGREE_DIVIDES:
        if m < 2 or (p - 1) % m:
            raise InvalidCertificate(f"{cert}: m does not divide p-1")
        ell = (p - 1) // m
        if len(powered) and (_degree(reduced_power(p, m, n, powered, ell)) != p - 1).any():
            raise InvalidCertificate(f"{cert}: f^{ell} does not reach degree p-1")
    elif cert.kind == MULTIPLE_ROOTS:
        x = np.arange(p, dtype=np.int64)
        xm, xn = F.vpow(x, m), F.vpow(x, n)
        vals = (xm[None, :] + a_values[:, None] * xn[None, :]) % p
        if ((vals == 0).sum(axis=1) < 2).any():
            raise InvalidCertificate(f"{cert}: some sampled a gives a single root")
    elif cert.kind != SMALL_CASE:
        raise InvalidCertificate(f"unknown certificate kind {cert.kind!r}")
    return True
