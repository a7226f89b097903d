"""Permutation tests and exact counts for binomials x^m + a*x^n over F_q.

Every binomial with gcd(m, n, q-1) = 1 is reduced to the shape x^n (x^k + a)
with k | q-1 and gcd(n, k) = 1.  Substituting x -> x^j for a unit j does not
change the permutation property, and on F_q^* only n mod r = (q-1)/k matters
once gcd(n, k) = 1.  The reduced test then checks that
g(z) = z^n (z + a)^k permutes the r-th roots of unity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadExponents, FieldMismatch, PreconditionFailed, ZeroCoefficient
from .ff import FieldElement, FiniteField, roots_of_unity_enc


@dataclass(frozen=True)
class Binomial:
    """x^m + a*x^n over F_q."""

    q: int
    m: int
    n: int
    a: FieldElement

    def __post_init__(self):
        if not 0 < self.n < self.m:
            raise BadExponents(self.m, self.n)
        if self.a.field.q != self.q:
            raise FieldMismatch(f"coefficient lives in F_{self.a.field.q}, not F_{self.q}")

    def __str__(self) -> str:
        return f"x^{self.m} + ({self.a})*x^{self.n} over F_{self.q}"


@dataclass(frozen=True)
class CanonicalBinomial:
    """x^n (x^k + a) with k | q-1, gcd(n, k) = 1, r = (q-1)/k; reached via x -> x^j."""

    q: int
    n: int
    k: int
    r: int
    j: int

    @property
    def m(self) -> int:
        return self.n + self.k


@dataclass(frozen=True)
class Obstruction:
    reason: str  # "GcdFails" or "NoClassRep"


def class_rep(n: int, k: int, r: int) -> int | None:
    """Smallest positive integer congruent to n mod r and coprime to k."""
    n0 = n % r or r
    if math.gcd(n0, math.gcd(k, r)) != 1:
        return None
    for t in range(k + 1):
        if math.gcd(n0 + t * r, k) == 1:
            return n0 + t * r
    return None  # unreachable when the gcd test passes


def canonicalize(q: int, m: int, n: int) -> CanonicalBinomial | Obstruction:
    if not 0 < n < m:
        raise BadExponents(m, n)
    Q = q - 1
    if math.gcd(math.gcd(m, n), Q) > 1:
        return Obstruction("GcdFails")
    d = m - n
    k = math.gcd(d, Q)
    j = next(j for j in range(1, Q + 1) if (j * d - k) % Q == 0 and math.gcd(j, Q) == 1)
    r = Q // k
    nc = class_rep(n * j, k, r)
    if nc is None:
        return Obstruction("NoClassRep")
    return CanonicalBinomial(q=q, n=nc, k=k, r=r, j=j)


# --- naive evaluation --------------------------------------------------------

def _check_field(F: FiniteField, q: int) -> None:
    if F.q != q:
        raise FieldMismatch(f"F_{F.q} vs q={q}")


def naive_verdicts(F: FiniteField, m: int, n: int, a_values) -> np.ndarray:
    """Permutation verdict of x^m + a x^n for each encoded a, by evaluating at every x."""
    a_values = np.asarray(a_values, dtype=np.int64).reshape(-1)
    x = np.arange(F.q, dtype=np.int64)
    xm, xn = F.vpow(x, m), F.vpow(x, n)
    vals = F.vadd(xm[None, :], F.vmul(a_values[:, None], xn[None, :]))
    # a row is a permutation iff its sorted values are exactly 0..q-1
    vals.sort(axis=1)
    return (vals == x[None, :]).all(axis=1)


def is_permutation_naive(F: FiniteField, b: Binomial) -> bool:
    _check_field(F, b.q)
    x = np.arange(F.q, dtype=np.int64)
    vals = F.vadd(F.vpow(x, b.m), F.vmul(np.int64(F.encode(b.a)), F.vpow(x, b.n)))
    seen = np.zeros(F.q, dtype=bool)
    seen[vals] = True
    return bool(seen.all())


def count_T_naive(F: FiniteField, m: int, n: int) -> int:
    if not 0 < n < m:
        raise BadExponents(m, n)
    return int(naive_verdicts(F, m, n, np.arange(F.q)).sum())


# --- reduced test --------------------------------------------------------------

def is_permutation_reduced(F: FiniteField, c: CanonicalBinomial, a) -> bool:
    """Decide whether x^n (x^k + a) permutes F_q via the map z -> z^n (z + a)^k on mu_r."""
    _check_field(F, c.q)
    a = F.encode(a)
    if a == 0:
        raise ZeroCoefficient("the reduced test needs a != 0")
    r, k = c.r, c.k
    if F.pow(F.neg(a), r) == 1:
        return False  # z + a = 0 for z = -a in mu_r
    mu = roots_of_unity_enc(F, r)
    members = set(mu)
    nr = c.n % r
    seen = set()
    for z in mu:
        val = F.mul(F.pow(z, nr), F.pow(F.add(z, a), k))
        if val not in members or val in seen:
            return False
        seen.add(val)
    return True


def reduced_rep_verdicts(F: FiniteField, n: int, k: int) -> np.ndarray:
    """Verdicts of x^n (x^k + g^s) for s = 0..k-1, vectorised through Zech logarithms.

    With z = g^(k i) and a = g^s, log(z + a) = s + zech[k i - s], so g(z) is the
    root of unity of index (n i + s + zech[k i - s]) mod r.
    """
    Q = F.q - 1
    r = Q // k
    zech = F.tables.zech
    s = np.arange(k, dtype=np.int64)[:, None]
    i = np.arange(r, dtype=np.int64)[None, :]
    z = zech[(k * i - s) % Q]
    idx = (n * i + s + z) % r
    idx.sort(axis=1)
    ok = (idx == i).all(axis=1)
    return ok & ~(z < 0).any(axis=1)


def reduced_all_verdicts(F: FiniteField, n: int, k: int) -> np.ndarray:
    """Verdicts for every nonzero a = g^s, s = 0..q-2 (no coset folding)."""
    Q = F.q - 1
    r = Q // k
    zech = F.tables.zech
    s = np.arange(Q, dtype=np.int64)[:, None]
    i = np.arange(r, dtype=np.int64)[None, :]
    z = zech[(k * i - s) % Q]
    idx = (n * i + s + z) % r
    idx.sort(axis=1)
    return (idx == i).all(axis=1) & ~(z < 0).any(axis=1)


def is_permutation(F: FiniteField, m: int, n: int, a) -> bool:
    """Decision through canonicalize + reduced test, handling a = 0 and obstructions."""
    a = F.encode(a)
    if a == 0:
        if not 0 < n < m:
            raise BadExponents(m, n)
        return math.gcd(m, F.q - 1) == 1
    c = canonicalize(F.q, m, n)
    if isinstance(c, Obstruction):
        return False
    return is_permutation_reduced(F, c, a)


def count_T(F: FiniteField, m: int, n: int) -> int:
    """Number of a in F_q (a = 0 included) for which x^m + a x^n permutes F_q."""
    if not 0 < n < m:
        raise BadExponents(m, n)
    zero = int(math.gcd(m, F.q - 1) == 1)
    c = canonicalize(F.q, m, n)
    if isinstance(c, Obstruction):
        return zero
    return zero + c.r * int(reduced_rep_verdicts(F, c.n, c.k).sum())


# --- known families ------------------------------------------------------------

def mathieu_check(F: FiniteField, i: int, a) -> bool:
    """True iff a is not a (p^i - 1)-th power, so that x^(p^i) - a x permutes F_q."""
    if i < 1 or F.p**i > F.q:
        raise PreconditionFailed(f"need 1 <= i and p^i <= q, got i={i}")
    return not F.is_power(F.encode(a), F.p**i - 1)


def tz_check(F: FiniteField, a) -> bool:
    """True iff a^(p-1) has multiplicative order 6 (x^(p+2) + a x then permutes F_{p^2})."""
    if F.e != 2:
        raise PreconditionFailed("family lives over F_{p^2}")
    a = F.encode(a)
    if a == 0:
        return False
    return F.order_of(F.pow(a, F.p - 1)) == 6
