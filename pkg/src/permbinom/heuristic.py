"""Expected number of "random" permutation binomials with small gcd(m-n, q-1).

E = sum_r (r!/r^r) F(r), where F(r) sums the prime powers q < e^(r/2) with
q = 1 mod r.  The first R terms are computed exactly; the rest are bounded
with the analytic majorant of each summand (Brun-Titchmarsh for primes, a
crude count for proper prime powers, Rosser-Schoenfeld for phi(r), Stirling
for r!) summed numerically up to ``R_NUM`` and by an integral beyond it.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .errors import DomainError, SieveBudgetExceeded
from .ntheory import prime_power, proper_prime_powers_below, segmented_primes

R_SIEVE_MAX = 40
R_NUM = 10**6
TERM_SLACK = 1e-12
EULER_GAMMA = 0.57721566490153286061


def exp_half_floor(r: int) -> int:
    """floor(e^(r/2)), exact (e^(r/2) is irrational, so q < e^(r/2) iff q <= this)."""
    with mpmath.workdps(60):
        return int(mpmath.floor(mpmath.exp(mpmath.mpf(r) / 2)))


def factorial_weight(r: int) -> float:
    return math.factorial(r) / r**r


def F_table(R: int, r_min: int = 3) -> dict[int, int]:
    """Exact F(r) for r_min <= r <= R from one segmented sieve up to e^(R/2)."""
    if r_min < 3 or R > R_SIEVE_MAX:
        raise SieveBudgetExceeded(f"need 3 <= r <= {R_SIEVE_MAX}, got [{r_min}, {R}]")
    rs = list(range(r_min, R + 1))
    if not rs:
        return {}
    lim = {r: exp_half_floor(r) for r in rs}
    top = lim[R]
    sums = dict.fromkeys(rs, 0)
    for chunk in segmented_primes(top + 1):
        if not len(chunk):
            continue
        lo = int(chunk[0])
        for r in rs:
            if lo > lim[r]:
                continue
            sel = chunk[chunk <= lim[r]]
            sums[r] += int(sel[sel % r == 1].sum())
    for q in proper_prime_powers_below(top + 1):
        for r in rs:
            if q <= lim[r] and q % r == 1:
                sums[r] += q
    return sums


def F_exact(r: int) -> int:
    return F_table(r, r_min=r)[r]


def F_naive(r: int) -> int:
    """Double loop with trial division; oracle for small r."""
    lim = exp_half_floor(r)
    return sum(q for q in range(2, lim + 1) if q % r == 1 and prime_power(q) is not None)


def tail_summand_bound(r) -> float | np.ndarray:
    """Majorant of (r!/r^r) F(r), valid for r >= 3; accepts scalars or arrays."""
    ra = np.asarray(r, dtype=float)
    if (ra < 3).any():
        raise DomainError("majorant needs r >= 3")
    llr = np.log(np.log(ra))
    main = (3 * math.exp(EULER_GAMMA) * llr + 9 / llr) / (ra * (ra / 2 - np.log(ra)))
    small = np.exp(-ra / 4) + ra * np.exp(-ra / 3) / (2 * math.log(2))
    out = np.sqrt(2 * math.pi * ra) * np.exp(1 / (12 * ra)) * (main + small)
    return float(out) if np.ndim(r) == 0 else out


def integral_tail(R0: int) -> float:
    """Upper bound on sum_{r > R0} of the majorant (R0 >= 12), by integral comparison."""
    if R0 < 12:
        raise DomainError("integral comparison needs R0 >= 12")
    B = math.log(R0) / R0
    C = R0 * math.exp(-R0 / 12)
    D = math.exp(1 / (12 * R0))
    G = 9 / math.log(math.log(R0))
    sq = math.sqrt(R0)
    inner = (
        3 * math.exp(EULER_GAMMA) / (0.5 - B) * (2 * math.log(math.log(R0)) / sq + 4 / (math.log(R0) * sq))
        + 2 * G / (0.5 - B) / sq
        + (1 + C / (2 * math.log(2))) * (4 * sq + 8 / sq) * math.exp(-R0 / 4)
    )
    return math.sqrt(2 * math.pi) * D * inner


@dataclass
class HeuristicReport:
    R: int
    f_values: dict = field(default_factory=dict)
    summands: dict = field(default_factory=dict)
    partial_sum: float = 0.0
    numeric_tail: float = 0.0
    integral_tail: float = 0.0
    tail_bound: float = 0.0
    total_bound: float = 0.0
    integral_only_total: float = 0.0  # partial_sum + integral tail from R itself

    def to_json(self) -> dict:
        d = asdict(self)
        d["f_values"] = {str(k): v for k, v in self.f_values.items()}
        d["summands"] = {str(k): v for k, v in self.summands.items()}
        return d


def E_bound(R: int = 37, r_num: int = R_NUM, f_values: dict[int, int] | None = None) -> HeuristicReport:
    if not 3 <= R <= R_SIEVE_MAX:
        raise SieveBudgetExceeded(f"R must lie in [3, {R_SIEVE_MAX}], got {R}")
    f_values = f_values if f_values is not None else F_table(R)
    rep = HeuristicReport(R=R)
    for r in range(3, R + 1):
        rep.f_values[r] = f_values[r]
        rep.summands[r] = factorial_weight(r) * f_values[r]
    up = 1 + TERM_SLACK
    rep.partial_sum = math.fsum(rep.summands.values()) * up
    rs = np.arange(R + 1, r_num + 1, dtype=float)
    rep.numeric_tail = math.fsum(tail_summand_bound(rs).tolist()) * up if len(rs) else 0.0
    rep.integral_tail = integral_tail(max(r_num, R)) * up
    rep.tail_bound = rep.numeric_tail + rep.integral_tail
    rep.total_bound = rep.partial_sum + rep.tail_bound
    if R >= 12:
        rep.integral_only_total = rep.partial_sum + integral_tail(R) * up
    return rep
