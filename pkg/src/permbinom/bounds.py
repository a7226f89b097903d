"""Closed-form inequalities and interval estimates for permutation binomials.

Radical comparisons are cleared to integer arithmetic.  Real-valued
intervals get an outward slack of ``SLACK * (1 + |value|)`` so that rounding
can never manufacture a violation.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .errors import DomainError, NotADivisor, Overflow
from .ntheory import prime_power

SLACK = 1e-9
R_MAX = 12


def _g(q: int, m: int, n: int) -> int:
    if not 0 < n < m:
        raise ValueError(f"need 0 < n < m, got m={m}, n={n}")
    return math.gcd(m - n, q - 1)


def intro1_inequality(p: int, m: int, n: int) -> bool:
    """gcd(m-n, p-1) >= sqrt(p - 3/4) - 1/2, as (2g+1)^2 >= 4p - 3."""
    g = _g(p, m, n)
    return (2 * g + 1) ** 2 >= 4 * p - 3


def wt_inequality(p: int, m: int, n: int) -> bool:
    """p - 1 <= (m-1) * max(n, gcd(m-n, p-1))."""
    return p - 1 <= (m - 1) * max(n, _g(p, m, n))


def nr_inequality(q: int, m: int, n: int, p: int) -> bool:
    """q <= (m-2)^4 + 4m - 4, or m = n p^i for some i >= 0."""
    if not 0 < n < m:
        raise ValueError(f"need 0 < n < m, got m={m}, n={n}")
    if q <= (m - 2) ** 4 + 4 * m - 4:
        return True
    if m % n:
        return False
    t = m // n
    while t % p == 0:
        t //= p
    return t == 1


def genus(r: int) -> int:
    """(r^(r+1) - 2 r^r - r^(r-1) + 2) / 2."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if r > R_MAX:
        raise Overflow(f"r={r} > {R_MAX}")
    return (r ** (r + 1) - 2 * r**r - r ** (r - 1) + 2) // 2


def _out(lo: float, hi: float) -> tuple[float, float]:
    return lo - SLACK * (1 + abs(lo)), hi + SLACK * (1 + abs(hi))


@dataclass(frozen=True)
class TBounds:
    """Bounds on T for (q, r): two Weil-type intervals and the lower bound on T-hat."""

    q: int
    r: int
    cw: tuple[float, float]
    intro2: tuple[float, float]
    hatT_lower: float

    def contains(self, T: int) -> bool:
        return self.cw[0] <= T <= self.cw[1] and self.intro2[0] <= T <= self.intro2[1]


def t_bounds(q: int, r: int) -> TBounds:
    if r < 1 or (q - 1) % r:
        raise NotADivisor(r, q - 1)
    if r > R_MAX:
        raise Overflow(f"r={r} > {R_MAX}")
    s = math.sqrt(q)
    two_g = 2 * genus(r)
    w = math.factorial(r) / r**r
    cw_lo = w * (q + 1 - s * two_g - (r + 1) * r ** (r - 1))
    cw_hi = w * (q + 1 + s * two_g)
    rr = r ** (r - 1)
    fact = math.factorial(r - 1)
    hat = (q - 2 * s + 1) / rr - (r - 3) * s - 2
    i_hi = (q + 2 * s + 1) / rr + (r - 3) * s
    lo_slack = SLACK * (1 + abs(hat))
    return TBounds(
        q=q,
        r=r,
        cw=_out(cw_lo, cw_hi),
        intro2=_out(fact * hat, fact * i_hi),
        hatT_lower=hat - lo_slack,
    )


@dataclass(frozen=True)
class Thresholds:
    cw_gcd_threshold: float
    conj_threshold: float
    r_threshold: float
    log_threshold: float  # 2q / log q, the form used for the q < 10^6 existence data


def thresholds(q: int) -> Thresholds:
    if q < 3:
        raise DomainError(f"log log q undefined for q={q}")
    lq = math.log(q)
    llq = math.log(lq)
    return Thresholds(
        cw_gcd_threshold=2 * q * llq / lq,
        conj_threshold=q / (2 * lq),
        r_threshold=lq / (2 * llq),
        log_threshold=2 * q / lq,
    )


@dataclass
class BoundReport:
    q: int
    m: int
    n: int
    g: int
    r: int
    verdicts: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def bound_report(q: int, m: int, n: int, p: int | None = None) -> BoundReport:
    pe = prime_power(q)
    if pe is None:
        raise DomainError(f"q={q} is not a prime power")
    p = p or pe[0]
    g = _g(q, m, n)
    r = (q - 1) // g
    rep = BoundReport(q=q, m=m, n=n, g=g, r=r)
    rep.verdicts["nr"] = nr_inequality(q, m, n, p)
    if pe[1] == 1:
        rep.verdicts["intro1"] = intro1_inequality(q, m, n)
        rep.verdicts["wt"] = wt_inequality(q, m, n)
    if q >= 3:
        th = thresholds(q)
        rep.values["thresholds"] = asdict(th)
        rep.verdicts["gcd_above_cw_threshold"] = g > th.cw_gcd_threshold
        rep.verdicts["gcd_above_conj_threshold"] = g > th.conj_threshold
    if r <= R_MAX:
        tb = t_bounds(q, r)
        rep.values["genus"] = genus(r)
        rep.values["T_bounds"] = {"cw": list(tb.cw), "intro2": list(tb.intro2), "hatT_lower": tb.hatT_lower}
    return rep
