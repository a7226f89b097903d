"""Search campaigns over ranges of q, record persistence, and the shared survey engine.

Every binomial with gcd(m, n, q-1) = 1 is equivalent to some x^n (x^k + a)
with k | q-1; for fixed k only the class of n mod r = (q-1)/k matters, and
only the coset of a modulo k-th powers.  A field therefore contributes
sum over k | q-1 of k * (number of n-classes) cases, all decided by the
reduced test.  Work is split per field; results are sorted before they leave
a campaign, so the output does not depend on the worker schedule.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .binomial import class_rep, naive_verdicts, reduced_all_verdicts
from .bounds import thresholds
from .errors import NotADivisor, NotPrimePower
from .ff import FiniteField, construct_field, field_of_order
from .ntheory import divisors, prime_power, prime_powers_upto, primes_upto

FIELDS = ("q", "p", "e", "k", "n", "a", "permutes", "g", "r")


@dataclass(frozen=True, order=True)
class ScanRecord:
    q: int
    k: int
    n: int
    s: int  # a = g^s, the coset representative
    p: int
    e: int
    a: str
    permutes: bool

    @property
    def g(self) -> int:
        return self.k

    @property
    def r(self) -> int:
        return (self.q - 1) // self.k

    def to_json(self) -> dict:
        return {"q": self.q, "p": self.p, "e": self.e, "k": self.k, "n": self.n, "a": self.a,
                "permutes": self.permutes, "g": self.g, "r": self.r}


@dataclass(frozen=True, order=True)
class ClassOutcome:
    """One (q, k, n-class) with the number of permuting coset representatives."""

    q: int
    k: int
    n: int
    count: int

    @property
    def r(self) -> int:
        return (self.q - 1) // self.k

    @property
    def T_class(self) -> int:
        return self.r * self.count

    def to_json(self) -> dict:
        return {"q": self.q, "g": self.k, "n": self.n, "r": self.r, "reps": self.count, "T_class": self.T_class}


@dataclass
class CampaignResult:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    permuting: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "campaign": self.name,
            "checked": self.checked,
            "ok": self.ok,
            "violations": [v.to_json() if hasattr(v, "to_json") else v for v in self.violations],
            "permuting_classes": len(self.permuting),
            "notes": self.notes,
        }


def _half(F: FiniteField) -> int:
    """log_g(-1)."""
    return 0 if F.p == 2 else (F.q - 1) // 2


def default_jobs() -> int:
    return int(os.environ.get("PB_JOBS", "1"))


def _pmap(func, items, jobs: int | None):
    jobs = jobs or default_jobs()
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(func, items, chunksize=max(1, len(items) // (8 * jobs))))


# --- per-field engine ------------------------------------------------------------

def field_survey(q: int, first_only: bool = False, k_min: float = 0, k_only: tuple[int, ...] | None = None) -> list[ClassOutcome]:
    """Outcome of every (k, n-class) over F_q, optionally restricted to k > k_min or k in k_only."""
    from ._kernels import class_counts

    F = field_of_order(q)
    Q = q - 1
    zech = F.tables.zech
    half = _half(F)
    out = []
    for k in divisors(Q):
        if k <= k_min or (k_only is not None and k not in k_only):
            continue
        counts = class_counts(zech, Q, k, half, first_only)
        r = Q // k
        for n0 in range(1, r + 1):
            if counts[n0] >= 0:
                out.append(ClassOutcome(q, k, class_rep(n0, k, r), int(counts[n0])))
    return sorted(out)


def scan_field(q: int) -> list[ScanRecord]:
    """One record per (k, n-class, coset representative) of F_q, ordered by (k, n, rep exponent)."""
    from ._kernels import rep_verdicts

    if prime_power(q) is None:
        raise NotPrimePower(q)
    F = field_of_order(q)
    Q = q - 1
    zech = F.tables.zech
    half = _half(F)
    exp = F.tables.exp
    out = []
    for k in divisors(Q):
        r = Q // k
        d = math.gcd(k, r)
        for n0 in range(1, r + 1):
            if math.gcd(n0, d) != 1:
                continue
            n = class_rep(n0, k, r)
            verdicts = rep_verdicts(zech, Q, k, half, n0)
            for s in range(k):
                out.append(ScanRecord(q, k, n, s, F.p, F.e, F.to_text(int(exp[s])), bool(verdicts[s])))
    return sorted(out)


def expected_record_count(q: int) -> int:
    Q = q - 1
    total = 0
    for k in divisors(Q):
        r = Q // k
        d = math.gcd(k, r)
        total += k * sum(1 for n0 in range(1, r + 1) if math.gcd(n0, d) == 1)
    return total


def aggregate_T(records: list[ScanRecord]) -> dict[tuple[int, int, int], int]:
    """(q, k, n) -> r * (number of permuting representatives): T restricted to a != 0."""
    out: dict[tuple[int, int, int], int] = {}
    for rec in records:
        key = (rec.q, rec.k, rec.n)
        out[key] = out.get(key, 0) + (rec.r if rec.permutes else 0)
    return out


def scan_range(q_min: int, q_max: int, jobs: int | None = None) -> list[ScanRecord]:
    qs = [q for q in prime_powers_upto(q_max) if q >= max(q_min, 3)]
    return [rec for recs in _pmap(scan_field, qs, jobs) for rec in recs]


# --- prime-field campaigns ---------------------------------------------------------

def _prime_permuting(p: int) -> list[ClassOutcome]:
    return [c for c in field_survey(p) if c.count > 0]


def prime_class_survey(p_max: int, jobs: int | None = None) -> list[ClassOutcome]:
    """All permuting (p, k, n-class) over primes p <= p_max."""
    primes = [p for p in primes_upto(p_max).tolist() if p >= 3]
    return [c for cs in _pmap(_prime_permuting, primes, jobs) for c in cs]


def intro1_violations(outcomes) -> list[ClassOutcome]:
    """Permuting classes with gcd < sqrt(p - 3/4) - 1/2."""
    return [c for c in outcomes if c.count > 0 and (2 * c.k + 1) ** 2 < 4 * c.q - 3]


def conjecture_violations(outcomes, c: float = 2.0) -> list[ClassOutcome]:
    """Permuting classes with gcd <= p / (c log p)."""
    return [o for o in outcomes if o.count > 0 and o.k <= o.q / (c * math.log(o.q))]


def verify_intro1(p_max: int, jobs: int | None = None, outcomes=None) -> CampaignResult:
    outcomes = prime_class_survey(p_max, jobs) if outcomes is None else outcomes
    res = CampaignResult("intro1", checked=len(primes_upto(p_max)), permuting=list(outcomes))
    res.violations = intro1_violations(outcomes)
    return res


def verify_conjecture(p_max: int, c: float = 2.0, jobs: int | None = None, outcomes=None) -> CampaignResult:
    outcomes = prime_class_survey(p_max, jobs) if outcomes is None else outcomes
    res = CampaignResult(f"conjecture(c={c})", checked=len(primes_upto(p_max)), permuting=list(outcomes))
    res.violations = conjecture_violations(outcomes, c)
    return res


def existence_threshold(q: int, form: str = "loglog") -> float:
    th = thresholds(q)
    if form == "loglog":
        return th.cw_gcd_threshold
    if form == "log":
        return th.log_threshold
    raise ValueError(f"unknown threshold form {form!r}")


def _existence_misses(args) -> tuple[int, list[ClassOutcome]]:
    q, form = args
    outs = field_survey(q, first_only=True, k_min=existence_threshold(q, form))
    return len(outs), [c for c in outs if c.count == 0]


def verify_existence(q_max: int, form: str = "loglog", jobs: int | None = None) -> CampaignResult:
    """Every (k, n-class) over F_q, 4 <= q <= q_max, with k above the threshold has some a != 0."""
    qs = [q for q in prime_powers_upto(q_max) if q >= 4]
    res = CampaignResult(f"existence({form})", checked=0)
    for checked, misses in _pmap(_existence_misses, [(q, form) for q in qs], jobs):
        res.checked += checked
        res.violations.extend(misses)
    if form == "loglog":
        res.notes.append("threshold 2q loglog q / log q; the q < 10^6 data in the introduction uses 2q / log q (form='log')")
    return res


def _corollary_row(args) -> list[int]:
    p, gs = args
    gs = tuple(g for g in gs if (p - 1) % g == 0)
    if not gs:
        return []
    return sorted({c.k for c in field_survey(p, first_only=True, k_only=gs) if c.count > 0})


def corollary_table(g_values, p_max: int, jobs: int | None = None) -> dict[int, set[int]]:
    """g -> primes p <= p_max for which some x^n (x^k + a), gcd(k, p-1) = g, a != 0, permutes F_p."""
    g_values = tuple(sorted(set(g_values)))
    table: dict[int, set[int]] = {g: set() for g in g_values}
    primes = primes_upto(p_max).tolist()
    for p, hits in zip(primes, _pmap(_corollary_row, [(p, g_values) for p in primes], jobs)):
        for g in hits:
            table[g].add(p)
    return table


# --- universal a -----------------------------------------------------------------

def universal_a_search(F: FiniteField, r: int) -> set[int]:
    """Encodings a such that x^n (x^k + a) permutes F_q for all n, k > 0 with
    gcd(n, q-1) = 1 and gcd(k, q-1) = (q-1)/r (exponents taken mod q-1)."""
    Q = F.q - 1
    if r < 1 or Q % r:
        raise NotADivisor(r, Q)
    d = Q // r
    ns = [n for n in range(1, Q + 1) if math.gcd(n, Q) == 1]
    ks = [k for k in range(1, Q + 1) if math.gcd(k, Q) == d]
    ok = np.ones(Q, dtype=bool)  # index s <-> a = g^s
    zero_ok = True
    seen: set[tuple[int, int]] = set()
    for k in ks:
        j = next(j for j in range(1, Q + 1) if (j * k - d) % Q == 0 and math.gcd(j, Q) == 1)
        for n in ns:
            zero_ok &= math.gcd(n + k, Q) == 1
            n0 = n * j % r or r
            if (n0, d) in seen:
                continue
            seen.add((n0, d))
            ok &= reduced_all_verdicts(F, class_rep(n0, d, r), d)
    out = {int(F.tables.exp[s]) for s in np.flatnonzero(ok)}
    if zero_ok:
        out.add(0)
    return out


def universal_a_naive(F: FiniteField, r: int) -> set[int]:
    """Same set by direct evaluation of every (n, k) pair; for small q only."""
    Q = F.q - 1
    d = Q // r
    ok = np.ones(F.q, dtype=bool)
    for k in (k for k in range(1, Q + 1) if math.gcd(k, Q) == d):
        for n in (n for n in range(1, Q + 1) if math.gcd(n, Q) == 1):
            ok &= naive_verdicts(F, n + k, n, np.arange(F.q))
    return set(np.flatnonzero(ok).tolist())


# --- persistence -------------------------------------------------------------------

def _meta(F: FiniteField) -> dict:
    return {"q": F.q, "p": F.p, "e": F.e, "modulus": list(F.modulus), "generator": F.to_text(F.gen)}


def emit_records(records, fmt: str, path=None, fields: list[FiniteField] | None = None) -> str:
    """Serialise records (JSONL or CSV) behind one metadata line per field; returns the text.

    ``fields`` lists the fields whose metadata heads the file; by default the
    fields of the records themselves.  Writes to ``path`` when given.
    """
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"format must be jsonl or csv, got {fmt!r}")
    records = sorted(records)
    if fields is None:
        fields = [field_of_order(q) for q in sorted({rec.q for rec in records})]
    buf = io.StringIO()
    if fmt == "jsonl":
        for F in fields:
            buf.write(json.dumps({"meta": _meta(F)}, sort_keys=True) + "\n")
        for rec in records:
            buf.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
    else:
        for F in fields:
            buf.write("# meta " + json.dumps(_meta(F), sort_keys=True) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for rec in records:
            row = rec.to_json()
            row["permutes"] = int(row["permutes"])
            w.writerow([row[c] for c in FIELDS])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_records(text: str, fmt: str) -> tuple[list[dict], list[ScanRecord]]:
    """Parse emit_records output back into (metadata, records)."""
    metas, recs = [], []
    if fmt == "jsonl":
        rows = []
        for line in text.splitlines():
            obj = json.loads(line)
            if "meta" in obj:
                metas.append(obj["meta"])
            else:
                rows.append(obj)
    else:
        lines = text.splitlines()
        body = [ln for ln in lines if not ln.startswith("# meta ")]
        metas = [json.loads(ln[len("# meta "):]) for ln in lines if ln.startswith("# meta ")]
        rows = []
        for row in csv.DictReader(body):
            rows.append({c: (row[c] if c == "a" else int(row[c])) for c in FIELDS})
            rows[-1]["permutes"] = bool(rows[-1]["permutes"])
    for row in rows:
        F = construct_field(row["p"], row["e"])
        s = F.log(F.from_text(row["a"]))
        recs.append(ScanRecord(row["q"], row["k"], row["n"], s, row["p"], row["e"], row["a"], row["permutes"]))
    return metas, recs
