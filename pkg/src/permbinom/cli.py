"""Command line entry point ``pb``.

Exit status: 0 clean, 1 when a check finds violations (or a verdict is
negative), 2 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys

from . import hermite
from .binomial import Obstruction, canonicalize, count_T, is_permutation
from .bounds import bound_report
from .errors import PermBinomError
from .ff import field_of_order
from .heuristic import E_bound
from .ntheory import is_prime, prime_power
from . import scan

_POWER = re.compile(r"^(-?)g(?:\^(-?\d+))?$")


def parse_element(F, text: str) -> int:
    """Element from 'g', '-g', 'g^k', '-g^k' or the field's text form."""
    text = text.strip().replace(" ", "")
    m = _POWER.match(text)
    if m:
        u = F.pow(F.gen, int(m.group(2) or 1) % (F.q - 1))
        return F.neg(u) if m.group(1) else u
    if text.startswith("-") and "," not in text:
        return F.neg(F.from_text(text[1:]))
    return F.from_text(text)


def _field(q: int):
    if prime_power(q) is None:
        raise PermBinomError(f"q={q} is not a prime power")
    return field_of_order(q)


def _dump(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_test(args) -> int:
    F = _field(args.q)
    a = parse_element(F, args.a)
    verdict = is_permutation(F, args.m, args.n, a)
    _dump({"q": args.q, "m": args.m, "n": args.n, "a": F.to_text(a), "permutes": verdict})
    return 0 if verdict else 1


def cmd_scan(args) -> int:
    recs = scan.scan_range(args.q_min, args.q_max, jobs=args.jobs)
    text = scan.emit_records(recs, args.format, path=args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def cmd_count_t(args) -> int:
    F = _field(args.q)
    c = canonicalize(args.q, args.m, args.n)
    out = {"q": args.q, "m": args.m, "n": args.n, "T": count_T(F, args.m, args.n),
           "a0_permutes": is_permutation(F, args.m, args.n, 0)}
    if isinstance(c, Obstruction):
        out["obstruction"] = c.reason
    else:
        out.update(g=c.k, r=c.r, canonical_n=c.n)
    _dump(out)
    return 0


def cmd_certify(args) -> int:
    p, m, n = args.p, args.m, args.n
    if not is_prime(p):
        raise PermBinomError(f"p={p} is not prime")
    out: dict = {"p": p, "m": m, "n": n}
    cert = None
    if m < p and math.gcd(m, n) == 1 and not hermite.wt_inequality_holds(p, m, n):
        cert = hermite.wt_certificate(p, m, n)
    else:
        c = canonicalize(p, m, n)
        if isinstance(c, Obstruction):
            out["obstruction"] = c.reason
        else:
            out["canonical"] = {"n": c.n, "k": c.k}
            if c.k < p - 1:
                if hermite.intro1_eligible(p, c.k):
                    cert = hermite.intro1_certificate(p, c.n, c.k)
                else:
                    ell = hermite.search_unique_divisible(p, c.n, c.k)
                    if ell is not None:
                        cert = hermite.WitnessCertificate(hermite.UNIQUE_TERM, p, c.n + c.k, c.n, exponent=ell)
    out["certificate"] = cert.to_json() if cert else None
    _dump(out)
    return 0 if cert or "obstruction" in out else 1


def cmd_bounds(args) -> int:
    _dump(bound_report(args.q, args.m, args.n).to_json())
    return 0


def cmd_heuristic(args) -> int:
    rep = E_bound(args.R)
    _dump(rep.to_json())
    if args.table:
        with open(args.table, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["r", "F", "summand"])
            for r in sorted(rep.f_values):
                w.writerow([r, rep.f_values[r], repr(rep.summands[r])])
    return 0


def _campaign(res) -> int:
    _dump(res.to_json())
    return 1 if res.violations else 0


def cmd_verify_intro1(args) -> int:
    return _campaign(scan.verify_intro1(args.max_p, jobs=args.jobs))


def cmd_verify_conjecture(args) -> int:
    return _campaign(scan.verify_conjecture(args.max_p, args.c, jobs=args.jobs))


def cmd_verify_existence(args) -> int:
    return _campaign(scan.verify_existence(args.max_q, form=args.form, jobs=args.jobs))


def cmd_corollary_table(args) -> int:
    gs = [int(x) for x in args.g_list.split(",") if x]
    table = scan.corollary_table(gs, args.max_p, jobs=args.jobs)
    _dump({str(g): sorted(ps) for g, ps in table.items()})
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pb", description="Permutation binomials over finite fields.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def jobs(sp):
        sp.add_argument("--jobs", type=int, default=None, help="worker processes (default $PB_JOBS or 1)")

    sp = sub.add_parser("test", help="decide whether x^m + a x^n permutes F_q")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", required=True, help="g, -g, g^k, an integer encoding or c0,c1,...")
    sp.set_defaults(func=cmd_test)

    sp = sub.add_parser("scan", help="survey every binomial class over a range of q")
    sp.add_argument("--q-min", type=int, default=3)
    sp.add_argument("--q-max", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    jobs(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("count-t", help="number of a for which x^m + a x^n permutes F_q")
    for name in ("q", "m", "n"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.set_defaults(func=cmd_count_t)

    sp = sub.add_parser("certify", help="non-permutation certificate over F_p")
    for name in ("p", "m", "n"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("bounds", help="closed-form bounds for (q, m, n)")
    for name in ("q", "m", "n"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("heuristic", help="upper bound on the expected count E")
    sp.add_argument("--R", type=int, default=37)
    sp.add_argument("--table", default=None, help="write the F(r) table as CSV here")
    sp.set_defaults(func=cmd_heuristic)

    sp = sub.add_parser("verify-intro1", help="gcd lower bound over primes")
    sp.add_argument("--max-p", type=int, required=True)
    jobs(sp)
    sp.set_defaults(func=cmd_verify_intro1)

    sp = sub.add_parser("verify-conjecture", help="gcd > p / (c log p) over primes")
    sp.add_argument("--max-p", type=int, required=True)
    sp.add_argument("--c", type=float, default=2.0)
    jobs(sp)
    sp.set_defaults(func=cmd_verify_conjecture)

    sp = sub.add_parser("verify-existence", help="some a exists when the gcd is large")
    sp.add_argument("--max-q", type=int, required=True)
    sp.add_argument("--form", choices=("loglog", "log"), default="loglog")
    jobs(sp)
    sp.set_defaults(func=cmd_verify_existence)

    sp = sub.add_parser("corollary-table", help="primes admitting a permuting class with gcd g")
    sp.add_argument("--g-list", default="2,3,4,5,6,7,8")
    sp.add_argument("--max-p", type=int, default=100)
    jobs(sp)
    sp.set_defaults(func=cmd_corollary_table)
    return ap


def _join_negative_values(argv: list[str]) -> list[str]:
    # let "--a -g" through; argparse would read "-g" as an option
    out = []
    for tok in argv:
        if out and out[-1] == "--a" and tok.startswith("-") and tok != "--a":
            out[-1] = f"--a={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except (PermBinomError, ValueError) as exc:
        print(f"pb: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
