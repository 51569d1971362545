"""Command-line entry point: ``ksums {k0,k1,moments,count,bruteforce,stats,verify}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import mpmath

from .counting import count_per_length
from .digits_core import PatternSpec
from .moments import compute_moments
from .oracle import MAX_ENUMERATION, brute_partial
from .summation import KRequest, k0, k1, k1_statistics

DEFAULT_DIGITS_ENV = "KSUMS_DIGITS"
STATS_MAX_BASE = 16


class UsageError(Exception):
    pass


def _default_digits() -> int:
    raw = os.environ.get(DEFAULT_DIGITS_ENV, "50")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{DEFAULT_DIGITS_ENV}={raw!r} is not an integer")


def _pattern(args) -> PatternSpec:
    try:
        return PatternSpec.parse(args.base, args.pattern)
    except ValueError as exc:
        raise UsageError(str(exc))


def group_digits(s: str, group: int = 5, per_line: int = 10) -> str:
    """Split the fractional part into blocks of ``group`` digits."""
    whole, _, frac = s.partition(".")
    blocks = [frac[i:i + group] for i in range(0, len(frac), group)]
    lines = [" ".join(blocks[i:i + per_line]) for i in range(0, len(blocks), per_line)]
    if not lines:
        return whole
    head = f"{whole}." + lines[0]
    return "\n".join([head] + [" " * (len(whole) + 1) + ln for ln in lines[1:]])


def _emit(args, record: dict, text: str) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def cmd_k(args) -> int:
    p = _pattern(args)
    digits = args.digits if args.digits is not None else _default_digits()
    if digits < 1:
        raise UsageError("--digits must be >= 1")
    which = args.command.upper()
    t0 = time.perf_counter()
    fn = k0 if which == "K0" else k1
    res = fn(KRequest(p, which, digits))
    ms = (time.perf_counter() - t0) * 1000.0
    value = res.decimal_string()
    err = mpmath.nstr(res.error_bound, 3)
    record = {
        "b": p.b, "alpha": p.alpha, "beta": p.beta, "pattern": p.label(),
        "which": which, "digits": digits, "value": value, "error_bound": err,
        "M_used": res.M_used, "precision_used": res.precision_used,
        "wall_time_ms": round(ms, 1),
    }
    text = f"{which}({p.b};\"{p.label()}\") = {group_digits(value)}\n  error bound {err}  (M={res.M_used}, {res.precision_used} digits)"
    _emit(args, record, text)
    return 0


def cmd_moments(args) -> int:
    p = _pattern(args)
    digits = args.digits if args.digits is not None else _default_digits()
    table = compute_moments(p, args.max_m, digits + 10)
    u = [mpmath.nstr(x, digits) for x in table.u]
    v = [mpmath.nstr(x, digits) for x in table.v]
    record = {"b": p.b, "alpha": p.alpha, "beta": p.beta, "pattern": p.label(),
              "max_m": args.max_m, "digits": digits, "branch": table.branch, "u": u, "v": v}
    lines = [f"{m:4d}  u={a}  v={c}" for m, (a, c) in enumerate(zip(u, v))]
    _emit(args, record, "\n".join(lines))
    return 0


def _leading(args, p):
    if args.leading is None:
        return list(range(1, p.b))
    try:
        return [int(x) for x in args.leading.split(",")]
    except ValueError:
        raise UsageError("--leading takes comma-separated digits")


def cmd_count(args) -> int:
    p = _pattern(args)
    lead = _leading(args, p)
    seq = count_per_length(p, args.occurrences, lead, args.max_len)
    record = {"b": p.b, "pattern": p.label(), "occurrences": args.occurrences,
              "leading_digits": lead, "counts": seq.values}
    _emit(args, record, json.dumps(seq.values))
    return 0


def cmd_bruteforce(args) -> int:
    p = _pattern(args)
    if p.b**args.max_len > MAX_ENUMERATION:
        raise UsageError(f"base**max-len exceeds {MAX_ENUMERATION}")
    t0 = time.perf_counter()
    sb = brute_partial(p, args.occurrences, args.max_len)
    ms = (time.perf_counter() - t0) * 1000.0
    record = {
        "b": p.b, "pattern": p.label(), "occurrences": args.occurrences, "N": sb.N,
        "S_N": repr(float(sb.S_N)), "r_N": f"{sb.r_N.numerator}/{sb.r_N.denominator}",
        "lower": repr(sb.lower), "upper": repr(sb.upper),
        "heuristic": repr(sb.heuristic), "terms_counted": sb.terms_counted,
        "counts": sb.counts, "wall_time_ms": round(ms, 1),
    }
    text = (f"S_N = {float(sb.S_N)!r} over {sb.terms_counted} integers\n"
            f"r_N = {float(sb.r_N)!r}\n"
            f"{sb.lower!r} < K{args.occurrences} < {sb.upper!r}\n"
            f"heuristic estimate {sb.heuristic!r}")
    _emit(args, record, text)
    return 0


def cmd_stats(args) -> int:
    if args.base > STATS_MAX_BASE and not args.force:
        raise UsageError(f"stats runs b^2 computations; use --force for b > {STATS_MAX_BASE}")
    digits = args.digits
    st = k1_statistics(args.base, digits)
    ref = mpmath.nstr(st.reference, digits)
    record = {
        "b": st.b, "digits": digits, "reference": ref,
        "values": {lab: r.decimal_string() for lab, r in st.results.items()},
        "max_deviation": repr(st.max_deviation),
        "max_deviation_distinct": repr(st.max_deviation_distinct),
        "below_reference": st.below_reference,
    }
    lines = [f"{lab}  {r.decimal_string()}  {st.deviations[lab]:+.6f}" for lab, r in st.results.items()]
    lines += [f"b^2 log b = {ref}",
              f"max |K1 - b^2 log b| = {st.max_deviation:.6f}",
              f"max over alpha != beta = {st.max_deviation_distinct:.6f}",
              f"below b^2 log b: {', '.join(st.below_reference) or 'none'}"]
    _emit(args, record, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    from .verify import run_checks

    results = run_checks(quick=not args.full)
    ok = all(passed for _, passed, _ in results)
    if args.json:
        print(json.dumps([{"check": n, "passed": p, "detail": d} for n, p, d in results]))
    else:
        for name, passed, detail in results:
            print(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ksums", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, pattern=True):
        sp.add_argument("--base", "-b", type=int, default=10)
        if pattern:
            sp.add_argument("--pattern", "-p", required=True,
                            help="two digits in the base's alphabet (0-9A-Z)")
        sp.add_argument("--json", action="store_true")

    for name in ("k0", "k1"):
        sp = sub.add_parser(name, help=f"compute {name.upper()}")
        common(sp)
        sp.add_argument("--digits", "-d", type=int, default=None,
                        help=f"digits after the point (default ${DEFAULT_DIGITS_ENV} or 50)")
        sp.set_defaults(func=cmd_k)

    sp = sub.add_parser("moments", help="dump the moment sequences")
    common(sp)
    sp.add_argument("--max-m", type=int, default=20)
    sp.add_argument("--digits", "-d", type=int, default=None)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("count", help="admissible integers per length")
    common(sp)
    sp.add_argument("--occurrences", type=int, choices=(0, 1), default=1)
    sp.add_argument("--max-len", type=int, default=10)
    sp.add_argument("--leading", default=None, help="comma-separated leading digits")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("bruteforce", help="enumerated partial sum with rigorous bounds")
    common(sp)
    sp.add_argument("--occurrences", type=int, choices=(0, 1), default=1)
    sp.add_argument("--max-len", type=int, default=12)
    sp.set_defaults(func=cmd_bruteforce)

    sp = sub.add_parser("stats", help="K1 for every pattern of a base")
    common(sp, pattern=False)
    sp.add_argument("--digits", "-d", type=int, default=12)
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("verify", help="run identity, counting and sandwich checks")
    sp.add_argument("--full", action="store_true", help="larger enumeration ranges")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ksums: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
