"""Command line front end.

    simplest-cubic count  --a 8 --x 1000
    simplest-cubic scan   --a 8,10,13 --x 1,10,100 --output scan.csv
    simplest-cubic verify lemmas --a 1..30 --w 1..100000

Exit codes: 0 success, 1 failed verification or internal error, 2 bad
arguments.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from dataclasses import dataclass

from . import asymptotics, wdecomp
from .counting import count_principal, default_threads, oracle_count
from .field import make_params

log = logging.getLogger("simplest_cubic")

SCAN_HEADER = [
    "a", "x", "count", "primitive_count", "envelope", "envelope_primitive",
    "ratio", "ratio_primitive", "elapsed_ms",
]


class UsageError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    """'8,10,13', '7..12' or a mix like '8,10..12'."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                lo, hi = part.split("..", 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc
    if not out:
        raise UsageError(f"empty list {text!r}")
    return out


def parse_range(text: str) -> tuple[int, int]:
    vals = parse_int_list(text)
    return min(vals), max(vals)


def _params_for_count(a: int):
    if a < 8:
        raise UsageError(f"a must be >= 8, got {a}")
    p = make_params(a)
    if not p.monogenic:
        raise UsageError(f"a={a}: a^2+3a+9 = {p.disc_root} is not squarefree")
    return p


def _skip_reason(a: int) -> str | None:
    if a < 8:
        return f"a={a} is below 8"
    p = make_params(a)
    if not p.monogenic:
        return f"a^2+3a+9 = {p.disc_root} is not squarefree"
    return None


@dataclass
class ScanConfig:
    a_values: list[int]
    x_values: list[int]
    primitive: bool = False
    output_path: str = "-"
    format: str = "csv"
    threads: int = 1


# -- subcommands -----------------------------------------------------------


def cmd_count(args) -> int:
    p = _params_for_count(args.a)
    if args.x < 1:
        raise UsageError("x must be >= 1")
    rep = count_principal(p, args.x, args.threads)
    print(f"a={rep.a} x={rep.x}")
    print(f"total={rep.total}")
    print(f"primitive_total={rep.primitive_total}")
    for cid, n in rep.per_cone.items():
        print(f"cone {cid.value}: {n} (primitive {rep.per_cone_primitive[cid]})")
    print(f"elapsed={rep.elapsed!r}")
    if args.oracle:
        tot, prim = oracle_count(p, args.x)
        same = (tot, prim) == (rep.total, rep.primitive_total)
        print(f"oracle total={tot} primitive_total={prim} {'agree' if same else 'DISAGREE'}")
        return 0 if same else 1
    return 0


def run_scan(cfg: ScanConfig, out) -> asymptotics.ScanSummary | None:
    delim = "," if cfg.format == "csv" else "\t"
    good = []
    for a in cfg.a_values:
        reason = _skip_reason(a)
        if reason:
            log.warning("skipping a=%d: %s", a, reason)
            out.write(f"# skipped a={a}: {reason}\n")
        else:
            good.append(a)
    writer = csv.writer(out, delimiter=delim, lineterminator="\n")
    writer.writerow(SCAN_HEADER)
    rows = []
    for a in good:
        p = make_params(a)
        for x in cfg.x_values:
            rep = count_principal(p, x, cfg.threads)
            row = asymptotics.envelope_report(a, x, rep.total, rep.primitive_total, rep.elapsed)
            rows.append(row)
            writer.writerow([
                a, x, row.count, row.primitive_count, repr(row.envelope),
                repr(row.envelope_primitive), repr(row.ratio), repr(row.ratio_primitive),
                repr(round(row.elapsed * 1000, 3)),
            ])
    if not rows:
        return None
    return asymptotics.ScanSummary(
        rows,
        min(r.ratio for r in rows), max(r.ratio for r in rows),
        min(r.ratio_primitive for r in rows), max(r.ratio_primitive for r in rows),
    )


def cmd_scan(args) -> int:
    cfg = ScanConfig(
        a_values=parse_int_list(args.a),
        x_values=parse_int_list(args.x),
        primitive=args.primitive,
        output_path=args.output,
        format=args.format,
        threads=args.threads,
    )
    if any(x < 1 for x in cfg.x_values):
        raise UsageError("x values must be >= 1")
    if cfg.output_path == "-":
        summary = run_scan(cfg, sys.stdout)
    else:
        try:
            fh = open(cfg.output_path, "w", newline="")
        except OSError as exc:
            print(f"error: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
            return 2
        with fh:
            summary = run_scan(cfg, fh)
    if summary is not None:
        print(f"ratio window [{summary.min_ratio!r}, {summary.max_ratio!r}]", file=sys.stderr)
        if cfg.primitive:
            print(
                f"primitive ratio window [{summary.min_ratio_primitive!r}, "
                f"{summary.max_ratio_primitive!r}]",
                file=sys.stderr,
            )
    return 0


def _report(ok: bool, label: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'} {label}")
    return ok


def verify_lemmas(a_lo: int, a_hi: int, w_lo: int, w_hi: int) -> bool:
    ok = True
    if w_lo != 1:
        raise UsageError("the w range must start at 1")
    for a in range(a_lo, a_hi + 1):
        bad = wdecomp.floor_identity_mismatches(a, w_hi)
        ok &= _report(not bad, f"floor identities a={a} w=1..{w_hi} mismatches={len(bad)}")
        if a >= 8:
            bad = wdecomp.t_identity_mismatches(a, min(w_hi, 10_000))
            ok &= _report(not bad, f"t identities a={a} w=1..{min(w_hi, 10_000)} mismatches={len(bad)}")
    return ok


def verify_units(a_lo: int, a_hi: int) -> bool:
    ok = True
    for a in range(a_lo, a_hi + 1):
        checks = asymptotics.unit_bound_checks(a)
        bad = [name for name, good in checks if not good]
        ok &= _report(not bad, f"unit bounds a={a} ({len(checks)} checks){' ' + '; '.join(bad) if bad else ''}")
    return ok


def verify_regulator(a_lo: int, a_hi: int) -> bool:
    ok = True
    for a in range(a_lo, a_hi + 1):
        p = make_params(a)
        reg = asymptotics.regulator(p)
        good = asymptotics.regulator_certified(p) and asymptotics.c_K_certified(p)
        ok &= _report(good, f"regulator a={a} Reg in [{reg.lo!r}, {reg.hi!r}]")
    return ok


def verify_oracle(a_values: list[int], x_values: list[int], threads: int) -> bool:
    ok = True
    for a in a_values:
        reason = _skip_reason(a)
        if reason:
            log.warning("skipping a=%d: %s", a, reason)
            continue
        p = make_params(a)
        for x in x_values:
            rep = count_principal(p, x, threads)
            orc = oracle_count(p, x)
            ok &= _report(
                orc == (rep.total, rep.primitive_total),
                f"oracle a={a} x={x} cones=({rep.total}, {rep.primitive_total}) oracle={orc}",
            )
    return ok


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "lemmas":
        a_lo, a_hi = parse_range(args.a or "1..30")
        w_lo, w_hi = parse_range(args.w or "1..100000")
        if a_lo < 1:
            raise UsageError("a must be >= 1")
        ok = verify_lemmas(a_lo, a_hi, w_lo, w_hi)
    elif suite == "units":
        a_lo, a_hi = parse_range(args.a or "7..1000")
        if a_lo < 7:
            raise UsageError("a must be >= 7")
        ok = verify_units(a_lo, a_hi)
    elif suite == "regulator":
        a_lo, a_hi = parse_range(args.a or "7..500")
        if a_lo < 7:
            raise UsageError("a must be >= 7")
        ok = verify_regulator(a_lo, a_hi)
    else:
        a_values = parse_int_list(args.a or "8,10,13")
        x_values = parse_int_list(args.x or "1000")
        ok = verify_oracle(a_values, x_values, args.threads)
    print("ALL PASS" if ok else "FAILURES")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplest-cubic",
        description="Count principal ideals of bounded norm in simplest cubic fields.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    threads_help = "worker processes (default from $SIMPLEST_CUBIC_THREADS, else 1)"

    pc = sub.add_parser("count", help="count P(a,x) and P_p(a,x)")
    pc.add_argument("--a", type=int, required=True)
    pc.add_argument("--x", type=int, required=True)
    pc.add_argument("--threads", type=int, default=None, help=threads_help)
    pc.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    pc.set_defaults(func=cmd_count)

    ps = sub.add_parser("scan", help="envelope ratios over an (a, x) grid")
    ps.add_argument("--a", required=True, help="e.g. 8,10,13 or 8..20")
    ps.add_argument("--x", required=True, help="e.g. 1,10,100,1000")
    ps.add_argument("--primitive", action="store_true", help="also report the primitive ratio window")
    ps.add_argument("--output", "-o", default="-", help="output file ('-' for stdout)")
    ps.add_argument("--format", choices=("csv", "tsv"), default="csv")
    ps.add_argument("--threads", type=int, default=None, help=threads_help)
    ps.set_defaults(func=cmd_scan)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=("lemmas", "units", "regulator", "oracle"))
    pv.add_argument("--a", default=None, help="range such as 1..30")
    pv.add_argument("--w", default=None, help="w range for the lemma suite")
    pv.add_argument("--x", default=None, help="x values for the oracle suite")
    pv.add_argument("--threads", type=int, default=None, help=threads_help)
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    if getattr(args, "threads", None) is None:
        args.threads = default_threads()
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        code = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        log.exception("internal failure")
        return 1
    log.debug("done in %.3fs", time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
