"""Command-line interface: ``quotapower {power,sweep,optima,dataset}``.

Exit codes: 0 success, 2 usage or input error, 3 resource or integrity error.
Progress goes to stderr; stdout carries only the report.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from fractions import Fraction

from . import __version__, _backend
from .dataio import PowerReport, embedded_imf_dataset, load_weights, write_report
from .errors import InputError, IntegrityError, QuotaPowerError, ResourceError
from .game import QuotaSpec, threshold_from_quota
from .power import banzhaf_indices, build_count_vector, multi_quota_profiles
from .sweep import find_optima, quota_range, run_sweep, weight_inequality

log = logging.getLogger("quotapower")

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3


def _quota_arg(text):
    try:
        return QuotaSpec(text).percent
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _number_arg(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _decimals_arg(text):
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 1 <= k <= 12:
        raise argparse.ArgumentTypeError("decimals must be between 1 and 12")
    return k


def _jobs_arg(text):
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("jobs must be >= 0 (0 = one per CPU)")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", metavar="PATH", help="CSV with header country,votes[,share] (default: embedded IMF table)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=_jobs_arg, default=1, help="worker threads, 0 = one per CPU (default 1)")
    common.add_argument("--strict", action="store_true", help="coalitions must exceed the quota instead of reaching it")
    common.add_argument("--backend", choices=_backend.available_backends(), help="kernel implementation")
    common.add_argument("-q", "--quiet", action="store_true", help="no progress messages")

    rng = argparse.ArgumentParser(add_help=False)
    rng.add_argument("--from", dest="start", type=_quota_arg, default=Fraction(50), help="first quota in percent (default 50)")
    rng.add_argument("--to", dest="stop", type=_quota_arg, default=Fraction(87), help="last quota in percent (default 87)")
    rng.add_argument("--step", type=_number_arg, default=Fraction(1), help="quota step in percent (default 1)")

    p = argparse.ArgumentParser(prog="quotapower", description="Exact Banzhaf power and quota sensitivity of weighted voting bodies.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("power", parents=[common], help="per-member Banzhaf power at one quota")
    sp.add_argument("--quota", type=_quota_arg, required=True, help="quota in percent of total votes")
    sp.add_argument("--decimals", type=_decimals_arg, default=4)

    for name, text in (("sweep", "all metrics for each quota in a range"), ("optima", "quotas that best match power to weight")):
        s = sub.add_parser(name, parents=[common, rng], help=text)
        s.add_argument("--decimals", type=_decimals_arg, default=6)

    sd = sub.add_parser("dataset", parents=[common], help="print the weight table in use")
    sd.add_argument("--decimals", type=_decimals_arg, default=6)
    return p


def _configure_logging(quiet):
    for h in [h for h in log.handlers if getattr(h, "_quotapower_cli", False)]:
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler._quotapower_cli = True
    handler.setFormatter(logging.Formatter("quotapower: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.WARNING if quiet else logging.INFO)


def _load(args):
    if args.weights:
        table = load_weights(args.weights)
    else:
        table = embedded_imf_dataset()
    log.info("%d members, %d votes (%s)", len(table), table.total_votes, table.source)
    return table


def cmd_power(args, table) -> str:
    body = table.to_body()
    T = threshold_from_quota(args.quota, body, strict=args.strict)
    counts = build_count_vector(body, args.backend)
    ((swings, decisive),) = multi_quota_profiles(body, [T], jobs=args.jobs, counts=counts)
    profile = banzhaf_indices(swings, args.quota)
    return write_report(PowerReport(body, swings, profile, decisive), args.format, args.decimals)


def _sweep(args, table):
    quotas = quota_range(args.start, args.stop, args.step)
    if quotas[-1] > 100:
        raise InputError("quota range exceeds 100%")
    body = table.to_body()
    rows = run_sweep(body, quotas, jobs=args.jobs, strict=args.strict, backend=args.backend)
    return body, rows


def cmd_sweep(args, table) -> str:
    _, rows = _sweep(args, table)
    return write_report(rows, args.format, args.decimals)


def cmd_optima(args, table) -> str:
    body, rows = _sweep(args, table)
    return write_report(find_optima(rows, weight_inequality(body)), args.format, args.decimals)


def cmd_dataset(args, table) -> str:
    W = table.total_votes
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("country", "votes", "share"))
        for r in table.rows:
            w.writerow((r.name, r.votes, _share(r.votes, W, args.decimals)))
        return buf.getvalue()
    import json

    rows = [{"country": r.name, "votes": r.votes, "share": float(_share(r.votes, W, args.decimals))} for r in table.rows]
    return json.dumps({"schema_version": 1, "kind": "dataset", "source": table.source, "total_votes": W,
                       "members": rows}, indent=2, ensure_ascii=False) + "\n"


def _share(votes, W, decimals):
    from .power import render_fraction

    return render_fraction(Fraction(100 * votes, W), decimals)


COMMANDS = {"power": cmd_power, "sweep": cmd_sweep, "optima": cmd_optima, "dataset": cmd_dataset}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT

    _configure_logging(args.quiet)
    started = time.perf_counter()
    try:
        table = _load(args)
        text = COMMANDS[args.command](args, table)
    except (ResourceError, IntegrityError, MemoryError) as exc:
        print(f"quotapower: error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (QuotaPowerError, OSError) as exc:
        print(f"quotapower: error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log.info("done in %.1fs", time.perf_counter() - started)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
