"""``slice-clifford`` command-line entry point.

Exit status: 0 when every check passes, 1 on a failed check, 2 on a parse
error, 3 on a dimension mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import InvalidOperandsError, SeriesParseError
from .harness import COMMANDS, RunConfig, run_suites
from .series import LaurentSeries, eval_laurent, eval_series
from .seriesio import blade_key, parse_paravector, parse_series

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DIM = 0, 1, 2, 3


class DimensionMismatch(Exception):
    pass


def build_parser():
    p = argparse.ArgumentParser(prog="slice-clifford", description="Slice monogenic function toolkit: evaluation and verification suites.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, default=None, help="generator count (default 3, or the input series' n)")
    p.add_argument("--nodes", type=int, default=256, help="quadrature nodes per contour")
    p.add_argument("--terms", type=int, default=60, help="kernel series truncation")
    p.add_argument("--tol", type=float, default=1e-8, help="global tolerance")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--input", default=None, help="series JSON file")
    p.add_argument("--output", default=None, help="report path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--at", default=None, help='paravector literal for eval, e.g. "1.5+2e1-0.5e3"')
    return p


def _resolve(args):
    """Config and (optional) input series; raises on dimension conflicts."""
    series = parse_series(args.input) if args.input else None
    n = args.n
    if series is not None:
        if n is not None and n != series.n:
            raise DimensionMismatch(f"--n {n} conflicts with the input series (n = {series.n})")
        n = series.n
    cfg = RunConfig(
        command=args.command,
        n=3 if n is None else n,
        nodes=args.nodes,
        terms=args.terms,
        tol=args.tol,
        seed=args.seed,
        input=args.input,
        output=args.output,
        format=args.format,
        at=args.at,
    )
    return cfg, series


def _eval_text(cfg, series):
    if series is None or cfg.at is None:
        raise SeriesParseError("eval needs --input and --at")
    x = parse_paravector(cfg.at, cfg.n)
    value = eval_laurent(series, x) if isinstance(series, LaurentSeries) else eval_series(series, x)
    blades = {blade_key(m, cfg.n): float(c) for m, c in enumerate(value.coeffs) if c != 0.0}
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["blade", "value"])
        for k, v in blades.items():
            w.writerow([k, repr(v)])
        return buf.getvalue()
    return json.dumps({"config": cfg.report_fields(), "value": blades}, indent=2) + "\n"


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(argv=None):
    """Parse ``argv``, run the command and return the exit status."""
    args = build_parser().parse_args(argv)
    try:
        cfg, series = _resolve(args)
        if cfg.command == "eval":
            _emit(_eval_text(cfg, series), cfg.output)
            return EXIT_OK
        if series is not None and isinstance(series, LaurentSeries):
            raise SeriesParseError("verification suites take a power series (no principal part)", field="principal")
        report = run_suites(cfg, series=series)
    except SeriesParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DimensionMismatch, InvalidOperandsError) as exc:
        print(f"dimension mismatch: {exc}", file=sys.stderr)
        return EXIT_DIM
    _emit(report.to_csv() if cfg.format == "csv" else report.to_json(), cfg.output)
    return EXIT_OK if report.summary["fail"] == 0 else EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
