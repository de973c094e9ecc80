"""Command-line front end: analyze price files, run simulations and emit
table/figure data.

Numeric table CSVs use 5 decimal places; the JSON companions carry full
double precision.  No timestamps are written, so repeated invocations with
the same inputs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import ingest, sim, stats, timeseries
from .errors import MarketFactsError


def _parse_lags(text: str):
    try:
        lags = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad lag list {text!r}") from None
    if not lags or any(l < 1 for l in lags):
        raise argparse.ArgumentTypeError("lags must be positive integers")
    return lags


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="marketfacts",
        description="Agent-based market simulation and stylized-fact statistics.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    analyze = sub.add_parser("analyze", help="statistics tables from price files")
    analyze.add_argument("--input", action="append", default=[], metavar="CSV")
    analyze.add_argument("--manifest", metavar="JSON")
    analyze.add_argument("--from", dest="from_date", metavar="YYYY-MM-DD")
    analyze.add_argument("--to", dest="to_date", metavar="YYYY-MM-DD")
    analyze.add_argument("--lags", type=_parse_lags, default=stats.DEFAULT_LAGS)
    analyze.add_argument("--tail-fraction", type=float, default=stats.DEFAULT_TAIL_FRACTION)
    analyze.add_argument("--price-column", default="Open")
    analyze.add_argument("--out-dir", required=True)

    simulate = sub.add_parser("simulate", help="one seeded simulation run")
    simulate.add_argument("--config", required=True, metavar="JSON")
    simulate.add_argument("--seed", type=int, help="override the config seed")
    simulate.add_argument("--out-dir", required=True)

    ensemble = sub.add_parser("ensemble", help="replicated runs + summary stats")
    ensemble.add_argument("--config", required=True, metavar="JSON")
    ensemble.add_argument("--replications", type=int, required=True)
    ensemble.add_argument("--seed", type=int, help="override the config seed")
    ensemble.add_argument("--workers", type=int, default=1)
    ensemble.add_argument("--lags", type=_parse_lags, default=stats.DEFAULT_LAGS)
    ensemble.add_argument("--out-dir", required=True)

    figures = sub.add_parser("figures", help="histogram/qq/ACF data files")
    figures.add_argument("--input", metavar="CSV", help="price file to analyze")
    figures.add_argument("--config", metavar="JSON", help="or simulate fresh returns")
    figures.add_argument("--seed", type=int, help="override the config seed")
    figures.add_argument("--from", dest="from_date", metavar="YYYY-MM-DD")
    figures.add_argument("--to", dest="to_date", metavar="YYYY-MM-DD")
    figures.add_argument("--price-column", default="Open")
    figures.add_argument("--max-lag", type=int, default=100)
    figures.add_argument("--bins", type=int, default=200)
    figures.add_argument("--out-dir", required=True)
    return parser


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _cell(value) -> str:
    if isinstance(value, str):
        return f'"{value}"'
    return f"{value:.5f}"


def cmd_analyze(args) -> int:
    sources = []
    for path in args.input:
        sources.append(
            ingest.ManifestEntry(
                label=os.path.splitext(os.path.basename(path))[0],
                path=path,
                from_date=args.from_date,
                to_date=args.to_date,
                price_column=None,
            )
        )
    if args.manifest:
        sources.extend(ingest.load_manifest(args.manifest))
    if not sources:
        print("analyze: need --input and/or --manifest", file=sys.stderr)
        return 2

    columns = {}  # column name -> {stat row -> value or error string}
    failures = 0
    for entry in sources:
        spec = ingest.CsvSpec(price_column=entry.price_column or args.price_column)
        for kind in (timeseries.RAW, timeseries.ABSOLUTE):
            name = f"{entry.label} ({kind})"
            try:
                prices = ingest.read_prices(
                    entry.path, spec, entry.from_date, entry.to_date
                )
                returns = timeseries.log_returns(prices)
                if kind == timeseries.ABSOLUTE:
                    returns = timeseries.absolute_returns(returns)
                report = stats.full_report(
                    returns, lags=args.lags, tail_fraction=args.tail_fraction
                )
                columns[name] = report.as_dict()
            except MarketFactsError as exc:
                columns[name] = {"error": f"{type(exc).__name__}: {exc}"}
                failures += 1

    row_names = ["Skew", "Excess Kurtosis", f"Hill {args.tail_fraction:g}"]
    row_names += [f"AutoCorr {lag}" for lag in args.lags]

    os.makedirs(args.out_dir, exist_ok=True)
    col_names = list(columns)
    rows = []
    for stat_name in row_names:
        row = [stat_name]
        for col in col_names:
            cell = columns[col].get(stat_name, columns[col].get("error", ""))
            row.append(_cell(cell))
        rows.append(row)
    _write_csv(
        os.path.join(args.out_dir, "table.csv"),
        ["Statistic"] + col_names,
        rows,
    )
    with open(
        os.path.join(args.out_dir, "table.json"), "w", encoding="utf-8", newline="\n"
    ) as fh:
        json.dump(columns, fh, indent=2, sort_keys=True)
        fh.write("\n")

    return 1 if failures == len(columns) else 0


def _load_config(args) -> sim.RunConfig:
    config = sim.load_config(args.config)
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    return config


def cmd_simulate(args) -> int:
    config = _load_config(args)
    output = sim.run_simulation(config)
    sim.write_sim_output(output, args.out_dir, "sim")
    return 0


def _scalar_stats(report: stats.StatsReport) -> dict:
    return report.as_dict()


def cmd_ensemble(args) -> int:
    config = _load_config(args)
    outputs = sim.run_ensemble(config, args.replications, workers=args.workers)
    os.makedirs(args.out_dir, exist_ok=True)
    per_rep = {timeseries.RAW: [], timeseries.ABSOLUTE: []}
    for r, output in enumerate(outputs):
        sim.write_sim_output(output, args.out_dir, f"rep{r:03d}")
        raw = output.returns
        per_rep[timeseries.RAW].append(
            _scalar_stats(stats.full_report(raw, lags=args.lags))
        )
        per_rep[timeseries.ABSOLUTE].append(
            _scalar_stats(
                stats.full_report(timeseries.absolute_returns(raw), lags=args.lags)
            )
        )

    import numpy as np

    summary = {"replications": args.replications, "base_seed": config.seed}
    for kind, reports in per_rep.items():
        block = {}
        for key in reports[0]:
            vals = np.array([rep[key] for rep in reports])
            block[key] = {"mean": float(vals.mean()), "std": float(vals.std())}
        summary[kind] = block
    with open(
        os.path.join(args.out_dir, "ensemble_summary.json"),
        "w",
        encoding="utf-8",
        newline="\n",
    ) as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


def cmd_figures(args) -> int:
    if bool(args.input) == bool(args.config):
        print("figures: need exactly one of --input / --config", file=sys.stderr)
        return 2
    if args.input:
        spec = ingest.CsvSpec(price_column=args.price_column)
        prices = ingest.read_prices(args.input, spec, args.from_date, args.to_date)
        raw = timeseries.log_returns(prices)
    else:
        raw = sim.run_simulation(_load_config(args)).returns
    absolute = timeseries.absolute_returns(raw)

    os.makedirs(args.out_dir, exist_ok=True)
    fmt = lambda x: repr(float(x))

    edges, counts, centers, density = stats.histogram_data(raw.values, args.bins)
    _write_csv(
        os.path.join(args.out_dir, "histogram.csv"),
        ["bin_left", "bin_right", "bin_center", "count", "gaussian_density"],
        [
            [fmt(edges[i]), fmt(edges[i + 1]), fmt(centers[i]), str(int(counts[i])), fmt(density[i])]
            for i in range(len(counts))
        ],
    )
    _write_csv(
        os.path.join(args.out_dir, "qq.csv"),
        ["theoretical_quantile", "empirical_quantile"],
        [[fmt(t), fmt(e)] for t, e in stats.qq_data(raw.values)],
    )
    for name, series in (("acf_raw.csv", raw), ("acf_abs.csv", absolute)):
        profile = stats.acf_profile(series.values, args.max_lag)
        _write_csv(
            os.path.join(args.out_dir, name),
            ["lag", "autocorrelation"],
            [[str(int(l)), fmt(v)] for l, v in zip(profile.lags, profile.values)],
        )
    return 0


_COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "ensemble": cmd_ensemble,
    "figures": cmd_figures,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](args)
    except MarketFactsError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
