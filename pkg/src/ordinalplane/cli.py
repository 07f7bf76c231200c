"""
Command-line pipeline.

    ordinalplane analyze prices.csv --out results/
    ordinalplane baseline --out results/
    ordinalplane shuffle-test prices.csv --out results/
    ordinalplane envelope --dimension 4 --out results/
    ordinalplane render results/windows.csv --baseline results/baseline.csv \
        --envelope results/envelope.csv --events events.csv --out results/

Failures print one line ``ordinalplane: error[<category>]: <message>`` to
stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import InvalidInputError, OrdinalPlaneError
from .ingest import parse_events_csv, parse_price_csv
from .ordinal import OrdinalConfig, TimeSeries, ordinal_distribution
from .quantifiers import complexity_envelope, quantify, read_envelope_csv
from .render import plane_svg, timeline_svg
from .surrogates import baseline_band, baseline_to_csv, read_baseline_csv, shuffle
from .windows import analyze_windows, plan_windows, read_windows_csv, windows_to_csv

log = logging.getLogger("ordinalplane")

DEFAULT_SEED = 1983
DEFAULT_LENGTH = 8568


@dataclass(frozen=True)
class RunConfig:
    dimension: int = 4
    delay: int = 1
    window: int = 300
    step: int = 20
    group_size: int = 20
    hurst: tuple[float, ...] = (0.3, 0.4, 0.5, 0.6)
    realizations: int = 100
    length: int = DEFAULT_LENGTH
    seed: int = DEFAULT_SEED
    transform: str = "raw"
    workers: int = 1

    @property
    def ordinal(self) -> OrdinalConfig:
        return OrdinalConfig(self.dimension, self.delay)


class IOFailure(OrdinalPlaneError):
    category = "io"
    exit_code = 5


def _read_bytes(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as exc:
        raise IOFailure(f"cannot read {str(path)!r}: {exc.strerror or exc}") from None


def _write(out: Path, name: str, text: str) -> Path:
    try:
        out.mkdir(parents=True, exist_ok=True)
        target = out / name
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOFailure(f"cannot write {str(out / name)!r}: {exc.strerror or exc}") from None
    return target


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_series(path: Path, transform: str) -> tuple[TimeSeries, int]:
    parsed = parse_price_csv(_read_bytes(path))
    series = parsed.series
    if transform == "log-returns":
        if np.any(series.values <= 0):
            raise InvalidInputError("log-returns need strictly positive prices")
        if len(series) < 2:
            raise InvalidInputError("log-returns need at least two prices")
        returns = np.diff(np.log(series.values))
        dates = None if series.dates is None else series.dates[1:]
        series = TimeSeries(returns, dates)
    return series, parsed.dropped_count


def _stats(values: Sequence[float]) -> dict[str, float]:
    return {
        "min": min(values),
        "max": max(values),
        "mean": math.fsum(values) / len(values),
    }


def cmd_analyze(prices: Path, cfg: RunConfig, out: Path) -> dict:
    series, dropped = _load_series(prices, cfg.transform)
    plan = plan_windows(len(series), cfg.window, cfg.step)
    results = analyze_windows(series, plan, cfg.ordinal)
    whole = ordinal_distribution(series, cfg.ordinal)
    summary = {
        "config": {
            "dimension": cfg.dimension,
            "delay": cfg.delay,
            "window": cfg.window,
            "step": cfg.step,
            "transform": cfg.transform,
        },
        "input": str(prices),
        "series_length": len(series),
        "dropped_rows": dropped,
        "points": len(results),
        "h": _stats([r.point.h for r in results]),
        "c": _stats([r.point.c for r in results]),
        "tie_rate": whole.tie_rate,
        "low_sample_windows": sum(r.low_sample_warning for r in results),
    }
    _write(out, "windows.csv", windows_to_csv(results))
    _write(out, "summary.json", _dump_json(summary))
    return summary


def cmd_baseline(cfg: RunConfig, out: Path) -> list:
    plan = plan_windows(cfg.length, cfg.window, cfg.step)
    bands = [
        baseline_band(h, cfg.realizations, cfg.length, plan, cfg.ordinal, cfg.seed, cfg.workers)
        for h in cfg.hurst
    ]
    _write(out, "baseline.csv", baseline_to_csv(bands))
    return bands


def _point_json(point) -> dict:
    return {
        "h": point.h,
        "c": point.c,
        "entropy_raw": point.entropy_raw,
        "distance_to_random": point.distance_to_random(),
    }


def cmd_shuffle_test(prices: Path, cfg: RunConfig, out: Path) -> dict:
    series, _ = _load_series(prices, cfg.transform)
    original = quantify(ordinal_distribution(series, cfg.ordinal))
    shuffled = quantify(ordinal_distribution(shuffle(series, cfg.seed), cfg.ordinal))
    report = {
        "config": {"dimension": cfg.dimension, "delay": cfg.delay, "seed": cfg.seed,
                   "transform": cfg.transform},
        "input": str(prices),
        "original": _point_json(original),
        "shuffled": _point_json(shuffled),
        "shuffled_closer_to_random": shuffled.distance_to_random() < original.distance_to_random(),
    }
    _write(out, "shuffle_test.json", _dump_json(report))
    return report


def cmd_envelope(dimension: int, out: Path) -> Path:
    config = OrdinalConfig(dimension, 1)
    return _write(out, "envelope.csv", complexity_envelope(config.n_patterns).to_csv())


def cmd_render(
    windows_csv: Path,
    baseline_csv: Path | None,
    envelope_csv: Path | None,
    events_csv: Path | None,
    group_size: int,
    out: Path,
) -> list[str]:
    rows = read_windows_csv(_read_bytes(windows_csv).decode("utf-8", "replace"))
    bands = read_baseline_csv(_read_bytes(baseline_csv).decode("utf-8", "replace")) if baseline_csv else []
    envelope = read_envelope_csv(_read_bytes(envelope_csv).decode("utf-8", "replace")) if envelope_csv else None
    events = parse_events_csv(_read_bytes(events_csv)) if events_csv else []
    _write(out, "plane.svg", plane_svg(rows, envelope, bands, group_size))
    timeline, warnings = timeline_svg(rows, events)
    _write(out, "entropy_timeline.svg", timeline)
    for w in warnings:
        log.warning(w)
    return warnings


def _add_ordinal_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dimension", type=int, default=4, help="embedding dimension D (2..7)")
    p.add_argument("--delay", type=int, default=1, help="embedding delay tau")


def _add_window_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=int, default=300, help="window length N")
    p.add_argument("--step", type=int, default=20, help="step between windows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordinalplane", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="sliding-window entropy and complexity of a price file")
    p.add_argument("prices", type=Path)
    _add_ordinal_flags(p)
    _add_window_flags(p)
    p.add_argument("--transform", choices=("raw", "log-returns"), default="raw")
    p.add_argument("--out", type=Path, default=Path("."))

    p = sub.add_parser("baseline", help="fBm Monte Carlo bands per Hurst exponent")
    _add_ordinal_flags(p)
    _add_window_flags(p)
    p.add_argument("--hurst", type=float, action="append",
                   help="Hurst exponent (repeatable; default 0.3 0.4 0.5 0.6)")
    p.add_argument("--realizations", type=int, default=100)
    p.add_argument("--length", type=int, default=DEFAULT_LENGTH, help="points per fBm path")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1, help="threads; output does not depend on it")
    p.add_argument("--out", type=Path, default=Path("."))

    p = sub.add_parser("shuffle-test", help="whole-series point before and after shuffling")
    p.add_argument("prices", type=Path)
    _add_ordinal_flags(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--transform", choices=("raw", "log-returns"), default="raw")
    p.add_argument("--out", type=Path, default=Path("."))

    p = sub.add_parser("envelope", help="minimum and maximum complexity curves")
    p.add_argument("--dimension", type=int, default=4)
    p.add_argument("--out", type=Path, default=Path("."))

    p = sub.add_parser("render", help="plane.svg and entropy_timeline.svg")
    p.add_argument("windows", type=Path, help="windows.csv from analyze")
    p.add_argument("--baseline", type=Path)
    p.add_argument("--envelope", type=Path)
    p.add_argument("--events", type=Path)
    p.add_argument("--group-size", type=int, default=20)
    p.add_argument("--out", type=Path, default=Path("."))
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    if fields.get("hurst") is None:
        fields.pop("hurst", None)
    else:
        fields["hurst"] = tuple(fields["hurst"])
    cfg = RunConfig(**fields)
    cfg.ordinal  # validates dimension and delay
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="ordinalplane: warning: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            cmd_analyze(args.prices, _config(args), args.out)
        elif args.command == "baseline":
            cmd_baseline(_config(args), args.out)
        elif args.command == "shuffle-test":
            cmd_shuffle_test(args.prices, _config(args), args.out)
        elif args.command == "envelope":
            cmd_envelope(args.dimension, args.out)
        elif args.command == "render":
            if args.group_size < 1:
                raise InvalidInputError(f"group size must be >= 1, got {args.group_size}")
            cmd_render(args.windows, args.baseline, args.envelope, args.events,
                       args.group_size, args.out)
    except OrdinalPlaneError as exc:
        message = " ".join(str(exc).split())
        print(f"ordinalplane: error[{exc.category}]: {message}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
