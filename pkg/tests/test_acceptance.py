"""
Acceptance gate. Each test records one PASS/FAIL line, shown in the
"acceptance criteria" section of the pytest summary.
"""

import csv
import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import write_prices
from oracles import mp_complexity, mp_entropy, mp_js, mp_uniform
from ordinalplane import (
    FbmSpec,
    OrdinalConfig,
    complexity_envelope,
    generate_fbm,
    group_windows,
    jensen_shannon_divergence,
    ordinal_distribution,
    plan_windows,
    quantify,
    shannon_entropy,
    shuffle,
    statistical_complexity,
)
from ordinalplane.cli import main

HURST_GRID = (0.3, 0.4, 0.5, 0.6)


@pytest.fixture(scope="module")
def default_bands(tmp_path_factory):
    """Baseline at the CLI defaults: D=4, N=300, step 20, 8568 points, 100 realizations."""
    out = tmp_path_factory.mktemp("baseline")
    assert main(["baseline", "--workers", "4", "--out", str(out)]) == 0
    with open(out / "baseline.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert int(rows[0]["realizations"]) == 100
    return {float(r["hurst"]): (float(r["mean_h"]), float(r["mean_c"])) for r in rows}


@pytest.mark.slow
def test_01_brownian_band(default_bands, criterion):
    mean_h, mean_c = default_bands[0.5]
    criterion(
        "1 fBm band at Hurst 0.5",
        mean_h > 0.86 and mean_c < 0.14,
        f"mean H={mean_h:.4f} (>0.86), mean C={mean_c:.4f} (<0.14)",
    )


@pytest.mark.slow
def test_02_hurst_ordering(default_bands, criterion):
    h = {k: default_bands[k][0] for k in HURST_GRID}
    argmax = max(h, key=h.get)
    ok = argmax == 0.5 and h[0.6] < h[0.5] and h[0.3] < h[0.4]
    detail = ", ".join(f"H({k})={v:.4f}" for k, v in h.items())
    criterion("2 Hurst ordering maximal at 0.5", ok, f"{detail}; argmax={argmax}")


def test_03_shuffle(criterion):
    config = OrdinalConfig(4, 1)
    failures = []
    worst_h = 1.0
    for seed in range(10):
        series = generate_fbm(FbmSpec(0.7, 8568, seed))
        original = quantify(ordinal_distribution(series, config))
        shuffled = quantify(ordinal_distribution(shuffle(series, seed + 1000), config))
        worst_h = min(worst_h, shuffled.h)
        if not (shuffled.distance_to_random() < original.distance_to_random() and shuffled.h > 0.995):
            failures.append(seed)
    criterion(
        "3 shuffle of fBm Hurst 0.7",
        not failures,
        f"10 paths, failing seeds={failures}, min shuffled H={worst_h:.5f} (>0.995)",
    )


def test_04_envelope_containment(criterion):
    env = complexity_envelope(24)
    rng = np.random.default_rng(4)
    # Mixed concentration parameters reach both the corners and the centre.
    alphas = np.exp(rng.uniform(np.log(0.01), np.log(10.0), 10_000))
    samples = np.array([rng.dirichlet(np.full(24, a)) for a in alphas])
    points = [quantify(p) for p in samples]
    h = np.array([pt.h for pt in points])
    c = np.array([pt.c for pt in points])
    inside = env.contains(h, c, tol=1e-9)
    ends = max(abs(env.c_min[0]), abs(env.c_max[0]), abs(env.c_min[-1]), abs(env.c_max[-1]))
    criterion(
        "4 envelope containment on M=24",
        bool(inside.all()) and env.h[0] == 0.0 and env.h[-1] == 1.0 and ends < 1e-9,
        f"{int(inside.sum())}/10000 inside at tol 1e-9, max |C| at h in {{0,1}} = {ends:.1e}",
    )


def test_05_monotone_invariance(criterion):
    rng = np.random.default_rng(5)
    config = OrdinalConfig(4, 1)
    mismatches = 0
    for _ in range(100):
        x = rng.standard_normal(1000)
        base = ordinal_distribution(x, config).counts
        for transformed in (np.exp(x), x**3 + x):
            if not np.array_equal(ordinal_distribution(transformed, config).counts, base):
                mismatches += 1
    criterion(
        "5 monotone-transform invariance",
        mismatches == 0,
        f"200 transformed series, {mismatches} count mismatches",
    )


def test_06_degenerate_values(criterion):
    ramp = quantify(ordinal_distribution(np.arange(500.0)))
    falling = quantify(ordinal_distribution(-np.exp(np.linspace(0, 5, 500))))
    flat = quantify(np.full(24, 1 / 24))
    ok = (
        ramp.h == 0.0 and ramp.c == 0.0 and falling.h == 0.0 and falling.c == 0.0
        and abs(flat.h - 1.0) <= 1e-12 and abs(flat.c) <= 1e-12
    )
    criterion(
        "6 exact degenerate values",
        ok,
        f"monotone (H,C)=({ramp.h},{ramp.c}), uniform |H-1|={abs(flat.h - 1):.1e} |C|={abs(flat.c):.1e}",
    )


def _mp_fraction(x: Fraction):
    from mpmath import mpf

    return mpf(x.numerator) / x.denominator


def _quarter_distributions(m=6):
    for bins in itertools.combinations_with_replacement(range(m), 4):
        p = [Fraction(0)] * m
        for b in bins:
            p[b] += Fraction(1, 4)
        yield p


def test_07_oracle_equivalence(criterion):
    uniform = [1 / 6] * 6
    worst = 0.0
    count = 0
    for exact in _quarter_distributions():
        p = np.array([float(x) for x in exact])
        fractions = [_mp_fraction(x) for x in exact]
        errors = (
            shannon_entropy(p) - float(mp_entropy(fractions)),
            jensen_shannon_divergence(p, uniform) - float(mp_js(fractions, mp_uniform(6))),
            statistical_complexity(p) - float(mp_complexity(fractions)),
        )
        worst = max(worst, *map(abs, errors))
        count += 1
    criterion(
        "7 oracle equivalence on M=6 quarter distributions",
        count == 126 and worst <= 1e-12,
        f"{count} distributions, max abs error {worst:.1e} (<=1e-12)",
    )


def test_08_window_bookkeeping(criterion):
    plan = plan_windows(8568, 300, 20)
    sizes = [len(g) for g in group_windows(list(range(413)), 20)]
    ok = len(plan.starts) == 414 and sizes == [20] * 20 + [13]
    criterion(
        "8 window bookkeeping",
        ok,
        f"{len(plan.starts)} starts for 8568/300/20, groups of 413 = {sizes.count(20)}x20 + {sizes[-1]}",
    )


def _run_all(directory, prices, workers):
    out = directory
    steps = [
        ["analyze", str(prices), "--out", str(out)],
        ["baseline", "--realizations", "6", "--length", "3000", "--workers", str(workers),
         "--out", str(out)],
        ["shuffle-test", str(prices), "--out", str(out)],
        ["envelope", "--out", str(out)],
        ["render", str(out / "windows.csv"), "--baseline", str(out / "baseline.csv"),
         "--envelope", str(out / "envelope.csv"), "--out", str(out)],
    ]
    for argv in steps:
        assert main(argv) == 0, argv
    return {p.name: p.read_bytes() for p in sorted(out.iterdir())}


def test_09_determinism(tmp_path, criterion):
    values = 50 * np.exp(0.02 * generate_fbm(FbmSpec(0.6, 2500, 9)).values)
    prices = write_prices(tmp_path / "prices.csv", values)
    runs = [_run_all(tmp_path / f"run{i}", prices, w) for i, w in enumerate((1, 1, 4))]
    names = sorted(runs[0])
    differing = [n for n in names if len({r.get(n) for r in runs}) != 1]
    criterion(
        "9 byte-identical CLI reruns",
        len(names) == 7 and not differing and all(sorted(r) == names for r in runs),
        f"{len(names)} files x 3 runs (workers 1, 1, 4), differing={differing}",
    )
