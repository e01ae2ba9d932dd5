"""Benchmark harness: average comparisons per window on random permutations."""

from __future__ import annotations

import csv
import io
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from ctmatch.matchers import MatchMode, meta_search, window_length

CSV_VERSION = "# ctm-bench v1"
COLUMNS = ("mode", "m", "n", "trials", "mean_comparisons", "mean_runtime_ns",
           "mean_occurrences", "planted")


@dataclass(frozen=True)
class BenchRecord:
    mode: str
    m: int
    n: int
    trials: int
    mean_comparisons: float
    mean_runtime_ns: float
    mean_occurrences: float
    planted: bool

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.mean_comparisons < 0 or self.mean_runtime_ns < 0:
            raise ValueError("negative measurement")


def trial_inputs(seed: int, mode: MatchMode, m: int, n: int, trial: int,
                 planted: bool) -> tuple[list[int], list[int]]:
    """Pattern and text for one trial; both are permutations.

    A planted occurrence reorders the values already sitting in a random
    window of length m so that they follow the pattern's order.
    """
    rng = random.Random(f"{seed}:{mode.value}:{m}:{trial}")
    t = list(range(1, n + 1))
    rng.shuffle(t)
    p = list(range(1, m + 1))
    rng.shuffle(p)
    if planted:
        s = rng.randrange(n - m + 1)
        vals = sorted(t[s : s + m])
        for h in range(m):
            t[s + h] = vals[p[h] - 1]
    return p, t


def _run_trial(args) -> tuple[int, int, int, int]:
    seed, mode_value, m, n, trial, planted = args
    mode = MatchMode(mode_value)
    p, t = trial_inputs(seed, mode, m, n, trial, planted)
    start = time.perf_counter_ns()
    report = meta_search(p, t, mode)
    elapsed = time.perf_counter_ns() - start
    return report.comparisons, report.windows, len(report.occurrences), elapsed


def run_bench(mode: MatchMode | str, m: int, n: int, trials: int, seed: int = 0,
              planted: bool = False, workers: int = 1) -> BenchRecord:
    mode = MatchMode(mode)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    w = window_length(mode, m)
    if w < 1 or w > n or m > n:
        raise ValueError(f"pattern length {m} does not fit a text of length {n} in {mode.value} mode")
    jobs = [(seed, mode.value, m, n, k, planted) for k in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, jobs))
    else:
        results = [_run_trial(job) for job in jobs]
    comps = sum(r[0] for r in results)
    windows = sum(r[1] for r in results)
    return BenchRecord(
        mode=mode.value,
        m=m,
        n=n,
        trials=trials,
        mean_comparisons=comps / windows,
        mean_runtime_ns=sum(r[3] for r in results) / trials,
        mean_occurrences=sum(r[2] for r in results) / trials,
        planted=planted,
    )


def records_to_csv(records: Iterable[BenchRecord], timing: bool = False) -> str:
    """CSV text. Runtime is left blank unless ``timing``, so output is reproducible."""
    buf = io.StringIO()
    buf.write(CSV_VERSION + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow([
            r.mode, r.m, r.n, r.trials, f"{r.mean_comparisons:.6f}",
            f"{r.mean_runtime_ns:.0f}" if timing else "",
            f"{r.mean_occurrences:.6f}", int(r.planted),
        ])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict[str, Optional[str]]]:
    lines = text.splitlines()
    if not lines or lines[0] != CSV_VERSION:
        raise ValueError("missing ctm-bench header")
    return list(csv.DictReader(lines[1:]))
