import pytest

from ctmatch.bench import (
    CSV_VERSION,
    BenchRecord,
    parse_csv,
    records_to_csv,
    run_bench,
    trial_inputs,
)
from ctmatch.matchers import MatchMode, meta_search


def test_trial_inputs_are_seeded_permutations():
    p, t = trial_inputs(1, MatchMode.SWAP_PD, 5, 50, 0, planted=False)
    assert sorted(p) == list(range(1, 6)) and sorted(t) == list(range(1, 51))
    assert trial_inputs(1, MatchMode.SWAP_PD, 5, 50, 0, False) == (p, t)
    assert trial_inputs(2, MatchMode.SWAP_PD, 5, 50, 0, False) != (p, t)


def test_planting_guarantees_an_occurrence():
    for trial in range(20):
        p, t = trial_inputs(4, MatchMode.EXACT, 12, 300, trial, planted=True)
        assert sorted(t) == list(range(1, 301))
        assert meta_search(p, t, "exact").occurrences


def test_run_bench_record():
    r = run_bench("swap-pd", 16, 2000, 3, seed=5)
    assert r.mode == "swap-pd" and r.trials == 3 and not r.planted
    assert 1.0 <= r.mean_comparisons <= 5.0
    assert r.mean_runtime_ns > 0


def test_workers_do_not_change_results():
    a = run_bench("mismatch", 16, 1000, 4, seed=3, workers=1)
    b = run_bench("mismatch", 16, 1000, 4, seed=3, workers=2)
    assert (a.mean_comparisons, a.mean_occurrences) == (b.mean_comparisons, b.mean_occurrences)


def test_planted_not_cheaper_than_unplanted():
    for mode in ("swap-pd", "exact"):
        plain = run_bench(mode, 32, 3000, 5, seed=8)
        planted = run_bench(mode, 32, 3000, 5, seed=8, planted=True)
        assert planted.mean_occurrences >= 1
        assert planted.mean_comparisons >= plain.mean_comparisons


def test_csv_roundtrip():
    recs = [run_bench("insert", 8, 300, 2, seed=1), run_bench("delete", 8, 300, 2, seed=1, planted=True)]
    text = records_to_csv(recs)
    assert text.startswith(CSV_VERSION + "\n")
    rows = parse_csv(text)
    assert [r["mode"] for r in rows] == ["insert", "delete"]
    assert rows[0]["mean_runtime_ns"] == "" and rows[1]["planted"] == "1"
    assert parse_csv(records_to_csv(recs, timing=True))[0]["mean_runtime_ns"] != ""
    with pytest.raises(ValueError):
        parse_csv("mode,m\n")


def test_record_validation():
    with pytest.raises(ValueError):
        BenchRecord("exact", 4, 10, 0, 1.0, 1.0, 0.0, False)
    with pytest.raises(ValueError):
        BenchRecord("exact", 4, 10, 1, -1.0, 1.0, 0.0, False)
    with pytest.raises(ValueError):
        run_bench("swap", 20, 10, 1)
