import statistics

import pytest

from qpfeas.bench import (
    CellSummary,
    heatmap_svg,
    read_grid_csv,
    run_grid,
    speedup_fraction,
    summarize,
    write_grid_csv,
    write_outputs,
)
from qpfeas.scenarios import GridSpec

SMALL = GridSpec(m_values=(2, 4), c_values=(6, 40), trials=3, seed=1)


@pytest.fixture(scope="module")
def records():
    return run_grid(SMALL)


def test_record_count_and_order(records):
    assert len(records) == 2 * 2 * 3 * 2
    keys = [(r.m, r.C, r.trial, r.method) for r in records]
    assert keys == sorted(keys)
    assert all(r.wall_time_ns > 0 for r in records)


def test_methods_agree_per_instance(records):
    by_instance = {}
    for r in records:
        by_instance.setdefault((r.m, r.C, r.trial), set()).add(r.status)
    assert all(len(s) == 1 for s in by_instance.values())


def test_grid_csv_round_trip(records, tmp_path):
    path = tmp_path / "grid.csv"
    write_grid_csv(records, path)
    assert read_grid_csv(path) == records


def test_summary_recomputes_from_records(records):
    summary = summarize(records)
    assert len(summary) == 2 * 2 * 2
    for s in summary:
        times = [r.wall_time_ns / 1e9 for r in records if (r.m, r.C, r.method) == (s.m, s.C, s.method)]
        assert s.trials == 3
        assert s.mean_time_s == pytest.approx(statistics.fmean(times))
        assert s.median_time_s == pytest.approx(statistics.median(times))
        assert s.infeasible == sum(
            r.status == "infeasible" for r in records if (r.m, r.C, r.method) == (s.m, s.C, s.method))


def test_outputs_written(records, tmp_path):
    write_outputs(records, tmp_path)
    header = (tmp_path / "summary.csv").read_text().splitlines()[0]
    assert header == "m,C,method,trials,infeasible,mean_time_s,median_time_s"
    svg = (tmp_path / "heatmap_dual_lp.svg").read_text()
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") == 4


def test_heatmap_colors_follow_time():
    summary = [
        CellSummary(2, 10, "dual_lp", 1, 0, 1e-4, 1e-4),
        CellSummary(2, 20, "dual_lp", 1, 0, 1e-2, 1e-2),
    ]
    svg = heatmap_svg(summary, "dual_lp")
    assert 'fill="#fff7bc"' in svg and 'fill="#08306b"' in svg
    assert "1.00e-04" in svg


def test_speedup_fraction():
    def cell(C, method, t):
        return CellSummary(2, C, method, 1, 0, t, t)

    summary = [cell(50, "dual_lp", 9), cell(50, "phase1", 1),
               cell(100, "dual_lp", 1), cell(100, "phase1", 2),
               cell(250, "dual_lp", 3), cell(250, "phase1", 2)]
    assert speedup_fraction(summary) == (1, 2)


def test_parallel_grid_same_statuses():
    spec = GridSpec(m_values=(2,), c_values=(6,), trials=2, seed=4)
    a, b = run_grid(spec), run_grid(spec, jobs=2)
    assert [(r.m, r.C, r.trial, r.method, r.status) for r in a] == [(r.m, r.C, r.trial, r.method, r.status) for r in b]

