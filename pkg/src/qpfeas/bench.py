"""Timing grid: dual cone LP versus the Phase-1 LP on random instances.

Only the feasibility call itself is timed (``time.perf_counter_ns``, a
monotonic clock); instance generation is excluded.
"""
from __future__ import annotations

import csv
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np

from .feasibility import check_feasibility, phase1_check
from .scenarios import GridSpec, random_instance

METHODS = {"dual_lp": check_feasibility, "phase1": phase1_check}


def fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class GridRecord:
    m: int
    C: int
    trial: int
    method: str
    status: str
    wall_time_ns: int


@dataclass(frozen=True)
class CellSummary:
    m: int
    C: int
    method: str
    trials: int
    infeasible: int
    mean_time_s: float
    median_time_s: float


def time_methods(m: int, C: int, seed: int, trial: int) -> list[GridRecord]:
    qp = random_instance(m, C, seed)
    out = []
    for name, fn in METHODS.items():
        start = time.perf_counter_ns()
        verdict = fn(qp)
        elapsed = time.perf_counter_ns() - start
        out.append(GridRecord(m, C, trial, name, verdict.status.value, elapsed))
    return out


def run_grid(spec: GridSpec = GridSpec(), jobs: int = 1, progress=None) -> list[GridRecord]:
    tasks = [(m, C, spec.instance_seed(t), t) for m, C in spec.cells() for t in range(spec.trials)]
    records: list[GridRecord] = []
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            for recs in pool.map(time_methods, *zip(*tasks)):
                records.extend(recs)
    else:
        for task in tasks:
            records.extend(time_methods(*task))
            if progress is not None:
                progress(task)
    return sorted(records, key=lambda r: (r.m, r.C, r.trial, r.method))


def summarize(records: list[GridRecord]) -> list[CellSummary]:
    cells: dict[tuple[int, int, str], list[GridRecord]] = {}
    for r in records:
        cells.setdefault((r.m, r.C, r.method), []).append(r)
    out = []
    for (m, C, method), rs in sorted(cells.items()):
        times = [r.wall_time_ns * 1e-9 for r in rs]
        out.append(CellSummary(m, C, method, len(rs), sum(r.status == "infeasible" for r in rs),
                               statistics.fmean(times), statistics.median(times)))
    return out


def write_grid_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f.name for f in fields(GridRecord)])
        for r in records:
            w.writerow(astuple(r))


def read_grid_csv(path) -> list[GridRecord]:
    with open(path, newline="") as fh:
        return [GridRecord(int(row["m"]), int(row["C"]), int(row["trial"]), row["method"], row["status"],
                           int(row["wall_time_ns"])) for row in csv.DictReader(fh)]


def write_summary_csv(summary, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f.name for f in fields(CellSummary)])
        for s in summary:
            w.writerow([s.m, s.C, s.method, s.trials, s.infeasible, fmt(s.mean_time_s), fmt(s.median_time_s)])


def _ramp(x: float) -> str:
    """Linear blend from pale yellow (x=0) to dark blue (x=1)."""
    lo, hi = np.array([255, 247, 188]), np.array([8, 48, 107])
    r, g, b = np.rint(lo + (hi - lo) * min(max(x, 0.0), 1.0)).astype(int)
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap_svg(summary, method: str) -> str:
    """Mean solve time per (m, C) cell; color is linear in log10 of the time."""
    cells = {(s.m, s.C): s.mean_time_s for s in summary if s.method == method}
    ms = sorted({m for m, _ in cells})
    cs = sorted({c for _, c in cells})
    logs = [np.log10(max(v, 1e-12)) for v in cells.values()]
    lo, hi = (min(logs), max(logs)) if logs else (0.0, 1.0)
    span = hi - lo or 1.0
    cw, ch, left, top = 80, 40, 60, 40
    width, height = left + cw * len(cs) + 20, top + ch * len(ms) + 60
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="11">',
        f'<text x="{left}" y="20" font-size="13">{method}: mean solve time [s]</text>',
    ]
    for yi, m in enumerate(reversed(ms)):
        y = top + yi * ch
        parts.append(f'<text x="{left - 8}" y="{y + ch / 2 + 4}" text-anchor="end">{m}</text>')
        for xi, c in enumerate(cs):
            if (m, c) not in cells:
                continue
            v = cells[(m, c)]
            frac = (np.log10(max(v, 1e-12)) - lo) / span
            x = left + xi * cw
            txt = "#ffffff" if frac > 0.55 else "#000000"
            parts.append(f'<rect x="{x}" y="{y}" width="{cw}" height="{ch}" fill="{_ramp(frac)}"/>')
            parts.append(f'<text x="{x + cw / 2}" y="{y + ch / 2 + 4}" text-anchor="middle" fill="{txt}">{v:.2e}</text>')
    base = top + ch * len(ms)
    for xi, c in enumerate(cs):
        parts.append(f'<text x="{left + xi * cw + cw / 2}" y="{base + 16}" text-anchor="middle">{c}</text>')
    parts.append(f'<text x="{left + cw * len(cs) / 2}" y="{base + 36}" text-anchor="middle">constraints C</text>')
    parts.append(f'<text x="14" y="{top + ch * len(ms) / 2}" transform="rotate(-90 14 {top + ch * len(ms) / 2})" '
                 f'text-anchor="middle">dimension m</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_outputs(records, out_dir) -> list[CellSummary]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_grid_csv(records, out / "grid.csv")
    summary = summarize(records)
    write_summary_csv(summary, out / "summary.csv")
    for method in METHODS:
        (out / f"heatmap_{method}.svg").write_text(heatmap_svg(summary, method))
    return summary


def speedup_fraction(summary, min_constraints: int = 100) -> tuple[int, int]:
    """Cells with ``C >= min_constraints`` where the dual LP median time does not
    exceed the Phase-1 median, and the number of such cells."""
    med = {(s.m, s.C, s.method): s.median_time_s for s in summary}
    cells = sorted({(m, C) for m, C, _ in med if C >= min_constraints})
    wins = sum(med[(m, C, "dual_lp")] <= med[(m, C, "phase1")] for m, C in cells)
    return wins, len(cells)
