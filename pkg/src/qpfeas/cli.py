"""Command-line front end.

    qpfeas check <file> [--config +-+...] [--baseline] [--solve]
    qpfeas maxfs <file> --strategy greedy|heuristic [--start +-...]
    qpfeas bench [--m ...] [--c ...] [--trials N] [--seed S] --out DIR
    qpfeas scenario [--dt 0.1] [--horizon 10] --out DIR

Exit codes: 0 success / feasible, 1 input error, 3 infeasible (check),
4 no feasible configuration (maxfs).
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import bench
from .errors import InfeasibleQp, InvalidConfiguration, NoFeasibleConfiguration, OutOfOracleRange
from .feasibility import FeasibilityVerdict, check_feasibility, phase1_check
from .io import ProblemFormatError, dump_problem, load_problem
from .oracle import solve_qp
from .problem import Configuration
from .scenarios import GridSpec, cbf_scenario, scenario_times
from .search import greedy_maxfs, heuristic_maxfs

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 3
EXIT_NO_CONFIGURATION = 4

log = logging.getLogger("qpfeas")


def num(x):
    """Round to 12 significant digits for output."""
    if isinstance(x, (list, tuple, np.ndarray)):
        return [num(v) for v in x]
    return float(f"{float(x):.12g}") + 0.0  # no negative zero


def verdict_doc(v: FeasibilityVerdict, wall_time_ns: int | None = None) -> dict:
    doc = {
        "status": v.status.value,
        "method": v.method,
        "certificate": None if v.certificate is None else num(v.certificate),
        "lp_optimum": None if v.lp_optimum is None else num(v.lp_optimum),
        "cone_trivial": v.cone_trivial,
    }
    if wall_time_ns is not None:
        doc["wall_time_ns"] = wall_time_ns
    return doc


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _input_error(message: str) -> int:
    print(f"qpfeas: error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _config(qp, text):
    if text is None:
        return None
    config = Configuration.parse(text)
    qp.check(config)
    return config


def cmd_check(args) -> int:
    try:
        qp = load_problem(args.file)
        config = _config(qp, args.config)
    except (OSError, ProblemFormatError, InvalidConfiguration) as exc:
        return _input_error(str(exc))
    fn = phase1_check if args.baseline else check_feasibility
    start = time.perf_counter_ns()
    verdict = fn(qp, config)
    elapsed = time.perf_counter_ns() - start
    doc = verdict_doc(verdict, elapsed)
    if args.solve:
        try:
            sol = solve_qp(qp, config)
        except OutOfOracleRange as exc:
            return _input_error(str(exc))
        except InfeasibleQp:
            doc["solution"] = None
        else:
            doc["solution"] = {
                "u": num(sol.u),
                "multipliers": num(sol.multipliers),
                "active_set": list(sol.active_set),
                "objective": num(sol.objective),
            }
    _emit(doc)
    return EXIT_OK if verdict.feasible else EXIT_INFEASIBLE


def search_doc(result, qp) -> dict:
    soft = qp.soft
    return {
        "chosen": str(result.chosen),
        "level": result.level,
        "disregarded": list(result.chosen.disregarded),
        "disregarded_soft": [soft.index(i) + 1 for i in result.chosen.disregarded],
        "evaluations": result.evaluations,
        "trace": [
            {"config": str(P), "status": v.status.value, "selected": P == result.chosen}
            for P, v in result.trace
        ],
    }


def cmd_maxfs(args) -> int:
    try:
        qp = load_problem(args.file)
        start = _config(qp, args.start)
    except (OSError, ProblemFormatError, InvalidConfiguration) as exc:
        return _input_error(str(exc))
    try:
        if args.strategy == "greedy":
            result = greedy_maxfs(qp)
        else:
            result = heuristic_maxfs(qp, start)
    except NoFeasibleConfiguration as exc:
        print(f"qpfeas: {exc}", file=sys.stderr)
        return EXIT_NO_CONFIGURATION
    except ValueError as exc:
        return _input_error(str(exc))
    _emit(search_doc(result, qp))
    return EXIT_OK


def _prepare_out(path) -> Path | None:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        _input_error(f"cannot write to {out}: {exc}")
        return None
    return out


def cmd_bench(args) -> int:
    out = _prepare_out(args.out)
    if out is None:
        return EXIT_INPUT
    spec = GridSpec(tuple(args.m), tuple(args.c), args.trials, args.seed)
    records = bench.run_grid(spec, jobs=args.jobs, progress=lambda task: log.info("m=%d C=%d trial=%d", task[0], task[1], task[3]))
    summary = bench.write_outputs(records, out)
    wins, cells = bench.speedup_fraction(summary)
    _emit({
        "records": len(records),
        "out": str(out),
        "dual_lp_not_slower_cells": wins,
        "cells_with_C_at_least_100": cells,
    })
    return EXIT_OK


def cmd_scenario(args) -> int:
    out = _prepare_out(args.out)
    if out is None:
        return EXIT_INPUT
    try:
        times = scenario_times(args.dt, args.horizon)
        snapshots = [cbf_scenario(t) for t in times]
    except ValueError as exc:
        return _input_error(str(exc))
    if args.export_instances:
        (out / "instances").mkdir(exist_ok=True)
    start = time.perf_counter()
    with open(out / "scenario.csv", "w", newline="") as fh, open(out / "vertices.csv", "w", newline="") as vh:
        w = csv.writer(fh)
        w.writerow(["t", "greedy_config", "greedy_level", "greedy_disregarded_soft", "greedy_evaluations",
                    "heuristic_config", "heuristic_level", "heuristic_evaluations"])
        vw = csv.writer(vh)
        vw.writerow(["t", "config", "level", "status", "selected"])
        for snap in snapshots:
            qp = snap.instance
            g = greedy_maxfs(qp)
            h = heuristic_maxfs(qp)
            gd = search_doc(g, qp)
            w.writerow([bench.fmt(snap.t), str(g.chosen), g.level, " ".join(map(str, gd["disregarded_soft"])),
                        g.evaluations, str(h.chosen), h.level, h.evaluations])
            for P, v in g.trace:
                vw.writerow([bench.fmt(snap.t), str(P), P.level, v.status.value, int(P == g.chosen)])
            if args.export_instances:
                (out / "instances" / f"t_{snap.t:06.2f}.json").write_text(dump_problem(qp))
    _emit({"steps": len(snapshots), "seconds": num(time.perf_counter() - start), "out": str(out)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpfeas", description="QP feasibility via the dual cone LP")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide feasibility of one problem file")
    c.add_argument("file")
    c.add_argument("--config", help="one '+' (keep) or '-' (disregard) per constraint")
    c.add_argument("--baseline", action="store_true", help="use the Phase-1 LP instead of the dual LP")
    c.add_argument("--solve", action="store_true", help="also solve the QP with the enumeration oracle")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("maxfs", help="search for a maximal feasible configuration")
    s.add_argument("file")
    s.add_argument("--strategy", choices=("greedy", "heuristic"), default="greedy")
    s.add_argument("--start", help="heuristic start configuration (default: keep all)")
    s.set_defaults(func=cmd_maxfs)

    b = sub.add_parser("bench", help="time both LPs on the random instance grid")
    b.add_argument("--m", type=int, nargs="+", default=list(GridSpec().m_values))
    b.add_argument("--c", type=int, nargs="+", default=list(GridSpec().c_values))
    b.add_argument("--trials", type=int, default=GridSpec().trials)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bench)

    sc = sub.add_parser("scenario", help="run both searches over the time-varying scenario")
    sc.add_argument("--dt", type=float, default=0.1)
    sc.add_argument("--horizon", type=float, default=10.0)
    sc.add_argument("--out", required=True)
    sc.add_argument("--export-instances", action="store_true")
    sc.set_defaults(func=cmd_scenario)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
