"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary
under "acceptance criteria".
"""
import functools
import time

import numpy as np
import pytest

from qpfeas import bench
from qpfeas.errors import InfeasibleQp
from qpfeas.feasibility import certificate_violations, check_feasibility, phase1_check, solve_cone_lp
from qpfeas.oracle import dual_value, is_infeasible, kkt_residual, lemma1_equivalence, solve_qp
from qpfeas.problem import Configuration, QpInstance
from qpfeas.scenarios import GridSpec, cbf_scenario, random_instance, rng_for, scenario_times
from qpfeas.search import greedy_maxfs, heuristic_maxfs
from qpfeas.simplex import LpStatus


def _config(rng, qp):
    signs = rng.choice([-1, 1], qp.C)
    signs[list(qp.hard)] = 1
    return Configuration(tuple(int(s) for s in signs))


def _spd(rng, m):
    L = rng.standard_normal((m, m))
    return L @ L.T / m + np.eye(m)


@functools.cache
def agreement_cases():
    """1000 instances x 3 configurations, dual LP vs Phase-1 LP."""
    cases, start = [], time.perf_counter()
    for seed in range(1000):
        rng = rng_for(1, seed)
        m, C = int(rng.integers(1, 11)), int(rng.integers(1, 31))
        qp = random_instance(m, C, seed)
        for _ in range(3):
            P = _config(rng, qp)
            cases.append((qp, P, check_feasibility(qp, P), phase1_check(qp, P)))
    return cases, time.perf_counter() - start


@functools.cache
def oracle_cases():
    """300 in-range instances solved by the enumeration oracle."""
    cases = []
    for seed in range(300):
        rng = rng_for(2, seed)
        m, C = int(rng.integers(1, 7)), int(rng.integers(1, 13))
        qp = QpInstance(rng.standard_normal((m, C)), rng.standard_normal(C), _spd(rng, m), rng.standard_normal(m))
        P = _config(rng, qp)
        try:
            sol = solve_qp(qp, P)
        except InfeasibleQp:
            sol = None
        cases.append((qp, P, check_feasibility(qp, P), sol))
    return cases


@functools.cache
def lemma_cases(count=200):
    """Premise-satisfying instances with the flip set chosen by greedy search."""
    cases, seed = [], 0
    while len(cases) < count:
        rng = rng_for(3, seed)
        seed += 1
        m = int(rng.integers(1, 5))
        C = int(rng.integers(m + 1, 9))
        qp = QpInstance(rng.standard_normal((m, C)), rng.standard_normal(C), _spd(rng, m), rng.standard_normal(m))
        verdict = check_feasibility(qp)
        if verdict.feasible:
            continue
        flip = greedy_maxfs(qp).chosen.disregarded
        cases.append((qp, flip, verdict, lemma1_equivalence(qp, flip)))
    return cases


def test_criterion_1_oracle_equivalence(report):
    cases, seconds = agreement_cases()
    mismatches = sum(d.status is not p.status for _, _, d, p in cases)
    infeasible = sum(not d.feasible for _, _, d, _ in cases)
    passed = mismatches == 0 and len(cases) == 3000 and seconds < 60
    report("1 dual LP vs Phase-1 LP agreement", passed,
           f"{len(cases)} cases, {mismatches} mismatches, {infeasible} infeasible, {seconds:.1f} s")
    assert passed


def test_criterion_2_qp_oracle_consistency(report):
    cases = oracle_cases()
    disagree, worst_kkt, worst_gap, solved = 0, 0.0, -np.inf, 0
    for qp, P, verdict, sol in cases:
        if (sol is not None) != verdict.feasible:
            disagree += 1
        if sol is None:
            continue
        solved += 1
        worst_kkt = max(worst_kkt, kkt_residual(qp, P, sol))
        worst_gap = max(worst_gap, dual_value(qp, P, sol.multipliers) - sol.objective)
    passed = disagree == 0 and worst_kkt <= 1e-7 and worst_gap <= 1e-7
    report("2 QP oracle consistency", passed,
           f"{len(cases)} instances ({solved} solved), {disagree} status mismatches, "
           f"max KKT residual {worst_kkt:.1e}, max dual-primal gap {worst_gap:.1e}")
    assert passed


def test_criterion_3_lemma_property(report):
    cases = lemma_cases()
    agree = sum(ok for *_, ok in cases)
    # informational: flip sets sampled uniformly among premise-satisfying ones
    rng = rng_for(4)
    uniform, uniform_agree = 0, 0
    for qp, *_ in cases[:100]:
        soft = list(qp.soft)
        for _ in range(20):
            flip = [i for i in soft if rng.random() < 0.5]
            if flip and not is_infeasible(qp, Configuration.disregarding(qp.C, flip)):
                uniform += 1
                uniform_agree += lemma1_equivalence(qp, flip)
                break
    passed = agree == len(cases) >= 200
    report("3 flipped vs deleted minimizers (maximal-level flip sets)", passed,
           f"{agree}/{len(cases)} agree within 1e-6; with uniformly sampled feasible flip sets "
           f"{uniform_agree}/{uniform} agree")
    assert passed


def test_criterion_4_certificate_soundness(report):
    checked, bad = 0, 0
    sources = [(qp, P, d) for qp, P, d, _ in agreement_cases()[0]]
    sources += [(qp, P, v) for qp, P, v, _ in oracle_cases()]
    sources += [(qp, None, v) for qp, _, v, _ in lemma_cases()]
    for qp, P, verdict in sources:
        if verdict.feasible:
            continue
        checked += 1
        bad += bool(certificate_violations(qp, P, verdict.certificate))
    passed = bad == 0 and checked > 0
    report("4 certificate soundness", passed, f"{checked} infeasible certificates, {bad} unsound")
    assert passed


def test_criterion_5_directional_speedup(report, tmp_path):
    start = time.perf_counter()
    records = bench.run_grid(GridSpec())
    seconds = time.perf_counter() - start
    summary = bench.write_outputs(records, tmp_path)
    wins, cells = bench.speedup_fraction(summary)
    passed = len(records) == 600 and cells > 0 and wins >= 0.8 * cells and seconds <= 1800
    report("5 dual LP median time <= Phase-1 median on C >= 100 cells", passed,
           f"{wins}/{cells} cells, {len(records)} records, grid took {seconds:.0f} s")
    assert passed


def test_criterion_6_scenario(report):
    start = time.perf_counter()
    wrong, heuristic_bad = [], []
    for t in scenario_times():
        qp = cbf_scenario(t).instance
        g = greedy_maxfs(qp)
        if g.chosen.disregarded != (6, 7):
            wrong.append(t)
        h = heuristic_maxfs(qp)
        if not check_feasibility(qp, h.chosen).feasible or h.level > g.level:
            heuristic_bad.append(t)
    seconds = time.perf_counter() - start
    passed = not wrong and not heuristic_bad and seconds <= 10
    report("6 scenario: greedy drops soft {3,4}, heuristic feasible and not above greedy", passed,
           f"101 time steps, {len(wrong)} greedy deviations, {len(heuristic_bad)} heuristic failures, {seconds:.1f} s")
    assert passed


def _invariance_trials(check, trials=200):
    failures = 0
    for seed in range(trials):
        rng = rng_for(7, seed)
        m, C = int(rng.integers(1, 11)), int(rng.integers(1, 31))
        qp = random_instance(m, C, 50_000 + seed)
        failures += not check(rng, qp, _config(rng, qp))
    return failures


def _objective_independent(rng, qp, P):
    other = QpInstance(qp.A, qp.B, _spd(rng, qp.m), rng.standard_normal(qp.m))
    return check_feasibility(qp, P).status is check_feasibility(other, P).status


def _row_scaling(rng, qp, P):
    s = np.ones(qp.C)
    s[rng.integers(qp.C)] = rng.uniform(0.01, 100)
    return check_feasibility(qp, P).status is check_feasibility(QpInstance(qp.A * s, qp.B * s), P).status


def _b_scaling(rng, qp, P):
    t = rng.uniform(0.01, 100)
    return check_feasibility(qp, P).status is check_feasibility(QpInstance(qp.A, t * qp.B), P).status


def _monotone(rng, qp, P):
    # move B so that a random point satisfies the configured constraints
    s = P.array()
    u0 = rng.standard_normal(qp.m)
    B = np.where(s > 0, qp.A.T @ u0 + np.abs(qp.B), qp.A.T @ u0 - np.abs(qp.B))
    if not check_feasibility(QpInstance(qp.A, B), P).feasible:
        return False
    kept = [i for i in range(qp.C) if P[i] > 0]
    if kept:
        B[rng.choice(kept)] += rng.uniform(0, 10)
    return check_feasibility(QpInstance(qp.A, B), P).feasible


def _dichotomy(rng, qp, P):
    out = solve_cone_lp(qp, P)
    if out.status is LpStatus.UNBOUNDED:
        return not check_feasibility(qp, P).feasible
    return out.status is LpStatus.OPTIMAL and out.optimal_value == 0.0 and check_feasibility(qp, P).feasible


@pytest.mark.parametrize("name, check", [
    ("objective independence", _objective_independent),
    ("positive row scaling", _row_scaling),
    ("global B scaling", _b_scaling),
    ("monotone B relaxation", _monotone),
    ("cone dichotomy", _dichotomy),
])
def test_criterion_7_invariance(report, name, check):
    failures = _invariance_trials(check)
    report(f"7 invariance: {name}", failures == 0, f"200 trials, {failures} violations")
    assert failures == 0
