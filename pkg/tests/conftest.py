import itertools

import numpy as np
import pytest

from qpfeas.problem import Configuration, QpInstance

_acceptance_lines = []


@pytest.fixture
def report():
    """Collect one pass/fail line per acceptance criterion for the terminal summary."""
    def add(criterion, passed, detail=""):
        _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f": {detail}" if detail else ""))
    return add


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def random_qp(rng, m, C, hard=(), spd=False):
    A = rng.standard_normal((m, C))
    B = rng.standard_normal(C)
    if spd:
        L = rng.standard_normal((m, m))
        return QpInstance(A, B, L @ L.T + 0.5 * np.eye(m), rng.standard_normal(m), hard)
    return QpInstance(A, B, hard=hard)


def random_config(rng, C):
    return Configuration(tuple(int(s) for s in rng.choice([-1, 1], C)))


def vertex_feasible(A, B, tol=1e-9):
    """Nonemptiness of ``{u : A'u <= B}`` by vertex enumeration.

    Only valid when the columns of ``A`` span R^m (the polyhedron is pointed,
    so it is nonempty iff it has a vertex).
    """
    m, C = A.shape
    assert np.linalg.matrix_rank(A) == m, "vertex enumeration needs a pointed polyhedron"
    for W in itertools.combinations(range(C), m):
        AW = A[:, W]
        if abs(np.linalg.det(AW)) < 1e-12:
            continue
        u = np.linalg.solve(AW.T, B[list(W)])
        if np.all(A.T @ u <= B + tol):
            return True
    return False
