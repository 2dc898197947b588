import numpy as np
import pytest

from qpfeas.feasibility import check_feasibility, validate_hard
from qpfeas.problem import Configuration
from qpfeas.scenarios import GridSpec, cbf_scenario, random_instance, scenario_times
from qpfeas.search import greedy_maxfs


def test_random_instance_deterministic():
    a, b = random_instance(3, 7, 42), random_instance(3, 7, 42)
    np.testing.assert_array_equal(a.A, b.A)
    np.testing.assert_array_equal(a.B, b.B)
    c = random_instance(3, 7, 43)
    assert not np.array_equal(a.A, c.A)


def test_random_instance_shape_and_defaults():
    qp = random_instance(50, 1000, 0)
    assert qp.A.shape == (50, 1000) and qp.B.shape == (1000,)
    np.testing.assert_array_equal(qp.H, np.eye(50))
    np.testing.assert_array_equal(qp.F, np.zeros(50))
    assert qp.hard == () and len(qp.soft) == 1000
    # standard normal entries
    assert abs(qp.A.mean()) < 0.01 and abs(qp.A.std() - 1) < 0.01


def test_random_instance_rejects_empty():
    with pytest.raises(ValueError):
        random_instance(0, 5, 0)


def test_infeasible_rate_grows_with_constraint_ratio():
    def rate(m, C):
        return np.mean([not check_feasibility(random_instance(m, C, s)).feasible for s in range(30)])

    low, high = rate(10, 12), rate(2, 100)
    assert low < high
    assert high == 1.0


def test_grid_spec():
    spec = GridSpec()
    assert len(list(spec.cells())) == 30
    assert GridSpec(seed=3).instance_seed(7) == 30007


def test_scenario_structure():
    qp = cbf_scenario(0.0).instance
    assert (qp.m, qp.C) == (2, 9)
    assert qp.hard == (0, 1, 2, 3)
    np.testing.assert_array_equal(qp.F, [-1, -1])
    np.testing.assert_allclose(np.linalg.norm(qp.A[:, 4:], axis=0), 1.0)
    np.testing.assert_array_equal(qp.B, [1, 1, 1, 1, 0.5, 0.5, -2, -2, 0.5])


def test_scenario_rotates():
    a, b = cbf_scenario(0.0).instance, cbf_scenario(10.0).instance
    np.testing.assert_array_equal(a.A[:, :4], b.A[:, :4])
    angle = np.arctan2(b.A[1, 4], b.A[0, 4]) - np.arctan2(a.A[1, 4], a.A[0, 4])
    assert np.mod(angle, 2 * np.pi) == pytest.approx(np.mod(2.0, 2 * np.pi))


def test_scenario_time_range():
    with pytest.raises(ValueError):
        cbf_scenario(-0.1)
    with pytest.raises(ValueError):
        cbf_scenario(10.5)
    ts = scenario_times()
    assert len(ts) == 101 and ts[0] == 0 and ts[-1] == 10


@pytest.mark.parametrize("t", [0.0, 2.5, 5.0, 7.3, 10.0])
def test_scenario_greedy_drops_unreachable_constraints(t):
    # over the box, n'u >= -(|n_1| + |n_2|) >= -sqrt(2) > -2, so soft 3 and 4
    # are always violated; soft 1, 2, 5 hold at u = 0
    qp = cbf_scenario(t).instance
    assert validate_hard(qp).feasible
    n = qp.A[:, 6:8]
    assert (-np.abs(n).sum(axis=0) > -2).all()
    assert not check_feasibility(qp).feasible
    P = Configuration.disregarding(9, (6, 7))
    assert check_feasibility(qp, P).feasible
    res = greedy_maxfs(qp)
    assert res.chosen == P and res.level == 7 and res.evaluations == 32
