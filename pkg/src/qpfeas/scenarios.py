"""Deterministic instance generators.

``random_instance`` draws the benchmark instances; ``cbf_scenario`` builds a
small time-varying input-constrained problem: a static box on a 2-D input
(hard) plus five rotating half-planes (soft), two of which can never be met
inside the box.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import QpInstance

DEFAULT_M_VALUES = (2, 5, 10, 25, 50)
DEFAULT_C_VALUES = (10, 50, 100, 250, 500, 1000)
DEFAULT_TRIALS = 10

SCENARIO_HORIZON = 10.0
SCENARIO_ROTATION = 0.2  # rad/s
SCENARIO_OFFSETS = (0.5, 0.5, -2.0, -2.0, 0.5)
SCENARIO_F = (-1.0, -1.0)


@dataclass(frozen=True)
class GridSpec:
    m_values: tuple[int, ...] = DEFAULT_M_VALUES
    c_values: tuple[int, ...] = DEFAULT_C_VALUES
    trials: int = DEFAULT_TRIALS
    seed: int = 0

    def cells(self):
        for m in self.m_values:
            for C in self.c_values:
                yield m, C

    def instance_seed(self, trial: int) -> int:
        return self.seed * 10_000 + trial


@dataclass(frozen=True, eq=False)
class TimedInstance:
    t: float
    instance: QpInstance


def rng_for(*key: int) -> np.random.Generator:
    """Philox stream keyed by a tuple of nonnegative integers."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(k) for k in key])))


def random_instance(m: int, C: int, seed: int) -> QpInstance:
    """All-soft instance with i.i.d. standard normal ``A`` (m x C) and ``B``;
    ``H = I``, ``F = 0``."""
    if m < 1 or C < 1:
        raise ValueError(f"need m >= 1 and C >= 1, got m={m}, C={C}")
    rng = rng_for(seed, m, C)
    A = rng.standard_normal((m, C))
    B = rng.standard_normal(C)
    return QpInstance(A, B)


def cbf_scenario(t: float) -> TimedInstance:
    """Scenario snapshot at time ``t`` in ``[0, 10]``.

    Constraints 0-3 (hard) are the faces of ``|u_1| <= 1``, ``|u_2| <= 1``.
    Constraints 4-8 are soft constraint number j = 1..5 with normal
    ``(cos th_j, sin th_j)``, ``th_j = 2 pi j / 5 + 0.2 t``, and offset 0.5,
    except j = 3, 4 whose offset -2 lies below the box's reach of ``sqrt(2)``.
    """
    if not 0.0 <= t <= SCENARIO_HORIZON:
        raise ValueError(f"scenario time must lie in [0, {SCENARIO_HORIZON}], got {t}")
    box = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]
    theta = 2.0 * np.pi * np.arange(1, 6) / 5.0 + SCENARIO_ROTATION * t
    soft = np.column_stack([np.cos(theta), np.sin(theta)])
    rows = np.vstack([box, soft])
    b = np.concatenate([np.ones(4), SCENARIO_OFFSETS])
    qp = QpInstance.from_rows(rows, b, H=np.eye(2), F=SCENARIO_F, hard=range(4))
    return TimedInstance(float(t), qp)


def scenario_times(dt: float = 0.1, horizon: float = SCENARIO_HORIZON) -> np.ndarray:
    if dt <= 0:
        raise ValueError("dt must be positive")
    steps = int(np.floor(horizon / dt + 1e-9))
    return np.round(np.arange(steps + 1) * dt, 12)
