"""Maximum feasible subsystem search over the configuration hypercube.

Vertices are configurations (hard entries pinned to +1); two vertices are
adjacent when they differ in exactly one soft entry. Two strategies are
provided: exhaustive enumeration and a monotone neighbor descent.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

from .errors import NoFeasibleConfiguration
from .feasibility import FeasibilityVerdict, check_feasibility, validate_hard
from .problem import Configuration, QpInstance, level

MAX_GREEDY_SOFT = 20

Checker = Callable[[QpInstance, Configuration], FeasibilityVerdict]


@dataclass(frozen=True)
class ConfigGraph:
    C: int
    hard: tuple[int, ...] = ()

    @property
    def soft(self) -> tuple[int, ...]:
        hard = set(self.hard)
        return tuple(i for i in range(self.C) if i not in hard)

    @property
    def vertex_count(self) -> int:
        return 2 ** len(self.soft)

    def vertices(self) -> Iterator[Configuration]:
        """All vertices, lexicographically descending with ``+1 > -1``."""
        soft = self.soft
        for signs in product((1, -1), repeat=len(soft)):
            full = [1] * self.C
            for i, s in zip(soft, signs):
                full[i] = s
            yield Configuration(tuple(full))

    def neighbors(self, config: Configuration) -> list[Configuration]:
        return [config.flip(i) for i in self.soft]

    @staticmethod
    def adjacent(p: Configuration, q: Configuration) -> bool:
        return sum(abs(a - b) for a, b in zip(p.signs, q.signs)) == 2


def neighbors(config: Configuration, hard=()) -> list[Configuration]:
    """Configurations differing from ``config`` in exactly one soft entry."""
    return ConfigGraph(len(config), tuple(hard)).neighbors(config)


@dataclass(frozen=True, eq=False)
class ConfigSearchResult:
    chosen: Configuration
    level: int
    evaluations: int
    trace: tuple[tuple[Configuration, FeasibilityVerdict], ...]


def _require_hard_feasible(qp: QpInstance):
    if not validate_hard(qp).feasible:
        raise NoFeasibleConfiguration("the hard constraints alone are infeasible")


def greedy_maxfs(qp: QpInstance, check: Checker = check_feasibility, workers: int = 1,
                 validate: bool = True) -> ConfigSearchResult:
    """Evaluate every configuration and return a feasible one of maximal level.

    Ties go to the lexicographically greatest sign vector (``+1 > -1``, first
    index most significant). The trace lists all ``2**C_s`` vertices in that
    same descending order.
    """
    graph = ConfigGraph(qp.C, qp.hard)
    if len(graph.soft) > MAX_GREEDY_SOFT:
        raise ValueError(f"greedy search is limited to {MAX_GREEDY_SOFT} soft constraints, got {len(graph.soft)}")
    if validate:
        _require_hard_feasible(qp)
    vertices = list(graph.vertices())
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            verdicts = list(pool.map(lambda P: check(qp, P), vertices))
    else:
        verdicts = [check(qp, P) for P in vertices]

    best = None
    for P, v in zip(vertices, verdicts):
        if v.feasible and (best is None or P.level > best.level):
            best = P
    if best is None:
        raise NoFeasibleConfiguration("no configuration is feasible")
    return ConfigSearchResult(best, best.level, len(vertices), tuple(zip(vertices, verdicts)))


def heuristic_maxfs(qp: QpInstance, start: Configuration | None = None, check: Checker = check_feasibility,
                    validate: bool = True) -> ConfigSearchResult:
    """Monotone descent on the configuration graph.

    From an infeasible vertex, try each neighbor that disregards one more soft
    constraint (in index order); move to the first feasible one, or to the
    first one if none is feasible. Stops at the first feasible vertex.
    Verdicts are memoized, so ``evaluations`` counts distinct checks.
    """
    if validate:
        _require_hard_feasible(qp)
    current = start if start is not None else Configuration.kept(qp.C)
    qp.check(current)
    soft = qp.soft
    memo: dict[Configuration, FeasibilityVerdict] = {}
    trace = []

    def evaluate(P):
        if P not in memo:
            memo[P] = check(qp, P)
            trace.append((P, memo[P]))
        return memo[P]

    while True:
        if evaluate(current).feasible:
            return ConfigSearchResult(current, current.level, len(memo), tuple(trace))
        candidates = [current.flip(i) for i in soft if current[i] > 0]
        if not candidates:
            raise NoFeasibleConfiguration("descent disregarded every soft constraint without reaching feasibility")
        feasible = [P for P in candidates if evaluate(P).feasible]
        current = feasible[0] if feasible else candidates[0]
