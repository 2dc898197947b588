"""Feasibility of linearly constrained QPs via a dual cone LP, with
configuration search over disregarded soft constraints."""
from .errors import (
    InconsistentRows,
    InfeasibleQp,
    InvalidConfiguration,
    NoFeasibleConfiguration,
    NotPositiveDefinite,
    NumericalBreakdown,
    OutOfOracleRange,
    PremiseViolated,
    QpFeasError,
    SingularMatrix,
)
from .feasibility import FeasibilityVerdict, Status, build_dual_lp, check_feasibility, phase1_check, validate_hard
from .io import ProblemFormatError, dump_problem, load_problem, parse_problem
from .oracle import QpSolution, lemma1_equivalence, solve_qp, unconstrained_minimizer
from .problem import Configuration, QpInstance, level
from .scenarios import GridSpec, cbf_scenario, random_instance
from .search import ConfigGraph, ConfigSearchResult, greedy_maxfs, heuristic_maxfs, neighbors
from .simplex import LpOutcome, LpStatus, StandardLp, solve_standard_lp

__version__ = "0.1.0"
