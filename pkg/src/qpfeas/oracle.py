"""Exact small-scale QP solver by active-set enumeration.

Candidate active sets are visited by increasing size and, within a size, in
lexicographic order. Each one defines an equality-constrained KKT system; the
first candidate whose solution is primal feasible with nonnegative
multipliers is a KKT point, hence the unique minimizer of the strictly convex
QP. This is slow (combinatorial) and meant as a trusted reference, not as a
solver.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InfeasibleQp, OutOfOracleRange, PremiseViolated, SingularMatrix
from .linalg import cholesky_solve, solve_linear
from .problem import Configuration, QpInstance

MAX_DIMENSION = 12
MAX_CONSTRAINTS = 24
PRIMAL_TOL = 1e-9
MULTIPLIER_TOL = 1e-9
LEMMA_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class QpSolution:
    """Minimizer of ``u'Hu + F'u`` subject to ``S(P)A'u <= S(P)B``.

    ``multipliers`` belong to the sign-adjusted constraints, so they are
    nonnegative and ``2Hu + F + A S(P) lam = 0``. ``skipped`` lists candidate
    active sets whose KKT matrix was singular.
    """

    u: np.ndarray
    multipliers: np.ndarray
    active_set: tuple[int, ...]
    objective: float
    skipped: tuple[tuple[int, ...], ...] = ()


def unconstrained_minimizer(qp: QpInstance) -> np.ndarray:
    """``-H^{-1} F / 2``."""
    return -0.5 * cholesky_solve(qp.cholesky, qp.F)


def _signed(qp: QpInstance, config: Configuration | None):
    s = qp.check(config if config is not None else Configuration.kept(qp.C))
    return qp.A * s, qp.B * s


def solve_qp(qp: QpInstance, config: Configuration | None = None) -> QpSolution:
    """Solve the (sign-adjusted) QP exactly.

    Raises
    ------
    OutOfOracleRange
        If ``m > 12`` or ``C > 24``.
    InfeasibleQp
        If no candidate active set yields a KKT point.
    """
    if qp.m > MAX_DIMENSION or qp.C > MAX_CONSTRAINTS:
        raise OutOfOracleRange(f"oracle handles m <= {MAX_DIMENSION}, C <= {MAX_CONSTRAINTS}; got m={qp.m}, C={qp.C}")
    A, B = _signed(qp, config)
    m, C = qp.m, qp.C
    primal_tol = PRIMAL_TOL * (1.0 + np.abs(B).max(initial=0.0))
    skipped = []

    for size in range(min(m, C) + 1):
        for W in combinations(range(C), size):
            AW = A[:, W]
            K = np.zeros((m + size, m + size))
            K[:m, :m] = 2.0 * qp.H
            K[:m, m:] = AW
            K[m:, :m] = AW.T
            try:
                sol = solve_linear(K, np.concatenate([-qp.F, B[list(W)]]))
            except SingularMatrix:
                skipped.append(W)
                continue
            u, lam_W = sol[:m], sol[m:]
            if np.any(lam_W < -MULTIPLIER_TOL * (1.0 + np.abs(lam_W).max(initial=0.0))):
                continue
            if np.any(A.T @ u - B > primal_tol):
                continue
            lam = np.zeros(C)
            lam[list(W)] = np.maximum(lam_W, 0.0)
            return QpSolution(u, lam, W, qp.objective(u), tuple(skipped))
    raise InfeasibleQp("no candidate active set yields a feasible KKT point")


def kkt_residual(qp: QpInstance, config: Configuration | None, sol: QpSolution) -> float:
    """``|2Hu + F + A S(P) lam|_inf``."""
    A, _ = _signed(qp, config)
    return float(np.abs(2.0 * qp.H @ sol.u + qp.F + A @ sol.multipliers).max(initial=0.0))


def dual_value(qp: QpInstance, config: Configuration | None, lam) -> float:
    """Lagrange dual function ``min_u u'Hu + F'u + lam'(S(P)A'u - S(P)B)``,
    i.e. ``-(F + A S lam)' H^{-1} (F + A S lam) / 4 - (S B)'lam``."""
    A, B = _signed(qp, config)
    lam = np.asarray(lam, dtype=float)
    g = qp.F + A @ lam
    return float(-0.25 * g @ cholesky_solve(qp.cholesky, g) - B @ lam)


def is_infeasible(qp: QpInstance, config: Configuration | None = None) -> bool:
    try:
        solve_qp(qp, config)
    except InfeasibleQp:
        return True
    return False


def lemma1_equivalence(qp: QpInstance, flip_set) -> bool:
    """Compare the minimizer with ``flip_set`` disregarded (sign-negated) against
    the minimizer with those constraints deleted.

    Requires that keeping everything is infeasible while disregarding
    ``flip_set`` is feasible; raises :class:`PremiseViolated` otherwise.
    """
    flip = sorted({int(i) for i in flip_set})
    if set(flip) & set(qp.hard):
        raise PremiseViolated("flip_set must contain soft constraints only")
    config = Configuration.disregarding(qp.C, flip)
    if not is_infeasible(qp):
        raise PremiseViolated("keeping every constraint is already feasible")
    try:
        flipped = solve_qp(qp, config)
    except InfeasibleQp:
        raise PremiseViolated("disregarding flip_set does not restore feasibility") from None
    deleted = solve_qp(qp.without(flip))
    return bool(np.abs(flipped.u - deleted.u).max(initial=0.0) <= LEMMA_TOL)
