"""Feasibility of a QP's constraint set through its dual cone LP.

For a configuration ``P`` the constraints ``S(P) A'u <= S(P) B`` admit a point
iff the LP

    max  -B'lam   over  { lam : A lam = 0,  P_j lam_j >= 0 }

is bounded. Its feasible set is a cone, so the supremum is either 0 or
+infinity. Substituting ``mu = S(P) lam >= 0`` and intersecting the cone with
the slice ``sum(mu) = 1`` turns the boundedness question into the sign of a
finite optimum: a positive optimum is a normalized Farkas certificate, an
empty slice means the cone is ``{0}``.

The classical elastic (Phase-1) LP is provided as the baseline.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NumericalBreakdown
from .problem import Configuration, QpInstance
from .simplex import LpOutcome, LpStatus, StandardLp, solve_standard_lp

INFEASIBILITY_THRESHOLD = 1e-7


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True, eq=False)
class FeasibilityVerdict:
    """Outcome of a feasibility check.

    ``certificate`` is the multiplier vector ``lam`` (dual LP, infeasible
    case, normalized to ``sum|lam| = 1``) or the optimal violation vector
    ``z`` (Phase-1 LP, infeasible case). ``cone_trivial`` marks the dual
    verdicts where the multiplier cone is ``{0}`` and no LP optimum exists.
    """

    status: Status
    method: str
    lp_optimum: float | None = None
    certificate: np.ndarray | None = None
    cone_trivial: bool = False

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


def _signs(qp: QpInstance, config: Configuration | None) -> np.ndarray:
    return qp.check(config if config is not None else Configuration.kept(qp.C))


def build_dual_lp(qp: QpInstance, config: Configuration | None = None) -> StandardLp:
    """Standard-form LP over ``mu = S(P) lam``: maximize ``-(S(P)B).mu`` subject
    to ``A S(P) mu = 0`` and ``sum(mu) = 1``, ``mu >= 0``."""
    s = _signs(qp, config)
    M = np.vstack([qp.A * s, np.ones((1, qp.C))])
    r = np.zeros(qp.m + 1)
    r[-1] = 1.0
    return StandardLp(-qp.B * s, M, r)


def solve_cone_lp(qp: QpInstance, config: Configuration | None = None) -> LpOutcome:
    """Diagnostic: the un-normalized cone LP. Its outcome is optimal with value 0
    or unbounded, never a positive finite value."""
    s = _signs(qp, config)
    return solve_standard_lp(StandardLp(-qp.B * s, qp.A * s, np.zeros(qp.m)))


def check_feasibility(qp: QpInstance, config: Configuration | None = None) -> FeasibilityVerdict:
    """Decide whether ``S(P) A'u <= S(P) B`` has a solution using the dual cone LP.

    ``config`` defaults to keeping every constraint.
    """
    s = _signs(qp, config)
    zero = ~np.any(qp.A != 0.0, axis=0)
    for i in np.flatnonzero(zero):
        # Constraint reads 0 <= s_i B_i.
        if -s[i] * qp.B[i] > INFEASIBILITY_THRESHOLD:
            lam = np.zeros(qp.C)
            lam[i] = s[i]
            return FeasibilityVerdict(Status.INFEASIBLE, "dual_lp", float(-s[i] * qp.B[i]), lam)
    cols = np.flatnonzero(~zero)

    sub = qp if cols.size == qp.C else qp.subset(cols)
    sub_config = None if config is None else Configuration(tuple(int(v) for v in s[cols]))
    outcome = solve_standard_lp(build_dual_lp(sub, sub_config))

    if outcome.status is LpStatus.INFEASIBLE:
        return FeasibilityVerdict(Status.FEASIBLE, "dual_lp", cone_trivial=True)
    if outcome.status is LpStatus.UNBOUNDED:
        raise NumericalBreakdown("normalized dual LP reported unbounded")

    mu = np.zeros(qp.C)
    mu[cols] = np.maximum(outcome.x, 0.0)
    mu /= mu.sum()
    lam = s * mu
    value = float(-qp.B @ lam)
    if value > INFEASIBILITY_THRESHOLD:
        return FeasibilityVerdict(Status.INFEASIBLE, "dual_lp", value, lam)
    return FeasibilityVerdict(Status.FEASIBLE, "dual_lp", value)


def build_phase1_lp(qp: QpInstance, config: Configuration | None = None) -> StandardLp:
    """Elastic LP ``min 1'z  s.t.  S(P)A'u - z <= S(P)B, z >= 0`` in standard form.

    Variables are ``(u+, u-, z, w)`` with ``u = u+ - u-`` and slack ``w``; the
    objective is negated for maximization.
    """
    s = _signs(qp, config)
    At = (qp.A * s).T
    C, m = At.shape
    I = np.eye(C)
    M = np.hstack([At, -At, -I, I])
    c = np.concatenate([np.zeros(2 * m), -np.ones(C), np.zeros(C)])
    return StandardLp(c, M, qp.B * s)


def phase1_check(qp: QpInstance, config: Configuration | None = None) -> FeasibilityVerdict:
    """Baseline verdict from the elastic Phase-1 LP; feasible iff total violation <= 1e-7."""
    outcome = solve_standard_lp(build_phase1_lp(qp, config))
    if outcome.status is not LpStatus.OPTIMAL:
        raise NumericalBreakdown(f"phase-1 LP ended {outcome.status.value}")
    m, C = qp.m, qp.C
    z = outcome.x[2 * m:2 * m + C]
    total = float(z.sum())
    if total > INFEASIBILITY_THRESHOLD:
        return FeasibilityVerdict(Status.INFEASIBLE, "phase1", total, z)
    return FeasibilityVerdict(Status.FEASIBLE, "phase1", total)


def verdicts_agree(qp: QpInstance, config: Configuration | None = None) -> bool:
    return check_feasibility(qp, config).status is phase1_check(qp, config).status


def validate_hard(qp: QpInstance) -> FeasibilityVerdict:
    """Check that the hard constraints alone are satisfiable."""
    return check_feasibility(qp.subset(qp.hard))


def certificate_violations(qp: QpInstance, config: Configuration | None, lam) -> list[str]:
    """Conditions an infeasibility certificate fails; empty when it is sound.

    A sound ``lam`` conforms in sign to the configuration, lies in the null
    space of ``A`` up to ``1e-7 (1 + |A|_inf)``, has ``sum|lam| = 1`` to
    ``1e-9`` and separates with ``-B'lam >= 1e-7``.
    """
    s = _signs(qp, config)
    lam = np.asarray(lam, dtype=float)
    problems = []
    if np.any(s * lam < 0.0):
        problems.append("sign pattern")
    a_norm = np.linalg.norm(qp.A, np.inf) if qp.A.size else 0.0
    if qp.m and np.abs(qp.A @ lam).max() > 1e-7 * (1.0 + a_norm):
        problems.append("null space")
    if abs(np.abs(lam).sum() - 1.0) > 1e-9:
        problems.append("normalization")
    if -qp.B @ lam < 1e-7:
        problems.append("separation")
    return problems
