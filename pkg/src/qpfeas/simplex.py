"""Dense revised simplex for ``max c.x  s.t.  M x = r, x >= 0``.

The solver keeps an explicit basis inverse, updated by elementary row
operations and refactorized periodically. Pricing is Dantzig's largest
reduced cost until too many degenerate pivots accumulate, after which it
switches permanently to Bland's rule.

Phase 1 starts from a crash basis: every row that owns a singleton column
with a positive coefficient (a slack, after sign normalization) gets that
column; only the remaining rows receive artificial variables.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InconsistentRows, NumericalBreakdown

OPT_TOL = 1e-9  # reduced-cost tolerance
FEAS_TOL = 1e-9  # phase-1 residual tolerance, relative to 1 + |r|_inf
PIVOT_TOL = 1e-9
DEPENDENT_ROW_RTOL = 1e-10
REFACTOR_EVERY = 50
ITERATION_CAP_FACTOR = 50
BLAND_SWITCH_FACTOR = 3


@dataclass(frozen=True)
class StandardLp:
    """``max c.x`` subject to ``M x = r`` and ``x >= 0``."""

    c: np.ndarray
    M: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        M = np.asarray(self.M, dtype=float)
        if M.ndim != 2:
            M = M.reshape(0, c.shape[0])
        r = np.asarray(self.r, dtype=float).reshape(-1)
        if M.shape != (r.shape[0], c.shape[0]):
            raise ValueError(f"inconsistent LP shapes: c {c.shape}, M {M.shape}, r {r.shape}")
        for name, arr in (("c", c), ("M", M), ("r", r)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"LP data {name} has non-finite entries")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return self.c.shape[0]

    @property
    def k(self) -> int:
        return self.r.shape[0]


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    optimal_value: float | None = None
    x: np.ndarray | None = None
    ray: np.ndarray | None = None
    # Basis columns at termination, in position order, and the equality rows
    # that survived presolve (indices into the caller's M).
    basis: tuple[int, ...] = ()
    rows: tuple[int, ...] = ()
    iterations: int = 0


def _dependent_candidates(M: np.ndarray) -> np.ndarray:
    """Rows that may take part in a linear dependency.

    A row holding the only nonzero of some column cannot appear with a
    nonzero weight in any vanishing row combination, so it is independent
    of the rest and skips elimination.
    """
    nz = M != 0.0
    singleton_cols = nz.sum(axis=0) == 1
    owns = nz[:, singleton_cols].any(axis=1)
    return np.flatnonzero(~owns)


def _presolve_index(lp: StandardLp) -> np.ndarray:
    M, r = lp.M, lp.r
    keep = np.ones(lp.k, dtype=bool)
    r_scale = 1.0 + (np.abs(r).max() if lp.k else 0.0)
    pivots: list[tuple[np.ndarray, float, int]] = []
    for i in _dependent_candidates(M):
        row = M[i].copy()
        rhs = r[i]
        scale = np.abs(row).max(initial=0.0)
        for prow, prhs, pcol in pivots:
            f = row[pcol] / prow[pcol]
            if f != 0.0:
                row -= f * prow
                rhs -= f * prhs
        j = int(np.argmax(np.abs(row))) if row.size else 0
        if scale == 0.0 or abs(row[j]) < DEPENDENT_ROW_RTOL * scale:
            if abs(rhs) > FEAS_TOL * r_scale:
                raise InconsistentRows(f"row {i} reduces to 0 = {rhs:.3g}")
            keep[i] = False
        else:
            pivots.append((row, rhs, j))
    return np.flatnonzero(keep)


def presolve_rows(lp: StandardLp) -> StandardLp:
    """Drop numerically dependent equality rows.

    Raises
    ------
    InconsistentRows
        When a dependent row has a right-hand side the others cannot match.
    """
    rows = _presolve_index(lp)
    return StandardLp(lp.c, lp.M[rows], lp.r[rows])


class _Tableau:
    """Per-call revised-simplex state over the columns of ``M``."""

    def __init__(self, M, r, basis, iteration_cap, bland_after):
        self.M = M
        self.r = r
        self.basis = np.array(basis, dtype=int)
        self.iterations = 0
        self.iteration_cap = iteration_cap
        self.degenerate = 0
        self.bland_after = bland_after
        self.bland = False
        self.refactor()

    def refactor(self):
        k = self.r.shape[0]
        if k == 0:
            self.Binv = np.zeros((0, 0))
            self.x_B = np.zeros(0)
            return
        try:
            self.Binv = np.linalg.inv(self.M[:, self.basis])
        except np.linalg.LinAlgError as exc:
            raise NumericalBreakdown("basis matrix became singular") from exc
        x_B = self.Binv @ self.r
        if np.any(x_B < -1e-7 * (1.0 + np.abs(x_B).max())):
            raise NumericalBreakdown("basic solution lost feasibility on refactorization")
        self.x_B = np.maximum(x_B, 0.0)

    def pivot(self, p: int, q: int, w: np.ndarray, theta: float):
        self.x_B -= theta * w
        self.x_B[p] = theta
        np.maximum(self.x_B, 0.0, out=self.x_B)
        self.basis[p] = q
        piv_row = self.Binv[p] / w[p]
        self.Binv -= np.outer(w, piv_row)
        self.Binv[p] = piv_row
        self.iterations += 1
        if self.iterations > self.iteration_cap:
            raise NumericalBreakdown(f"simplex exceeded {self.iteration_cap} iterations")
        if self.iterations % REFACTOR_EVERY == 0:
            self.refactor()

    def run(self, c: np.ndarray, allowed: np.ndarray):
        """Iterate to optimality. Returns ``None`` when optimal, else the entering
        column and its basis representation along which the objective is unbounded."""
        while True:
            y = c[self.basis] @ self.Binv if self.basis.size else np.zeros(0)
            d = c - y @ self.M
            d[self.basis] = 0.0
            d[~allowed] = 0.0
            if self.bland:
                eligible = np.flatnonzero(d > OPT_TOL)
                if eligible.size == 0:
                    return None
                q = int(eligible[0])
            else:
                q = int(np.argmax(d))
                if d[q] <= OPT_TOL:
                    return None
            w = self.Binv @ self.M[:, q]
            rows = np.flatnonzero(w > PIVOT_TOL)
            if rows.size == 0:
                return q, w
            ratios = self.x_B[rows] / w[rows]
            theta = ratios.min()
            ties = rows[ratios <= theta + 1e-12 * (1.0 + theta)]
            if self.bland:
                p = int(ties[np.argmin(self.basis[ties])])
            else:
                p = int(ties[np.argmax(w[ties])])
            theta = self.x_B[p] / w[p]
            if theta <= 1e-12:
                self.degenerate += 1
                if self.degenerate > self.bland_after:
                    self.bland = True
            self.pivot(p, q, w, theta)


def _crash_basis(M: np.ndarray) -> list[int | None]:
    """For each row, a singleton column with positive coefficient, if any."""
    nz = M != 0.0
    singleton = np.flatnonzero(nz.sum(axis=0) == 1)
    chosen: list[int | None] = [None] * M.shape[0]
    for j in singleton:
        i = int(np.flatnonzero(nz[:, j])[0])
        if chosen[i] is None and M[i, j] > 0.0:
            chosen[i] = int(j)
    return chosen


def solve_standard_lp(lp: StandardLp) -> LpOutcome:
    """Solve ``max c.x, M x = r, x >= 0`` with the two-phase simplex.

    Returns an :class:`LpOutcome` whose status is optimal (with ``x`` and the
    value), unbounded (with a ray ``d >= 0``, ``M d = 0``, ``c.d > 0``), or
    infeasible.

    Raises
    ------
    NumericalBreakdown
        If the iteration cap ``50 (n + k)`` is exceeded.
    """
    try:
        rows = _presolve_index(lp)
    except InconsistentRows:
        return LpOutcome(LpStatus.INFEASIBLE)
    M = lp.M[rows].copy()
    r = lp.r[rows].copy()
    c = lp.c
    n, k = lp.n, r.shape[0]
    flip = r < 0
    M[flip] *= -1.0
    r[flip] *= -1.0
    cap = ITERATION_CAP_FACTOR * (lp.n + lp.k)
    bland_after = BLAND_SWITCH_FACTOR * (lp.n + lp.k)

    crash = _crash_basis(M)
    art_rows = [i for i, j in enumerate(crash) if j is None]
    n_art = len(art_rows)
    if n_art:
        art = np.zeros((k, n_art))
        art[art_rows, np.arange(n_art)] = 1.0
        M_aug = np.hstack([M, art])
    else:
        M_aug = M
    basis = [j if j is not None else n + art_rows.index(i) for i, j in enumerate(crash)]
    tab = _Tableau(M_aug, r, basis, cap, bland_after)

    if n_art:
        c1 = np.zeros(n + n_art)
        c1[n:] = -1.0
        tab.run(c1, np.ones(n + n_art, dtype=bool))
        residual = tab.x_B[tab.basis >= n].sum()
        if residual > FEAS_TOL * (1.0 + np.abs(r).max()):
            return LpOutcome(LpStatus.INFEASIBLE, rows=tuple(int(i) for i in rows), iterations=tab.iterations)
        rows = _drive_out_artificials(tab, n, rows)

    allowed = np.zeros(tab.M.shape[1], dtype=bool)
    allowed[:n] = True
    c2 = np.zeros(tab.M.shape[1])
    c2[:n] = c
    result = tab.run(c2, allowed)
    basis = tuple(int(j) for j in tab.basis)
    kept = tuple(int(i) for i in rows)
    if result is not None:
        q, w = result
        ray = np.zeros(n)
        ray[q] = 1.0
        for pos, j in enumerate(tab.basis):
            if j < n:
                ray[j] = max(-w[pos], 0.0)
        return LpOutcome(LpStatus.UNBOUNDED, ray=ray, basis=basis, rows=kept, iterations=tab.iterations)

    x = np.zeros(n)
    if k:
        x_B = np.linalg.solve(tab.M[:, tab.basis], tab.r) if tab.basis.size else np.zeros(0)
        x[tab.basis] = np.maximum(x_B, 0.0)
    return LpOutcome(LpStatus.OPTIMAL, optimal_value=float(c @ x), x=x, basis=basis, rows=kept,
                     iterations=tab.iterations)


def _drive_out_artificials(tab: _Tableau, n: int, rows: np.ndarray) -> np.ndarray:
    """Pivot zero-level artificials out of the basis; rows where that is
    impossible are redundant and get deleted. Returns the surviving rows."""
    drop = []
    for p in range(tab.basis.size):
        if tab.basis[p] < n:
            continue
        alpha = tab.Binv[p] @ tab.M[:, :n]
        alpha[tab.basis[tab.basis < n]] = 0.0
        j = int(np.argmax(np.abs(alpha))) if n else 0
        if n and abs(alpha[j]) > 1e-7:
            w = tab.Binv @ tab.M[:, j]
            tab.pivot(p, j, w, 0.0)
        else:
            drop.append(p)
    if drop:
        keep = np.setdiff1d(np.arange(tab.basis.size), drop)
        tab.M = tab.M[keep]
        tab.r = tab.r[keep]
        tab.basis = tab.basis[keep]
        rows = rows[keep]
    # Artificial columns are never priced again; trim them.
    tab.M = tab.M[:, :n]
    tab.refactor()
    return rows
