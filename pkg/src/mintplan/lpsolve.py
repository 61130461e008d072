"""Bounded-variable primal simplex, written against the package's own
problem type.

The solver runs the classic two phases. Every row gets a slack or an
artificial starting column so the initial basis is trivially feasible;
phase 1 drives the artificials to zero (or proves infeasibility), phase
2 optimizes the real objective. Bland's smallest-index rule picks both
the entering and the leaving variable, which makes the iteration
cycle-free at the price of speed; instances here are small enough that
robustness wins. Variables move between a finite lower and a possibly
infinite upper bound, and a step that only sends the entering variable
to its opposite bound is taken as a bound flip without any basis
change.

The basis inverse is kept explicitly and updated by the product form on
each pivot, with a full refactorization (and a fresh recomputation of
the basic values) every few dozen pivots to keep drift at machine
precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mip import StandardFormProblem
from .model import MintPlanError

#: Entries smaller than this never serve as pivots.
PIVOT_TOL = 1e-9

#: Row residuals and the phase-1 objective are compared against this.
FEAS_TOL = 1e-7

#: Reduced costs within this of zero are treated as optimal.
DUAL_TOL = 1e-9

#: Pivots between full refactorizations of the basis inverse.
REFACTOR_EVERY = 64

_AT_LOWER, _AT_UPPER, _BASIC = 0, 1, 2


class IterationCapExceeded(MintPlanError):
    """The simplex hit its iteration budget before terminating."""


@dataclass(frozen=True)
class LpResult:
    """Outcome of one LP solve.

    ``objective`` is NaN for infeasible and -inf for unbounded problems;
    ``x`` covers the problem's own columns (no slacks) and is None
    unless the status is optimal. ``basis`` lists the basic columns in
    the solver's internal indexing (structural columns first, then one
    slack per inequality row, then one artificial per row) and can seed
    a warm start.
    """

    status: str
    objective: float
    x: np.ndarray | None = None
    basis: tuple[int, ...] = ()
    iterations: int = 0


class _Tableau:
    """Mutable solver state over the internal (structural+slack+artificial)
    column space."""

    def __init__(self, problem: StandardFormProblem, bounds_override=None):
        rows = problem.rows
        m, n = len(rows), len(problem.columns)
        lower = np.array(problem.lower, dtype=float)
        upper = np.array(problem.upper, dtype=float)
        if bounds_override:
            for col, (lo, hi) in bounds_override.items():
                lower[col] = lo
                upper[col] = hi
        self.n_struct = n
        if np.any(~np.isfinite(lower) & ~np.isfinite(upper)):
            raise MintPlanError("columns unbounded in both directions are not supported")
        self.infeasible_bounds = bool(np.any(lower > upper + 1e-12))

        n_slack = sum(1 for r in rows if r.relation != "=")
        ntot = n + n_slack + m
        A = np.zeros((m, ntot))
        b = np.empty(m)
        for i, row in enumerate(rows):
            b[i] = row.rhs
            for col, coeff in row.coeffs:
                A[i, col] = coeff

        self.l = np.concatenate([lower, np.zeros(n_slack), np.zeros(m)])
        self.u = np.concatenate([upper, np.full(n_slack, np.inf), np.full(m, np.inf)])
        self.x = np.zeros(ntot)
        for j in range(n):
            if math.isfinite(self.l[j]):
                self.x[j] = self.l[j]
            elif math.isfinite(self.u[j]):
                self.x[j] = min(self.u[j], 0.0)
        self.status = np.full(ntot, _AT_LOWER, dtype=np.int8)
        near_upper = ~np.isfinite(self.l[:n]) & np.isfinite(self.u[:n])
        self.status[:n][near_upper] = _AT_UPPER

        # residuals with every structural column at its starting bound
        residual = b - A[:, :n] @ self.x[:n]
        basis = np.empty(m, dtype=np.int64)
        art_used = np.zeros(m, dtype=bool)
        si = n
        self.art_cols = np.arange(n + n_slack, ntot)
        for i, row in enumerate(rows):
            slack = None
            if row.relation != "=":
                slack = si
                si += 1
                A[i, slack] = 1.0 if row.relation == "<=" else -1.0
            sval = residual[i] / A[i, slack] if slack is not None else -1.0
            if slack is not None and sval >= 0.0:
                basis[i] = slack
                self.x[slack] = sval
                self.status[slack] = _BASIC
                # the paired artificial is never needed: pin it at zero
                self.u[self.art_cols[i]] = 0.0
            else:
                art = self.art_cols[i]
                A[i, art] = 1.0 if residual[i] >= 0.0 else -1.0
                basis[i] = art
                self.x[art] = abs(residual[i])
                self.status[art] = _BASIC
                art_used[i] = True

        self.A = A
        self.b = b
        self.basis = basis
        self.need_phase1 = bool(art_used.any())
        self.iterations = 0
        self.B_inv = None
        self._refactor()

    def _refactor(self) -> None:
        self.B_inv = np.linalg.inv(self.A[:, self.basis])
        self._recompute_basics()

    def _recompute_basics(self) -> None:
        tmp = self.x.copy()
        tmp[self.basis] = 0.0
        rhs = self.b - self.A @ tmp
        self.x[self.basis] = self.B_inv @ rhs

    def iterate(self, c: np.ndarray, cap: int) -> str:
        """Run simplex on objective ``c`` until optimal or unbounded."""
        pivots_since = 0
        for _ in range(cap):
            self.iterations += 1
            y = c[self.basis] @ self.B_inv
            reduced = c - y @ self.A
            movable = (self.u - self.l) > PIVOT_TOL
            eligible = movable & (
                ((self.status == _AT_LOWER) & (reduced < -DUAL_TOL))
                | ((self.status == _AT_UPPER) & (reduced > DUAL_TOL))
            )
            if not eligible.any():
                self.iterations -= 1  # this pass only confirmed optimality
                self._refactor()
                return "optimal"
            q = int(np.argmax(eligible))  # Bland: smallest eligible index
            direction = 1.0 if self.status[q] == _AT_LOWER else -1.0
            dq = self.B_inv @ self.A[:, q]
            eta = -direction * dq  # basic values move by t * eta

            xB = self.x[self.basis]
            lB = self.l[self.basis]
            uB = self.u[self.basis]
            with np.errstate(divide="ignore", invalid="ignore"):
                toward_lower = np.where(eta < -PIVOT_TOL, (xB - lB) / -eta, np.inf)
                toward_upper = np.where(eta > PIVOT_TOL, (uB - xB) / eta, np.inf)
            ratios = np.minimum(toward_lower, toward_upper)
            min_ratio = float(ratios.min()) if ratios.size else math.inf
            t_flip = self.u[q] - self.l[q]

            if t_flip <= min_ratio:
                if not math.isfinite(t_flip):
                    return "unbounded"
                self.x[self.basis] = xB + t_flip * eta
                self.x[q] = self.u[q] if direction > 0 else self.l[q]
                self.status[q] = _AT_UPPER if direction > 0 else _AT_LOWER
                continue
            if not math.isfinite(min_ratio):
                return "unbounded"

            blocking = np.nonzero(ratios <= min_ratio + 1e-12)[0]
            leave_pos = int(blocking[np.argmin(self.basis[blocking])])  # Bland again
            out_col = int(self.basis[leave_pos])
            hits_lower = eta[leave_pos] < 0.0

            self.x[self.basis] = xB + min_ratio * eta
            self.x[q] = self.l[q] + min_ratio if direction > 0 else self.u[q] - min_ratio
            self.x[out_col] = self.l[out_col] if hits_lower else self.u[out_col]
            self.status[out_col] = _AT_LOWER if hits_lower else _AT_UPPER
            self.status[q] = _BASIC
            self.basis[leave_pos] = q

            pivot_row = self.B_inv[leave_pos] / dq[leave_pos]
            self.B_inv -= np.outer(dq, pivot_row)
            self.B_inv[leave_pos] = pivot_row
            pivots_since += 1
            if pivots_since >= REFACTOR_EVERY:
                self._refactor()
                pivots_since = 0
        raise IterationCapExceeded(f"simplex exceeded {cap} iterations")

    def drive_out_artificials(self) -> None:
        """After phase 1, pivot basic artificials out where possible and
        pin every artificial at zero."""
        for pos in range(len(self.basis)):
            col = int(self.basis[pos])
            if col < self.art_cols[0]:
                continue
            alphas = self.B_inv[pos] @ self.A
            candidate = None
            for j in range(self.art_cols[0]):
                if self.status[j] != _BASIC and abs(alphas[j]) > PIVOT_TOL:
                    candidate = j
                    break
            if candidate is None:
                self.x[col] = 0.0  # redundant row; artificial stays basic at 0
                continue
            dq = self.B_inv @ self.A[:, candidate]
            self.basis[pos] = candidate
            self.status[candidate] = _BASIC
            self.status[col] = _AT_LOWER
            self.x[col] = 0.0
            pivot_row = self.B_inv[pos] / dq[pos]
            self.B_inv -= np.outer(dq, pivot_row)
            self.B_inv[pos] = pivot_row
        self.l[self.art_cols] = 0.0
        self.u[self.art_cols] = 0.0
        self._refactor()


def solve_lp(
    problem: StandardFormProblem,
    *,
    bounds_override: dict | None = None,
    iteration_cap: int | None = None,
) -> LpResult:
    """Solve the continuous relaxation of ``problem``.

    Binary markers are ignored, so binaries range over their [0, 1]
    bounds. ``bounds_override`` maps column index to a (lower, upper)
    pair and is how branch-and-bound fixes binaries. The default
    iteration budget is 50 * (rows + columns) per phase; exceeding it
    raises IterationCapExceeded rather than returning a wrong answer.
    """
    cap = iteration_cap if iteration_cap is not None else 50 * (len(problem.rows) + len(problem.columns))
    tableau = _Tableau(problem, bounds_override)
    if tableau.infeasible_bounds:
        return LpResult(status="infeasible", objective=math.nan)

    iterations = 0
    if tableau.need_phase1:
        c1 = np.zeros(tableau.A.shape[1])
        c1[tableau.art_cols] = 1.0
        status = tableau.iterate(c1, cap)
        if status != "optimal":  # a sum of nonnegatives cannot be unbounded
            raise MintPlanError("phase 1 reported unbounded; the model is corrupt")
        if float(tableau.x[tableau.art_cols].sum()) > FEAS_TOL:
            return LpResult(status="infeasible", objective=math.nan)
        tableau.drive_out_artificials()

    c2 = np.zeros(tableau.A.shape[1])
    c2[: tableau.n_struct] = problem.objective
    status = tableau.iterate(c2, cap)
    if status == "unbounded":
        return LpResult(status="unbounded", objective=-math.inf)

    x = tableau.x[: tableau.n_struct].copy()
    lower = np.array(problem.lower)
    upper = np.array(problem.upper)
    if bounds_override:
        for col, (lo, hi) in bounds_override.items():
            lower[col] = lo
            upper[col] = hi
    np.clip(x, lower, upper, out=x)

    for row in problem.rows:
        scale = max(1.0, abs(row.rhs))
        if row.violation(x) > FEAS_TOL * scale:
            raise MintPlanError(
                f"simplex returned a point violating {row.label} by {row.violation(x):g}"
            )

    return LpResult(
        status="optimal",
        objective=float(np.dot(problem.objective, x)),
        x=x,
        basis=tuple(int(v) for v in tableau.basis),
        iterations=tableau.iterations,
    )
