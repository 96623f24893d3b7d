"""Stance-force allocation by a small dense quadratic program.

Minimizes ||W (A f - w)||^2 + reg ||f||^2 over per-foot contact forces
subject to unilateral contact (fz >= 0) and a linearized friction pyramid
(|fx| <= mu fz, |fy| <= mu fz).  Solved with a primal active-set method:
deterministic, exact at the KKT point, no external solver.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AllocationError

__all__ = ["StanceAllocation", "solve_qp", "allocate_stance_forces", "friction_pyramid"]


def solve_qp(H, g, C, d, x0, tol=1e-8, max_iter=100):
    """min 1/2 x^T H x + g^T x  s.t.  C x <= d, from a feasible x0.

    H must be symmetric positive definite.  Returns (x, iterations).
    Primal active set with lowest-index tie-breaking (deterministic); a
    full unblocked step lands on the working-set optimum, where the
    multipliers from the same KKT solve decide termination.
    """
    H = np.asarray(H, dtype=float)
    g = np.asarray(g, dtype=float)
    C = np.asarray(C, dtype=float)
    d = np.asarray(d, dtype=float)
    x = np.asarray(x0, dtype=float).copy()
    n = len(x)
    m = len(d)
    working = []
    for it in range(max_iter):
        if working:
            Cw = C[working]
            k = len(working)
            kkt = np.zeros((n + k, n + k))
            kkt[:n, :n] = H
            kkt[:n, n:] = Cw.T
            kkt[n:, :n] = Cw
            rhs = np.concatenate([-(H @ x + g), np.zeros(k)])
            try:
                sol = np.linalg.solve(kkt, rhs)
            except np.linalg.LinAlgError:
                sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
            p = sol[:n]
            lam = sol[n:]
        else:
            p = np.linalg.solve(H, -(H @ x + g))
            lam = np.zeros(0)
        p_tol = tol * (1.0 + float(np.max(np.abs(x))))
        at_optimum = np.max(np.abs(p)) <= p_tol
        if not at_optimum:
            # step length against constraints outside the working set
            alpha = 1.0
            blocking = -1
            cx = C @ x
            cp = C @ p
            for i in range(m):
                if i in working or cp[i] <= 1e-14:
                    continue
                ai = (d[i] - cx[i]) / cp[i]
                if ai < alpha - 1e-15:
                    alpha = ai
                    blocking = i
            x = x + max(alpha, 0.0) * p
            if blocking >= 0:
                working.append(blocking)
                continue
            # unblocked full step: now at the working-set optimum
        if len(lam) == 0 or np.min(lam) >= -tol:
            return x, it + 1
        working.pop(int(np.argmin(lam)))
    return x, max_iter


def friction_pyramid(n_feet, mu):
    """Constraint rows C f <= 0 for unilateral contact + friction pyramid."""
    C = np.zeros((5 * n_feet, 3 * n_feet))
    for k in range(n_feet):
        r = 5 * k
        c = 3 * k
        C[r, c + 2] = -1.0  # fz >= 0
        C[r + 1, c] = 1.0
        C[r + 1, c + 2] = -mu
        C[r + 2, c] = -1.0
        C[r + 2, c + 2] = -mu
        C[r + 3, c + 1] = 1.0
        C[r + 3, c + 2] = -mu
        C[r + 4, c + 1] = -1.0
        C[r + 4, c + 2] = -mu
    return C


@dataclass
class StanceAllocation:
    """Per-stance-foot contact forces (world frame, force on the robot)."""

    forces: np.ndarray  # (n_feet, 3)
    residual: float  # ||W (A f - w)|| at the solution
    friction_margin: float  # min over feet of (mu*fz - max|ft|), >= 0
    iterations: int

    def objective(self, A, wrench, weights, reg):
        f = self.forces.reshape(-1)
        r = weights * (A @ f - wrench)
        return float(r @ r + reg * f @ f)


def allocate_stance_forces(foot_positions, wrench, mu=0.6, reg=1e-6,
                           moment_weight=1.0, f_init_z=None):
    """Allocate a desired trunk wrench to stance-foot contact forces.

    ``foot_positions`` are stance-foot positions relative to the wrench
    reference point (usually the COM), world frame, shape (n, 3);
    ``wrench`` is the desired (force, moment) 6-vector.  Raises
    AllocationError when no stance feet are available.  The returned forces
    satisfy the unilateral and friction-pyramid constraints exactly.
    """
    feet = np.atleast_2d(np.asarray(foot_positions, dtype=float))
    if feet.shape[0] == 0:
        raise AllocationError("no stance feet to carry the requested wrench")
    wrench = np.asarray(wrench, dtype=float).reshape(6)
    n = feet.shape[0]
    A = np.zeros((6, 3 * n))
    for k, r in enumerate(feet):
        A[:3, 3 * k:3 * k + 3] = np.eye(3)
        A[3:, 3 * k:3 * k + 3] = np.array(
            [[0.0, -r[2], r[1]], [r[2], 0.0, -r[0]], [-r[1], r[0], 0.0]]
        )
    weights = np.array([1.0, 1.0, 1.0, moment_weight, moment_weight, moment_weight])
    Aw = weights[:, None] * A
    ww = weights * wrench
    H = 2.0 * (Aw.T @ Aw + reg * np.eye(3 * n))
    g = -2.0 * (Aw.T @ ww)
    C = friction_pyramid(n, mu)
    d = np.zeros(5 * n)
    x0 = np.zeros(3 * n)
    x0[2::3] = max(wrench[2] / n, 1.0) if f_init_z is None else f_init_z
    x, iters = solve_qp(H, g, C, d, x0)
    forces = x.reshape(n, 3).copy()
    # exact constraint cleanup of solver round-off
    forces[:, 2] = np.maximum(forces[:, 2], 0.0)
    lim = mu * forces[:, 2]
    forces[:, 0] = np.clip(forces[:, 0], -lim, lim)
    forces[:, 1] = np.clip(forces[:, 1], -lim, lim)
    resid = float(np.linalg.norm(weights * (A @ forces.reshape(-1) - wrench)))
    margin = float(np.min(lim - np.max(np.abs(forces[:, :2]), axis=1)))
    return StanceAllocation(
        forces=forces, residual=resid, friction_margin=margin, iterations=iters
    )
