"""Brute-force evaluation of the induced norm.

The admissible set ``{f : |g_i(f)| >= |c_i|}`` is a union of convex
polyhedra, one per sign pattern ``sigma``: ``sigma_i g_i(f) >= |c_i|``.  On
each piece the minimum-norm point is found by Dykstra's alternating
projections onto half-spaces, and the smallest value over all pieces is the
norm.  This deliberately shares nothing with the closed form in
:mod:`thetaframe.theta`, so the two can check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .frames import level_weights
from .hierarchy import WeightHierarchy
from .sequences import SequenceLike, as_sequence
from .theta import ORACLE, ThetaNormResult, coefficients, member_Mc

__all__ = [
    "OracleError",
    "OracleLimitError",
    "ConvergenceError",
    "PolyhedronSolution",
    "min_norm_polyhedron",
    "oracle_theta_norm",
    "MAX_FUNCTIONALS",
    "MAX_DIM",
]

MAX_FUNCTIONALS = 20
MAX_DIM = 6

MOVE_TOL = 1e-10
RESIDUAL_TOL = 1e-8
MAX_SWEEPS = 10 ** 6
STALL_WINDOW = 200
BATCH = 4096


class OracleError(RuntimeError):
    pass


class OracleLimitError(OracleError, ValueError):
    """Problem too large for exhaustive sign enumeration."""


class ConvergenceError(OracleError):
    """Dykstra iteration hit the sweep cap without settling."""


@dataclass(frozen=True)
class PolyhedronSolution:
    feasible: bool
    f: Optional[np.ndarray]
    value: float
    sweeps: int


def _dykstra(N, b, tol=MOVE_TOL, max_sweeps=MAX_SWEEPS):
    """Project the origin onto ``{y : N_p y >= b}`` for a batch of systems.

    ``N`` has shape ``(P, m, n)``; ``b`` has shape ``(m,)`` and is shared.
    Returns ``(y, status, sweeps)`` where ``status`` is 1 for converged,
    0 for stalled above the residual tolerance and -1 for hitting the cap.
    """
    P, m, n = N.shape
    nrm2 = np.einsum("pmn,pmn->pm", N, N)
    x = np.zeros((P, n))
    Y = np.zeros((P, m, n))
    status = np.full(P, -1)
    sweeps = np.zeros(P, dtype=int)
    live = np.arange(P)
    bscale = 1.0 + float(np.max(np.abs(b), initial=0.0))
    last_res = np.full(P, np.inf)

    sweep = 0
    while live.size and sweep < max_sweeps:
        sweep += 1
        Nl, xl, Yl = N[live], x[live], Y[live]
        start = xl.copy()
        for i in range(m):
            z = xl + Yl[:, i]
            viol = b[i] - np.einsum("pn,pn->p", Nl[:, i], z)
            step = np.maximum(viol, 0.0) / nrm2[live, i]
            xn = z + step[:, None] * Nl[:, i]
            Yl[:, i] = z - xn
            xl = xn
        x[live], Y[live] = xl, Yl
        sweeps[live] = sweep
        move = np.max(np.abs(xl - start), axis=1)
        done = move < tol * np.maximum(1.0, np.max(np.abs(xl), axis=1))
        if sweep % STALL_WINDOW == 0:
            res = np.max(np.maximum(b[None, :] - np.einsum("pmn,pn->pm", Nl, xl), 0.0), axis=1)
            stalled = (res > RESIDUAL_TOL * bscale) & (res >= 0.99 * last_res[live])
            last_res[live] = res
            status[live[stalled & ~done]] = 0
            done = done | stalled
        status[live[done & (status[live] == -1)]] = 1
        live = live[~done]
    return x, status, sweeps


def _restore_feasibility(N, b, y):
    """Scale ``y`` up just enough that every constraint with ``b_i > 0`` holds."""
    act = N @ y
    pos = b > 0
    if not np.any(pos):
        return y
    if np.any(act[pos] <= 0):
        return None
    lam = max(1.0, float(np.max(b[pos] / act[pos])))
    return lam * y


def min_norm_polyhedron(A, b, W=None, tol: float = MOVE_TOL,
                        max_sweeps: int = MAX_SWEEPS) -> PolyhedronSolution:
    """Minimise ``||W f||_2`` subject to ``A f >= b`` with ``b >= 0``.

    Parameters
    ----------
    A : array_like, shape (m, n)
    b : array_like, shape (m,)
        Non-negative right-hand side.
    W : array_like, optional
        Positive diagonal weights, as a vector of length ``n`` or a diagonal
        matrix.  Defaults to the identity.

    Returns
    -------
    PolyhedronSolution
        ``feasible=False`` (with ``f=None`` and ``value=inf``) when the
        feasibility residual stalls above tolerance.

    Raises
    ------
    ConvergenceError
        If the sweep cap is reached without the iterates settling.

    Examples
    --------
    >>> sol = min_norm_polyhedron([[1.0, 0.0], [0.0, 1.0]], [1.0, 1.0])
    >>> sol.f.tolist(), round(sol.value ** 2, 12)
    ([1.0, 1.0], 2.0)
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    m, n = A.shape
    if b.shape != (m,):
        raise ValueError("b must have one entry per row of A")
    if np.any(b < 0):
        raise ValueError("b must be non-negative")
    w = _weights(W, n)
    N = A / w[None, :]
    y, status, sweeps = _dykstra(N[None], b, tol, max_sweeps)
    return _finish(N, b, w, y[0], int(status[0]), int(sweeps[0]))


def _weights(W, n):
    if W is None:
        return np.ones(n)
    W = np.asarray(W, dtype=float)
    w = np.diag(W) if W.ndim == 2 else W.ravel()
    if w.shape != (n,) or np.any(w <= 0):
        raise ValueError("W must be a positive diagonal of matching size")
    return w


def _finish(N, b, w, y, status, sweeps):
    if status == -1:
        raise ConvergenceError(f"no convergence after {sweeps} sweeps")
    res = float(np.max(np.maximum(b - N @ y, 0.0), initial=0.0))
    if status == 0 or res > RESIDUAL_TOL * (1.0 + float(np.max(b, initial=0.0))):
        return PolyhedronSolution(False, None, np.inf, sweeps)
    y = _restore_feasibility(N, b, y)
    if y is None:
        return PolyhedronSolution(False, None, np.inf, sweeps)
    return PolyhedronSolution(True, y / w, float(np.linalg.norm(y)), sweeps)


def _patterns(k):
    """Sign patterns over ``k`` entries with the first sign fixed to +1.

    ``sigma`` and ``-sigma`` give mirror-image pieces with equal minima, so
    half of the patterns suffice.  Rows come out in lexicographic order of
    the bit strings (``+1`` before ``-1``).
    """
    if k == 0:
        return np.ones((1, 0))
    bits = np.array(list(itertools.product((0, 1), repeat=k - 1)), dtype=float).reshape(2 ** (k - 1), k - 1)
    return np.hstack([np.ones((bits.shape[0], 1)), 1.0 - 2.0 * bits])


def oracle_theta_norm(frame, c: SequenceLike, s: int = 0,
                      hierarchy: Optional[WeightHierarchy] = None) -> ThetaNormResult:
    """Induced norm of ``c`` by enumerating every sign pattern."""
    c = as_sequence(c)
    G = np.asarray(frame.matrix, dtype=float)
    m, n = G.shape
    cvec = coefficients(frame, c)
    if n > MAX_DIM:
        raise OracleLimitError(f"oracle supports dimension <= {MAX_DIM}, got {n}")
    if m > MAX_FUNCTIONALS:
        raise OracleLimitError(f"oracle supports at most {MAX_FUNCTIONALS} functionals, got {m}")
    support = np.flatnonzero(cvec)
    w = level_weights(hierarchy, s, n)
    if support.size == 0:
        return ThetaNormResult(0.0, np.zeros(n), ORACLE, s)

    b = np.abs(cvec[support])
    N = G[support] / w[None, :]
    sigmas = _patterns(support.size)
    best = (np.inf, None)
    for lo in range(0, sigmas.shape[0], BATCH):
        sig = sigmas[lo:lo + BATCH]
        Ns = sig[:, :, None] * N[None]
        y, status, sweeps = _dykstra(Ns, b)
        for p in range(sig.shape[0]):
            sol = _finish(Ns[p], b, w, y[p], int(status[p]), int(sweeps[p]))
            # strict comparison keeps the lexicographically first minimiser
            if sol.feasible and sol.value < best[0]:
                best = (sol.value, sol.f)
    value, f = best
    if f is None:
        raise OracleError("no sign pattern is feasible; a coefficient sits on a zero functional")
    if not member_Mc(frame, c, f, s, rtol=1e-9):
        raise OracleError("oracle witness failed the membership post-check")
    return ThetaNormResult(value, f, ORACLE, s)
