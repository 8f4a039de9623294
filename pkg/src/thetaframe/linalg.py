"""Small dense symmetric eigensolver (cyclic Jacobi rotations)."""

from __future__ import annotations

import numpy as np

__all__ = ["jacobi_eigh", "extreme_singular_values_squared"]


def jacobi_eigh(S, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    S : array_like, shape (n, n)
        Symmetric matrix.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm drops below
        ``tol`` times the Frobenius norm of ``S``.
    max_sweeps : int
        Hard cap on the number of sweeps.

    Returns
    -------
    w : ndarray, shape (n,)
        Eigenvalues in ascending order.
    V : ndarray, shape (n, n)
        Orthogonal matrix whose columns are the matching eigenvectors.
    """
    A = np.array(S, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("jacobi_eigh expects a square matrix")
    if not np.allclose(A, A.T, rtol=1e-12, atol=1e-14 * (1 + np.abs(A).max(initial=0))):
        raise ValueError("jacobi_eigh expects a symmetric matrix")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    V = np.eye(n)
    scale = np.linalg.norm(A)
    if n < 2 or scale == 0.0:
        order = np.argsort(np.diag(A))
        return np.diag(A)[order], V[:, order]

    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                diff = A[q, q] - A[p, p]
                if abs(apq) <= 1e-300 or abs(apq) < 1e-18 * abs(diff):
                    A[p, q] = A[q, p] = 0.0
                    continue
                # rotation angle zeroing A[p, q] (Golub & Van Loan, alg. 8.4.1)
                theta = diff / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                Ap = A[:, p].copy()
                Aq = A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap = A[p, :].copy()
                Aq = A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
                Vp = V[:, p].copy()
                V[:, p] = c * Vp - s * V[:, q]
                V[:, q] = s * Vp + c * V[:, q]
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.diag(A).copy()
    order = np.argsort(w)
    return w[order], V[:, order]


def extreme_singular_values_squared(M) -> tuple[float, float]:
    """Smallest and largest eigenvalue of ``M.T @ M``, clipped at zero."""
    M = np.asarray(M, dtype=float)
    w, _ = jacobi_eigh(M.T @ M)
    w = np.clip(w, 0.0, None)
    return float(w[0]), float(w[-1])
