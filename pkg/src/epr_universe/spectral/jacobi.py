"""Cyclic Jacobi diagonalization of dense real symmetric matrices."""
from __future__ import annotations

import numpy as np

from ..errors import ConvergenceFailureError, NotSymmetricError

DEFAULT_MAX_SWEEPS = 50
SYMMETRY_TOL = 1e-12


def jacobi_eigh(a, max_sweeps: int = DEFAULT_MAX_SWEEPS, tol: float = 1e-15):
    """Eigenvalues and eigenvectors (as columns) of a symmetric matrix.

    Sweeps rotate every off-diagonal pair in row-major order until the
    off-diagonal Frobenius norm drops below ``tol`` times the matrix norm.
    Results are unsorted.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise NotSymmetricError("matrix must be square")
    if n and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise NotSymmetricError("matrix is not symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return np.diag(a).copy(), v

    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= tol * scale:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta != 0:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    raise ConvergenceFailureError(f"Jacobi did not converge in {max_sweeps} sweeps")
