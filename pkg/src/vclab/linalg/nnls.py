"""Lawson-Hanson active-set nonnegative least squares."""

import numpy as np


def nnls(A, b, max_iter=None, tol=None):
    """Solve ``min ||A x - b||_2`` subject to ``x >= 0``.

    Parameters
    ----------
    A : (m, k) array_like
    b : (m,) array_like
    max_iter : int, optional
        Cap on outer iterations; defaults to ``3 * k``.
    tol : float, optional
        Dual-feasibility threshold on the gradient ``A^T (b - A x)``.

    Returns
    -------
    x : ndarray
        Nonnegative coefficient vector.
    rnorm : float
        Residual norm ``||A x - b||``.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, k = A.shape
    if max_iter is None:
        max_iter = 3 * max(k, 1)
    if tol is None:
        tol = 10 * np.finfo(float).eps * max(np.abs(A).max(initial=0.0), 1.0) * max(m, k)
    x = np.zeros(k)
    passive = np.zeros(k, dtype=bool)
    w = A.T @ (b - A @ x)
    it = 0
    while (~passive).any() and (w[~passive] > tol).any():
        if it >= max_iter:
            break
        it += 1
        cand = np.where(~passive, w, -np.inf)
        passive[int(np.argmax(cand))] = True
        while True:
            idx = np.flatnonzero(passive)
            z = np.zeros(k)
            z[idx] = np.linalg.lstsq(A[:, idx], b, rcond=None)[0]
            if (z[idx] > 0).all():
                x = z
                break
            neg = idx[(z[idx] <= 0) & (x[idx] - z[idx] > 0)]
            if neg.size == 0:
                x = np.where(passive, np.maximum(z, 0.0), 0.0)
                break
            alpha = np.min(x[neg] / (x[neg] - z[neg]))
            x = x + alpha * (z - x)
            passive &= ~((np.abs(x) < tol) & passive)
            x[~passive] = 0.0
            if not passive.any():
                break
        w = A.T @ (b - A @ x)
    return x, float(np.linalg.norm(A @ x - b))
