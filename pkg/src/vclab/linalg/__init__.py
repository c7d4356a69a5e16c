"""Dense symmetric linear algebra used throughout the package.

Spectral work goes through a Householder + implicit QL eigensolver
(compiled when available, see :mod:`vclab.linalg.kernels`). Small
nonnegative least squares and boxed LP kernels back the structural checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .nnls import nnls
from .simplex import LPResult, simplex

BACKEND = kernels.BACKEND

__all__ = [
    "BACKEND",
    "LPResult",
    "PSDReport",
    "SpectralDecomposition",
    "MembershipResult",
    "as_symmetric",
    "cholesky_psd",
    "eig_sym",
    "eigvalsh",
    "kernel_basis",
    "kron",
    "lambda_min",
    "lambda_max",
    "lp_feasible",
    "lp_solve",
    "nnls",
    "nnls_membership",
    "numeric_rank",
    "schur",
]


def as_symmetric(X, name="matrix", tol=1e-9) -> np.ndarray:
    """Validate and return ``X`` as a finite symmetric float array.

    The upper triangle is taken as authoritative after the asymmetry check,
    so the returned array is exactly symmetric.
    """
    A = np.asarray(X, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise ValueError(f"{name} has non-finite entries")
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if np.abs(A - A.T).max(initial=0.0) > tol * scale:
        raise ValueError(f"{name} is not symmetric")
    U = np.triu(A)
    return U + np.triu(A, 1).T


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a symmetric matrix.

    Attributes
    ----------
    eigenvalues : ndarray
        Nonincreasing.
    eigenvectors : ndarray
        Orthonormal columns matching ``eigenvalues``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0]) if self.eigenvalues.size else 0.0

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1]) if self.eigenvalues.size else 0.0

    def eigenspace(self, value: float, tol: float = 1e-7) -> np.ndarray:
        """Orthonormal basis of the eigenspace for eigenvalues within ``tol`` of ``value``."""
        mask = np.abs(self.eigenvalues - value) <= tol
        return self.eigenvectors[:, mask]

    def projector(self, value: float, tol: float = 1e-7) -> np.ndarray:
        Q = self.eigenspace(value, tol)
        return Q @ Q.T

    def reconstruct(self) -> np.ndarray:
        Q = self.eigenvectors
        return (Q * self.eigenvalues) @ Q.T


def eig_sym(X) -> SpectralDecomposition:
    """Full eigendecomposition of a symmetric matrix, eigenvalues nonincreasing.

    Eigenvector signs are normalized so the largest-magnitude entry of each
    column is positive, which makes the output deterministic.
    """
    A = as_symmetric(X)
    w, V = kernels.eigh(A, True)
    w = w[::-1].copy()
    V = V[:, ::-1].copy()
    if V.size:
        piv = np.argmax(np.abs(V), axis=0)
        signs = np.sign(V[piv, np.arange(V.shape[1])])
        signs[signs == 0] = 1.0
        V *= signs
    return SpectralDecomposition(w, V)


def eigvalsh(X) -> np.ndarray:
    """Eigenvalues of a symmetric matrix in ascending order."""
    A = as_symmetric(X)
    w, _ = kernels.eigh(A, False)
    return w


def lambda_min(X) -> float:
    w = eigvalsh(X)
    return float(w[0]) if w.size else 0.0


def lambda_max(X) -> float:
    w = eigvalsh(X)
    return float(w[-1]) if w.size else 0.0


def kron(X, Y) -> np.ndarray:
    """Kronecker product with row-major block indexing ``(i, l) -> i * len(Y) + l``."""
    return np.kron(np.asarray(X, dtype=float), np.asarray(Y, dtype=float))


def schur(X, Y) -> np.ndarray:
    """Entrywise (Schur/Hadamard) product of equal-size matrices."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape != Y.shape:
        raise ValueError(f"size mismatch {X.shape} vs {Y.shape}")
    return X * Y


def _rank_mask(w: np.ndarray, tol: float) -> np.ndarray:
    top = float(np.abs(w).max(initial=0.0))
    return np.abs(w) > tol * max(1.0, top)


def numeric_rank(X, tol: float = 1e-6) -> int:
    """Number of eigenvalues with ``|lambda| > tol * max(1, max |lambda|)``."""
    A = as_symmetric(X)
    if A.shape[0] == 0:
        return 0
    return int(_rank_mask(eigvalsh(A), tol).sum())


def kernel_basis(X, tol: float = 1e-6) -> np.ndarray:
    """Orthonormal basis of the numerical kernel of a symmetric matrix.

    The kernel is the span of eigenvectors whose eigenvalues fail the
    :func:`numeric_rank` threshold, so rank plus kernel dimension is ``n``.
    """
    sd = eig_sym(X)
    return sd.eigenvectors[:, ~_rank_mask(sd.eigenvalues, tol)]


@dataclass(frozen=True)
class PSDReport:
    """Result of a PSD membership test.

    Attributes
    ----------
    is_psd : bool
    factor : ndarray or None
        Lower-triangular ``L`` with ``L L^T = X + tol * ||X|| I`` when PSD.
    min_eigenvalue : float
    witness : ndarray or None
        Unit vector ``v`` with ``v^T X v < 0`` when not PSD.
    witness_value : float or None
    """

    is_psd: bool
    factor: np.ndarray | None
    min_eigenvalue: float
    witness: np.ndarray | None = None
    witness_value: float | None = None


def cholesky_psd(X, tol: float = 1e-9) -> PSDReport:
    """Cholesky factor of a PSD matrix or a certificate of indefiniteness.

    ``X`` is accepted iff ``lambda_min(X) >= -tol * ||X||``; the factor is
    computed for ``X`` shifted by ``tol * max(1, ||X||)`` on the diagonal.
    """
    A = as_symmetric(X)
    n = A.shape[0]
    if n == 0:
        return PSDReport(True, np.zeros((0, 0)), 0.0)
    sd = eig_sym(A)
    norm = max(abs(sd.lambda_max), abs(sd.lambda_min))
    lmin = sd.lambda_min
    if lmin < -tol * norm:
        v = sd.eigenvectors[:, -1]
        return PSDReport(False, None, lmin, v.copy(), float(v @ A @ v))
    shift = tol * max(1.0, norm)
    L = np.linalg.cholesky(A + shift * np.eye(n))
    return PSDReport(True, L, lmin)


@dataclass(frozen=True)
class MembershipResult:
    """Conical-hull membership outcome.

    Attributes
    ----------
    feasible : bool
    coefficients : ndarray
        Nonnegative coefficients of the best fit (exact when feasible).
    residual : float
        ``||sum_j a_j g_j - target||``.
    """

    feasible: bool
    coefficients: np.ndarray
    residual: float


def nnls_membership(target, generators, tol: float = 1e-8) -> MembershipResult:
    """Decide whether ``target`` lies in the cone spanned by ``generators``.

    Parameters
    ----------
    target : (d,) array_like
    generators : sequence of (d,) array_like
    tol : float
        Relative residual threshold ``tol * (1 + ||target||)``.
    """
    b = np.asarray(target, dtype=float).ravel()
    gens = [np.asarray(g, dtype=float).ravel() for g in generators]
    bound = tol * (1.0 + float(np.linalg.norm(b)))
    if not gens:
        r = float(np.linalg.norm(b))
        return MembershipResult(r <= bound, np.zeros(0), r)
    G = np.column_stack(gens)
    if G.shape[0] != b.size:
        raise ValueError("generator and target dimensions differ")
    if b.size == 0:
        return MembershipResult(True, np.zeros(len(gens)), 0.0)
    x, r = nnls(G, b)
    return MembershipResult(r <= bound, x, r)


def lp_solve(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None) -> LPResult:
    """Minimize ``c @ x`` over a boxed polyhedron (dense Bland simplex)."""
    return simplex(c, A_ub, b_ub, A_eq, b_eq, bounds)


def lp_feasible(A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None, interior=False):
    """Find a feasible point of a boxed polyhedron, or ``None``.

    With ``interior=True`` a common slack ``s in [0, 1]`` is maximized over
    ``A_ub x + s <= b_ub`` so that, when the inequality system has an
    interior, the returned point satisfies every inequality strictly.
    """
    if bounds is None:
        raise ValueError("bounds are required")
    k = len(bounds)
    if not interior or A_ub is None or len(np.atleast_1d(b_ub)) == 0:
        res = simplex(np.zeros(k), A_ub, b_ub, A_eq, b_eq, bounds)
        return res.x if res.success else None
    A_ub = np.asarray(A_ub, dtype=float).reshape(-1, k)
    Gs = np.hstack([A_ub, np.ones((A_ub.shape[0], 1))])
    Es = None
    if A_eq is not None:
        A_eq = np.asarray(A_eq, dtype=float).reshape(-1, k)
        Es = np.hstack([A_eq, np.zeros((A_eq.shape[0], 1))])
    c = np.zeros(k + 1)
    c[-1] = -1.0
    res = simplex(c, Gs, b_ub, Es, b_eq, list(bounds) + [(0.0, 1.0)])
    return res.x[:k] if res.success else None
