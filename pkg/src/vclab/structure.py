"""Structure of the optimal-coloring set: neighborliness, arrows, uniqueness.

All routines take the maximum-rank coloring produced by
:func:`vclab.vectorcoloring.chi_v`. For such a coloring every other
optimal Gram matrix has the form ``P (I + R) P^T`` with ``P`` its factor
matrix, which turns the structural questions into small linear problems
over ``R``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph
from .linalg import eigvalsh, lp_feasible, lp_solve, nnls_membership
from .tolerances import DEFAULT, Tolerances
from .vectorcoloring import VectorColoring, chi_v

__all__ = [
    "NeighborlinessReport",
    "NeighborlinessWitness",
    "RPerturbation",
    "UVCResult",
    "arrow_set",
    "is_neighborly",
    "neighborliness_report",
    "second_coloring",
    "symmetric_basis",
    "uvc_check",
]


def _marginal(value: float, threshold: float) -> bool:
    """Within a factor of ten of the decision threshold on either side."""
    return threshold / 10.0 <= abs(value) <= threshold * 10.0


def _tight_neighbors(vc: VectorColoring, i: int) -> list[int]:
    out = []
    for j in vc.graph.neighbors[i]:
        if (min(i, j), max(i, j)) in vc.tight_edges:
            out.append(j)
    return out


# ---- neighborliness -----------------------------------------------------


@dataclass(frozen=True)
class NeighborlinessWitness:
    """A convex combination of the closed tight neighborhood summing to zero.

    Attributes
    ----------
    vertex : int
    coefficients : dict
        ``j -> alpha_j`` over ``i`` and its tight neighbors; sums to one.
    residual : float
        ``||sum_j alpha_j p_j||``.
    t : float
        Value of the coloring the witness refers to.
    """

    vertex: int
    coefficients: dict
    residual: float
    t: float

    def conical(self) -> dict:
        """Coefficients over the open neighborhood scaled so ``alpha_vertex = 1``.

        They express ``-p_i`` as a nonnegative combination and sum to
        ``t - 1``.
        """
        a_i = self.coefficients[self.vertex]
        return {j: a / a_i for j, a in self.coefficients.items() if j != self.vertex}

    @property
    def identity_error(self) -> float:
        """``|sum_j alpha_j - t alpha_i|`` over the closed neighborhood."""
        total = sum(self.coefficients.values())
        return abs(total - self.t * self.coefficients[self.vertex])


@dataclass(frozen=True)
class NeighborlinessReport:
    vertex: int
    neighborly: bool
    witness: NeighborlinessWitness | None
    residual: float
    tolerance: float
    marginal: bool


def neighborliness_report(vc: VectorColoring, i: int, tol: float = 1e-6) -> NeighborlinessReport:
    """Test whether ``-p_i`` lies in the cone of its tight neighbors' vectors."""
    P = vc.factors
    nbrs = _tight_neighbors(vc, i)
    target = -P[i]
    res = nnls_membership(target, [P[j] for j in nbrs], tol)
    bound = tol * (1.0 + float(np.linalg.norm(target)))
    marginal = _marginal(res.residual, bound) if res.residual > 0 else False
    if not res.feasible or (P.shape[1] > 0 and not np.any(res.coefficients > 0)):
        if P.shape[1] == 0 and vc.graph.n:
            # zero vectors (t = 1): 0 = 1 * p_i is a trivial dependency
            w = NeighborlinessWitness(i, {i: 1.0}, 0.0, vc.t)
            return NeighborlinessReport(i, True, w, 0.0, bound, False)
        return NeighborlinessReport(i, False, None, res.residual, bound, marginal)
    total = 1.0 + float(res.coefficients.sum())
    coeffs = {i: 1.0 / total}
    for j, b in zip(nbrs, res.coefficients):
        if b > 0:
            coeffs[j] = float(b) / total
    comb = sum(a * P[j] for j, a in coeffs.items())
    w = NeighborlinessWitness(i, coeffs, float(np.linalg.norm(comb)), vc.t)
    return NeighborlinessReport(i, True, w, res.residual, bound, marginal)


def is_neighborly(vc: VectorColoring, i: int, tol: float = 1e-6) -> NeighborlinessWitness | None:
    """Witness that vertex ``i`` is neighborly, or ``None``.

    For a maximum-rank coloring the verdict holds for every optimal coloring.
    """
    return neighborliness_report(vc, i, tol).witness


def arrow_set(vc: VectorColoring, i: int, tol: float = 1e-6) -> frozenset:
    """Vertices ``j`` with ``i -> j``: some dependency puts positive weight on ``p_j``.

    One LP per tight neighbor maximizes ``alpha_j`` over convex
    combinations of the closed tight neighborhood that vanish (to within
    ``tol`` per coordinate).
    """
    if is_neighborly(vc, i, tol) is None:
        raise ValueError(f"vertex {i} is not neighborly")
    P = vc.factors
    nbrs = _tight_neighbors(vc, i)
    cols = [i] + nbrs
    k = len(cols)
    V = P[cols].T  # d x k
    A_ub = np.vstack([V, -V]) if V.size else None
    b_ub = np.full(2 * V.shape[0], tol) if V.size else None
    A_eq = np.ones((1, k))
    out = set()
    for pos, j in enumerate(nbrs, start=1):
        c = np.zeros(k)
        c[pos] = -1.0
        res = lp_solve(c, A_ub, b_ub, A_eq, [1.0], [(0.0, 1.0)] * k)
        if res.success and -res.fun > tol:
            out.add(j)
    return frozenset(out)


# ---- uniqueness -----------------------------------------------------------


def symmetric_basis(d: int) -> list[tuple[int, int]]:
    """Index pairs ``(a, b)``, ``a <= b``, of the symmetric-matrix coordinates."""
    return [(a, b) for a in range(d) for b in range(a, d)]


def _bilinear_rows(P: np.ndarray, pairs) -> np.ndarray:
    """Rows giving ``p_i^T R p_j`` as a linear function of the coordinates of ``R``."""
    d = P.shape[1]
    basis = symmetric_basis(d)
    F = np.zeros((len(pairs), len(basis)))
    for r, (i, j) in enumerate(pairs):
        pi, pj = P[i], P[j]
        for c, (a, b) in enumerate(basis):
            F[r, c] = pi[a] * pj[a] if a == b else pi[a] * pj[b] + pi[b] * pj[a]
    return F


def _to_matrix(vec: np.ndarray, d: int) -> np.ndarray:
    R = np.zeros((d, d))
    for v, (a, b) in zip(vec, symmetric_basis(d)):
        R[a, b] = R[b, a] = v
    return R


@dataclass(frozen=True)
class RPerturbation:
    """A nonzero direction ``R`` in the cone of optimal-face perturbations.

    Attributes
    ----------
    R : ndarray
        Symmetric ``d x d``, scaled to unit max-entry.
    equality_residual : float
        ``max_i |p_i^T R p_i|``.
    tight_edge_values : dict
        ``edge -> p_i^T R p_j`` over tight edges.
    epsilon_max : float
        Largest ``eps`` keeping ``I + eps R`` PSD and slack edges feasible.
    """

    R: np.ndarray
    equality_residual: float
    tight_edge_values: dict
    epsilon_max: float


@dataclass(frozen=True)
class UVCResult:
    """Outcome of the uniqueness test.

    Attributes
    ----------
    verdict : str
        ``"unique"`` or ``"not_unique"``.
    certificate : RPerturbation or None
    stage : int
        1 if decided by the equality kernel, 2 if by the per-edge LPs.
    kernel_dimension : int
    lp_minima : dict
        Tight edge ``-> min p_i^T R p_j`` (stage 2 only).
    marginal : bool
    coloring : VectorColoring
    """

    verdict: str
    certificate: RPerturbation | None
    stage: int
    kernel_dimension: int
    lp_minima: dict = field(default_factory=dict)
    marginal: bool = False
    coloring: VectorColoring | None = None

    @property
    def unique(self) -> bool:
        return self.verdict == "unique"


def _epsilon_max(vc: VectorColoring, R: np.ndarray) -> float:
    P = vc.factors
    M = vc.gram
    eps = 1.0
    lmin = float(eigvalsh(R)[0]) if R.size else 0.0
    if lmin < 0:
        eps = min(eps, 1.0 / -lmin)
    for i, j in vc.graph.edge_list:
        if (i, j) in vc.tight_edges:
            continue
        val = float(P[i] @ R @ P[j])
        if val > 0:
            eps = min(eps, (-1.0 - M[i, j]) / val)
    return max(eps, 0.0)


def _certificate(vc: VectorColoring, R: np.ndarray) -> RPerturbation:
    scale = float(np.abs(R).max())
    R = R / scale
    P = vc.factors
    eq = max((abs(float(P[i] @ R @ P[i])) for i in range(vc.graph.n)), default=0.0)
    tv = {e: float(P[e[0]] @ R @ P[e[1]]) for e in sorted(vc.tight_edges)}
    R = R.copy()
    R.flags.writeable = False
    return RPerturbation(R, eq, tv, _epsilon_max(vc, R))


def uvc_check(G: Graph, tol: Tolerances = DEFAULT, lp_tol: float = 1e-6) -> UVCResult:
    """Decide unique vector colorability from the maximum-rank coloring.

    Stage 1 looks for ``R != 0`` with ``p_i^T R p_i = 0`` for all ``i`` and
    ``p_i^T R p_j = 0`` on tight edges. If none exists, stage 2 minimizes
    each tight-edge value over ``R`` in the box ``[-1, 1]`` subject to the
    diagonal equalities and the remaining tight edges being nonpositive;
    a strictly negative minimum gives a certificate.
    """
    if G.m == 0:
        raise ValueError("graph must have at least one edge")
    vc = chi_v(G, tol).coloring
    P = vc.factors
    d = P.shape[1]
    if d == 0:
        return UVCResult("unique", None, 1, 0, coloring=vc)
    tight = sorted(vc.tight_edges)
    pairs = [(i, i) for i in range(G.n)] + tight
    F = _bilinear_rows(P, pairs)
    nvar = F.shape[1]
    _, s, Vt = np.linalg.svd(F, full_matrices=True)
    scale = max(1.0, float(s.max(initial=0.0)))
    rank = int((s > tol.rank * scale).sum())
    kdim = nvar - rank
    if kdim > 0:
        R = _to_matrix(Vt[rank], d)
        marginal = bool(rank and _marginal(float(s[rank - 1]), tol.rank * scale)) if rank < s.size else False
        return UVCResult("not_unique", _certificate(vc, R), 1, kdim, marginal=marginal, coloring=vc)

    n = G.n
    A_eq = F[:n]
    b_eq = np.zeros(n)
    T = F[n:]
    minima = {}
    best = None
    for r, e in enumerate(tight):
        res = lp_solve(T[r], T, np.zeros(len(tight)), A_eq, b_eq, [(-1.0, 1.0)] * nvar)
        if not res.success:
            raise RuntimeError("uniqueness LP unexpectedly infeasible")
        minima[e] = res.fun
        if res.fun < -lp_tol and (best is None or res.fun < best[0]):
            best = (res.fun, res.x)
    marginal = any(_marginal(v, lp_tol) for v in minima.values())
    if best is not None:
        R = _to_matrix(best[1], d)
        return UVCResult("not_unique", _certificate(vc, R), 2, 0, minima, marginal, vc)
    return UVCResult("unique", None, 2, 0, minima, marginal, vc)


def second_coloring(vc: VectorColoring, r: RPerturbation, tol: Tolerances = DEFAULT) -> VectorColoring:
    """The optimal coloring with Gram ``P (I + eps R) P^T``, ``eps = r.epsilon_max``.

    The result is validated (diagonal, edge and PSD conditions at value
    ``t``) before it is returned.
    """
    R = np.asarray(r.R)
    if not np.any(R):
        raise ValueError("R must be nonzero")
    eps = _epsilon_max(vc, R)
    if eps <= 0:
        raise ValueError("no feasible step along R")
    P = vc.factors
    M2 = P @ (np.eye(P.shape[1]) + eps * R) @ P.T
    M2 = 0.5 * (M2 + M2.T)
    out = VectorColoring.from_gram(vc.graph, M2, vc.t, tol)
    if not out.is_feasible(1e-7):
        raise ValueError(f"perturbed coloring is infeasible: {out.violations()}")
    return out
