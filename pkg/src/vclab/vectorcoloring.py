"""Vector colorings, their dual certificates, and the conversions between them.

A vector ``t``-coloring of ``G`` assigns vectors ``p_i`` with
``p_i . p_i = t - 1`` and ``p_i . p_j <= -1`` on edges; its Gram matrix
``M`` is the primal variable. The dual matrix ``B`` is PSD, entrywise
nonnegative, zero off the edges and diagonal, with unit trace; its entry
sum bounds ``t`` from below.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import graphs as gr
from .graphs import Edge, Graph
from .linalg import eig_sym, eigvalsh, numeric_rank
from .sdp import ConicSolution, SolverError, solve, svc_primal_problem, vc_dual_extract, vc_primal_problem
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "AForm",
    "ChiResult",
    "CSReport",
    "DualWitness",
    "SCReport",
    "SkeletonReport",
    "SkeletonWarning",
    "VectorColoring",
    "a_to_b",
    "b_to_a",
    "chi_sv",
    "chi_v",
    "closed_form_1wr",
    "complementary_slackness",
    "eigenvalue_bound",
    "gram_to_vectors",
    "skeleton",
    "skeleton_report",
    "strict_complementarity",
    "tight_edges",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


# ---- types --------------------------------------------------------------


@dataclass(frozen=True)
class VectorColoring:
    """A vector ``t``-coloring given by its Gram matrix and a factorization.

    Attributes
    ----------
    graph : Graph
    t : float
    gram : ndarray
        ``M`` with ``M_ii = t - 1``.
    factors : ndarray
        ``P`` of shape ``(n, d)``, ``P P^T = M``, ``d`` the numerical rank.
    tight_edges : frozenset of (i, j)
    """

    graph: Graph
    t: float
    gram: np.ndarray
    factors: np.ndarray
    tight_edges: frozenset

    @classmethod
    def from_gram(cls, G: Graph, M, t: float | None = None, tol: Tolerances = DEFAULT):
        """Wrap a Gram matrix; ``t`` defaults to one plus the mean diagonal."""
        M = 0.5 * (np.asarray(M, dtype=float) + np.asarray(M, dtype=float).T)
        if M.shape != (G.n, G.n):
            raise ValueError("Gram matrix size does not match the graph")
        if t is None:
            t = 1.0 + float(np.mean(np.diag(M))) if G.n else 1.0
        P = gram_to_vectors(M, tol.rank)
        tight = frozenset(e for e in G.edge_list if abs(M[e] + 1.0) <= tol.tight)
        return cls(G, float(t), _frozen(M), _frozen(P), tight)

    @property
    def rank(self) -> int:
        return int(self.factors.shape[1])

    @property
    def n(self) -> int:
        return self.graph.n

    def violations(self, tol: float = 1e-7) -> dict:
        """Largest violation of each defining condition (all ``<= tol`` when feasible)."""
        M = self.gram
        G = self.graph
        diag = float(np.abs(np.diag(M) - (self.t - 1.0)).max(initial=0.0))
        edge = max((M[i, j] + 1.0 for i, j in G.edge_list), default=-np.inf)
        psd = -float(eigvalsh(M)[0]) if G.n else 0.0
        fac = float(np.abs(self.factors @ self.factors.T - M).max(initial=0.0))
        return {
            "diagonal": diag,
            "edge": max(0.0, edge),
            "psd": max(0.0, psd),
            "factorization": fac,
        }

    def is_feasible(self, tol: float = 1e-7) -> bool:
        v = self.violations(tol)
        return all(val <= tol * max(1.0, self.t) for val in v.values())


@dataclass(frozen=True)
class DualWitness:
    """A dual-feasible matrix ``B`` with its support data.

    Attributes
    ----------
    graph : Graph
    B : ndarray
    support : Graph
        Edges ``ij`` of ``graph`` with ``B_ij`` above the support threshold.
    corank : int
    positive_diagonal : bool
    connected : bool
        Whether the support graph is connected (only possible when every
        diagonal entry is positive or ``n = 1``).
    """

    graph: Graph
    B: np.ndarray
    support: Graph
    corank: int
    positive_diagonal: bool
    connected: bool

    @classmethod
    def from_matrix(cls, G: Graph, B, tol: Tolerances = DEFAULT):
        B = np.array(B, dtype=float)
        if B.shape != (G.n, G.n):
            raise ValueError("dual matrix size does not match the graph")
        B = 0.5 * (B + B.T)
        off = ~np.eye(G.n, dtype=bool) & (G.adjacency == 0)
        if np.abs(B[off]).max(initial=0.0) > 0.0:
            raise ValueError("dual matrix must vanish on non-adjacent pairs")
        sup = [e for e in G.edge_list if B[e] > tol.support]
        support = Graph(G.n, sup)
        rank = numeric_rank(B, tol.rank) if G.n else 0
        posdiag = bool((np.diag(B) > tol.support).all())
        conn = posdiag and gr.is_connected(support)
        return cls(G, _frozen(B), support, G.n - rank, posdiag, conn)

    @property
    def objective(self) -> float:
        return float(self.B.sum())

    @property
    def rank(self) -> int:
        return self.graph.n - self.corank

    def violations(self) -> dict:
        B = self.B
        n = self.graph.n
        return {
            "trace": abs(float(np.trace(B)) - 1.0),
            "negative_entry": max(0.0, -float(B.min(initial=0.0))),
            "psd": max(0.0, -float(eigvalsh(B)[0])) if n else 0.0,
        }


@dataclass(frozen=True)
class AForm:
    """Edge-supported nonnegative ``A`` with ``I + A`` PSD.

    Attributes
    ----------
    graph : Graph
    A : ndarray
    lambda_max, lambda_min : float
    perron : ndarray
        Unit, entrywise nonnegative top eigenvector of ``A``.
    """

    graph: Graph
    A: np.ndarray
    lambda_max: float
    lambda_min: float
    perron: np.ndarray

    @property
    def norm(self) -> float:
        """``||I + A||``, i.e. ``1 + lambda_max``."""
        return 1.0 + self.lambda_max

    def multiplicity(self, value: float, tol: float = 1e-7) -> int:
        w = eigvalsh(self.A)
        return int((np.abs(w - value) <= tol * max(1.0, abs(value))).sum())


@dataclass(frozen=True)
class ChiResult:
    """Optimal value with a primal coloring and a dual witness.

    Iterates as ``(t, coloring, dual)``. ``polished`` records that the
    pair was refined on its optimal face after the interior-point solve.
    """

    t: float
    coloring: VectorColoring
    dual: DualWitness
    solution: ConicSolution | None = None
    polished: bool = False

    def __iter__(self):
        return iter((self.t, self.coloring, self.dual))


# ---- core operations -------------------------------------------------------


def gram_to_vectors(M, tol: float = 1e-6) -> np.ndarray:
    """Factor a PSD Gram matrix as ``P P^T`` with ``numeric_rank(M)`` columns.

    Columns follow the eigenvalue order of :func:`vclab.linalg.eig_sym`, so
    the result is deterministic. Indefiniteness beyond ``tol`` (relative)
    raises ``ValueError``.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    sd = eig_sym(M)
    w = sd.eigenvalues
    scale = max(1.0, float(np.abs(w).max()))
    if w[-1] < -tol * scale:
        raise ValueError(f"matrix is not PSD (lambda_min = {w[-1]:.3e})")
    keep = np.abs(w) > tol * scale
    return sd.eigenvectors[:, keep] * np.sqrt(w[keep])


def tight_edges(vc: VectorColoring, tol: float = 1e-6) -> frozenset:
    """Edges with ``|M_ij + 1| <= tol``."""
    M = vc.gram
    return frozenset(e for e in vc.graph.edge_list if abs(M[e] + 1.0) <= tol)


def _edgeless(G: Graph, tol: Tolerances) -> ChiResult:
    M = np.zeros((G.n, G.n))
    vc = VectorColoring(G, 1.0, _frozen(M), _frozen(np.zeros((G.n, 0))), frozenset())
    dw = DualWitness.from_matrix(G, np.eye(G.n) / G.n, tol)
    return ChiResult(1.0, vc, dw, None)


def _face_polish(G: Graph, M: np.ndarray, B: np.ndarray, t: float, mu: float, tol: Tolerances):
    """Newton refinement of a near-optimal pair on its optimal face.

    Interior-point iterates approach a degenerate face with ``||MB||`` of
    order ``sqrt(mu)``. Fixing the tight edges (``M_ij = -1``) and the dual
    support (diagonal plus tight edges), the conditions ``MB + BM = 0`` and
    ``tr B = 1`` form a square system in ``t``, the free entries of ``M``
    and the support entries of ``B``; its Jacobian is nonsingular at a
    strictly complementary, nondegenerate pair, so a few Newton steps reach
    rounding level. Edges that are neither tight nor free of dual weight
    are tried as tight first, then as loose. Returns ``(t, M, B)`` or
    ``None`` when no refined pair is feasible, keeps the value within
    ``tol.rank``, reduces ``||MB||`` and keeps the rank of ``M``.

    Eigenvalues of ``M`` well above ``sqrt(mu)`` survive in the limit of
    the central path, which is a maximum-rank optimum, so their count is a
    floor for the refined rank; on a non-unique face Newton steps could
    otherwise drift to a lower-rank optimum. Eigenvalues of order
    ``sqrt(mu)`` belong to off-center directions and may vanish.
    """
    floor = int(np.count_nonzero(eigvalsh(M) > 100.0 * np.sqrt(max(mu, 0.0))))
    tight, loose, unsure = [], [], []
    for e in G.edge_list:
        if abs(M[e] + 1.0) <= tol.tight:
            tight.append(e)
        elif B[e] <= tol.support:
            loose.append(e)
        else:
            unsure.append(e)
    for face in (tight + unsure, tight) if unsure else (tight,):
        out = _newton_on_face(G, M, B, t, sorted(face), tol)
        if out is not None and numeric_rank(out[1], tol.rank) >= floor:
            return out
    return None


def _newton_on_face(G: Graph, M, B, t: float, tight: list, tol: Tolerances, steps: int = 15):
    n = G.n
    fixed = set(tight)
    loose = [e for e in G.edge_list if e not in fixed]
    free = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in fixed]
    iu = np.triu_indices(n)
    scale = max(1.0, t)

    def unit(i, j):
        E = np.zeros((n, n))
        E[i, j] = E[j, i] = 1.0
        return E

    def residual(Mk, Bk):
        MB = Mk @ Bk
        return np.r_[(MB + MB.T)[iu], np.trace(Bk) - 1.0]

    Mk = np.array(M, dtype=float)
    for i, j in tight:
        Mk[i, j] = Mk[j, i] = -1.0
    Mk[np.diag_indices(n)] = t - 1.0
    Bk = np.diag(np.diag(B)).astype(float)
    for i, j in tight:
        Bk[i, j] = Bk[j, i] = B[i, j]
    tk = t
    start = float(np.linalg.norm(M @ B))
    F = residual(Mk, Bk)
    for _ in range(steps):
        # near the solution manifold further steps only drift along it
        if np.abs(F).max() <= 1e-13 * scale:
            break
        cols = [np.r_[(2.0 * Bk)[iu], 0.0]]
        for i, j in free:
            EB = unit(i, j) @ Bk
            cols.append(np.r_[(EB + EB.T)[iu], 0.0])
        for i in range(n):
            ME = np.outer(Mk[:, i], np.eye(n)[i])
            cols.append(np.r_[(ME + ME.T)[iu], 1.0])
        for i, j in tight:
            ME = Mk @ unit(i, j)
            cols.append(np.r_[(ME + ME.T)[iu], 0.0])
        J = np.column_stack(cols)
        # products often have non-unique optima, making J nearly singular;
        # truncating tiny singular values keeps the step local to the iterate
        d = np.linalg.lstsq(J, -F, rcond=1e-10)[0]
        Mn, Bn, tn = Mk.copy(), Bk.copy(), tk + d[0]
        k = 1
        Mn[np.diag_indices(n)] = tn - 1.0
        for i, j in free:
            Mn[i, j] += d[k]
            Mn[j, i] = Mn[i, j]
            k += 1
        Bn[np.diag_indices(n)] += d[k : k + n]
        k += n
        for i, j in tight:
            Bn[i, j] += d[k]
            Bn[j, i] = Bn[i, j]
            k += 1
        Fn = residual(Mn, Bn)
        if np.abs(Fn).max() >= np.abs(F).max():
            break
        Mk, Bk, tk, F = Mn, Bn, tn, Fn

    Bk /= np.trace(Bk)
    ok = (
        float(eigvalsh(Mk)[0]) >= -tol.solve * scale
        and float(eigvalsh(Bk)[0]) >= -tol.solve
        and all(Mk[e] <= -1.0 + tol.solve * scale for e in loose)
        and all(Bk[e] >= -tol.solve for e in tight)
        and abs(tk - t) <= tol.rank * scale
        and abs(tk - float(Bk.sum())) <= tol.solve * scale
        and float(np.linalg.norm(Mk @ Bk)) < start
    )
    if not ok:
        return None
    np.maximum(Bk, 0.0, out=Bk)
    return float(tk), Mk, Bk


@lru_cache(maxsize=256)
def _chi_v_cached(G: Graph, tol: Tolerances) -> ChiResult:
    if G.n == 0:
        raise ValueError("graph has no vertices")
    if G.m == 0:
        return _edgeless(G, tol)
    sol = solve(vc_primal_problem(G), tol.solver_config())
    failure = SolverError(f"solver status {sol.status}: {sol.message}", sol)
    scale = 1.0 + abs(sol.primal_objective)
    near = max(sol.gap / scale, sol.primal_residual, sol.dual_residual) <= 1e3 * tol.solve
    if not sol.success and not (sol.status in ("stalled", "numerical_error") and near):
        raise failure
    try:
        B = vc_dual_extract(sol, G, tol.rank)
    except SolverError:
        if sol.success:
            raise
        raise failure from None
    t = sol.primal_objective
    if sol.success and abs(t - float(B.sum())) > 1e-8 * (1.0 + abs(t)):
        raise SolverError("primal and dual objectives disagree", sol)
    M = sol.X
    polished = None
    if not sol.success or np.linalg.norm(M @ B) > 10.0 * tol.solve:
        polished = _face_polish(G, M, B, t, sol.complementarity / (G.n + sol.x.size), tol)
    if polished is not None:
        t, M, B = polished
    elif not sol.success:
        # a solve that broke down near the tolerance is only usable once the
        # face refinement certifies it
        raise failure
    vc = VectorColoring.from_gram(G, M, t, tol)
    dw = DualWitness.from_matrix(G, B, tol)
    return ChiResult(t, vc, dw, sol, polished is not None)


def chi_v(G: Graph, tol: Tolerances = DEFAULT) -> ChiResult:
    """Vector chromatic number with a maximum-rank primal and dual pair.

    The interior-point solution approximates the analytic center of the
    optimal face, so the Gram matrix has maximum rank among optimal
    colorings. Edgeless graphs are handled in closed form (``t = 1``,
    ``M = 0``, ``B = I / n``). Results are cached per ``(G, tol)``.
    """
    return _chi_v_cached(G, tol)


@lru_cache(maxsize=256)
def _chi_sv_cached(G: Graph, tol: Tolerances) -> float:
    if G.n == 0:
        raise ValueError("graph has no vertices")
    if G.m == 0:
        return 1.0
    sol = solve(svc_primal_problem(G), tol.solver_config())
    if not sol.success:
        raise SolverError(f"solver status {sol.status}: {sol.message}", sol)
    return float(sol.primal_objective)


def chi_sv(G: Graph, tol: Tolerances = DEFAULT) -> float:
    """Strict vector chromatic number (edges forced to ``M_ij = -1``)."""
    return _chi_sv_cached(G, tol)


@dataclass(frozen=True)
class SkeletonReport:
    """Skeleton with its cross-check against the dual support.

    Attributes
    ----------
    skeleton : Graph
    dual_support : Graph
    consistent : bool
        Whether the dual support is contained in the skeleton. ``False``
        means the interior-point solution is suspect.
    """

    skeleton: Graph
    dual_support: Graph
    consistent: bool


class SkeletonWarning(UserWarning):
    """The dual support is not contained in the computed skeleton."""


def skeleton_report(G: Graph, tol: Tolerances = DEFAULT) -> SkeletonReport:
    """Tight edges of the maximum-rank optimal coloring, cross-checked with ``G(B)``.

    For a relative-interior optimal point an edge is tight iff it is tight
    in every optimal coloring.
    """
    res = chi_v(G, tol)
    sk = Graph(G.n, tight_edges(res.coloring, tol.tight))
    sup = res.dual.support
    return SkeletonReport(sk, sup, sup.edges <= sk.edges)


def skeleton(G: Graph, tol: Tolerances = DEFAULT) -> Graph:
    """The skeleton of ``G``; warns with :class:`SkeletonWarning` on an inconsistent cross-check."""
    rep = skeleton_report(G, tol)
    if not rep.consistent:
        warnings.warn(
            "dual support is not contained in the computed skeleton", SkeletonWarning, stacklevel=2
        )
    return rep.skeleton


@dataclass(frozen=True)
class CSReport:
    """Complementary-slackness residuals for a primal/dual pair.

    Attributes
    ----------
    mb_norm : float
        ``||M B||_F``.
    edge_max : float
        ``max_{i~j} |(M_ij + 1) B_ij|``.
    trace_direct : float
        ``tr(M B)``.
    trace_identity : float
        ``(t - sum(B)) + sum over ordered adjacent pairs of (M_ij + 1) B_ij``.
    """

    mb_norm: float
    edge_max: float
    trace_direct: float
    trace_identity: float

    @property
    def identity_error(self) -> float:
        return abs(self.trace_direct - self.trace_identity)


def complementary_slackness(vc: VectorColoring, dw: DualWitness) -> CSReport:
    """Evaluate ``MB`` and the trace identity for a feasible pair."""
    M = vc.gram
    B = dw.B
    MB = M @ B
    edges = vc.graph.edge_list
    terms = [(M[i, j] + 1.0) * B[i, j] for i, j in edges]
    edge_max = max((abs(v) for v in terms), default=0.0)
    ident = (vc.t - float(B.sum())) + 2.0 * float(sum(terms))
    return CSReport(float(np.linalg.norm(MB)), float(edge_max), float(np.trace(MB)), ident)


@dataclass(frozen=True)
class SCReport:
    """Ranks of a primal/dual pair and the strict-complementarity verdict."""

    rank_primal: int
    rank_dual: int
    n: int

    @property
    def strictly_complementary(self) -> bool:
        return self.rank_primal + self.rank_dual == self.n

    @property
    def corank_dual(self) -> int:
        return self.n - self.rank_dual


def strict_complementarity(vc: VectorColoring, dw: DualWitness, tol: float = 1e-6) -> SCReport:
    """Whether ``rank(M) + rank(B) = n`` at relative threshold ``tol``."""
    n = vc.graph.n
    return SCReport(numeric_rank(vc.gram, tol), numeric_rank(dw.B, tol), n)


# ---- (D) <-> (D') conversions -------------------------------------------


def _top_vector(A: np.ndarray, hint: np.ndarray | None, tol: float = 1e-7) -> tuple[float, float, np.ndarray]:
    sd = eig_sym(A)
    lmax, lmin = sd.lambda_max, sd.lambda_min
    if hint is not None and np.linalg.norm(hint) > 0:
        u = hint / np.linalg.norm(hint)
        if np.linalg.norm(A @ u - lmax * u) <= tol * max(1.0, abs(lmax)):
            return lmax, lmin, u
    u = np.abs(sd.eigenvectors[:, 0])
    return lmax, lmin, u / np.linalg.norm(u)


def b_to_a(dw: DualWitness, tol: Tolerances = DEFAULT) -> AForm:
    """Rescale a dual matrix to ``A = D^{-1/2} B D^{-1/2} - I`` on its diagonal support.

    Vertices with ``B_ii = 0`` get zero rows and columns in ``A``; their
    rows of ``B`` must vanish. The stored top eigenvector is
    ``sqrt(diag B)`` whenever that is an eigenvector for ``lambda_max``.
    """
    B = np.asarray(dw.B)
    G = dw.graph
    diag = np.diag(B).copy()
    S = diag > tol.support
    outside = ~S
    if outside.any() and np.abs(B[outside]).max() > tol.support:
        raise ValueError("dual matrix has a zero diagonal entry with a nonzero row")
    A = np.zeros_like(B)
    idx = np.flatnonzero(S)
    dis = 1.0 / np.sqrt(diag[idx])
    sub = B[np.ix_(idx, idx)] * dis[:, None] * dis[None, :]
    sub[np.diag_indices(idx.size)] = 0.0
    A[np.ix_(idx, idx)] = np.maximum(sub, 0.0)
    A = 0.5 * (A + A.T)
    u0 = np.where(S, np.sqrt(np.maximum(diag, 0.0)), 0.0)
    lmax, lmin, u = _top_vector(A, u0)
    return AForm(G, _frozen(A), lmax, lmin, _frozen(u))


def a_to_b(af: AForm, tol: Tolerances = DEFAULT) -> DualWitness:
    """``B = (I + A) o u u^T`` with ``u`` the stored top eigenvector."""
    u = np.asarray(af.perron, dtype=float)
    n = u.size
    B = (np.eye(n) + af.A) * np.outer(u, u)
    off = ~np.eye(n, dtype=bool) & (af.graph.adjacency == 0)
    B[off] = 0.0
    return DualWitness.from_matrix(af.graph, B, tol)


def aform_from_matrix(G: Graph, A, tol: float = 1e-9) -> AForm:
    """Validate an edge-supported nonnegative ``A`` with ``I + A`` PSD."""
    A = np.array(A, dtype=float)
    if A.shape != (G.n, G.n):
        raise ValueError("size mismatch")
    A = 0.5 * (A + A.T)
    off = G.adjacency == 0
    if np.abs(A[off]).max(initial=0.0) > 0.0:
        raise ValueError("A must vanish off the edges")
    if A.min(initial=0.0) < -tol:
        raise ValueError("A must be entrywise nonnegative")
    lmax, lmin, u = _top_vector(A, None)
    if lmin < -1.0 - tol * max(1.0, lmax):
        raise ValueError("I + A is not PSD")
    return AForm(G, _frozen(A), lmax, lmin, _frozen(u))


# ---- closed forms and bounds ---------------------------------------------


def closed_form_1wr(G: Graph, tol: Tolerances = DEFAULT) -> ChiResult:
    """Optimal pair for a 1-walk-regular graph from its least eigenvalue ``tau``.

    ``t = 1 - d / tau``, ``M = (t - 1) (n / m_tau) E_tau`` with ``E_tau`` the
    ``tau``-eigenprojector, and ``B = (A - tau I) / (-n tau)``.
    """
    if G.n == 0 or G.m == 0:
        raise ValueError("graph must have at least one edge")
    if not gr.is_regular(G):
        raise ValueError("graph is not regular")
    if not gr.is_one_walk_regular(G):
        raise ValueError("graph is not 1-walk-regular")
    A = np.asarray(G.adjacency)
    n = G.n
    d = G.degree(0)
    sd = eig_sym(A)
    tau = sd.lambda_min
    if tau >= 0:
        raise ValueError("least eigenvalue must be negative")
    E = sd.projector(tau, tol.cluster)
    m_tau = int(round(np.trace(E)))
    t = 1.0 - d / tau
    M = (t - 1.0) * (n / m_tau) * E
    B = (A - tau * np.eye(n)) / (-n * tau)
    vc = VectorColoring.from_gram(G, M, t, tol)
    dw = DualWitness.from_matrix(G, B, tol)
    return ChiResult(t, vc, dw, None)


def eigenvalue_bound(G: Graph, W) -> float:
    """``1 - lambda_max(W) / lambda_min(W)`` for nonnegative edge-supported ``W``.

    This is a lower bound on the vector chromatic number; with ``W`` the
    adjacency matrix it is the Hoffman-type bound.
    """
    W = np.asarray(W, dtype=float)
    if W.shape != (G.n, G.n):
        raise ValueError("size mismatch")
    if W.min(initial=0.0) < 0:
        raise ValueError("W must be entrywise nonnegative")
    if np.abs(W[G.adjacency == 0]).max(initial=0.0) > 0:
        raise ValueError("W must be supported on edges")
    if not W.any():
        raise ValueError("W must be nonzero")
    w = eigvalsh(0.5 * (W + W.T))
    if w[0] >= 0:
        raise ValueError("least eigenvalue is not negative")
    return float(1.0 - w[-1] / w[0])
