"""Primal-dual interior-point solver for one PSD block plus one nonnegative block.

Standard form::

    minimize    <C, X> + c @ x + offset
    subject to  <A_k, X> + a_k @ x = b_k      (k = 1..K)
                X PSD (n x n),  x >= 0 (m entries)

with dual::

    maximize    b @ y + offset
    subject to  Z = C - sum_k y_k A_k  PSD,  z = c - sum_k y_k a_k >= 0.

Each ``A_k`` is sparse and stored as COO triplets holding *every* nonzero
entry of the symmetric matrix (both ``(i, j)`` and ``(j, i)`` off the
diagonal). Directions use Nesterov-Todd scaling with Mehrotra's
predictor-corrector from the infeasible start ``X = Z = I``, ``x = z = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .graphs import Graph
from .linalg import eigvalsh

__all__ = [
    "ConicProblem",
    "ConicSolution",
    "ProblemBuilder",
    "SolverConfig",
    "SolverError",
    "solve",
    "svc_primal_problem",
    "vc_dual_extract",
    "vc_primal_problem",
]


class SolverError(RuntimeError):
    """Raised when a solution is requested from a failed solve."""

    def __init__(self, message: str, solution: "ConicSolution | None" = None):
        super().__init__(message)
        self.solution = solution


@dataclass(frozen=True)
class SolverConfig:
    """Interior-point tolerances and limits.

    Attributes
    ----------
    tol : float
        Target for the relative duality gap and the absolute residual norms.
    max_iters : int
        Iteration cap.
    step_fraction : float
        Fraction of the distance to the cone boundary taken per step.
    centering_steps : int
        Pure centering steps taken after convergence (kept only while they
        reduce ``||XZ - mu I||`` without losing optimality).
    """

    tol: float = 1e-9
    max_iters: int = 200
    step_fraction: float = 0.98
    centering_steps: int = 4

    def __post_init__(self):
        if not (0.0 < self.tol < 1.0):
            raise ValueError("tol must lie in (0, 1)")
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if not (0.0 < self.step_fraction < 1.0):
            raise ValueError("step_fraction must lie in (0, 1)")
        if self.centering_steps < 0:
            raise ValueError("centering_steps must be nonnegative")


@dataclass(frozen=True)
class ConicProblem:
    """A standard-form conic program (see the module docstring).

    Attributes
    ----------
    psd_size, lp_size : int
    C : (n, n) ndarray
    c : (m,) ndarray
    con, row, col, val : ndarray
        COO entries of the PSD parts of the constraint matrices.
    A_lp : (K, m) ndarray
    b : (K,) ndarray
    offset : float
        Constant added to both objectives.
    """

    psd_size: int
    lp_size: int
    C: np.ndarray
    c: np.ndarray
    con: np.ndarray
    row: np.ndarray
    col: np.ndarray
    val: np.ndarray
    A_lp: np.ndarray
    b: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        arrays = (self.C, self.c, self.val, self.A_lp, self.b)
        if not all(np.isfinite(a).all() for a in arrays):
            raise ValueError("problem data must be finite")
        n, K = self.psd_size, self.num_constraints
        if self.C.shape != (n, n) or self.c.shape != (self.lp_size,):
            raise ValueError("objective shape mismatch")
        if self.A_lp.shape != (K, self.lp_size):
            raise ValueError("LP constraint block shape mismatch")
        if self.con.size and (self.con.max() >= K or self.con.min() < 0):
            raise ValueError("constraint index out of range")

    @property
    def num_constraints(self) -> int:
        return int(self.b.size)

    def apply(self, X: np.ndarray, x: np.ndarray) -> np.ndarray:
        """The constraint map ``(X, x) -> (<A_k, X> + a_k @ x)_k``."""
        out = np.bincount(
            self.con, weights=self.val * X[self.row, self.col], minlength=self.num_constraints
        )
        return out + self.A_lp @ x

    def adjoint(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """The adjoint map ``y -> (sum_k y_k A_k, sum_k y_k a_k)``."""
        n = self.psd_size
        S = np.bincount(
            self.row * n + self.col, weights=self.val * y[self.con], minlength=n * n
        ).reshape(n, n)
        return S, self.A_lp.T @ y

    def independent_rows(self, tol: float = 1e-10) -> np.ndarray:
        """Indices of a maximal linearly independent subset of the constraints."""
        K = self.num_constraints
        if K == 0:
            return np.zeros(0, dtype=int)
        n = self.psd_size
        sym = np.minimum(self.row, self.col) * max(n, 1) + np.maximum(self.row, self.col)
        uniq, inv = np.unique(sym, return_inverse=True)
        D = np.zeros((K, uniq.size + self.lp_size))
        # off-diagonal pairs are folded together; the scaling does not affect rank
        np.add.at(D, (self.con, inv), self.val)
        D[:, uniq.size:] = self.A_lp
        _, Rq, piv = scipy.linalg.qr(D.T, mode="economic", pivoting=True)
        diag = np.abs(np.diag(Rq))
        if diag.size == 0:
            return np.zeros(0, dtype=int)
        r = int((diag > tol * max(1.0, diag[0])).sum())
        return np.sort(piv[:r])

    def restrict(self, rows: np.ndarray) -> "ConicProblem":
        rows = np.asarray(rows, dtype=int)
        remap = -np.ones(self.num_constraints, dtype=int)
        remap[rows] = np.arange(rows.size)
        keep = remap[self.con] >= 0
        return ConicProblem(
            self.psd_size,
            self.lp_size,
            self.C,
            self.c,
            remap[self.con[keep]],
            self.row[keep],
            self.col[keep],
            self.val[keep],
            self.A_lp[rows],
            self.b[rows],
            self.offset,
        )


class ProblemBuilder:
    """Incremental construction of a :class:`ConicProblem`."""

    def __init__(self, psd_size: int, lp_size: int = 0):
        self.n = psd_size
        self.m = lp_size
        self.C = np.zeros((psd_size, psd_size))
        self.c = np.zeros(lp_size)
        self.offset = 0.0
        self._entries: list[tuple[int, int, int, float]] = []
        self._lp: list[tuple[int, int, float]] = []
        self._b: list[float] = []

    def add_constraint(self, psd_terms=(), lp_terms=(), rhs: float = 0.0) -> int:
        """Add ``sum v * X[i, j] (symmetrized) + sum a * x[e] = rhs``.

        ``psd_terms`` holds ``(i, j, v)`` meaning ``v * (E_ij + E_ji) / 2``
        for ``i != j`` and ``v * E_ii`` on the diagonal, i.e. the inner
        product contributes ``v * X[i, j]``.
        """
        k = len(self._b)
        for i, j, v in psd_terms:
            if i == j:
                self._entries.append((k, i, i, float(v)))
            else:
                self._entries.append((k, i, j, 0.5 * v))
                self._entries.append((k, j, i, 0.5 * v))
        for e, a in lp_terms:
            self._lp.append((k, e, float(a)))
        self._b.append(float(rhs))
        return k

    def build(self) -> ConicProblem:
        K = len(self._b)
        if self._entries:
            con, row, col, val = (np.array(a) for a in zip(*self._entries))
        else:
            con = row = col = np.zeros(0, dtype=int)
            val = np.zeros(0)
        order = np.lexsort((col, row, con))
        A_lp = np.zeros((K, self.m))
        for k, e, a in self._lp:
            A_lp[k, e] += a
        return ConicProblem(
            self.n,
            self.m,
            self.C.copy(),
            self.c.copy(),
            con[order].astype(np.int64),
            row[order].astype(np.int64),
            col[order].astype(np.int64),
            val[order].astype(float),
            A_lp,
            np.array(self._b, dtype=float),
            float(self.offset),
        )


@dataclass(frozen=True)
class ConicSolution:
    """Returned point with independently recomputed quality measures.

    Attributes
    ----------
    X, x : primal point
    y : dual multipliers (indexed like the problem's constraints)
    Z, z : dual slack, recomputed as ``C - A^T y`` and ``c - a^T y``
    primal_objective, dual_objective : float
    gap : float
        ``|primal_objective - dual_objective|``.
    complementarity : float
        ``<X, Z> + x @ z``.
    primal_residual, dual_residual : float
        Equality residual norms, combined with any cone violation.
    iterations : int
    status : str
        ``"optimal"``, ``"max_iterations"``, ``"stalled"`` or ``"numerical_error"``.
    """

    X: np.ndarray
    x: np.ndarray
    y: np.ndarray
    Z: np.ndarray
    z: np.ndarray
    primal_objective: float
    dual_objective: float
    gap: float
    complementarity: float
    primal_residual: float
    dual_residual: float
    iterations: int
    status: str
    message: str = ""
    history: tuple = field(default=(), repr=False)

    @property
    def success(self) -> bool:
        return self.status == "optimal"


def _evaluate(P: ConicProblem, X, x, y, iters, status, message="", history=()) -> ConicSolution:
    X = 0.5 * (X + X.T)
    S, s = P.adjoint(y)
    Z = P.C - S
    Z = 0.5 * (Z + Z.T)
    z = P.c - s
    pobj = float(np.sum(P.C * X) + P.c @ x) + P.offset
    dobj = float(P.b @ y) + P.offset
    rp = float(np.linalg.norm(P.b - P.apply(X, x)))
    n = P.psd_size
    xneg = max(0.0, -float(x.min(initial=0.0)))
    zneg = max(0.0, -float(z.min(initial=0.0)))
    Xneg = max(0.0, -float(eigvalsh(X)[0])) if n else 0.0
    Zneg = max(0.0, -float(eigvalsh(Z)[0])) if n else 0.0
    comp = float(np.sum(X * Z) + x @ z)
    return ConicSolution(
        X, x, y, Z, z, pobj, dobj, abs(pobj - dobj), comp,
        max(rp, xneg, Xneg), max(zneg, Zneg), iters, status, message, tuple(history),
    )


def _schur_psd(P: ConicProblem, W: np.ndarray, starts: np.ndarray, nonempty: np.ndarray) -> np.ndarray:
    """``H_kl = <A_k, W A_l W>`` from COO entries."""
    K = P.num_constraints
    H = np.zeros((K, K))
    if P.val.size == 0:
        return H
    v = P.val
    Q = np.outer(v, v) * W[np.ix_(P.row, P.row)] * W[np.ix_(P.col, P.col)].T
    Q = np.add.reduceat(np.add.reduceat(Q, starts, axis=0), starts, axis=1)
    H[np.ix_(nonempty, nonempty)] = Q
    return H


def _max_step(lam_isqrt: np.ndarray, D: np.ndarray) -> float:
    """Largest ``a`` with ``Lambda + a * D`` PSD, where ``Lambda = diag(lam)``."""
    if D.shape[0] == 0:
        return np.inf
    Ms = lam_isqrt[:, None] * D * lam_isqrt[None, :]
    lmin = float(eigvalsh(0.5 * (Ms + Ms.T))[0])
    return np.inf if lmin >= 0 else -1.0 / lmin


def _max_step_lp(v: np.ndarray, dv: np.ndarray) -> float:
    neg = dv < 0
    if not neg.any():
        return np.inf
    return float(np.min(-v[neg] / dv[neg]))


class _State:
    __slots__ = ("X", "x", "y", "Z", "z")

    def __init__(self, X, x, y, Z, z):
        self.X, self.x, self.y, self.Z, self.z = X, x, y, Z, z


def _newton(P: ConicProblem, st: _State, segs, gamma: float, centering: bool):
    """One NT step; predictor-corrector, or a pure centering step at fixed mu.

    Returns the primal and dual step lengths taken.
    """
    n, K = P.psd_size, P.num_constraints
    nu = n + P.lp_size
    X, x, y, Z, z = st.X, st.x, st.y, st.Z, st.z
    S, s = P.adjoint(y)
    Rd = P.C - Z - S
    rd = P.c - z - s
    rp = P.b - P.apply(X, x)
    mu = (float(np.sum(X * Z)) + float(x @ z)) / nu
    if n:
        L = np.linalg.cholesky(X)
        L2 = np.linalg.cholesky(Z)
        _, lam, Vt = np.linalg.svd(L2.T @ L)
        R = (L @ Vt.T) / np.sqrt(lam)
        W = R @ R.T
        RinvT = (Z @ R) / lam
    else:
        lam = np.zeros(0)
        R = W = RinvT = np.zeros((0, 0))
    d = x / z
    H = _schur_psd(P, W, *segs) + (P.A_lp * d) @ P.A_lp.T
    H = 0.5 * (H + H.T)
    try:
        cho = scipy.linalg.cho_factor(H)
        hsolve = lambda r: scipy.linalg.cho_solve(cho, r)
    except np.linalg.LinAlgError:
        reg = 1e-14 * max(1.0, float(np.abs(np.diag(H)).max(initial=0.0)))
        Hr = H + reg * np.eye(K)
        hsolve = lambda r: np.linalg.lstsq(Hr, r, rcond=None)[0]
    WRdW = W @ Rd @ W

    def direction(Rc, rc):
        T = 2.0 * Rc / (lam[:, None] + lam[None, :]) if n else Rc
        G = R @ T @ R.T - WRdW
        gl = rc / z - d * rd
        rhs = rp - P.apply(G, gl)
        dy = hsolve(rhs)
        St, stl = P.adjoint(dy)
        for _ in range(2):
            # iterative refinement against the unfactored operator
            res = rhs - P.apply(W @ St @ W, d * stl)
            if not np.any(res):
                break
            dy = dy + hsolve(res)
            St, stl = P.adjoint(dy)
        dZ = Rd - St
        dX = G + W @ St @ W
        return 0.5 * (dX + dX.T), gl + d * stl, dy, 0.5 * (dZ + dZ.T), rd - stl

    def steps(dX, dx, dZ, dz):
        if n:
            isq = 1.0 / np.sqrt(lam)
            dXs = RinvT.T @ dX @ RinvT
            dZs = R.T @ dZ @ R
            ap = _max_step(isq, dXs)
            ad = _max_step(isq, dZs)
        else:
            dXs = dZs = None
            ap = ad = np.inf
        return min(ap, _max_step_lp(x, dx)), min(ad, _max_step_lp(z, dz)), dXs, dZs

    Lam2 = np.diag(lam**2)
    if centering:
        Rc = mu * np.eye(n) - Lam2
        rc = mu - x * z
    else:
        dXa, dxa, _, dZa, dza = direction(-Lam2, -x * z)
        apa, ada, dXs, dZs = steps(dXa, dxa, dZa, dza)
        apa, ada = min(1.0, apa), min(1.0, ada)
        mu_aff = (
            float(np.sum((X + apa * dXa) * (Z + ada * dZa)))
            + float((x + apa * dxa) @ (z + ada * dza))
        ) / nu
        sigma = min(1.0, max(0.0, mu_aff / mu)) ** 3
        Rc = sigma * mu * np.eye(n) - Lam2
        if n:
            prod = dXs @ dZs
            Rc = Rc - 0.5 * (prod + prod.T)
        rc = sigma * mu - x * z - dxa * dza
    dX, dx, dy, dZ, dz = direction(Rc, rc)
    ap, ad, _, _ = steps(dX, dx, dZ, dz)
    ap = min(1.0, gamma * ap)
    ad = min(1.0, gamma * ad)
    if not (np.isfinite(ap) and np.isfinite(ad)) or max(ap, ad) < 1e-12:
        raise np.linalg.LinAlgError("step length collapsed")
    Xn = X + ap * dX
    Zn = Z + ad * dZ
    st.X = 0.5 * (Xn + Xn.T)
    st.x = x + ap * dx
    st.y = y + ad * dy
    st.Z = 0.5 * (Zn + Zn.T)
    st.z = z + ad * dz
    if not all(np.isfinite(a).all() for a in (st.X, st.Z, st.y, st.x, st.z)):
        raise np.linalg.LinAlgError("non-finite iterate")
    return ap, ad


def _measures(P: ConicProblem, st: _State):
    nu = P.psd_size + P.lp_size
    S, s = P.adjoint(st.y)
    res = max(
        float(np.linalg.norm(P.b - P.apply(st.X, st.x))),
        float(np.linalg.norm(P.C - st.Z - S)),
        float(np.linalg.norm(P.c - st.z - s)),
    )
    comp = float(np.sum(st.X * st.Z)) + float(st.x @ st.z)
    pobj = float(np.sum(P.C * st.X) + P.c @ st.x) + P.offset
    dobj = float(P.b @ st.y) + P.offset
    scale = 1.0 + abs(pobj)
    off_center = float(np.linalg.norm(st.X @ st.Z - (comp / nu) * np.eye(P.psd_size)))
    return max(abs(pobj - dobj) / scale, comp / scale, res), pobj, dobj, comp / nu, res, off_center


def _solve_core(P: ConicProblem, cfg: SolverConfig) -> ConicSolution:
    n, m, K = P.psd_size, P.lp_size, P.num_constraints
    st = _State(np.eye(n), np.ones(m), np.zeros(K), np.eye(n), np.ones(m))
    if n + m == 0:
        return _evaluate(P, st.X, st.x, st.y, 0, "optimal")
    if P.con.size:
        starts = np.flatnonzero(np.r_[True, np.diff(P.con) != 0])
        segs = (starts, P.con[starts])
    else:
        segs = (np.zeros(0, dtype=int), np.zeros(0, dtype=int))
    tol = cfg.tol
    best = None
    best_score = np.inf
    history = []
    stall = 0
    prev_score = np.inf
    status, message = "max_iterations", "iteration cap reached"
    it = 0
    while True:
        score, pobj, dobj, mu, res, _ = _measures(P, st)
        history.append((it, pobj, dobj, mu, res))
        if score < best_score:
            best_score = score
            best = (st.X.copy(), st.x.copy(), st.y.copy())
        if score <= tol:
            status, message = "optimal", "converged"
            break
        if it >= cfg.max_iters:
            break
        stall = stall + 1 if (score > 0.5 * prev_score and score < 1e3 * tol) else 0
        prev_score = min(prev_score, score)
        if stall >= 8:
            status, message = "stalled", "no progress near the tolerance"
            break
        it += 1
        try:
            _newton(P, st, segs, cfg.step_fraction, centering=False)
        except np.linalg.LinAlgError as exc:
            status, message = "numerical_error", str(exc)
            break

    if status != "optimal":
        Xb, xb, yb = best
        return _evaluate(P, Xb, xb, yb, it, status, message, history)

    # recentre at the final mu: pulls the pair toward the central path, which
    # aligns the eigenspaces of X and Z and makes XZ of order mu
    for _ in range(cfg.centering_steps):
        _, _, _, _, _, before = _measures(P, st)
        saved = _State(st.X, st.x, st.y, st.Z, st.z)
        try:
            _newton(P, st, segs, cfg.step_fraction, centering=True)
        except np.linalg.LinAlgError:
            st = saved
            break
        score, pobj, dobj, mu, res, after = _measures(P, st)
        if score > tol or after >= before:
            st = saved
            break
        it += 1
        history.append((it, pobj, dobj, mu, res))
    return _evaluate(P, st.X, st.x, st.y, it, status, message, history)


def solve(problem: ConicProblem, config: SolverConfig | None = None) -> ConicSolution:
    """Solve a conic program; failures are reported in ``status``, not raised.

    Linearly dependent constraints are removed first (their multipliers
    are reported as zero); inconsistent dependent constraints raise
    ``ValueError``.
    """
    cfg = config or SolverConfig()
    rows = problem.independent_rows()
    if rows.size == problem.num_constraints:
        return _solve_core(problem, cfg)
    sub = problem.restrict(rows)
    sol = _solve_core(sub, cfg)
    y = np.zeros(problem.num_constraints)
    y[rows] = sol.y
    full = _evaluate(problem, sol.X, sol.x, y, sol.iterations, sol.status, sol.message, sol.history)
    if full.primal_residual > 1e3 * max(cfg.tol, sol.primal_residual):
        raise ValueError("inconsistent linear constraints")
    return full


# ---- vector coloring programs ---------------------------------------------


def _coloring_problem(G: Graph, strict: bool) -> ConicProblem:
    n = G.n
    edges = G.edge_list
    bld = ProblemBuilder(n, 0 if strict else len(edges))
    if n == 0:
        return bld.build()
    last = n - 1
    bld.C[last, last] = 1.0
    bld.offset = 1.0
    for i in range(n - 1):
        bld.add_constraint([(i, i, -1.0), (last, last, 1.0)], rhs=0.0)
    for e, (i, j) in enumerate(edges):
        lp = () if strict else [(e, -1.0)]
        bld.add_constraint([(i, j, -2.0)], lp, rhs=2.0)
    return bld.build()


def vc_primal_problem(G: Graph) -> ConicProblem:
    """The vector-coloring program in standard form.

    The PSD block is the Gram matrix ``M`` and there is one nonnegative
    slack ``x_e`` per edge. Constraints force equal diagonal entries and
    ``M_ij = -1 - x_e / 2`` on edges; the objective is ``M_{n-1,n-1} + 1``,
    i.e. the coloring value ``t``. The dual slack ``Z`` is exactly the dual
    matrix ``B`` (trace one, zero on non-edges by construction).
    """
    return _coloring_problem(G, strict=False)


def svc_primal_problem(G: Graph) -> ConicProblem:
    """As :func:`vc_primal_problem` but with ``M_ij = -1`` on every edge."""
    return _coloring_problem(G, strict=True)


def vc_dual_extract(solution: ConicSolution, G: Graph, tol: float = 1e-6) -> np.ndarray:
    """Assemble the dual matrix ``B`` from a vector-coloring solve.

    Diagonal entries are the multipliers of the diagonal constraints (the
    last one is one minus their sum) and ``B_ij`` is the edge multiplier, so
    ``tr(B) = 1`` and ``B_ij = 0`` off edges hold exactly. Multipliers that
    are negative beyond rounding raise :class:`SolverError`.
    """
    n = G.n
    if n == 0:
        return np.zeros((0, 0))
    y = solution.y
    B = np.zeros((n, n))
    diag = np.empty(n)
    diag[: n - 1] = y[: n - 1]
    diag[n - 1] = 1.0 - float(y[: n - 1].sum())
    B[np.diag_indices(n)] = diag
    for e, (i, j) in enumerate(G.edge_list):
        B[i, j] = B[j, i] = y[n - 1 + e]
    neg = float(-min(B.min(), 0.0))
    if neg > tol:
        raise SolverError(f"dual matrix has a negative entry {-neg:.3e}", solution)
    np.maximum(B, 0.0, out=B)
    # clipping rounding-level negatives would otherwise move the trace off one
    B /= float(np.trace(B))
    lmin = float(eigvalsh(B)[0])
    if lmin < -tol:
        raise SolverError(f"dual matrix is not PSD (lambda_min={lmin:.3e})", solution)
    return B
