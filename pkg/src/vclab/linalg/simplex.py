"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Intended for the tiny, fully boxed programs that arise in structural
checks. Every variable must carry finite lower and upper bounds, so the
problems are never unbounded.
"""

from dataclasses import dataclass

import numpy as np

_PIVOT_TOL = 1e-11


@dataclass(frozen=True)
class LPResult:
    """Outcome of a linear program.

    Attributes
    ----------
    status : str
        ``"optimal"`` or ``"infeasible"``.
    x : ndarray or None
        Optimal point in the original variables.
    fun : float or None
        Objective value at ``x``.
    """

    status: str
    x: np.ndarray | None
    fun: float | None

    @property
    def success(self) -> bool:
        return self.status == "optimal"


def _pivot(T, basis, r, c):
    T[r] /= T[r, c]
    col = T[:, c].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    basis[r] = c


def _run(T, basis, allowed, max_pivots):
    """Minimize the objective held in the last row of ``T`` (reduced costs)."""
    m = T.shape[0] - 1
    for _ in range(max_pivots):
        obj = T[-1, :-1]
        entering = -1
        for j in np.flatnonzero(allowed):
            if obj[j] < -1e-10:
                entering = j
                break
        if entering < 0:
            return True
        colv = T[:m, entering]
        best = None
        leave = -1
        for i in range(m):
            if colv[i] > _PIVOT_TOL:
                ratio = T[i, -1] / colv[i]
                if best is None or ratio < best - 1e-14 or (
                    abs(ratio - best) <= 1e-14 and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            # cannot happen for boxed problems
            raise ArithmeticError("unbounded direction in a boxed LP")
        _pivot(T, basis, leave, entering)
    raise ArithmeticError("simplex pivot limit reached")


def simplex(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None, feas_tol=1e-9):
    """Minimize ``c @ x`` subject to linear constraints and a finite box.

    Parameters
    ----------
    c : (k,) array_like
    A_ub, b_ub : optional
        Inequalities ``A_ub @ x <= b_ub``.
    A_eq, b_eq : optional
        Equalities ``A_eq @ x == b_eq``.
    bounds : sequence of (lo, hi)
        Finite bounds for every variable.
    feas_tol : float
        Phase-one infeasibility threshold.

    Returns
    -------
    LPResult
    """
    c = np.asarray(c, dtype=float)
    k = c.size
    if bounds is None:
        raise ValueError("every variable needs finite bounds")
    bnd = np.asarray(bounds, dtype=float).reshape(k, 2)
    if not np.isfinite(bnd).all():
        raise ValueError("every variable needs finite bounds")
    lo, hi = bnd[:, 0], bnd[:, 1]
    if (hi < lo - feas_tol).any():
        return LPResult("infeasible", None, None)
    A_ub = np.zeros((0, k)) if A_ub is None else np.asarray(A_ub, dtype=float).reshape(-1, k)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float).ravel()
    A_eq = np.zeros((0, k)) if A_eq is None else np.asarray(A_eq, dtype=float).reshape(-1, k)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float).ravel()

    # shift x = lo + y, y in [0, hi - lo]; upper bounds become inequalities
    width = np.maximum(hi - lo, 0.0)
    G = np.vstack([A_ub, np.eye(k)])
    h = np.concatenate([b_ub - A_ub @ lo, width])
    E = A_eq
    f = b_eq - A_eq @ lo
    n_ub = G.shape[0]
    n_eq = E.shape[0]
    m = n_ub + n_eq
    n_struct = k + n_ub  # y then slacks
    rows = np.zeros((m, n_struct))
    rows[:n_ub, :k] = G
    rows[:n_ub, k:] = np.eye(n_ub)
    rows[n_ub:, :k] = E
    rhs = np.concatenate([h, f])
    neg = rhs < 0
    rows[neg] *= -1.0
    rhs[neg] *= -1.0

    n_tot = n_struct + m
    T = np.zeros((m + 1, n_tot + 1))
    T[:m, :n_struct] = rows
    T[:m, n_struct:n_tot] = np.eye(m)
    T[:m, -1] = rhs
    basis = list(range(n_struct, n_tot))
    T[-1, :] = 0.0
    T[-1, n_struct:n_tot] = 1.0
    T[-1] -= T[:m].sum(axis=0)
    allowed = np.ones(n_tot, dtype=bool)
    max_pivots = 50 * (n_tot + m + 10)
    _run(T, basis, allowed, max_pivots)
    if -T[-1, -1] > feas_tol * (1.0 + np.abs(rhs).max(initial=0.0)):
        return LPResult("infeasible", None, None)

    # drive artificials out of the basis, dropping redundant rows
    r = 0
    while r < T.shape[0] - 1:
        if basis[r] >= n_struct:
            cand = np.flatnonzero(np.abs(T[r, :n_struct]) > 1e-9)
            if cand.size:
                _pivot(T, basis, r, int(cand[0]))
            else:
                T = np.delete(T, r, axis=0)
                del basis[r]
                continue
        r += 1

    m2 = T.shape[0] - 1
    T = np.hstack([T[:, :n_struct], T[:, -1:]])
    cost = np.zeros(n_struct)
    cost[:k] = c
    T[-1, :] = 0.0
    T[-1, :n_struct] = cost
    for i in range(m2):
        T[-1] -= cost[basis[i]] * T[i]
    _run(T, basis, np.ones(n_struct, dtype=bool), max_pivots)

    y = np.zeros(n_struct)
    for i in range(m2):
        y[basis[i]] = T[i, -1]
    x = lo + np.clip(y[:k], 0.0, width)
    return LPResult("optimal", x, float(c @ x))
