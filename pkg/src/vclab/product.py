"""Categorical products: induced colorings, dual certificates and rank accounting.

Product vertices are flattened row-major, ``(i, l) -> i * n_H + l``, so a
Gram matrix of ``G x H`` reshapes to ``(n_G, n_H, n_G, n_H)`` and the
Kronecker product ``M (x) J`` is the coloring induced by ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import graphs as gr
from .graphs import Graph
from .linalg import eig_sym, eigvalsh, kron, lambda_min
from .structure import NeighborlinessWitness, is_neighborly
from .tolerances import DEFAULT, Tolerances
from .vectorcoloring import (
    AForm,
    DualWitness,
    VectorColoring,
    a_to_b,
    b_to_a,
    chi_sv,
    chi_v,
    skeleton_report,
    strict_complementarity,
)

__all__ = [
    "ConvexDecomposition",
    "CorollaryResult",
    "HedetniemiReport",
    "NecessaryConditions",
    "ProductAnalysis",
    "build_product_dependency",
    "convex_decompose",
    "corollary_pipeline",
    "direct_sum",
    "induced_coloring",
    "is_induced_by_g",
    "is_induced_by_h",
    "kronecker_certificate",
    "necessary_conditions",
    "rank_accounting",
    "verify_hedetniemi",
]

#: tolerance for deciding that two vector chromatic numbers are equal
CHI_EQUAL_TOL = 1e-6
#: tolerance of the min identity for the product value
HEDETNIEMI_TOL = 1e-5
#: tolerance on the Kronecker certificate eigenvalues
CERT_TOL = 1e-6
EPS_START = 1e-2
EPS_FLOOR = 1e-8


def _zero_coloring(P: Graph, tol: Tolerances) -> VectorColoring:
    return VectorColoring.from_gram(P, np.zeros((P.n, P.n)), 1.0, tol)


# ---- induced and direct-sum colorings --------------------------------------


def induced_coloring(vc_g: VectorColoring, H: Graph, tol: Tolerances = DEFAULT) -> VectorColoring:
    """The coloring of ``G x H`` with ``q_(i,l) = p_i`` (Gram ``M (x) J``).

    If ``H`` has no edges the product is edgeless and the induced Gram
    matrix would not be optimal there; the zero coloring at value 1 is
    returned instead.
    """
    P = gr.categorical_product(vc_g.graph, H)
    if H.m == 0 or vc_g.graph.m == 0:
        return _zero_coloring(P, tol)
    M = kron(vc_g.gram, np.ones((H.n, H.n)))
    return VectorColoring.from_gram(P, M, vc_g.t, tol)


def direct_sum(vc_g: VectorColoring, vc_h: VectorColoring, alpha: float, tol: Tolerances = DEFAULT) -> VectorColoring:
    """The coloring ``w_(i,l) = sqrt(alpha) p_i (+) sqrt(1 - alpha) q_l`` of ``G x H``.

    Its Gram matrix is ``alpha M (x) J + (1 - alpha) J (x) N``. Both
    colorings must have the same value ``t``.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if abs(vc_g.t - vc_h.t) > CHI_EQUAL_TOL:
        raise ValueError(f"colorings have different values ({vc_g.t} vs {vc_h.t})")
    G, H = vc_g.graph, vc_h.graph
    P = gr.categorical_product(G, H)
    M = alpha * kron(vc_g.gram, np.ones((H.n, H.n))) + (1.0 - alpha) * kron(np.ones((G.n, G.n)), vc_h.gram)
    return VectorColoring.from_gram(P, M, 0.5 * (vc_g.t + vc_h.t), tol)


def _blocks(W: VectorColoring, sizes: tuple[int, int]) -> np.ndarray:
    n_g, n_h = sizes
    if n_g * n_h != W.graph.n:
        raise ValueError("sizes do not match the product coloring")
    return np.asarray(W.gram).reshape(n_g, n_h, n_g, n_h)


def _spread(T: np.ndarray, axes: tuple[int, int]) -> float:
    if T.size == 0:
        return 0.0
    return float((T.max(axis=axes) - T.min(axis=axes)).max())


def is_induced_by_g(W: VectorColoring, sizes: tuple[int, int], tol: float = 1e-7) -> bool:
    """Whether ``Gram[(i,l),(j,k)]`` depends only on ``(i, j)``."""
    return _spread(_blocks(W, sizes), (1, 3)) <= tol


def is_induced_by_h(W: VectorColoring, sizes: tuple[int, int], tol: float = 1e-7) -> bool:
    """Whether ``Gram[(i,l),(j,k)]`` depends only on ``(l, k)``."""
    return _spread(_blocks(W, sizes), (0, 2)) <= tol


# ---- Hedetniemi identity -----------------------------------------------------


@dataclass(frozen=True)
class KroneckerCertificate:
    """Dual witness ``A = A_G (x) A_H / (t - 1)`` for the product.

    Attributes
    ----------
    A : ndarray
    scale : float
        ``t - 1`` with ``t`` the larger factor value.
    lambda_min, lambda_max : float
    value : float
        ``||I + A|| = 1 + lambda_max``.
    ratio_value : float
        ``1 - lambda_max / lambda_min`` of ``A_G (x) A_H``; scale invariant.
    """

    A: np.ndarray
    scale: float
    lambda_min: float
    lambda_max: float
    value: float
    ratio_value: float


def kronecker_certificate(af_g: AForm, af_h: AForm) -> KroneckerCertificate:
    """Combine optimal forms of the factors into a feasible form for the product."""
    K = kron(af_g.A, af_h.A)
    scale = max(af_g.lambda_max, af_h.lambda_max)
    if scale <= 0 or not K.any():
        n = K.shape[0]
        return KroneckerCertificate(np.zeros((n, n)), 0.0, 0.0, 0.0, 1.0, 1.0)
    A = K / scale
    w = eigvalsh(A)
    lmin, lmax = float(w[0]), float(w[-1])
    ratio = 1.0 - lmax / lmin if lmin < 0 else float("inf")
    return KroneckerCertificate(A, scale, lmin, lmax, 1.0 + lmax, ratio)


@dataclass(frozen=True)
class HedetniemiReport:
    """Product value against the minimum of the factor values.

    Attributes
    ----------
    chi_g, chi_h, chi_product : float
    identity_error : float
        ``|chi_product - min(chi_g, chi_h)|``.
    certificate : KroneckerCertificate
    certificate_error : float
        Largest of ``|lambda_min + 1|`` and ``|value - min|``.
    strict : dict or None
        ``{"g", "h", "product", "error"}`` for the strict variant.
    passed : bool
    """

    chi_g: float
    chi_h: float
    chi_product: float
    identity_error: float
    certificate: KroneckerCertificate
    certificate_error: float
    strict: dict | None
    passed: bool

    @property
    def minimum(self) -> float:
        return min(self.chi_g, self.chi_h)


def verify_hedetniemi(G: Graph, H: Graph, strict: bool = False, tol: Tolerances = DEFAULT) -> HedetniemiReport:
    """Check ``chi_v(G x H) = min(chi_v(G), chi_v(H))`` with an explicit dual.

    The product value comes from the solver; the certificate is built
    independently from the factor duals. The check passes when the identity
    holds within ``1e-5`` and the certificate has least eigenvalue ``-1`` and
    value equal to the minimum within ``1e-6``.
    """
    rg, rh = chi_v(G, tol), chi_v(H, tol)
    P = gr.categorical_product(G, H)
    rp = chi_v(P, tol)
    low = min(rg.t, rh.t)
    err = abs(rp.t - low)
    cert = kronecker_certificate(b_to_a(rg.dual, tol), b_to_a(rh.dual, tol))
    if cert.scale > 0:
        cerr = max(abs(cert.lambda_min + 1.0), abs(cert.value - low))
    else:
        cerr = abs(1.0 - low)
    ok = err <= HEDETNIEMI_TOL and cerr <= CERT_TOL
    sv = None
    if strict:
        sg, sh, sp = chi_sv(G, tol), chi_sv(H, tol), chi_sv(P, tol)
        serr = abs(sp - min(sg, sh))
        sv = {"g": sg, "h": sh, "product": sp, "error": serr}
        ok = ok and serr <= HEDETNIEMI_TOL
    return HedetniemiReport(rg.t, rh.t, rp.t, err, cert, cerr, sv, ok)


# ---- convex decomposition -------------------------------------------------------


@dataclass(frozen=True)
class ConvexDecomposition:
    """``Gram = alpha M (x) J + (1 - alpha) J (x) N`` with optimal factor Grams.

    Attributes
    ----------
    alpha : float
    M_part, N_part : ndarray or None
        Renormalized factor Grams; ``None`` for the factor with zero weight.
    shift : float
        The scalar moved between the two additive parts.
    shift_interval : tuple of float
        Feasible shifts; the midpoint is used.
    fit_residual : float
        Max deviation from the additive model.
    parts_feasible : dict
        ``"g"``/``"h"`` -> whether the part is an optimal coloring of its
        factor (``None`` when the factor graph was not supplied).
    """

    alpha: float
    M_part: np.ndarray | None
    N_part: np.ndarray | None
    shift: float
    shift_interval: tuple
    fit_residual: float
    parts_feasible: dict = field(default_factory=dict)


def _psd_boundary(base: np.ndarray, sign: float, lo: float, hi: float, tol: float, iters: int) -> float | None:
    """Boundary of ``{c : lambda_min(base + sign c J) >= -tol}`` in ``[lo, hi]``.

    ``lambda_min`` is nondecreasing in ``sign * c``, so the set is a half
    line and bisection finds its end point.
    """
    J = np.ones_like(base)

    def ok(c):
        return lambda_min(base + sign * c * J) >= -tol

    good, bad = (hi, lo) if sign > 0 else (lo, hi)
    if not ok(good):
        return None
    if ok(bad):
        return bad
    for _ in range(iters):
        mid = 0.5 * (good + bad)
        if ok(mid):
            good = mid
        else:
            bad = mid
    return good


def convex_decompose(
    W: VectorColoring,
    sizes: tuple[int, int],
    tol: float = 1e-6,
    G: Graph | None = None,
    H: Graph | None = None,
    iters: int = 60,
) -> ConvexDecomposition | None:
    """Recognize a Gram matrix of the form ``M (x) J + J (x) N``.

    Two-way means give ``M'`` and ``N'`` up to a shared constant ``c``. A
    shift keeping both ``M' + cJ`` and ``N' - cJ`` PSD (within ``tol``) is
    located by bisection over ``[-||W||, ||W||]``. When the factor graphs
    are given, the shift is further restricted so that both renormalized
    parts satisfy their edge constraints. Returns ``None`` if no admissible
    decomposition exists.
    """
    T = _blocks(W, sizes)
    n_g, n_h = sizes
    if n_g == 0 or n_h == 0:
        return None
    t = W.t
    a = T.mean(axis=(1, 3))
    b = T.mean(axis=(0, 2))
    g = float(a.mean())
    Mp = a - g
    Np = b
    fit = Mp[:, None, :, None] + Np[None, :, None, :]
    resid = float(np.abs(T - fit).max())
    if resid > tol:
        return None
    bound = max(1.0, float(np.linalg.norm(W.gram)))
    c_lo = _psd_boundary(Mp, 1.0, -bound, bound, tol, iters)
    c_hi = _psd_boundary(Np, -1.0, -bound, bound, tol, iters)
    if c_lo is None or c_hi is None:
        return None
    lo, hi = c_lo, c_hi
    m0 = float(np.mean(np.diag(Mp)))
    n0 = float(np.mean(np.diag(Np)))
    if t > 1.0:
        if G is not None:
            for i, j in G.edge_list:
                hi = min(hi, (-m0 - (t - 1.0) * Mp[i, j]) / t)
        if H is not None:
            for l, k in H.edge_list:
                lo = max(lo, (n0 + (t - 1.0) * Np[l, k]) / t)
    if lo > hi + tol:
        return None
    c = 0.5 * (lo + hi)
    Mc = Mp + c
    Nc = Np - c
    if np.ptp(np.diag(Mc)) > tol or np.ptp(np.diag(Nc)) > tol:
        return None
    gamma = float(np.mean(np.diag(Mc)))
    alpha = gamma / (t - 1.0) if t > 1.0 else 1.0
    alpha = min(1.0, max(0.0, alpha))
    M_part = Mc / alpha if alpha > tol else None
    N_part = Nc / (1.0 - alpha) if 1.0 - alpha > tol else None
    feas = {}
    for key, graph, part in (("g", G, M_part), ("h", H, N_part)):
        if graph is not None and part is not None:
            vc = VectorColoring.from_gram(graph, part, t)
            feas[key] = vc.is_feasible(max(tol, 1e-7))
    return ConvexDecomposition(alpha, M_part, N_part, float(c), (float(lo), float(hi)), resid, feas)


# ---- rank accounting ---------------------------------------------------------


@dataclass(frozen=True)
class ProductAnalysis:
    """Values, ranks and the structural verdict for a product ``G x H``.

    Attributes
    ----------
    chi_g, chi_h, chi_product : float
    rk_g, rk_h, rk_product : int
        Lower ends of the rank brackets.
    case : str
        ``"less_than"`` or ``"equal"``.
    verdict : str
        ``"all_induced_by_G"``, ``"all_convex_combinations"`` or
        ``"inconclusive"``.
    swapped : bool
        Whether the factors were exchanged so that ``chi_g <= chi_h``.
    brackets : dict
        ``"g"``/``"h"``/``"product"`` -> ``(primal rank, dual corank)``.
    residuals : dict
    """

    chi_g: float
    chi_h: float
    chi_product: float
    rk_g: int
    rk_h: int
    rk_product: int
    case: str
    verdict: str
    swapped: bool = False
    brackets: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)

    @property
    def rank_exact(self) -> bool:
        return all(lo == hi for lo, hi in self.brackets.values())

    @property
    def lower_bound_holds(self) -> bool:
        need = self.rk_g + (self.rk_h if self.case == "equal" else 0)
        return self.brackets["product"][1] >= need


def _bracket(res) -> tuple[int, int]:
    return (res.coloring.rank, res.dual.corank)


def _case(chi_g: float, chi_h: float) -> str:
    return "less_than" if chi_g < chi_h - CHI_EQUAL_TOL else "equal"


def _ordered(G: Graph, H: Graph, tol: Tolerances):
    rg, rh = chi_v(G, tol), chi_v(H, tol)
    if rh.t < rg.t - CHI_EQUAL_TOL:
        return H, G, rh, rg, True
    return G, H, rg, rh, False


def rank_accounting(G: Graph, H: Graph, tol: Tolerances = DEFAULT) -> ProductAnalysis:
    """Compare ``rk(G x H)`` with ``rk(G)`` (and ``rk(H)``).

    Ranks are read from the maximum-rank primal solution and checked against
    the corank of the dual solution; the two agree exactly when the pair is
    strictly complementary. Any disagreement makes the verdict
    ``"inconclusive"``. Factors are swapped so that ``chi_g <= chi_h``.
    """
    G, H, rg, rh, swapped = _ordered(G, H, tol)
    rp = chi_v(gr.categorical_product(G, H), tol)
    br = {"g": _bracket(rg), "h": _bracket(rh), "product": _bracket(rp)}
    case = _case(rg.t, rh.t)
    exact = all(lo == hi for lo, hi in br.values())
    rk_g, rk_h, rk_p = br["g"][0], br["h"][0], br["product"][0]
    verdict = "inconclusive"
    if exact:
        if case == "less_than" and rk_p == rk_g:
            verdict = "all_induced_by_G"
        elif case == "equal" and rk_p == rk_g + rk_h:
            verdict = "all_convex_combinations"
    residuals = {
        "hedetniemi": abs(rp.t - min(rg.t, rh.t)),
        "chi_difference": rh.t - rg.t,
    }
    return ProductAnalysis(rg.t, rh.t, rp.t, rk_g, rk_h, rk_p, case, verdict, swapped, br, residuals)


# ---- dual certificates for the rank conditions ----------------------------------


@dataclass(frozen=True)
class CorollaryResult:
    """Outcome of the explicit product-dual construction.

    Attributes
    ----------
    case : str
    status : str
        ``"certified"``, ``"hypothesis not met"``, ``"construction failed"``
        or ``"not certified"`` (construction done but corank mismatch).
    hypothesis_checks : dict
    construction_trace : list of dict
    corank : int or None
        Corank of the constructed product dual.
    expected_corank : int or None
    dual : DualWitness or None
    swapped : bool
    """

    case: str
    status: str
    hypothesis_checks: dict
    construction_trace: list
    corank: int | None = None
    expected_corank: int | None = None
    dual: DualWitness | None = None
    swapped: bool = False

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _perron_ok(af: AForm, tol: Tolerances) -> bool:
    return bool(np.all(np.asarray(af.perron) > tol.support))


def _perturbed_form(af_h: AForm, H: Graph, target: float, tol: Tolerances, trace: list) -> AForm | None:
    """``alpha (A' + eps A_H)`` with ``lambda_min = -1`` and the required properties.

    ``eps`` starts at ``EPS_START`` and halves down to ``EPS_FLOOR``. The
    top eigenvalue must exceed ``target`` and be simple with a positive
    eigenvector.
    """
    base = np.asarray(af_h.A)
    adj = np.asarray(H.adjacency)
    connected = gr.is_connected(H)
    eps = EPS_START
    while eps >= EPS_FLOOR:
        X = base + eps * adj
        sd = eig_sym(X)
        alpha = -1.0 / sd.lambda_min
        A = alpha * X
        w = alpha * sd.eigenvalues
        u = sd.eigenvectors[:, 0]
        u = u * np.sign(u.sum())
        lmax = float(w[0])
        gap = float(w[0] - w[1]) if w.size > 1 else np.inf
        checks = {
            "eps": eps,
            "alpha": alpha,
            "lambda_max": lmax,
            "lambda_min": float(w[-1]),
            "top_gap": gap,
            "perron_min": float(u.min()),
            "connected": connected,
        }
        ok = (
            lmax > target + CERT_TOL * (1.0 + abs(target))
            and gap > tol.cluster * max(1.0, abs(lmax))
            and u.min() > tol.support
            and connected
        )
        checks["accepted"] = bool(ok)
        trace.append(checks)
        if ok:
            return AForm(H, A, lmax, float(w[-1]), u / np.linalg.norm(u))
        eps *= 0.5
    return None


def _product_dual(P: Graph, A: np.ndarray, lmax: float, perron: np.ndarray, tol: Tolerances) -> DualWitness:
    af = AForm(P, A, lmax, -1.0, perron / np.linalg.norm(perron))
    return a_to_b(af, tol)


def corollary_pipeline(G: Graph, H: Graph, tol: Tolerances = DEFAULT) -> CorollaryResult:
    """Build an optimal product dual whose corank certifies the rank condition.

    Less-than case (``chi_v(G) < chi_v(H)``): needs a strictly complementary
    dual for ``G`` with positive diagonal and a connected ``H``; the product
    form is ``A_G (x) A_H / mu`` with ``A_H`` a perturbed near-optimal form
    of top eigenvalue ``mu``. Equal case: needs connected strictly
    complementary duals for both factors; the form is
    ``A_G (x) A_H / lambda``. The result is certified when the product dual
    is optimal and has corank ``rk(G)`` (resp. ``rk(G) + rk(H)``).
    """
    G, H, rg, rh, swapped = _ordered(G, H, tol)
    case = _case(rg.t, rh.t)
    P = gr.categorical_product(G, H)
    low = min(rg.t, rh.t)
    trace: list = []
    sc_g = strict_complementarity(rg.coloring, rg.dual, tol.rank)
    sc_h = strict_complementarity(rh.coloring, rh.dual, tol.rank)
    checks = {
        "g_nonempty": G.m > 0,
        "g_strictly_complementary": sc_g.strictly_complementary,
        "g_positive_diagonal": rg.dual.positive_diagonal,
        "g_dual_connected": rg.dual.connected,
        "h_connected": gr.is_connected(H),
        "h_strictly_complementary": sc_h.strictly_complementary,
        "h_dual_connected": rh.dual.connected,
    }

    def result(status, corank=None, expected=None, dual=None):
        return CorollaryResult(case, status, checks, trace, corank, expected, dual, swapped)

    if G.m == 0:
        trace.append({"step": "trivial", "reason": "G has no edges"})
        return result("certified", 0, 0)

    af_g = b_to_a(rg.dual, tol)
    if case == "less_than":
        hyp = ("g_strictly_complementary", "g_positive_diagonal", "h_connected")
        if not all(checks[k] for k in hyp):
            return result("hypothesis not met")
        expected = rg.dual.corank
        af_h0 = b_to_a(rh.dual, tol)
        af_h = _perturbed_form(af_h0, H, af_g.lambda_max, tol, trace)
        if af_h is None or not _perron_ok(af_g, tol):
            return result("construction failed", expected=expected)
        mu = af_h.lambda_max
        A = kron(af_g.A, af_h.A) / mu
        perron = np.kron(af_g.perron, af_h.perron)
        top = af_g.lambda_max
    else:
        hyp = ("g_strictly_complementary", "g_dual_connected", "h_strictly_complementary", "h_dual_connected")
        if not all(checks[k] for k in hyp):
            return result("hypothesis not met")
        expected = rg.dual.corank + rh.dual.corank
        af_h = b_to_a(rh.dual, tol)
        if not (_perron_ok(af_g, tol) and _perron_ok(af_h, tol)):
            return result("construction failed", expected=expected)
        lam = max(af_g.lambda_max, af_h.lambda_max)
        A = kron(af_g.A, af_h.A) / lam
        perron = np.kron(af_g.perron, af_h.perron)
        top = min(af_g.lambda_max, af_h.lambda_max)
    dw = _product_dual(P, A, top, perron, tol)
    w = eigvalsh(A)
    step = {
        "step": "product_dual",
        "lambda_min": float(w[0]),
        "lambda_max": float(w[-1]),
        "objective": dw.objective,
        "target": low,
        "corank": dw.corank,
        "expected_corank": expected,
    }
    trace.append(step)
    optimal = abs(dw.objective - low) <= CERT_TOL * max(1.0, low) and abs(w[0] + 1.0) <= CERT_TOL
    if not optimal:
        return result("construction failed", dw.corank, expected, dw)
    status = "certified" if dw.corank == expected else "not certified"
    return result(status, dw.corank, expected, dw)


# ---- necessary conditions -------------------------------------------------------


@dataclass(frozen=True)
class NecessaryConditions:
    """Skeleton-based necessary conditions for the structural conclusions.

    Attributes
    ----------
    case : str
    non_neighborly_g, non_neighborly_h : list of int
        Vertices isolated in the skeleton (equivalently not neighborly).
    skeleton_connected_g, skeleton_connected_h : bool
    conditions_hold : bool
        Whether the ladder for the current case passes.
    verdict : str or None
        The rank-accounting verdict cross-checked against the ladder.
    contradiction : bool
        A positive verdict despite a failed necessary condition, which can
        only come from numerical error.
    """

    case: str
    non_neighborly_g: list
    non_neighborly_h: list
    skeleton_connected_g: bool
    skeleton_connected_h: bool
    conditions_hold: bool
    verdict: str | None
    contradiction: bool
    swapped: bool = False


def _non_neighborly(G: Graph, tol: Tolerances) -> tuple[list, bool]:
    sk = skeleton_report(G, tol).skeleton
    vc = chi_v(G, tol).coloring
    isolated = set(gr.isolated_vertices(sk))
    nnls_fail = {i for i in range(G.n) if is_neighborly(vc, i, tol.tight) is None}
    return sorted(isolated | nnls_fail), gr.is_connected(sk)


def necessary_conditions(
    G: Graph, H: Graph, tol: Tolerances = DEFAULT, analysis: ProductAnalysis | None = None
) -> NecessaryConditions:
    """Evaluate the necessary conditions and cross-check a rank verdict.

    In the less-than case every vertex of ``G`` must be neighborly for all
    optimal colorings of the product to be induced by ``G``. In the equal
    case both skeletons must be connected (and free of isolated vertices)
    for all of them to be convex combinations.
    """
    G, H, _, _, swapped = _ordered(G, H, tol)
    if analysis is None:
        analysis = rank_accounting(G, H, tol)
    case = analysis.case
    nn_g, conn_g = _non_neighborly(G, tol)
    nn_h, conn_h = _non_neighborly(H, tol)
    if case == "less_than":
        holds = not nn_g
        contradiction = analysis.verdict == "all_induced_by_G" and not holds
    else:
        holds = conn_g and conn_h and not nn_g and not nn_h
        nonempty = G.m > 0 and H.m > 0
        contradiction = nonempty and analysis.verdict == "all_convex_combinations" and not holds
    return NecessaryConditions(case, nn_g, nn_h, conn_g, conn_h, holds, analysis.verdict, contradiction, swapped)


# ---- dependencies in the direct-sum coloring ---------------------------------------


def build_product_dependency(
    witness_g: NeighborlinessWitness,
    witness_h: NeighborlinessWitness,
    t: float,
    n_h: int,
    coloring: VectorColoring | None = None,
) -> NeighborlinessWitness:
    """Combine factor dependencies into one for ``(i, l)`` in a direct-sum coloring.

    With conical coefficients ``alpha_j`` (for ``-p_i``) and ``beta_k``
    (for ``-q_l``), each summing to ``t - 1``, the product vertex ``(i, l)``
    gets coefficient ``alpha_j beta_k / (t - 1)`` on ``(j, k)``. The
    residual is measured in ``coloring`` when given; otherwise it is the
    bound ``max`` of the two factor residuals in conical scaling.
    """
    if t <= 1.0:
        raise ValueError("t must exceed 1")
    ag = witness_g.conical()
    bh = witness_h.conical()
    for name, co in (("G", ag), ("H", bh)):
        total = sum(co.values())
        if abs(total - (t - 1.0)) > 1e-6 * t:
            raise ValueError(f"{name} witness coefficients sum to {total}, expected {t - 1.0}")
    i, l = witness_g.vertex, witness_h.vertex
    centre = i * n_h + l
    conical = {}
    for j, a in ag.items():
        for k, b in bh.items():
            conical[j * n_h + k] = a * b / (t - 1.0)
    total = 1.0 + sum(conical.values())
    coeffs = {centre: 1.0 / total}
    coeffs.update({v: c / total for v, c in sorted(conical.items())})
    if coloring is not None:
        F = np.asarray(coloring.factors)
        vec = sum(c * F[v] for v, c in coeffs.items())
        residual = float(np.linalg.norm(vec))
    else:
        rg = witness_g.residual / witness_g.coefficients[witness_g.vertex]
        rh = witness_h.residual / witness_h.coefficients[witness_h.vertex]
        residual = max(rg, rh) / total
    return NeighborlinessWitness(centre, coeffs, residual, t)
