import numpy as np
import pytest
from scipy.optimize import linprog

from vclab import graphs as gr
from vclab.structure import (
    RPerturbation,
    arrow_set,
    is_neighborly,
    neighborliness_report,
    second_coloring,
    uvc_check,
)
from vclab.vectorcoloring import VectorColoring, chi_v, skeleton

from conftest import named_fixtures


def _arrow_oracle(vc, i):
    """Arrow set from HiGHS: maximize alpha_j over vanishing convex combinations."""
    P = vc.factors
    nbrs = [j for j in vc.graph.neighbors[i] if (min(i, j), max(i, j)) in vc.tight_edges]
    cols = [i] + nbrs
    V = P[cols].T
    A_eq = np.vstack([V, np.ones((1, len(cols)))])
    b_eq = np.r_[np.zeros(V.shape[0]), 1.0]
    out = set()
    for pos, j in enumerate(nbrs, start=1):
        c = np.zeros(len(cols))
        c[pos] = -1.0
        res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=[(0, 1)] * len(cols), method="highs")
        if res.status == 0 and -res.fun > 1e-6:
            out.add(j)
    return out


# ---- neighborliness -----------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_complete_graph_witness(m):
    vc = chi_v(gr.complete(m)).coloring
    for i in range(m):
        w = is_neighborly(vc, i)
        assert w is not None
        assert set(w.coefficients) == set(range(m))
        np.testing.assert_allclose(list(w.coefficients.values()), 1.0 / m, atol=1e-8)


def test_pendant_vertex_not_neighborly():
    vc = chi_v(gr.k3_pendant()).coloring
    assert is_neighborly(vc, 3) is None
    assert all(is_neighborly(vc, i) is not None for i in range(3))


@pytest.mark.parametrize("G", [gr.cycle(4), gr.cycle(6), gr.complete_bipartite(2, 3), gr.path(4)])
def test_bipartite_vertices_neighborly(G):
    vc = chi_v(G).coloring
    for i in range(G.n):
        w = is_neighborly(vc, i)
        assert w is not None
        assert w.coefficients[i] == pytest.approx(0.5, abs=1e-8)
        assert w.residual <= 1e-8


@pytest.mark.parametrize("name,G", list(named_fixtures().items()))
def test_witness_invariants(name, G):
    vc = chi_v(G).coloring
    t = chi_v(G).t
    for i in range(G.n):
        w = is_neighborly(vc, i)
        if w is None:
            continue
        assert sum(w.coefficients.values()) == pytest.approx(1.0, abs=1e-12)
        assert all(a >= 0 for a in w.coefficients.values())
        assert w.coefficients[i] > 0
        assert w.residual <= 1e-6
        assert w.identity_error <= 1e-6
        assert sum(w.conical().values()) == pytest.approx(t - 1.0, abs=1e-6)


@pytest.mark.parametrize("name,G", list(named_fixtures().items()))
def test_neighborly_iff_not_isolated_in_skeleton(name, G):
    vc = chi_v(G).coloring
    iso = set(gr.isolated_vertices(skeleton(G)))
    for i in range(G.n):
        assert (is_neighborly(vc, i) is None) == (i in iso)


def test_report_carries_tolerance():
    rep = neighborliness_report(chi_v(gr.k3_pendant()).coloring, 3)
    assert not rep.neighborly and rep.witness is None
    assert rep.residual > rep.tolerance
    assert rep.marginal is False


def test_zero_coloring_is_trivially_neighborly():
    vc = chi_v(gr.empty(3)).coloring
    w = is_neighborly(vc, 0)
    assert w is not None and w.coefficients == {0: 1.0}


# ---- arrows ------------------------------------------------------------------------------


@pytest.mark.parametrize("m", [3, 4, 5])
def test_arrow_set_complete(m):
    vc = chi_v(gr.complete(m)).coloring
    for i in range(m):
        assert arrow_set(vc, i) == frozenset(set(range(m)) - {i})


def test_arrow_set_k2():
    vc = chi_v(gr.complete(2)).coloring
    assert arrow_set(vc, 0) == {1}


def test_arrow_set_c4_regression():
    vc = chi_v(gr.cycle(4)).coloring
    assert _arrow_oracle(vc, 0) == {1, 3}
    assert arrow_set(vc, 0) == {1, 3}


def test_arrow_set_rejects_non_neighborly():
    with pytest.raises(ValueError):
        arrow_set(chi_v(gr.k3_pendant()).coloring, 3)


@pytest.mark.parametrize("name,G", list(named_fixtures().items()))
def test_arrow_sets_match_lp_oracle(name, G):
    vc = chi_v(G).coloring
    for i in range(G.n):
        if is_neighborly(vc, i) is None:
            continue
        assert set(arrow_set(vc, i)) == _arrow_oracle(vc, i)


@pytest.mark.parametrize("G", [gr.complete(3), gr.complete(5), gr.petersen()])
def test_arrow_differences_span(G):
    vc = chi_v(G).coloring
    P = vc.factors
    diffs = [P[i] - P[j] for i in range(G.n) for j in arrow_set(vc, i)]
    assert np.linalg.matrix_rank(np.array(diffs), tol=1e-8) == vc.rank


def test_arrow_relation_recorded_both_ways():
    vc = chi_v(gr.petersen()).coloring
    pairs = {(i, j) for i in range(10) for j in arrow_set(vc, i)}
    # symmetric on this vertex-transitive example; the relation is stored per direction
    assert pairs == {(j, i) for i, j in pairs}


# ---- uniqueness ----------------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_complete_graphs_unique(m):
    res = uvc_check(gr.complete(m))
    assert res.unique and res.certificate is None


def test_triangle_with_pendant_not_unique():
    res = uvc_check(gr.k3_pendant())
    assert res.verdict == "not_unique"
    r = res.certificate
    assert r.equality_residual <= 1e-7
    assert all(v <= 1e-7 for v in r.tight_edge_values.values())
    assert r.epsilon_max > 0
    vc = res.coloring
    other = second_coloring(vc, r)
    assert other.is_feasible(1e-7)
    assert other.t == pytest.approx(vc.t)
    assert np.linalg.norm(other.gram - vc.gram) >= 1e-6
    assert other.gram[0, 3] <= -1 + 1e-9


def test_disjoint_triangles_not_unique_by_kernel():
    G = gr.disjoint_union(gr.complete(3), gr.complete(3))
    res = uvc_check(G)
    assert res.verdict == "not_unique"
    assert res.stage == 1 and res.kernel_dimension > 0
    other = second_coloring(res.coloring, res.certificate)
    assert other.is_feasible(1e-7)
    diff = other.gram - res.coloring.gram
    assert np.linalg.norm(diff) >= 1e-6
    # the two triangles rotate relative to each other; blocks are unchanged
    assert np.abs(diff[:3, :3]).max() <= 1e-8
    assert np.abs(diff[3:, 3:]).max() <= 1e-8


def test_certificate_satisfies_perturbation_conditions():
    res = uvc_check(gr.k3_pendant())
    vc, r = res.coloring, res.certificate
    P = vc.factors
    eps = r.epsilon_max
    assert np.linalg.eigvalsh(np.eye(P.shape[1]) + eps * r.R)[0] >= -1e-9
    for i, j in gr.k3_pendant().edge_list:
        assert P[i] @ (eps * r.R) @ P[j] <= -1 - vc.gram[i, j] + 1e-9


@pytest.mark.parametrize("G", [gr.cycle(4), gr.cycle(6), gr.petersen(), gr.cycle(5)])
def test_unique_graphs_have_no_certificate(G):
    res = uvc_check(G)
    assert res.unique


def test_second_coloring_rejects_zero_direction():
    vc = chi_v(gr.k3_pendant()).coloring
    d = vc.rank
    with pytest.raises(ValueError):
        second_coloring(vc, RPerturbation(np.zeros((d, d)), 0.0, {}, 0.0))


def test_uvc_rejects_edgeless():
    with pytest.raises(ValueError):
        uvc_check(gr.empty(3))


def test_path_unique():
    # every optimal coloring of a connected bipartite graph is v, -v, v, -v
    res = uvc_check(gr.path(4))
    assert res.unique
