import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vclab import graphs as gr
from vclab.graphio import (
    GraphFormatError,
    format_dimacs,
    format_json_graph,
    parse_dimacs,
    parse_json_graph,
    read_graph,
    write_graph,
)


@st.composite
def small_graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return gr.Graph(n, [p for p, keep in zip(pairs, mask) if keep])


# ---- construction --------------------------------------------------------------


def test_complete_graphs():
    assert (gr.complete(1).n, gr.complete(1).m) == (1, 0)
    assert gr.complete(4).m == 6
    K3 = gr.complete(3)
    assert K3.m == 3 and all(K3.degree(i) == 2 for i in range(3))


def test_complete_rejects_zero():
    with pytest.raises(ValueError):
        gr.complete(0)


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        gr.Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        gr.Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        gr.Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        gr.Graph(-1)


def test_kneser_5_2():
    G = gr.kneser(5, 2)
    assert (G.n, G.m) == (10, 15)
    assert all(G.degree(i) == 3 for i in range(G.n))
    assert nx.is_isomorphic(nx.Graph(list(G.edge_list)), nx.petersen_graph())


def test_cycle_5():
    C = gr.cycle(5)
    assert (C.n, C.m) == (5, 5)


def test_hamming_h_4_2():
    G = gr.hamming_h(4, 2)
    assert G.n == 8
    words = [w for w in range(16) if bin(w).count("1") % 2 == 0]
    for a, b in itertools.combinations(range(8), 2):
        assert G.has_edge(a, b) == (bin(words[a] ^ words[b]).count("1") == 2)


def test_hamming_h_rejects_odd_distance():
    with pytest.raises(ValueError):
        gr.hamming_h(4, 1)


def test_hypercube_matches_networkx():
    G = gr.hypercube(3)
    assert nx.is_isomorphic(nx.Graph(list(G.edge_list)), nx.hypercube_graph(3))


# ---- products -------------------------------------------------------------------


def test_k2_times_k2():
    P = gr.categorical_product(gr.complete(2), gr.complete(2))
    assert P.n == 4 and P.m == 2
    assert P.edges == {(0, 3), (1, 2)}
    assert not gr.is_connected(P)


def test_product_with_empty_graph():
    P = gr.categorical_product(gr.petersen(), gr.empty(3))
    assert P.n == 30 and P.m == 0


def test_k3_times_k3_edge_count():
    assert gr.categorical_product(gr.complete(3), gr.complete(3)).m == 18


@given(small_graphs(), small_graphs())
def test_product_edge_count(G, H):
    assert gr.categorical_product(G, H).m == 2 * G.m * H.m


@given(small_graphs(), small_graphs())
def test_product_adjacency_rule(G, H):
    P = gr.categorical_product(G, H)
    for i, l, j, k in itertools.product(range(G.n), range(H.n), range(G.n), range(H.n)):
        a = gr.ProductIndex(i, l, H.n).flat
        b = gr.ProductIndex(j, k, H.n).flat
        expected = G.has_edge(i, j) and H.has_edge(l, k) if (i != j and l != k) else False
        assert (a != b and P.has_edge(a, b)) == expected


@given(small_graphs(), small_graphs())
def test_product_matches_networkx(G, H):
    P = gr.categorical_product(G, H)
    ng = nx.Graph()
    ng.add_nodes_from(range(G.n))
    ng.add_edges_from(G.edge_list)
    nh = nx.Graph()
    nh.add_nodes_from(range(H.n))
    nh.add_edges_from(H.edge_list)
    T = nx.tensor_product(ng, nh)
    mapped = {(i * H.n + l, j * H.n + k) for (i, l), (j, k) in T.edges}
    assert {tuple(sorted(e)) for e in mapped} == set(P.edges)


def test_product_index_round_trip():
    for flat in range(12):
        idx = gr.ProductIndex.from_flat(flat, 4)
        assert idx.flat == flat
    with pytest.raises(ValueError):
        gr.ProductIndex.from_flat(3, 0)


@given(small_graphs(8))
def test_complement_is_involution(G):
    assert gr.complement(gr.complement(G)) == G


# ---- predicates -------------------------------------------------------------------


def test_bipartite():
    assert gr.is_bipartite(gr.cycle(4))
    assert not gr.is_bipartite(gr.cycle(5))


def test_components_triangle_plus_vertex():
    G = gr.disjoint_union(gr.complete(3), gr.complete(1))
    comps = sorted(gr.connected_components(G), key=len, reverse=True)
    assert [len(c) for c in comps] == [3, 1]
    assert gr.isolated_vertices(G) == [3]


@given(small_graphs(8))
def test_predicates_match_networkx(G):
    ng = nx.Graph()
    ng.add_nodes_from(range(G.n))
    ng.add_edges_from(G.edge_list)
    assert gr.is_connected(G) == nx.is_connected(ng)
    assert gr.is_bipartite(G) == nx.is_bipartite(ng)
    assert sorted(map(sorted, gr.connected_components(G))) == sorted(
        map(sorted, nx.connected_components(ng))
    )


@given(small_graphs(8))
def test_greedy_coloring_is_proper(G):
    col = gr.greedy_coloring(G)
    assert all(col[i] != col[j] for i, j in G.edge_list)
    assert gr.greedy_chromatic_bound(G) == (max(col) + 1 if col else 0)


@pytest.mark.parametrize(
    "G",
    [gr.kneser(5, 2), gr.cycle(6), gr.complete(4), gr.cycle(5), gr.cycle(7), gr.hypercube(3)],
    ids=["petersen", "C6", "K4", "C5", "C7", "Q3"],
)
def test_one_walk_regular_fixtures(G):
    assert gr.is_one_walk_regular(G)


def test_triangle_with_pendant_is_not_one_walk_regular():
    assert not gr.is_one_walk_regular(gr.k3_pendant())


def _one_walk_regular_oracle(G, kmax=None):
    A = np.array(G.adjacency, dtype=np.int64).astype(object)
    n = G.n
    kmax = kmax if kmax is not None else n
    P = np.identity(n, dtype=np.int64).astype(object)
    for _ in range(kmax + 1):
        if len({P[i, i] for i in range(n)}) > 1:
            return False
        if len({P[i, j] for i, j in G.edge_list}) > 1:
            return False
        P = P.dot(A)
    return True


@given(small_graphs(7))
def test_one_walk_regular_matches_full_power_check(G):
    assert gr.is_one_walk_regular(G) == _one_walk_regular_oracle(G)


# ---- file formats -----------------------------------------------------------------


@given(small_graphs(8))
def test_dimacs_round_trip(G):
    assert parse_dimacs(format_dimacs(G)) == G


@given(small_graphs(8))
def test_json_round_trip(G):
    assert parse_json_graph(format_json_graph(G)) == G


def test_dimacs_accepts_both_orientations():
    text = "c comment\np edge 3 4\ne 1 2\ne 2 1\ne 2 3\ne 3 2\n"
    assert parse_dimacs(text) == gr.path(3)


@pytest.mark.parametrize(
    "text",
    ["", "e 1 2\n", "p edge 3 1\ne 1 4\n", "p edge 2 1\nx 1 2\n", "p edge 2 5\ne 1 2\n", "p edge 2 1\ne 1\n"],
)
def test_dimacs_errors(text):
    with pytest.raises(GraphFormatError):
        parse_dimacs(text)


@pytest.mark.parametrize("text", ["not json", "[1, 2]", '{"edges": []}', '{"n": 2, "edges": [[0, 0]]}'])
def test_json_errors(text):
    with pytest.raises(GraphFormatError):
        parse_json_graph(text)


def test_file_round_trip(tmp_path):
    G = gr.petersen()
    for name in ("p.col", "p.json"):
        write_graph(G, tmp_path / name)
        assert read_graph(tmp_path / name) == G


def test_missing_file(tmp_path):
    with pytest.raises(GraphFormatError):
        read_graph(tmp_path / "absent.json")


def test_bundled_fixtures(graph_dir):
    assert read_graph(graph_dir / "k4.col") == gr.complete(4)
    assert read_graph(graph_dir / "petersen.json").m == 15
    assert read_graph(graph_dir / "k3-pendant.json") == gr.k3_pendant()
