import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import instances

from src.lib.catalog import build_group, parse_element, parse_subgroup
from src.lib.group_core import IDENTITY, commutator, whole_group
from src.lib.ncgraph import (
    ShapeKind,
    build_graph,
    classify_shape,
    degree,
    dominating_set,
    domination_number,
    dot_text,
    edge_count,
    export_dot,
    graph_payload,
    graphs_isomorphic,
    is_connected,
    is_isomorphism,
    is_triangle_free,
    to_networkx,
)
from src.lib.utils import TooLarge


def adjacency(n, edges):
    adj = np.zeros((n, n), dtype=bool)
    for x, y in edges:
        adj[x, y] = adj[y, x] = True
    return adj


def test_s3_transposition_star(S3, transposition):
    graph = build_graph(S3, transposition, S3.lookup("(123)"))
    assert edge_count(graph) == 5
    assert degree(graph, S3.lookup("(12)")) == 1
    assert degree(graph, IDENTITY) == 5
    shape = classify_shape(graph)
    assert shape.kind == ShapeKind.STAR
    assert shape.params == {"center": IDENTITY}
    assert shape.is_tree
    assert is_triangle_free(graph)
    assert domination_number(graph) == 1


def test_d8_rotations_r2(D8, rotations):
    graph = build_graph(D8, rotations, D8.lookup("r^2"))
    assert edge_count(graph) == 14
    assert degree(graph, D8.lookup("r")) == 3
    assert not graph.adjacent(D8.lookup("r"), D8.lookup("s"))
    assert graph.adjacent(D8.lookup("r^2"), D8.lookup("s"))


def test_g_outside_commutators_gives_join(S3, A3):
    graph = build_graph(S3, A3, S3.lookup("(12)"))
    assert edge_count(graph) == 12
    shape = classify_shape(graph)
    assert shape.kind == ShapeKind.JOIN
    assert shape.params == {"clique": 3}


def test_g1_graph_on_whole_group(S3):
    graph = build_graph(S3, whole_group(S3), IDENTITY)
    assert edge_count(graph) == 9
    assert not is_connected(graph)
    assert degree(graph, IDENTITY) == 0


def test_abelian_group_g1_is_empty():
    G = build_group("C4")
    graph = build_graph(G, whole_group(G), IDENTITY)
    assert classify_shape(graph).kind == ShapeKind.EMPTY
    assert domination_number(graph) == 4


def test_adjacency_is_read_only(S3, A3):
    graph = build_graph(S3, A3, IDENTITY)
    with pytest.raises(ValueError):
        graph.adjacency[0, 1] = True


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_adjacency_matches_definition(data):
    G, H, g = data.draw(instances())
    graph = build_graph(G, H, g)
    forbidden = {g, G.inv(g)}
    for x in G.elements:
        assert not graph.adjacent(x, x)
        for y in G.elements:
            if x == y:
                continue
            expected = (x in H or y in H) and commutator(G, x, y) not in forbidden
            assert graph.adjacent(x, y) == expected
    assert edge_count(graph) == to_networkx(graph).number_of_edges()
    # g and g^-1 give the same graph
    assert np.array_equal(graph.adjacency, build_graph(G, H, G.inv(g)).adjacency)


@pytest.mark.parametrize(
    "n, edges, kind, params",
    [
        (4, [], ShapeKind.EMPTY, {}),
        (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], ShapeKind.COMPLETE, {}),
        (4, [(2, 0), (2, 1), (2, 3)], ShapeKind.STAR, {"center": 2}),
        (4, [(0, 1), (1, 2), (2, 3)], ShapeKind.TREE, {}),
        (4, [(0, 1), (0, 2), (1, 2), (2, 3)], ShapeKind.LOLLIPOP,
         {"clique": 3, "path": 1, "attachment": 2}),
        (6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)],
         ShapeKind.LOLLIPOP, {"clique": 4, "path": 2, "attachment": 3}),
        (5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], ShapeKind.JOIN,
         {"clique": 2}),
        (4, [(0, 1), (1, 2), (2, 3), (3, 0)], ShapeKind.OTHER, {}),
    ],
)
def test_classify_shape(n, edges, kind, params):
    shape = classify_shape(adjacency(n, edges))
    assert shape.kind == kind
    assert shape.params == params


def test_shape_str():
    shape = classify_shape(adjacency(4, [(0, 1), (0, 2), (1, 2), (2, 3)]))
    assert str(shape) == "Lollipop(attachment=2, clique=3, path=1)"


@pytest.mark.parametrize(
    "n, edges, gamma",
    [
        (5, [(0, 1), (1, 2), (2, 3), (3, 4)], 2),
        (6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], 2),
        (3, [], 3),
        (4, [(0, 1), (0, 2), (0, 3)], 1),
    ],
)
def test_domination_number(n, edges, gamma):
    adj = adjacency(n, edges)
    chosen = dominating_set(adj)
    assert len(chosen) == gamma
    covered = set(chosen)
    for v in chosen:
        covered.update(int(w) for w in np.flatnonzero(adj[v]))
    assert covered == set(range(n))


def test_domination_size_guard():
    with pytest.raises(TooLarge):
        dominating_set(np.zeros((25, 25), dtype=bool))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_isomorphism_search_agrees_with_networkx(data):
    n = data.draw(st.integers(min_value=1, max_value=7))
    pairs = [(x, y) for x in range(n) for y in range(x + 1, n)]
    edges_a = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    perm = data.draw(st.permutations(list(range(n))))
    a = adjacency(n, edges_a)
    relabeled = adjacency(n, [(perm[x], perm[y]) for x, y in edges_a])

    mapping = graphs_isomorphic(a, relabeled)
    assert mapping is not None
    assert is_isomorphism(a, relabeled, mapping)

    edges_b = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    b = adjacency(n, edges_b)
    found = graphs_isomorphic(a, b)
    assert (found is not None) == nx.is_isomorphic(to_networkx(a), to_networkx(b))
    if found is not None:
        assert is_isomorphism(a, b, found)


def test_d8_and_q8_graphs_are_isomorphic(D8, Q8, rotations):
    dihedral = build_graph(D8, whole_group(D8), D8.lookup("r^2"))
    quaternion = build_graph(Q8, whole_group(Q8), Q8.lookup("-1"))
    assert edge_count(dihedral) == edge_count(quaternion) == 16
    mapping = graphs_isomorphic(dihedral, quaternion)
    assert mapping is not None
    assert is_isomorphism(dihedral, quaternion, mapping)
    assert graphs_isomorphic(build_graph(D8, rotations, D8.lookup("r^2")), quaternion) is None


def test_is_isomorphism_rejects_bad_maps():
    a = adjacency(3, [(0, 1)])
    assert not is_isomorphism(a, a, {0: 0, 1: 2, 2: 1})
    assert not is_isomorphism(a, a, {0: 0, 1: 1})


def test_dot_text_is_deterministic(S3, transposition):
    graph = build_graph(S3, transposition, S3.lookup("(123)"))
    assert dot_text(graph) == (
        'graph "S3" {\n'
        '  0 [label="e", shape=box];\n'
        '  1 [label="(23)", shape=ellipse];\n'
        '  2 [label="(12)", shape=box];\n'
        '  3 [label="(123)", shape=ellipse];\n'
        '  4 [label="(132)", shape=ellipse];\n'
        '  5 [label="(13)", shape=ellipse];\n'
        "  0 -- 1;\n"
        "  0 -- 2;\n"
        "  0 -- 3;\n"
        "  0 -- 4;\n"
        "  0 -- 5;\n"
        "}\n"
    )


def test_export_dot_and_payload(tmp_path, D8):
    H = parse_subgroup(D8, "r")
    graph = build_graph(D8, H, parse_element(D8, "r^2"))
    path = tmp_path / "out" / "d8.dot"
    export_dot(graph, path)
    assert path.read_text(encoding="utf-8") == dot_text(graph)

    payload = graph_payload(graph)
    assert payload["edge_count"] == 14
    assert payload["h_members"] == [0, 1, 2, 3]
    assert payload["g"] == "r^2"
    assert len(payload["edges"]) == 14
