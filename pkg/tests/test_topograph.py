import pytest
from hypothesis import given
from hypothesis import strategies as st

from vankampen.errors import ConfigurationError, DisconnectedGraphError, MalformedInputError
from vankampen.topograph import (
    Edge, EdgeIndexedGraph, MultiGraph, PathStep, bouquet, cycle_rank, edge_induced_graph,
    graph_from_json, graph_pi1, graph_to_json, is_connected, loop_word, spanning_tree, star,
    tree_path,
)
from vankampen.words import GeneratorSym, parse_word


def triangle():
    return MultiGraph(("v0", "v1", "v2"),
                      (Edge("e01", "v0", "v1"), Edge("e12", "v1", "v2"), Edge("e02", "v0", "v2")))


def path3():
    return MultiGraph(("v0", "v1", "v2"), (Edge("e01", "v0", "v1"), Edge("e12", "v1", "v2")))


@st.composite
def connected_graphs(draw, max_vertices=6, max_extra=6, semi=True):
    n = draw(st.integers(1, max_vertices))
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        u, v = (vs[i], vs[j]) if draw(st.booleans()) else (vs[j], vs[i])
        edges.append(Edge(f"t{i}", u, v))
    for k in range(draw(st.integers(0, max_extra))):
        u, v = draw(st.sampled_from(vs)), draw(st.sampled_from(vs))
        edges.append(Edge(f"x{k}", u, v))
    if semi:
        for k in range(draw(st.integers(0, 2))):
            edges.append(Edge(f"s{k}", draw(st.sampled_from(vs)), None, True))
    order = draw(st.permutations(edges))
    return MultiGraph(tuple(vs), tuple(order))


def test_graph_validation():
    with pytest.raises(MalformedInputError):
        MultiGraph(("a", "a"))
    with pytest.raises(MalformedInputError):
        MultiGraph(("a",), (Edge("e", "a", "b"),))
    with pytest.raises(MalformedInputError):
        MultiGraph(("a",), (Edge("e", "a", "a"), Edge("e", "a", "a")))
    with pytest.raises(MalformedInputError):
        Edge("s", "a", "b", semi=True)
    with pytest.raises(DisconnectedGraphError) as info:
        MultiGraph(("a", "b", "c"), (Edge("e", "a", "b"),), basepoint="a")
    assert info.value.vertex == "c"
    assert not is_connected(MultiGraph(("a", "b")))
    assert MultiGraph(("a", "b"), (("e", "a", "b"),)).edges == (Edge("e", "a", "b"),)


def test_spanning_tree_examples():
    assert set(spanning_tree(triangle(), "v0").tree_edges) == {"e01", "e02"}
    assert spanning_tree(MultiGraph(("v",)), "v").tree_edges == []
    assert set(spanning_tree(path3(), "v0").tree_edges) == {"e01", "e12"}
    with pytest.raises(DisconnectedGraphError):
        spanning_tree(MultiGraph(("a", "b")), "a")


def test_cycle_rank_examples():
    eight = MultiGraph(("v",), (Edge("l1", "v", "v"), Edge("l2", "v", "v")))
    assert cycle_rank(eight) == 2
    assert cycle_rank(path3()) == 0
    assert cycle_rank(star(4)) == 0
    for m in range(1, 6):
        assert cycle_rank(bouquet(m)) == m - 1
    assert [cycle_rank(bouquet(m)) for m in (1, 2, 4)] == [0, 1, 3]
    assert len(bouquet(1).edges) == 1


def test_tree_path_examples():
    t = spanning_tree(path3(), "v0")
    assert tree_path(t, "v0", "v2") == [PathStep("e01", True), PathStep("e12", True)]
    assert tree_path(t, "v1", "v1") == []
    s = MultiGraph(("c", "a", "b"), (Edge("e_ca", "c", "a"), Edge("e_cb", "c", "b")))
    ts = spanning_tree(s, "c")
    assert tree_path(ts, "a", "b") == [PathStep("e_ca", False), PathStep("e_cb", True)]


def test_graph_pi1_examples():
    pres, gens = graph_pi1(star(3))
    assert pres.gens == () and gens == {}
    loop = MultiGraph(("x",), (Edge("alpha1", "x", "x"),))
    pres, gens = graph_pi1(loop, "x")
    assert [str(s) for s in pres.gens] == ["alpha1"]
    pres, gens = graph_pi1(bouquet(3), "x0")
    assert [str(s) for s in pres.gens] == ["L1", "L2"]
    assert gens == {"L1": GeneratorSym("L1"), "L2": GeneratorSym("L2")}


def test_loop_word_convention():
    # the loop crosses its edge from the first endpoint to the second
    g = MultiGraph(("p", "q"), (Edge("e1", "p", "q"), Edge("e2", "q", "p")))
    t = spanning_tree(g, "p")
    _, gens = graph_pi1(g, "p")
    assert str(loop_word(t, g.edge("e2"), gens)) == "e2"
    assert str(loop_word(t, g.edge("e2"), {"e1": GeneratorSym("x"), "e2": GeneratorSym("e2")})) == "x e2"


def test_edge_induced_examples():
    one = MultiGraph(("A", "B"), (Edge("e", "A", "B"),))
    out = edge_induced_graph(EdgeIndexedGraph(one, {"e": 0}))
    assert (len(out.vertices), len(out.edges), cycle_rank(out)) == (2, 1, 0)
    out = edge_induced_graph(EdgeIndexedGraph(one, {"e": 1}))
    assert (len(out.vertices), len(out.edges), cycle_rank(out)) == (3, 3, 1)
    out = edge_induced_graph(EdgeIndexedGraph(one, {"e": 2}))
    assert (len(out.vertices), len(out.edges), cycle_rank(out)) == (4, 5, 2)
    assert "e.x1" in out.vertices and out.edge("e.a2") == Edge("e.a2", "A", "e.x2")


def test_edge_induced_requires_simple_connected():
    parallel = MultiGraph(("A", "B"), (Edge("e", "A", "B"), Edge("f", "B", "A")))
    with pytest.raises(ConfigurationError):
        edge_induced_graph(EdgeIndexedGraph(parallel))
    loop = MultiGraph(("A",), (Edge("e", "A", "A"),))
    with pytest.raises(ConfigurationError):
        edge_induced_graph(EdgeIndexedGraph(loop))
    with pytest.raises(DisconnectedGraphError):
        edge_induced_graph(EdgeIndexedGraph(MultiGraph(("A", "B"))))
    with pytest.raises(MalformedInputError):
        EdgeIndexedGraph(path3(), {"e01": -1})


def test_json_round_trip():
    g = MultiGraph(("a", "b"), (Edge("e", "a", "b"), Edge("s", "a", None, True)), "a")
    data = graph_to_json(g)
    assert data["vertices"] == ["a", "b"]
    assert graph_from_json(data) == g


@given(connected_graphs())
def test_spanning_tree_properties(g):
    t = spanning_tree(g)
    assert len(t.tree_edges) == len(g.vertices) - 1
    assert spanning_tree(g) == t
    pres, gens = graph_pi1(g)
    assert len(pres.gens) == cycle_rank(g) == len(gens)


@given(connected_graphs(), st.data())
def test_tree_path_reversal(g, data):
    t = spanning_tree(g)
    x = data.draw(st.sampled_from(g.vertices))
    y = data.draw(st.sampled_from(g.vertices))
    forward = tree_path(t, x, y)
    backward = tree_path(t, y, x)
    assert backward == [PathStep(s.edge, not s.forward) for s in reversed(forward)]


@given(connected_graphs(semi=False), st.integers(0, 3))
def test_semi_edges_do_not_matter(g, k):
    extra = tuple(Edge(f"semi{i}", g.vertices[i % len(g.vertices)], None, True) for i in range(k))
    h = MultiGraph(g.vertices, g.edges + extra)
    assert cycle_rank(h) == cycle_rank(g)
    assert graph_pi1(h) == graph_pi1(g)


@st.composite
def edge_indexed_graphs(draw):
    n = draw(st.integers(1, 6))
    vs = [f"M{i}" for i in range(n)]
    pairs = [(vs[i], vs[draw(st.integers(0, i - 1))]) for i in range(1, n)]
    others = [(vs[i], vs[j]) for i in range(n) for j in range(i)]
    pairs += [p for p in others if p not in pairs and draw(st.booleans())]
    edges = tuple(Edge(f"E{k}", u, v) for k, (u, v) in enumerate(pairs))
    mu = {e.id: draw(st.integers(0, 3)) for e in edges}
    return EdgeIndexedGraph(MultiGraph(tuple(vs), edges), mu)


@given(edge_indexed_graphs())
def test_edge_induced_counts(eg):
    out = edge_induced_graph(eg)
    total = sum(eg.mu.values())
    assert len(out.vertices) == len(eg.graph.vertices) + total
    assert len(out.edges) == sum(2 * m + 1 for m in eg.mu.values())
    assert cycle_rank(out) == total + cycle_rank(eg.graph)


def test_bouquet_loop_word():
    # the loop through L_i and back through L_0
    g = bouquet(3)
    t = spanning_tree(g)
    _, gens = graph_pi1(g)
    assert loop_word(t, g.edge("L2"), gens) == parse_word("L2")
