"""
Finite multigraphs as topological graphs.

Loops and parallel edges are allowed.  A semi-edge (a half-open arc)
has a single recorded endpoint; it is contractible, so it is kept for
bookkeeping but ignored by every spanning tree, path and fundamental
group computation.

All algorithms iterate vertices and edges in input order, which makes
spanning trees and the generators of graph fundamental groups
reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple

from .errors import ConfigurationError, DisconnectedGraphError, MalformedInputError
from .words import GeneratorSym, Presentation, Word

__all__ = [
    "Edge", "MultiGraph", "SpanningTree", "PathStep", "EdgeIndexedGraph",
    "spanning_tree", "cycle_rank", "tree_path", "graph_pi1", "spell_path",
    "loop_word", "bouquet", "star", "edge_induced_graph", "is_connected",
    "graph_to_json", "graph_from_json",
]


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str | None
    semi: bool = False

    def __post_init__(self):
        if self.semi and self.v is not None:
            raise MalformedInputError(f"semi-edge {self.id} must have a single endpoint")
        if not self.semi and self.v is None:
            raise MalformedInputError(f"edge {self.id} needs two endpoints")

    @property
    def is_loop(self) -> bool:
        return not self.semi and self.u == self.v

    def other(self, x: str) -> str:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class MultiGraph:
    """Vertices, edges and an optional basepoint.

    Edges may be given as :class:`Edge` or as tuples ``(id, u, v)`` /
    ``(id, u, v, semi)``; for a semi-edge pass ``v=None``.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    basepoint: str | None = None

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        if len(set(vertices)) != len(vertices):
            raise MalformedInputError("duplicate vertex id")
        ids = [e.id for e in edges]
        if len(set(ids)) != len(ids):
            raise MalformedInputError("duplicate edge id")
        vs = set(vertices)
        for e in edges:
            for x in (e.u, e.v):
                if x is not None and x not in vs:
                    raise MalformedInputError(f"edge {e.id} uses unknown vertex {x}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        if self.basepoint is not None:
            if self.basepoint not in vs:
                raise MalformedInputError(f"basepoint {self.basepoint} is not a vertex")
            _check_connected(self)

    @property
    def proper_edges(self) -> tuple[Edge, ...]:
        """Edges that are not semi-edges."""
        return tuple(e for e in self.edges if not e.semi)

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def incidence(self) -> dict[str, list[Edge]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.proper_edges:
            inc[e.u].append(e)
            if e.v != e.u:
                inc[e.v].append(e)
        return inc

    def subgraph(self, edge_ids: Iterable[str], extra_vertices: Iterable[str] = ()) -> MultiGraph:
        """Subgraph spanned by ``edge_ids`` plus ``extra_vertices``, in input order."""
        wanted = set(edge_ids)
        edges = [e for e in self.edges if e.id in wanted]
        verts = set(extra_vertices)
        for e in edges:
            verts.add(e.u)
            if e.v is not None:
                verts.add(e.v)
        return MultiGraph(tuple(v for v in self.vertices if v in verts), tuple(edges))


class SpanningTree(NamedTuple):
    """``parent[v] = (parent vertex, tree edge id)`` for every non-root vertex."""

    root: str
    parent: Mapping[str, tuple[str, str]]
    edges: Mapping[str, Edge]

    @property
    def tree_edges(self) -> list[str]:
        return [eid for _, eid in self.parent.values()]

    @property
    def vertices(self) -> list[str]:
        return [self.root, *self.parent]


class PathStep(NamedTuple):
    edge: str
    forward: bool  # True when traversed from the edge's u to its v


def _bfs(g: MultiGraph, root: str, inc=None):
    inc = inc if inc is not None else g.incidence()
    parent: dict[str, tuple[str, str]] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in inc[x]:
            y = e.other(x)
            if y not in seen:
                seen.add(y)
                parent[y] = (x, e.id)
                queue.append(y)
    return parent, seen


def _check_connected(g: MultiGraph, root: str | None = None):
    if not g.vertices:
        raise ConfigurationError("graph has no vertices")
    root = root if root is not None else g.vertices[0]
    _, seen = _bfs(g, root)
    for v in g.vertices:
        if v not in seen:
            raise DisconnectedGraphError(f"vertex {v} is not reachable from {root}", vertex=v)


def is_connected(g: MultiGraph) -> bool:
    if not g.vertices:
        return False
    _, seen = _bfs(g, g.vertices[0])
    return len(seen) == len(g.vertices)


def spanning_tree(g: MultiGraph, root: str | None = None) -> SpanningTree:
    """Breadth-first spanning tree, exploring vertices and edges in input order.

    Raises
    ------
    DisconnectedGraphError
        If some vertex cannot be reached from ``root``; the error names
        the first such vertex.
    """
    if root is None:
        root = g.basepoint if g.basepoint is not None else (g.vertices[0] if g.vertices else None)
    if root not in g.vertices:
        raise MalformedInputError(f"root {root} is not a vertex")
    parent, seen = _bfs(g, root)
    for v in g.vertices:
        if v not in seen:
            raise DisconnectedGraphError(f"vertex {v} is not reachable from {root}", vertex=v)
    by_id = {e.id: e for e in g.edges}
    return SpanningTree(root, parent, {eid: by_id[eid] for _, eid in parent.values()})


def cycle_rank(g: MultiGraph) -> int:
    """``|E| - |V| + 1`` over proper edges of a connected graph."""
    _check_connected(g)
    return len(g.proper_edges) - len(g.vertices) + 1


def _ancestry(t: SpanningTree, x: str) -> list[str]:
    chain = [x]
    while x != t.root:
        x = t.parent[x][0]
        chain.append(x)
    return chain


def tree_path(t: SpanningTree, start: str, end: str) -> list[PathStep]:
    """The unique simple path from ``start`` to ``end`` inside the tree."""
    for x in (start, end):
        if x != t.root and x not in t.parent:
            raise MalformedInputError(f"{x} is not a vertex of the tree")
    up = _ancestry(t, start)
    down = _ancestry(t, end)
    common = set(up) & set(down)
    meet = next(x for x in up if x in common)
    steps = []
    for x in up[:up.index(meet)]:
        p, eid = t.parent[x]
        steps.append(PathStep(eid, t.edges[eid].u == x))
    tail = []
    for x in down[:down.index(meet)]:
        p, eid = t.parent[x]
        tail.append(PathStep(eid, t.edges[eid].u == p))
    steps.extend(reversed(tail))
    return steps


def spell_path(steps: Iterable[PathStep], gens: Mapping[str, GeneratorSym]) -> Word:
    """Word read along a path; edges without a generator (tree edges) read as 1."""
    letters = []
    for step in steps:
        sym = gens.get(step.edge)
        if sym is not None:
            letters.append((sym, 1 if step.forward else -1))
    return Word(letters)


def loop_word(t: SpanningTree, edge: Edge, gens: Mapping[str, GeneratorSym]) -> Word:
    """Spell ``A e B``: tree path root->u, the edge u->v, tree path v->root."""
    steps = tree_path(t, t.root, edge.u)
    steps.append(PathStep(edge.id, True))
    steps.extend(tree_path(t, edge.v, t.root))
    return spell_path(steps, gens)


def _edge_gen_name(edge_id: str) -> GeneratorSym:
    return GeneratorSym.parse(edge_id)


def _pi1_from_tree(g: MultiGraph, t: SpanningTree,
                   naming: Callable[[str], GeneratorSym] = _edge_gen_name):
    tree = set(t.tree_edges)
    gens = {e.id: naming(e.id) for e in g.proper_edges if e.id not in tree}
    return Presentation(tuple(gens.values())), gens


def graph_pi1(g: MultiGraph, basepoint: str | None = None,
              naming: Callable[[str], GeneratorSym] | None = None):
    """Free fundamental group of a connected graph.

    One generator per proper edge outside the breadth-first spanning
    tree, named after the edge.  The generator for edge ``e = (u, v)``
    is the loop that runs along the tree to ``u``, crosses ``e`` from
    ``u`` to ``v`` and returns along the tree.

    Returns
    -------
    pres : Presentation
        A free group of rank ``cycle_rank(g)``.
    gens : dict
        Edge id -> generator symbol.
    """
    t = spanning_tree(g, basepoint)
    return _pi1_from_tree(g, t, naming or _edge_gen_name)


def bouquet(m: int) -> MultiGraph:
    """``m`` parallel edges ``L0 .. L{m-1}`` between ``x0`` and ``x1``; rank ``m - 1``."""
    if m < 1:
        raise ValueError("bouquet needs at least one edge")
    return MultiGraph(("x0", "x1"), tuple(Edge(f"L{i}", "x0", "x1") for i in range(m)), "x0")


def star(m: int) -> MultiGraph:
    """Centre ``x0`` joined to leaves ``x1 .. xm``; a tree."""
    if m < 1:
        raise ValueError("star needs at least one edge")
    leaves = tuple(f"x{i}" for i in range(1, m + 1))
    return MultiGraph(("x0", *leaves), tuple(Edge(f"s{i}", "x0", f"x{i}") for i in range(1, m + 1)), "x0")


@dataclass(frozen=True)
class EdgeIndexedGraph:
    """A simple graph with a nonnegative index ``mu`` on every edge."""

    graph: MultiGraph
    mu: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        mu = {e.id: int(self.mu.get(e.id, 0)) for e in self.graph.proper_edges}
        if any(k < 0 for k in mu.values()):
            raise MalformedInputError("edge index must be nonnegative")
        object.__setattr__(self, "mu", mu)

    __hash__ = None


def edge_induced_graph(g: EdgeIndexedGraph) -> MultiGraph:
    """Replace every edge ``(M, M')`` of index ``mu`` by ``mu`` extra triangles on it.

    The edge itself is kept, and for each ``i = 1..mu`` a new vertex
    ``<edge>.x<i>`` is joined to both ends.  Hence ``|V|`` grows by the
    sum of indices, ``|E|`` becomes the sum of ``2 mu + 1`` and the cycle
    rank grows by the sum of indices.
    """
    base = g.graph
    seen_pairs = set()
    for e in base.edges:
        if e.semi or e.is_loop:
            raise ConfigurationError(f"edge {e.id} is not an edge of a simple graph")
        pair = frozenset((e.u, e.v))
        if pair in seen_pairs:
            raise ConfigurationError(f"edge {e.id} is parallel to an earlier edge")
        seen_pairs.add(pair)
    _check_connected(base)
    vertices = list(base.vertices)
    edges = []
    for e in base.edges:
        edges.append(Edge(e.id, e.u, e.v))
        for i in range(1, g.mu[e.id] + 1):
            mid = f"{e.id}.x{i}"
            vertices.append(mid)
            edges.append(Edge(f"{e.id}.a{i}", e.u, mid))
            edges.append(Edge(f"{e.id}.b{i}", e.v, mid))
    return MultiGraph(tuple(vertices), tuple(edges), base.basepoint)


def graph_to_json(g: MultiGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "semi": e.semi} for e in g.edges],
        "basepoint": g.basepoint,
    }


def graph_from_json(data: Mapping) -> MultiGraph:
    edges = tuple(Edge(d["id"], d["u"], d.get("v"), bool(d.get("semi", False)))
                  for d in data.get("edges", ()))
    return MultiGraph(tuple(data["vertices"]), edges, data.get("basepoint"))
