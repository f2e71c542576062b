"""
Seifert-Van Kampen computations at the level of presentations.

For ``X = U u V`` with the intersection split into arcwise-connected
components ``C_1 .. C_m``, each component comes with its own group and
the two maps induced by inclusion, already transported to the common
basepoint.  The result is

    pi1(U) * pi1(V) * F(t_2 .. t_m)  /  << i_U(g) t_i i_V(g)^-1 t_i^-1 >>

where ``g`` runs over the generators of each component group and
``t_1 = 1``.  The stable letters ``t_i`` generate the fundamental group
of the graph of arcs joining the basepoint to each component.  With a
single component this is the classical theorem.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ConfigurationError, DisconnectedGraphError, MalformedInputError
from .topograph import (
    MultiGraph, SpanningTree, _bfs, _pi1_from_tree, graph_pi1, loop_word, spanning_tree,
)
from .verify import check_map_abelianized
from .words import (
    EPSILON, GeneratorSym, GroupMap, Presentation, Word, concat, cyclic_reduce,
    disjointize, free_product, fresh_symbol, invert,
)

__all__ = [
    "IntersectionComponent", "RelatorSource", "SvkResult", "TREE",
    "classical_svk", "generalized_svk", "attach_graph", "attach_spaces",
]

TREE = "tree"


@dataclass(frozen=True)
class IntersectionComponent:
    """One arcwise-connected component of ``U n V``.

    ``into_u`` and ``into_v`` are the inclusion-induced maps, with images
    written as words in the generators of the ``U`` and ``V`` sides.
    """

    id: str
    pres: Presentation
    into_u: GroupMap
    into_v: GroupMap

    def __post_init__(self):
        if self.into_u.source != self.pres or self.into_v.source != self.pres:
            raise ConfigurationError(
                f"component {self.id}: inclusion maps must have the component group as source")

    __hash__ = None


@dataclass(frozen=True)
class RelatorSource:
    """Where an output relator came from.

    ``kind`` is ``"piece"`` (``origin`` names the side or piece and
    ``detail`` is the relator's index there) or ``"component"``
    (``origin`` is the component id and ``detail`` the generator whose
    two images were identified).
    """

    word: Word
    kind: str
    origin: str
    detail: str | int

    def as_dict(self) -> dict:
        return {"relator": str(self.word), "kind": self.kind,
                "origin": self.origin, "detail": self.detail}


@dataclass(frozen=True)
class SvkResult:
    """Output presentation plus bookkeeping.

    ``stable_letters`` lists, per component, its stable letter or
    ``"tree"`` for the one component whose letter is trivial.
    ``provenance[i]`` explains ``pres.relators[i]``; relators that
    reduced to ``1`` are dropped from the presentation and recorded in
    ``trivial`` instead.
    """

    pres: Presentation
    stable_letters: tuple[tuple[str, GeneratorSym | str], ...]
    provenance: tuple[RelatorSource, ...]
    trivial: tuple[RelatorSource, ...] = ()

    @property
    def stable_letter_count(self) -> int:
        return sum(1 for _, s in self.stable_letters if s != TREE)


def _check_targets(c: IntersectionComponent, pu: Presentation, pv: Presentation):
    if c.into_u.target != pu:
        raise ConfigurationError(f"component {c.id}: into_u does not target the U side")
    if c.into_v.target != pv:
        raise ConfigurationError(f"component {c.id}: into_v does not target the V side")


def _sides(pu, pv, labels):
    (qu, qv), (tu, tv) = disjointize([pu, pv], list(labels))
    return qu, qv, tu, tv


def _piece_sources(p: Presentation, label: str):
    return [RelatorSource(r, "piece", label, i) for i, r in enumerate(p.relators)]


def _split(sources):
    kept = tuple(s for s in sources if s.word)
    dropped = tuple(s for s in sources if not s.word)
    return kept, dropped


def _maybe_check(components, check):
    if not check:
        return
    for c in components:
        for side, f in (("U", c.into_u), ("V", c.into_v)):
            report = check_map_abelianized(f)
            if not report.passed:
                warnings.warn(f"component {c.id}: map into {side} fails the abelianized "
                              f"consistency check ({report.summary()})", stacklevel=3)


def classical_svk(pu: Presentation, pv: Presentation, w: IntersectionComponent, *,
                  labels: Sequence[str] = ("U", "V"), check: bool = False) -> SvkResult:
    """``pi1(U) * pi1(V) / << i_U(g) i_V(g)^-1 >>`` for a connected intersection.

    Parameters
    ----------
    pu, pv : Presentation
        Groups of the two open sets.  Colliding generator names are
        namespaced with ``labels``.
    w : IntersectionComponent
        The intersection, with maps into ``pu`` and ``pv``.
    check : bool
        Run the abelianized consistency check on both maps and warn on
        failure.
    """
    _check_targets(w, pu, pv)
    _maybe_check([w], check)
    qu, qv, tu, tv = _sides(pu, pv, labels)
    fu, fv = w.into_u.retarget(qu, tu), w.into_v.retarget(qv, tv)

    sources = _piece_sources(qu, labels[0]) + _piece_sources(qv, labels[1])
    for g in w.pres.gens:
        r = cyclic_reduce(concat(fu.images[g], invert(fv.images[g])))
        sources.append(RelatorSource(r, "component", w.id, str(g)))
    kept, dropped = _split(sources)
    pres = Presentation(qu.gens + qv.gens, tuple(s.word for s in kept))
    return SvkResult(pres, ((w.id, TREE),), kept, dropped)


def generalized_svk(pu: Presentation, pv: Presentation, comps: Sequence[IntersectionComponent], *,
                    stable_letters: Sequence[GeneratorSym] | None = None,
                    labels: Sequence[str] = ("U", "V"), check: bool = False) -> SvkResult:
    """Van Kampen for an intersection with ``m >= 1`` arcwise-connected components.

    The first component gets the trivial stable letter; component ``i``
    (1-based, ``i >= 2``) gets a fresh generator, ``t<i>`` by default,
    and contributes relators ``i_U(g) t_i i_V(g)^-1 t_i^-1``.

    Parameters
    ----------
    pu, pv : Presentation
    comps : sequence of IntersectionComponent
        Nonempty, in the order that fixes which component is the tree one.
    stable_letters : sequence of GeneratorSym, optional
        Explicit names for the ``m - 1`` stable letters.  They must not
        clash with generators of ``pu`` or ``pv``.
    labels : pair of str
        Namespaces used if ``pu`` and ``pv`` share generator names; also
        the ``origin`` of piece relators in the provenance.
    check : bool
        Warn when an inclusion map fails the abelianized consistency check.

    Raises
    ------
    ConfigurationError
        On an empty component list, maps that do not target ``pu``/``pv``
        or clashing stable letter names.
    """
    comps = list(comps)
    if not comps:
        raise ConfigurationError("generalized_svk needs at least one intersection component")
    for c in comps:
        _check_targets(c, pu, pv)
    _maybe_check(comps, check)
    qu, qv, tu, tv = _sides(pu, pv, labels)
    taken = set(qu.gens) | set(qv.gens)

    if stable_letters is None:
        letters = []
        for i in range(2, len(comps) + 1):
            s = fresh_symbol(f"t{i}", taken)
            taken.add(s)
            letters.append(s)
    else:
        letters = list(stable_letters)
        if len(letters) != len(comps) - 1:
            raise ConfigurationError(f"need {len(comps) - 1} stable letters, got {len(letters)}")
        if taken.intersection(letters) or len(set(letters)) != len(letters):
            raise ConfigurationError("stable letters clash with existing generators")

    sources = _piece_sources(qu, labels[0]) + _piece_sources(qv, labels[1])
    marks: list[tuple[str, GeneratorSym | str]] = []
    for i, c in enumerate(comps):
        fu, fv = c.into_u.retarget(qu, tu), c.into_v.retarget(qv, tv)
        t = EPSILON if i == 0 else Word.gen(letters[i - 1])
        marks.append((c.id, TREE if i == 0 else letters[i - 1]))
        for g in c.pres.gens:
            r = concat(concat(fu.images[g], t), concat(invert(fv.images[g]), invert(t)))
            sources.append(RelatorSource(cyclic_reduce(r), "component", c.id, str(g)))

    kept, dropped = _split(sources)
    pres = Presentation(qu.gens + qv.gens + tuple(letters), tuple(s.word for s in kept))
    return SvkResult(pres, tuple(marks), kept, dropped)


def _extend_tree(g: MultiGraph, h_tree: SpanningTree) -> SpanningTree:
    """Grow a spanning tree of a subgraph into one of the whole graph."""
    inc = g.incidence()
    parent = dict(h_tree.parent)
    seen = set(h_tree.vertices)
    queue = deque(h_tree.vertices)
    while queue:
        x = queue.popleft()
        for e in inc[x]:
            y = e.other(x)
            if y not in seen:
                seen.add(y)
                parent[y] = (x, e.id)
                queue.append(y)
    missing = [v for v in g.vertices if v not in seen]
    if missing:
        raise DisconnectedGraphError(f"vertex {missing[0]} is not reachable", vertex=missing[0])
    by_id = {e.id: e for e in g.edges}
    return SpanningTree(h_tree.root, parent, {eid: by_id[eid] for _, eid in parent.values()})


def _attach_graph(px, g, h_edges, loops_into_x, h_vertices=(), basepoint=None):
    h_edges = list(h_edges)
    known = {e.id for e in g.edges}
    stray = [e for e in h_edges if e not in known]
    if stray:
        raise ConfigurationError(f"edge {stray[0]} of H is not an edge of G")
    if any(g.edge(e).semi for e in h_edges):
        # semi-edges are contractible, they never matter for H
        h_edges = [e for e in h_edges if not g.edge(e).semi]
    for v in h_vertices:
        if v not in g.vertices:
            raise ConfigurationError(f"vertex {v} of H is not a vertex of G")
    h = g.subgraph(h_edges, h_vertices)
    if basepoint is None:
        basepoint = g.basepoint if g.basepoint in h.vertices else None
    if basepoint is None:
        if not h.vertices:
            basepoint = g.basepoint if g.basepoint is not None else g.vertices[0]
            h = g.subgraph((), [basepoint])
        else:
            basepoint = h.vertices[0]
    if basepoint not in h.vertices:
        raise ConfigurationError(f"basepoint {basepoint} is not in H")
    _, seen = _bfs(h, basepoint)
    unreached = [v for v in h.vertices if v not in seen]
    if unreached:
        raise ConfigurationError(f"H is disconnected: {unreached[0]} is not reachable from {basepoint}")

    h_tree = spanning_tree(h, basepoint)
    g_tree = _extend_tree(g, h_tree)
    g_pres, g_gens = _pi1_from_tree(g, g_tree)
    h_nontree = [e for e in h.proper_edges if e.id not in set(h_tree.tree_edges)]

    loops = {k: v for k, v in dict(loops_into_x).items()}
    h_ids = {e.id for e in h.edges}
    for k in loops:
        if k not in h_ids:
            raise ConfigurationError(f"loop image given for {k}, which is not an edge of H")
    tree_ids = set(h_tree.tree_edges)
    for k, w in loops.items():
        # a tree edge closes no loop, so only the trivial image is consistent
        if k in tree_ids and isinstance(w, Word) and w:
            raise ConfigurationError(f"edge {k} lies on the spanning tree of H; its loop image must be 1")
    missing = [e.id for e in h_nontree if e.id not in loops]
    if missing:
        raise ConfigurationError(f"no image in X given for the loop of edge {missing[0]}")

    (qx, qg), (tx, tg) = disjointize([px, g_pres], ["X", "G"])
    allowed = set(px.gens)
    sources = _piece_sources(qx, "X")
    for e in h_nontree:
        image_x = loops[e.id]
        if not isinstance(image_x, Word):
            raise MalformedInputError(f"loop image for {e.id} must be a Word")
        unknown = image_x.symbols() - allowed
        if unknown:
            raise MalformedInputError(f"loop image for {e.id} uses unknown generator {sorted(map(str, unknown))[0]}")
        image_g = loop_word(g_tree, e, g_gens).rename(tg)
        r = cyclic_reduce(concat(image_x.rename(tx), invert(image_g)))
        sources.append(RelatorSource(r, "loop", e.id, str(g_gens[e.id])))
    kept, dropped = _split(sources)
    pres = Presentation(qx.gens + qg.gens, tuple(s.word for s in kept))
    return SvkResult(pres, (), kept, dropped)


def attach_graph(px: Presentation, g: MultiGraph, h_edges: Iterable[str],
                 loops_into_x: Mapping[str, Word], *, h_vertices: Iterable[str] = (),
                 basepoint: str | None = None, full_output: bool = False):
    """Fundamental group of a space ``X`` with a graph ``G`` attached along ``H = X n G``.

    ``H`` is the subgraph of ``G`` spanned by ``h_edges`` (plus
    ``h_vertices``; if both are empty, ``H`` is the basepoint).  A
    spanning tree of ``H`` is grown into one of ``G``; for every edge of
    ``H`` outside it, the loop through that edge is identified with its
    image in ``X`` given by ``loops_into_x[edge id]``.

    Returns ``pi1(X) * pi1(G) / << image_X(a) image_G(a)^-1 >>``.  When
    ``H`` is a tree no relators are added.  With ``full_output`` the
    :class:`SvkResult` is returned, whose provenance names the edge of
    each loop relator.
    """
    result = _attach_graph(px, g, h_edges, loops_into_x, tuple(h_vertices), basepoint)
    return result if full_output else result.pres


def attach_spaces(pieces: Sequence[Presentation], g: MultiGraph,
                  attach_vertex: Mapping[int, str] | Sequence[str]) -> Presentation:
    """Disjoint spaces ``X_i``, each meeting the graph in the single vertex ``attach_vertex[i]``.

    The result is the free product of the pieces with ``pi1(G)``.
    Attaching two pieces at the same vertex violates the disjointness
    hypothesis and raises :class:`ConfigurationError`.
    """
    pieces = list(pieces)
    if isinstance(attach_vertex, Mapping):
        where = dict(attach_vertex)
    else:
        where = dict(enumerate(attach_vertex))
    for i in range(len(pieces)):
        if i not in where:
            raise ConfigurationError(f"piece {i} has no attaching vertex")
        if where[i] not in g.vertices:
            raise ConfigurationError(f"piece {i} attaches at unknown vertex {where[i]}")
    used = [where[i] for i in range(len(pieces))]
    if len(set(used)) != len(used):
        dup = next(v for v in used if used.count(v) > 1)
        raise ConfigurationError(f"two pieces attach at vertex {dup}; pieces must be disjoint")
    base = g.basepoint if g.basepoint is not None else g.vertices[0]
    g_pres, _ = graph_pi1(g, base)
    names = [f"X{i + 1}" for i in range(len(pieces))] + ["G"]
    return free_product(pieces + [g_pres], names)
