"""
Spaces glued from pieces along intersections with several components.

A :class:`CombinatorialSpace` is a graph whose vertices are pieces (each
with a presented fundamental group) and whose edges are intersections.
An edge carrying ``mu + 1`` arcwise-connected components has index
``mu``.  The fundamental group is computed by gluing the pieces back one
at a time in an order where every prefix is connected, applying
:func:`~vankampen.svk.generalized_svk` at each step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigurationError, PreconditionError
from .svk import IntersectionComponent, RelatorSource, SvkResult, generalized_svk
from .topograph import Edge, EdgeIndexedGraph, MultiGraph, cycle_rank
from .words import Presentation, disjointize, free_group, free_product, fresh_symbol

__all__ = [
    "Piece", "IntersectionEdge", "CombinatorialSpace", "Diagnostic", "ValidationReport",
    "InvalidSpaceError", "validate", "peel_order", "is_admissible_order",
    "pi1_combinatorial", "pi1_shortcut_simply_connected", "pi1_atlas",
    "expected_stable_letters",
]

_ID_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_ASSEMBLY = "assembly"


@dataclass(frozen=True)
class Piece:
    id: str
    pres: Presentation


@dataclass(frozen=True)
class IntersectionEdge:
    """An intersection between two pieces.

    For every component, ``into_u`` targets the group of ``ends[0]`` and
    ``into_v`` the group of ``ends[1]``.
    """

    id: str
    ends: tuple[str, str]
    components: tuple[IntersectionComponent, ...]

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))
        object.__setattr__(self, "components", tuple(self.components))

    __hash__ = None

    @property
    def mu(self) -> int:
        return len(self.components) - 1


@dataclass(frozen=True)
class CombinatorialSpace:
    pieces: tuple[Piece, ...]
    edges: tuple[IntersectionEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "edges", tuple(self.edges))

    __hash__ = None

    def piece(self, piece_id: str) -> Piece:
        for p in self.pieces:
            if p.id == piece_id:
                return p
        raise KeyError(piece_id)

    @property
    def graph(self) -> MultiGraph:
        """The underlying graph: one vertex per piece, one edge per intersection."""
        return MultiGraph(tuple(p.id for p in self.pieces),
                          tuple(Edge(e.id, *e.ends) for e in self.edges))

    def edge_indexed_graph(self) -> EdgeIndexedGraph:
        return EdgeIndexedGraph(self.graph, {e.id: e.mu for e in self.edges})


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    subject: str | None = None

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    def __bool__(self):
        return self.ok


class InvalidSpaceError(ConfigurationError):
    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(str(d) for d in report.diagnostics))
        self.report = report


def validate(cs: CombinatorialSpace) -> ValidationReport:
    """Check ids, references, inclusion maps and connectivity; never raises."""
    out: list[Diagnostic] = []
    ids = [p.id for p in cs.pieces]
    if not ids:
        out.append(Diagnostic("empty", "space has no pieces"))
    seen: set[str] = set()
    for pid in ids:
        if not isinstance(pid, str) or not _ID_RE.match(pid):
            out.append(Diagnostic("bad-id", f"piece id {pid!r} is not a name", pid))
        if pid in seen:
            out.append(Diagnostic("duplicate-piece", f"piece {pid} is declared twice", pid))
        seen.add(pid)
    pres = {p.id: p.pres for p in cs.pieces}

    edge_ids: set[str] = set()
    for e in cs.edges:
        if e.id in edge_ids:
            out.append(Diagnostic("duplicate-edge", f"edge {e.id} is declared twice", e.id))
        edge_ids.add(e.id)
        if len(e.ends) != 2:
            out.append(Diagnostic("bad-edge", f"edge {e.id} must join two pieces", e.id))
            continue
        unknown = [x for x in e.ends if x not in pres]
        for x in unknown:
            out.append(Diagnostic("unknown-piece", f"edge {e.id} refers to unknown piece {x}", x))
        if e.ends[0] == e.ends[1]:
            out.append(Diagnostic("self-loop", f"edge {e.id} joins piece {e.ends[0]} to itself", e.id))
        if not e.components:
            out.append(Diagnostic("no-components", f"edge {e.id} has no intersection components", e.id))
        comp_ids: set[str] = set()
        for c in e.components:
            if c.id in comp_ids:
                out.append(Diagnostic("duplicate-component",
                                      f"component {c.id} appears twice on edge {e.id}", c.id))
            comp_ids.add(c.id)
            if unknown:
                continue
            for side, f, end in (("into_u", c.into_u, e.ends[0]), ("into_v", c.into_v, e.ends[1])):
                if f.source != c.pres:
                    out.append(Diagnostic("map-source",
                                          f"component {c.id} on edge {e.id}: {side} has the wrong source", c.id))
                if f.target != pres[end]:
                    out.append(Diagnostic("map-target",
                                          f"component {c.id} on edge {e.id}: {side} does not target piece {end}",
                                          c.id))

    if ids and not any(d.code in ("duplicate-piece", "unknown-piece", "bad-edge") for d in out):
        reached = _reachable(cs, ids[0])
        for pid in ids:
            if pid not in reached:
                out.append(Diagnostic("disconnected", f"piece {pid} is not connected to {ids[0]}", pid))
                break
    return ValidationReport(tuple(out))


def _adjacency(cs: CombinatorialSpace) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {p.id: set() for p in cs.pieces}
    for e in cs.edges:
        a, b = e.ends
        if a in adj and b in adj and a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _reachable(cs, start):
    adj = _adjacency(cs)
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _require_valid(cs):
    report = validate(cs)
    if not report.ok:
        raise InvalidSpaceError(report)


def peel_order(cs: CombinatorialSpace, *, largest_first: bool = False) -> list[str]:
    """Order ``p1 .. pk`` such that removing ``pk``, then ``pk-1``, ... keeps the rest connected.

    Built greedily from the smallest id, always adding the smallest id
    adjacent to what is already built (so a path ``A-B-C`` gives
    ``[A, B, C]``: ``C`` is peeled first).  ``largest_first`` uses the
    largest id instead; it gives another admissible order.
    """
    _require_valid(cs)
    pick = max if largest_first else min
    adj = _adjacency(cs)
    order = [pick(adj)]
    built = set(order)
    frontier = set(adj[order[0]])
    while len(order) < len(adj):
        nxt = pick(frontier)
        order.append(nxt)
        built.add(nxt)
        frontier.discard(nxt)
        frontier.update(y for y in adj[nxt] if y not in built)
    return order


def is_admissible_order(cs: CombinatorialSpace, order: Sequence[str]) -> bool:
    """Every prefix of ``order`` spans a connected part of the underlying graph."""
    if sorted(order) != sorted(p.id for p in cs.pieces):
        return False
    adj = _adjacency(cs)
    built = set()
    for i, pid in enumerate(order):
        if i and not (adj[pid] & built):
            return False
        built.add(pid)
    return True


def expected_stable_letters(cs: CombinatorialSpace) -> int:
    """Sum of edge indices plus the cycle rank of the underlying graph."""
    return sum(e.mu for e in cs.edges) + cycle_rank(cs.graph)


def _renamed_pieces(cs):
    renamed, tables = disjointize([p.pres for p in cs.pieces], [p.id for p in cs.pieces])
    return ({p.id: q for p, q in zip(cs.pieces, renamed)},
            {p.id: t for p, t in zip(cs.pieces, tables)})


def pi1_combinatorial(cs: CombinatorialSpace, order: Sequence[str] | None = None) -> SvkResult:
    """Fundamental group of a combinatorial space by iterated gluing.

    Pieces are glued in ``order`` (default :func:`peel_order`).  Gluing
    piece ``M`` onto the assembly built so far uses all components of
    all edges between ``M`` and already glued pieces, edges in input
    order.  The first component of the first such edge is the tree
    component; every other component gets a stable letter ``t<k>``,
    where ``k`` numbers components across the whole run.  In total
    ``sum(mu) + cycle_rank`` stable letters are created.

    Piece generators are namespaced by piece id only if two pieces
    share a generator name, so a single piece comes back unchanged.

    Raises
    ------
    InvalidSpaceError
        If :func:`validate` reports problems.
    ConfigurationError
        If ``order`` is not admissible.
    """
    _require_valid(cs)
    if order is None:
        order = peel_order(cs)
    order = list(order)
    if not is_admissible_order(cs, order):
        raise ConfigurationError(f"{order} is not an admissible gluing order")

    pres, tables = _renamed_pieces(cs)
    taken = set()
    for q in pres.values():
        taken.update(q.gens)

    first = order[0]
    assembly = pres[first]
    provenance = [RelatorSource(r, "piece", first, i) for i, r in enumerate(assembly.relators)]
    trivial: list[RelatorSource] = []
    marks: list = []
    attached = {first}
    k = 0

    for m in order[1:]:
        comps = []
        for e in cs.edges:
            a, b = e.ends
            if m == b and a in attached:
                nb = a
            elif m == a and b in attached:
                nb = b
            else:
                continue
            for c in e.components:
                to_nb, to_m = (c.into_u, c.into_v) if nb == a else (c.into_v, c.into_u)
                comps.append(IntersectionComponent(
                    f"{e.id}/{c.id}", c.pres,
                    to_nb.retarget(assembly, tables[nb]),
                    to_m.retarget(pres[m], tables[m])))
        letters = []
        for i in range(len(comps)):
            k += 1
            if i:
                s = fresh_symbol(f"t{k}", taken)
                taken.add(s)
                letters.append(s)
        step = generalized_svk(assembly, pres[m], comps, stable_letters=letters,
                               labels=(_ASSEMBLY, m))
        new_prov = []
        for src in step.provenance:
            if src.kind == "piece" and src.origin == _ASSEMBLY:
                new_prov.append(provenance[src.detail])
            else:
                new_prov.append(src)
        provenance = new_prov
        trivial.extend(step.trivial)
        marks.extend(step.stable_letters)
        assembly = step.pres
        attached.add(m)

    return SvkResult(assembly, tuple(marks), tuple(provenance), tuple(trivial))


def _all_components(cs):
    for e in cs.edges:
        yield from ((e, c) for c in e.components)


def pi1_shortcut_simply_connected(cs: CombinatorialSpace) -> Presentation:
    """Free product of the piece groups with a free group of rank ``sum(mu) + cycle_rank``.

    Valid when every intersection component is simply connected.

    Raises
    ------
    PreconditionError
        If some component group has generators; use
        :func:`pi1_combinatorial` for those spaces.
    """
    _require_valid(cs)
    for e, c in _all_components(cs):
        if c.pres.gens:
            raise PreconditionError(
                f"component {c.id} on edge {e.id} is not simply connected; use pi1_combinatorial")
    pres, _ = _renamed_pieces(cs)
    taken = set()
    for q in pres.values():
        taken.update(q.gens)
    free = []
    for i in range(1, expected_stable_letters(cs) + 1):
        s = fresh_symbol(f"t{i}", taken)
        taken.add(s)
        free.append(s)
    parts = [pres[p.id] for p in cs.pieces] + [free_group(free)]
    return free_product(parts, [p.id for p in cs.pieces] + [_ASSEMBLY])


def pi1_atlas(cs: CombinatorialSpace) -> Presentation:
    """Manifold covered by charts: every piece is simply connected.

    The answer is generated by stable letters alone, modulo the
    component relators.

    Raises
    ------
    PreconditionError
        If some piece has a nontrivial presentation.
    """
    for p in cs.pieces:
        if p.pres.gens or p.pres.relators:
            raise PreconditionError(f"piece {p.id} is not a chart (its group is {p.pres})")
    return pi1_combinatorial(cs).pres
