"""
The ``.svk`` input language.

A document declares presentations, graphs, combinatorial spaces, chart
atlases and graph-attachment tasks::

    group T = < a, b | a b a^-1 b^-1 >

    space circle {
      piece U = < | >;
      piece V = < | >;
      glue (U, V) {
        comp c1 = < | > { };
        comp c2 = < | > { };
      }
    }

Declarations may refer to each other in any order.  Whitespace and
``#`` comments are insignificant.  Every failure is reported as a
:class:`DslError` carrying a :class:`SourceSpan`, the set of tokens that
would have been accepted and an excerpt of the offending line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .combspace import CombinatorialSpace, IntersectionEdge, Piece
from .errors import VanKampenError
from .svk import IntersectionComponent
from .topograph import Edge, MultiGraph
from .words import EPSILON, GeneratorSym, GroupMap, Presentation, Word, normalize_relators

__all__ = [
    "SourceSpan", "DslError", "Ref", "GroupDecl", "GraphDecl", "PieceDecl", "MapEntry",
    "IntoDecl", "CompDecl", "GlueDecl", "SpaceDecl", "AttachDecl", "Document",
    "SpaceTask", "AttachTask", "parse", "print_document", "build_tasks", "MAX_EXPONENT",
]

MAX_EXPONENT = 10_000


@dataclass(frozen=True)
class SourceSpan:
    """1-based line and column of the start; byte offsets of start and end."""

    line: int
    column: int
    start: int
    end: int

    def __str__(self):
        return f"{self.line}:{self.column}"


_NOSPAN = SourceSpan(0, 0, 0, 0)


class DslError(VanKampenError):
    """A lexical, syntax, duplicate-name or unresolved-reference error."""

    def __init__(self, kind: str, message: str, span: SourceSpan,
                 expected: frozenset = frozenset(), excerpt: str = ""):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.span = span
        self.expected = frozenset(expected)
        self.excerpt = excerpt

    def format(self, filename: str = "<input>") -> str:
        text = f"{filename}:{self.span.line}:{self.span.column}: {self.kind} error: {self.message}"
        if self.excerpt:
            text += "\n" + self.excerpt
        return text

    def __str__(self):
        return self.format()


# AST.  Spans are excluded from equality so that parse(print(doc)) == doc.

def _span_field():
    return field(default=_NOSPAN, compare=False, repr=False)


@dataclass(frozen=True)
class Ref:
    name: str
    span: SourceSpan = _span_field()


PresRef = Union[Ref, Presentation]


@dataclass(frozen=True)
class GroupDecl:
    name: str
    pres: Presentation
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class GraphDecl:
    name: str
    graph: MultiGraph
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class PieceDecl:
    name: str
    pres: PresRef | None  # None in an atlas
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class MapEntry:
    gen: GeneratorSym
    image: Word
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class IntoDecl:
    end: str
    entries: tuple[MapEntry, ...]
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class CompDecl:
    name: str
    pres: PresRef
    intos: tuple[IntoDecl, ...]
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class GlueDecl:
    ends: tuple[str, str]
    comps: tuple[CompDecl, ...]
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class SpaceDecl:
    name: str
    pieces: tuple[PieceDecl, ...]
    glues: tuple[GlueDecl, ...]
    atlas: bool = False
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class LoopDecl:
    edge: str
    image: Word
    span: SourceSpan = _span_field()


@dataclass(frozen=True)
class AttachDecl:
    name: str
    base: PresRef
    graph: str
    h_edges: tuple[str, ...]
    loops: tuple[LoopDecl, ...]
    span: SourceSpan = _span_field()
    graph_span: SourceSpan = _span_field()
    h_spans: tuple[SourceSpan, ...] = _span_field()


Item = Union[GroupDecl, GraphDecl, SpaceDecl, AttachDecl]


@dataclass(frozen=True)
class Document:
    items: tuple[Item, ...] = ()

    def get(self, name: str):
        for item in self.items:
            if item.name == name:
                return item
        raise KeyError(name)


# Lexer

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n\f\v]+)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*(?:\.[A-Za-z][A-Za-z0-9_]*)*)
  | (?P<int>[0-9]+)
  | (?P<arrow>->)
  | (?P<punct>[<>|,;{}()=:^\-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "int", "eof" or the punctuation text itself
    text: str
    span: SourceSpan


class _Source:
    def __init__(self, text: str):
        self.text = text
        self.line_starts = [0]
        for m in re.finditer("\n", text):
            self.line_starts.append(m.end())
        self.ascii = text.isascii()
        self._bytes = None

    def byte_offset(self, i: int) -> int:
        if self.ascii:
            return i
        if self._bytes is None:
            acc, offs = 0, [0]
            for ch in self.text:
                acc += len(ch.encode("utf-8", "surrogatepass"))
                offs.append(acc)
            self._bytes = offs
        return self._bytes[i]

    def span(self, start: int, end: int) -> SourceSpan:
        lo, hi = 0, len(self.line_starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.line_starts[mid] <= start:
                lo = mid
            else:
                hi = mid - 1
        return SourceSpan(lo + 1, start - self.line_starts[lo] + 1,
                          self.byte_offset(start), self.byte_offset(end))

    def excerpt(self, span: SourceSpan) -> str:
        if span.line < 1 or span.line > len(self.line_starts):
            return ""
        start = self.line_starts[span.line - 1]
        end = self.text.find("\n", start)
        line = self.text[start:] if end < 0 else self.text[start:end]
        line = line.rstrip("\r")
        caret = " " * (span.column - 1) + "^"
        return f"  {line}\n  {caret}"


def _tokenize(src: _Source) -> list[Token]:
    text = src.text
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            span = src.span(pos, pos + 1)
            raise DslError("lexical", f"unexpected character {text[pos]!r}", span,
                           excerpt=src.excerpt(span))
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tok_kind = m.group() if kind in ("arrow", "punct") else kind
            tokens.append(Token(tok_kind, m.group(), src.span(m.start(), m.end())))
        pos = m.end()
    tokens.append(Token("eof", "", src.span(n, n)))
    return tokens


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "name":
        return f"name {tok.text!r}"
    if tok.kind == "int":
        return f"number {tok.text}"
    return f"'{tok.text}'"


def _show(expected) -> str:
    items = sorted(expected)
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " or " + items[-1]


# Parser

class _Parser:
    def __init__(self, src: _Source, tokens: list[Token]):
        self.src = src
        self.tokens = tokens
        self.pos = 0

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def fail(self, expected, tok: Token | None = None):
        tok = tok or self.tok
        expected = frozenset(expected)
        raise DslError("syntax", f"expected {_show(expected)}, found {_describe(tok)}",
                       tok.span, expected, self.src.excerpt(tok.span))

    def error(self, kind, message, span):
        raise DslError(kind, message, span, excerpt=self.src.excerpt(span))

    def is_kw(self, kw: str) -> bool:
        return self.tok.kind == "name" and self.tok.text == kw

    def keyword(self, kw: str) -> Token:
        if not self.is_kw(kw):
            self.fail({f"'{kw}'"})
        return self.advance()

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail({"name" if kind == "name" else f"'{kind}'"})
        return self.advance()

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.advance()
            return True
        return False

    def name(self, what="name") -> Token:
        if self.tok.kind != "name":
            self.fail({what})
        return self.advance()

    def plain_name(self, what="name") -> Token:
        t = self.name(what)
        if "." in t.text:
            self.error("syntax", f"{what} {t.text!r} may not contain '.'", t.span)
        return t

    # grammar

    def document(self) -> Document:
        items = []
        starters = {"group": self.group, "graph": self.graph, "space": self.space,
                    "atlas": self.atlas, "attach": self.attach}
        while self.tok.kind != "eof":
            if self.tok.kind == "name" and self.tok.text in starters:
                items.append(starters[self.tok.text]())
                self.accept(";")
            else:
                self.fail({f"'{k}'" for k in starters} | {"end of input"})
        return Document(tuple(items))

    def group(self) -> GroupDecl:
        self.keyword("group")
        name = self.plain_name()
        self.expect("=")
        if self.tok.kind != "<":
            self.fail({"'<'"})
        return GroupDecl(name.text, self.pres(), name.span)

    def pres(self) -> Presentation:
        self.expect("<")
        gens, spans = [], {}
        if self.tok.kind == "name":
            while True:
                t = self.name("generator name")
                sym = GeneratorSym.parse(t.text)
                if sym in spans:
                    self.error("duplicate name", f"generator {t.text} is listed twice", t.span)
                spans[sym] = t.span
                gens.append(sym)
                if not self.accept(","):
                    break
        if self.tok.kind != "|":
            self.fail({"','", "'|'"} if gens else {"generator name", "'|'"})
        self.advance()
        rels = []
        if self.tok.kind in ("name", "int"):
            while True:
                w, w_span = self.word(stop={"','", "'>'"})
                unknown = w.symbols() - set(gens)
                if unknown:
                    bad = sorted(str(s) for s in unknown)[0]
                    self.error("unresolved reference",
                               f"relator uses {bad}, which is not a generator of this presentation", w_span)
                rels.append(w)
                if not self.accept(","):
                    break
        if self.tok.kind != ">":
            self.fail({"','", "'>'", "name"} if rels else {"word", "'>'"})
        self.advance()
        return Presentation(tuple(gens), normalize_relators(rels))

    def word(self, stop) -> tuple[Word, SourceSpan]:
        first = self.tok
        if first.kind == "int":
            if first.text != "1":
                self.fail({"name", "'1'"})
            self.advance()
            return EPSILON, first.span
        if first.kind != "name":
            self.fail({"name", "'1'"})
        letters = []
        powered = False
        while self.tok.kind == "name":
            t = self.advance()
            sym = GeneratorSym.parse(t.text)
            power = 1
            powered = self.tok.kind == "^"
            if self.accept("^"):
                negative = self.accept("-")
                if self.tok.kind != "int":
                    self.fail({"number"} if negative else {"number", "'-'"})
                num = self.advance()
                if len(num.text) > 6 or int(num.text) > MAX_EXPONENT:
                    self.error("syntax", f"exponent {num.text} is larger than {MAX_EXPONENT}", num.span)
                power = -int(num.text) if negative else int(num.text)
            sign = 1 if power > 0 else -1
            letters.extend([(sym, sign)] * abs(power))
        if self.tok.kind not in {s.strip("'") for s in stop}:
            self.fail(set(stop) | ({"name"} if powered else {"name", "'^'"}))
        return Word(letters), first.span

    def presref(self) -> PresRef:
        if self.tok.kind == "<":
            return self.pres()
        if self.tok.kind == "name":
            t = self.plain_name()
            return Ref(t.text, t.span)
        self.fail({"name", "'<'"})

    def graph(self) -> GraphDecl:
        self.keyword("graph")
        name = self.plain_name()
        self.expect("{")
        vertices, vspans, edges, espans = [], {}, [], {}
        while True:
            if self.is_kw("vertex"):
                self.advance()
                v = self.plain_name("vertex name")
                if v.text in vspans:
                    self.error("duplicate name", f"vertex {v.text} is declared twice", v.span)
                vspans[v.text] = v.span
                vertices.append(v.text)
                self.expect(";")
            elif self.is_kw("edge"):
                self.advance()
                e = self.plain_name("edge name")
                if e.text in espans:
                    self.error("duplicate name", f"edge {e.text} is declared twice", e.span)
                espans[e.text] = e.span
                self.expect("(")
                u = self.plain_name("vertex name")
                v = None
                if self.accept(","):
                    v = self.plain_name("vertex name")
                elif self.tok.kind != ")":
                    self.fail({"','", "')'"})
                self.expect(")")
                semi = False
                if self.is_kw("semi"):
                    self.advance()
                    semi = True
                if semi and v is not None:
                    self.error("syntax", f"semi-edge {e.text} takes a single endpoint", v.span)
                if not semi and v is None:
                    self.error("syntax", f"edge {e.text} needs two endpoints", e.span)
                edges.append((e.text, u, v, semi))
                self.expect(";")
            elif self.tok.kind == "}":
                self.advance()
                break
            else:
                self.fail({"'vertex'", "'edge'", "'}'"})
        for eid, u, v, semi in edges:
            for x in (u, v):
                if x is not None and x.text not in vspans:
                    self.error("unresolved reference", f"edge {eid} uses undeclared vertex {x.text}", x.span)
        g = MultiGraph(tuple(vertices),
                       tuple(Edge(eid, u.text, v.text if v else None, semi) for eid, u, v, semi in edges))
        return GraphDecl(name.text, g, name.span)

    def _space_body(self, atlas: bool):
        self.expect("{")
        pieces = []
        while self.is_kw("piece"):
            self.advance()
            p = self.plain_name("piece name")
            if atlas:
                pieces.append(PieceDecl(p.text, None, p.span))
            else:
                self.expect("=")
                pieces.append(PieceDecl(p.text, self.presref(), p.span))
            self.expect(";")
        if not pieces:
            self.fail({"'piece'"})
        glues = []
        while self.is_kw("glue"):
            glues.append(self.glue())
            self.accept(";")
        if self.tok.kind != "}":
            self.fail({"'piece'", "'glue'", "'}'"} if not glues else {"'glue'", "'}'"})
        self.advance()
        return tuple(pieces), tuple(glues)

    def space(self) -> SpaceDecl:
        self.keyword("space")
        name = self.plain_name()
        pieces, glues = self._space_body(atlas=False)
        return SpaceDecl(name.text, pieces, glues, False, name.span)

    def atlas(self) -> SpaceDecl:
        self.keyword("atlas")
        name = self.plain_name()
        pieces, glues = self._space_body(atlas=True)
        return SpaceDecl(name.text, pieces, glues, True, name.span)

    def glue(self) -> GlueDecl:
        start = self.keyword("glue").span
        self.expect("(")
        a = self.plain_name("piece name")
        self.expect(",")
        b = self.plain_name("piece name")
        self.expect(")")
        self.expect("{")
        comps = []
        while self.is_kw("comp"):
            comps.append(self.comp())
            self.accept(";")
        if not comps:
            self.fail({"'comp'"})
        if self.tok.kind != "}":
            self.fail({"'comp'", "'}'"})
        self.advance()
        return GlueDecl((a.text, b.text), tuple(comps), start)

    def comp(self) -> CompDecl:
        self.keyword("comp")
        name = self.plain_name("component name")
        self.expect("=")
        pres = self.presref()
        self.expect("{")
        intos = []
        while self.is_kw("into"):
            self.advance()
            end = self.plain_name("piece name")
            self.expect(":")
            entries = []
            while True:
                g = self.name("generator name")
                self.expect("->")
                w, _ = self.word(stop={"','", "';'"})
                entries.append(MapEntry(GeneratorSym.parse(g.text), w, g.span))
                if not self.accept(","):
                    break
            self.expect(";")
            intos.append(IntoDecl(end.text, tuple(entries), end.span))
        if self.tok.kind != "}":
            self.fail({"'into'", "'}'"})
        self.advance()
        return CompDecl(name.text, pres, tuple(intos), name.span)

    def attach(self) -> AttachDecl:
        self.keyword("attach")
        name = self.plain_name()
        self.expect("{")
        self.keyword("base")
        base = self.presref()
        self.expect(";")
        self.keyword("graph")
        g = self.plain_name("graph name")
        self.expect(";")
        self.keyword("H")
        self.expect("=")
        self.expect("{")
        h_edges, h_spans = [], []
        if self.tok.kind == "name":
            while True:
                e = self.plain_name("edge name")
                if e.text in h_edges:
                    self.error("duplicate name", f"edge {e.text} is listed twice in H", e.span)
                h_edges.append(e.text)
                h_spans.append(e.span)
                if not self.accept(","):
                    break
        if self.tok.kind != "}":
            self.fail({"','", "'}'"} if h_edges else {"edge name", "'}'"})
        self.advance()
        self.expect(";")
        loops = []
        while self.is_kw("loop"):
            self.advance()
            e = self.plain_name("edge name")
            self.expect("->")
            w, _ = self.word(stop={"';'"})
            self.expect(";")
            loops.append(LoopDecl(e.text, w, e.span))
        if self.tok.kind != "}":
            self.fail({"'loop'", "'}'"})
        self.advance()
        return AttachDecl(name.text, base, g.text, tuple(h_edges), tuple(loops),
                          name.span, g.span, tuple(h_spans))


# Second pass: names and references

class _Resolver:
    def __init__(self, doc: Document, src: _Source):
        self.doc = doc
        self.src = src
        self.items = {}

    def error(self, kind, message, span):
        raise DslError(kind, message, span, excerpt=self.src.excerpt(span))

    def run(self):
        for item in self.doc.items:
            if item.name in self.items:
                self.error("duplicate name", f"{item.name} is already declared", item.span)
            self.items[item.name] = item
        for item in self.doc.items:
            if isinstance(item, SpaceDecl):
                self.space(item)
            elif isinstance(item, AttachDecl):
                self.attach(item)

    def group(self, ref: PresRef) -> Presentation:
        if isinstance(ref, Presentation):
            return ref
        item = self.items.get(ref.name)
        if not isinstance(item, GroupDecl):
            what = "is not a group" if item is not None else "is not declared"
            self.error("unresolved reference", f"{ref.name} {what}", ref.span)
        return item.pres

    def _check_word(self, w: Word, allowed, span, context):
        unknown = w.symbols() - set(allowed)
        if unknown:
            bad = sorted(str(s) for s in unknown)[0]
            self.error("unresolved reference", f"{context} uses {bad}, which is not a generator there", span)

    def space(self, s: SpaceDecl):
        pieces = {}
        for p in s.pieces:
            if p.name in pieces:
                self.error("duplicate name", f"piece {p.name} is declared twice in {s.name}", p.span)
            pieces[p.name] = self.group(p.pres) if p.pres is not None else Presentation()
        for glue in s.glues:
            for end in glue.ends:
                if end not in pieces:
                    self.error("unresolved reference", f"glue refers to unknown piece {end}", glue.span)
            names = set()
            for c in glue.comps:
                if c.name in names:
                    self.error("duplicate name", f"component {c.name} is declared twice in this glue", c.span)
                names.add(c.name)
                cp = self.group(c.pres)
                ends = set()
                for into in c.intos:
                    if into.end not in glue.ends:
                        self.error("unresolved reference",
                                   f"{into.end} is not one of the glued pieces {glue.ends[0]}, {glue.ends[1]}",
                                   into.span)
                    if into.end in ends:
                        self.error("duplicate name", f"a second map into {into.end}", into.span)
                    ends.add(into.end)
                    seen = set()
                    for entry in into.entries:
                        if entry.gen not in cp.gens:
                            self.error("unresolved reference",
                                       f"{entry.gen} is not a generator of component {c.name}", entry.span)
                        if entry.gen in seen:
                            self.error("duplicate name", f"{entry.gen} is mapped twice", entry.span)
                        seen.add(entry.gen)
                        self._check_word(entry.image, pieces[into.end].gens, entry.span,
                                         f"image of {entry.gen} in {into.end}")

    def attach(self, a: AttachDecl):
        base = self.group(a.base)
        g = self.items.get(a.graph)
        if not isinstance(g, GraphDecl):
            what = "is not a graph" if g is not None else "is not declared"
            self.error("unresolved reference", f"{a.graph} {what}", a.graph_span)
        edge_ids = {e.id for e in g.graph.edges}
        for e, span in zip(a.h_edges, a.h_spans):
            if e not in edge_ids:
                self.error("unresolved reference", f"{e} is not an edge of graph {a.graph}", span)
        seen = set()
        for loop in a.loops:
            if loop.edge not in a.h_edges:
                self.error("unresolved reference", f"{loop.edge} is not an edge of H", loop.span)
            if loop.edge in seen:
                self.error("duplicate name", f"loop {loop.edge} is given twice", loop.span)
            seen.add(loop.edge)
            self._check_word(loop.image, base.gens, loop.span, f"loop {loop.edge}")


def parse(text: str | bytes) -> Document:
    """Parse a document; raises :class:`DslError` on the first problem found."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = bytes(text[:exc.start]).decode("utf-8", "replace")
            src = _Source(prefix)
            line = prefix.count("\n") + 1
            col = len(prefix) - (prefix.rfind("\n") + 1) + 1
            span = SourceSpan(line, col, exc.start, exc.end)
            raise DslError("lexical", "input is not valid UTF-8", span,
                           excerpt=src.excerpt(SourceSpan(line, col, 0, 0))) from None
    src = _Source(text)
    parser = _Parser(src, _tokenize(src))
    try:
        doc = parser.document()
    except DslError:
        raise
    except VanKampenError as exc:  # defensive: engine constructors rejecting a value
        span = parser.tok.span
        raise DslError("syntax", str(exc), span, excerpt=src.excerpt(span)) from None
    _Resolver(doc, src).run()
    return doc


# Printer

def _pres_text(p: PresRef) -> str:
    return p.name if isinstance(p, Ref) else str(p)


def _print_item(item) -> list[str]:
    if isinstance(item, GroupDecl):
        return [f"group {item.name} = {item.pres}"]
    if isinstance(item, GraphDecl):
        lines = [f"graph {item.name} {{"]
        lines += [f"  vertex {v};" for v in item.graph.vertices]
        for e in item.graph.edges:
            if e.semi:
                lines.append(f"  edge {e.id} ({e.u}) semi;")
            else:
                lines.append(f"  edge {e.id} ({e.u}, {e.v});")
        return lines + ["}"]
    if isinstance(item, SpaceDecl):
        lines = [f"{'atlas' if item.atlas else 'space'} {item.name} {{"]
        for p in item.pieces:
            lines.append(f"  piece {p.name};" if p.pres is None
                         else f"  piece {p.name} = {_pres_text(p.pres)};")
        for glue in item.glues:
            lines.append(f"  glue ({glue.ends[0]}, {glue.ends[1]}) {{")
            for c in glue.comps:
                if not c.intos:
                    lines.append(f"    comp {c.name} = {_pres_text(c.pres)} {{ }};")
                    continue
                lines.append(f"    comp {c.name} = {_pres_text(c.pres)} {{")
                for into in c.intos:
                    entries = ", ".join(f"{e.gen} -> {e.image}" for e in into.entries)
                    lines.append(f"      into {into.end}: {entries};")
                lines.append("    };")
            lines.append("  }")
        return lines + ["}"]
    if isinstance(item, AttachDecl):
        lines = [f"attach {item.name} {{",
                 f"  base {_pres_text(item.base)};",
                 f"  graph {item.graph};",
                 f"  H = {{ {', '.join(item.h_edges)} }};" if item.h_edges else "  H = { };"]
        lines += [f"  loop {l.edge} -> {l.image};" for l in item.loops]
        return lines + ["}"]
    raise TypeError(f"cannot print {item!r}")


def print_document(doc: Document) -> str:
    """Canonical text of a document; ``parse(print_document(d)) == d``."""
    return "\n\n".join("\n".join(_print_item(item)) for item in doc.items) + ("\n" if doc.items else "")


# Building engine inputs

@dataclass(frozen=True)
class SpaceTask:
    name: str
    space: CombinatorialSpace
    atlas: bool = False

    __hash__ = None


@dataclass(frozen=True)
class AttachTask:
    name: str
    base: Presentation
    graph: MultiGraph
    h_edges: tuple[str, ...]
    loops: dict

    __hash__ = None


def _groups(doc):
    return {item.name: item.pres for item in doc.items if isinstance(item, GroupDecl)}


def _resolve_pres(ref: PresRef, groups) -> Presentation:
    return ref if isinstance(ref, Presentation) else groups[ref.name]


def _build_space(s: SpaceDecl, groups) -> CombinatorialSpace:
    pres = {p.name: (_resolve_pres(p.pres, groups) if p.pres is not None else Presentation())
            for p in s.pieces}
    pieces = tuple(Piece(p.name, pres[p.name]) for p in s.pieces)
    edges, used = [], {}
    for glue in s.glues:
        a, b = glue.ends
        base = f"{a}~{b}"
        used[base] = used.get(base, 0) + 1
        eid = base if used[base] == 1 else f"{base}~{used[base]}"
        comps = []
        for c in glue.comps:
            cp = _resolve_pres(c.pres, groups)
            maps = {into.end: {e.gen: e.image for e in into.entries} for into in c.intos}
            into_u = GroupMap.from_partial(cp, pres[a], maps.get(a))
            into_v = GroupMap.from_partial(cp, pres[b], maps.get(b))
            comps.append(IntersectionComponent(c.name, cp, into_u, into_v))
        edges.append(IntersectionEdge(eid, (a, b), tuple(comps)))
    return CombinatorialSpace(pieces, tuple(edges))


def build_tasks(doc: Document) -> list:
    """Engine inputs for every space, atlas and attach declaration, in document order.

    In ``into`` maps, omitted generators map to ``1``; in attach tasks,
    loops of ``H`` without a ``loop`` line map to ``1`` as well.
    """
    groups = _groups(doc)
    graphs = {item.name: item.graph for item in doc.items if isinstance(item, GraphDecl)}
    tasks = []
    for item in doc.items:
        if isinstance(item, SpaceDecl):
            tasks.append(SpaceTask(item.name, _build_space(item, groups), item.atlas))
        elif isinstance(item, AttachDecl):
            g = graphs[item.graph]
            loops = {l.edge: l.image for l in item.loops}
            for e in item.h_edges:
                loops.setdefault(e, EPSILON)
            tasks.append(AttachTask(item.name, _resolve_pres(item.base, groups), g,
                                    item.h_edges, loops))
    return tasks
