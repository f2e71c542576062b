"""Acceptance criteria, one test per criterion.

Every test prints a single ``[acceptance N] PASS|FAIL: ...`` line.  The
file can also be run as a script to print the ten lines.
"""

import random
import sys
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import determinant_divisors  # noqa: E402
from vankampen.combspace import (  # noqa: E402
    CombinatorialSpace, IntersectionEdge, Piece, is_admissible_order, peel_order, pi1_atlas,
    pi1_combinatorial, pi1_shortcut_simply_connected,
)
from vankampen.dsl import DslError, build_tasks, parse, print_document  # noqa: E402
from vankampen.svk import IntersectionComponent, classical_svk, generalized_svk  # noqa: E402
from vankampen.topograph import cycle_rank, edge_induced_graph  # noqa: E402
from vankampen.verify import abelianization, smith_normal_form, todd_coxeter  # noqa: E402
from vankampen.words import (  # noqa: E402
    AbelianInvariants, GeneratorSym, GroupMap, Presentation, Word, canonical_relator,
    parse_presentation, parse_word, tietze_simplify,
)

P = parse_presentation
W = parse_word
POINT = Presentation()
CORPUS = sorted((Path(__file__).parent.parent / "demos" / "svk").glob("*.svk"))
DSL_KINDS = {"lexical", "syntax", "duplicate name", "unresolved reference"}


# random inputs

def random_word(rng, syms, max_len):
    return Word([(rng.choice(syms), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))])


def random_presentation(rng, names, max_gens=3, max_rels=3, max_len=6):
    syms = [GeneratorSym(n) for n in names[:rng.randint(1, max_gens)]]
    rels = [random_word(rng, syms, max_len) for _ in range(rng.randint(0, max_rels))]
    return Presentation.build(syms, rels)


def random_map(rng, source, target, max_len):
    if not target.gens:
        return GroupMap.from_partial(source, target)
    return GroupMap(source, target, {g: random_word(rng, list(target.gens), max_len) for g in source.gens})


def random_component(rng, name, pu, pv, max_gens=3, max_rels=3, max_len=6):
    pc = random_presentation(rng, ["g", "h", "k"], max_gens, max_rels, max_len)
    return IntersectionComponent(name, pc, random_map(rng, pc, pu, max_len), random_map(rng, pc, pv, max_len))


def trivial_component(name, pu, pv):
    return IntersectionComponent(name, POINT, GroupMap(POINT, pu, {}), GroupMap(POINT, pv, {}))


def random_connected_pairs(rng, ids, max_edges, simple=False, tree=False):
    pairs = [(ids[rng.randrange(i)], ids[i]) for i in range(1, len(ids))]
    if len(ids) > 1 and not tree:
        for _ in range(rng.randint(0, max(0, max_edges - len(pairs)))):
            a, b = rng.sample(ids, 2)
            if simple and (frozenset((a, b)) in {frozenset(p) for p in pairs}):
                continue
            pairs.append((a, b))
    rng.shuffle(pairs)
    return [(b, a) if rng.random() < 0.5 else (a, b) for a, b in pairs]


def random_space(rng, *, max_pieces=5, max_edges=7, max_mu=2, min_pieces=1,
                 piece_factory=None, component_factory=None, simple=False, tree=False):
    ids = [f"M{i}" for i in range(rng.randint(min_pieces, max_pieces))]
    pieces = {k: piece_factory(rng) for k in ids}
    edges = []
    for k, (a, b) in enumerate(random_connected_pairs(rng, ids, max_edges, simple, tree)):
        comps = tuple(component_factory(rng, f"c{c}", pieces[a], pieces[b])
                      for c in range(rng.randint(0, max_mu) + 1))
        edges.append(IntersectionEdge(f"E{k}", (a, b), comps))
    order = list(ids)
    rng.shuffle(order)
    return CombinatorialSpace(tuple(Piece(k, pieces[k]) for k in order), tuple(edges))


# criteria

def criterion_1():
    comps = [trivial_component("c1", POINT, POINT), trivial_component("c2", POINT, POINT)]
    r = generalized_svk(POINT, POINT, comps)
    ab = abelianization(r.pres)
    ok = len(r.pres.gens) == 1 and r.pres.relators == () and ab == AbelianInvariants(1, ())
    return ok, f"circle is {r.pres}, abelianization {ab.as_dict()}"


def criterion_2():
    rng = random.Random(2)
    mismatches = 0
    for _ in range(200):
        pu = random_presentation(rng, ["a", "b", "c"])
        pv = random_presentation(rng, rng.choice((["a", "b", "c"], ["x", "y", "z"])))
        c = random_component(rng, "C1", pu, pv)
        gen, cls = generalized_svk(pu, pv, [c]), classical_svk(pu, pv, c)
        if gen != cls or repr(gen).encode() != repr(cls).encode() or str(gen.pres) != str(cls.pres):
            mismatches += 1
    return mismatches == 0, f"{200 - mismatches}/200 one-component inputs identical to the classical result"


def criterion_3():
    pu, pv = P("< c | >"), P("< d | >")

    def comp(name, gen, img_v):
        pc = P(f"< {gen} | >")
        return IntersectionComponent(name, pc, GroupMap(pc, pu, {gen: W("c")}), GroupMap(pc, pv, {gen: W(img_v)}))

    torus = generalized_svk(pu, pv, [comp("C1", "g", "d"), comp("C2", "h", "d")])
    klein = generalized_svk(pu, pv, [comp("C1", "g", "d"), comp("C2", "h", "d^-1")])
    at, ak = abelianization(torus.pres), abelianization(klein.pres)
    ok = (at.free_rank, list(at.torsion)) == (2, []) and (ak.free_rank, list(ak.torsion)) == (1, [2])
    return ok, f"torus {at.as_dict()}, Klein bottle {ak.as_dict()}"


def criterion_4():
    pv = P("< a, b | >")
    pg = P("< g | >")
    w = IntersectionComponent("W", pg, GroupMap.from_partial(pg, POINT),
                              GroupMap(pg, pv, {"g": W("a b a^-1 b^-1")}))
    torus = classical_svk(POINT, pv, w)
    at = abelianization(torus.pres)
    pm = P("< a | >")
    w = IntersectionComponent("W", pg, GroupMap.from_partial(pg, POINT), GroupMap(pg, pm, {"g": W("a^2")}))
    rp2 = classical_svk(POINT, pm, w)
    table = todd_coxeter(rp2.pres, 1000)
    ok = (at.free_rank, list(at.torsion)) == (2, []) and table.complete and table.cosets == 2
    return ok, f"torus {at.as_dict()}, projective plane {table.cosets} cosets (complete={table.complete})"


def criterion_5():
    def charts(mu):
        comps = tuple(trivial_component(f"c{i}", POINT, POINT) for i in range(mu + 1))
        return CombinatorialSpace((Piece("N", POINT), Piece("S", POINT)), (IntersectionEdge("e", ("N", "S"), comps),))

    sphere = tietze_simplify(pi1_atlas(charts(0)))
    circle = pi1_atlas(charts(1))
    ac = abelianization(circle)
    ok = (len(sphere.gens), len(sphere.relators)) == (0, 0) and ac == AbelianInvariants(1) \
        and len(tietze_simplify(circle).gens) == 1
    return ok, f"sphere {sphere}, circle {circle} with abelianization {ac.as_dict()}"


def criterion_6():
    rng = random.Random(6)

    def piece(rng):
        return tietze_simplify(random_presentation(rng, ["a", "b"], max_gens=2, max_rels=2, max_len=5))

    agree = 0
    for _ in range(100):
        cs = random_space(rng, piece_factory=piece, component_factory=lambda r, n, a, b: trivial_component(n, a, b))
        full = tietze_simplify(pi1_combinatorial(cs).pres)
        short = pi1_shortcut_simply_connected(cs)
        same_gens = len(full.gens) == len(short.gens)
        same_rels = Counter(map(canonical_relator, full.relators)) == Counter(map(canonical_relator, short.relators))
        agree += same_gens and same_rels
    return agree == 100, f"{agree}/100 spaces agree in generator count and relator multiset"


def criterion_7():
    rng = random.Random(7)
    good = 0
    for _ in range(200):
        cs = random_space(rng, max_pieces=6, max_edges=9, max_mu=3, simple=True,
                          piece_factory=lambda r: random_presentation(r, ["a", "b"], 2, 1, 3),
                          component_factory=lambda r, n, a, b: random_component(r, n, a, b, 1, 0, 2))
        eig = cs.edge_indexed_graph()
        induced = cycle_rank(edge_induced_graph(eig))
        expected = sum(eig.mu.values()) + cycle_rank(eig.graph)
        letters = pi1_combinatorial(cs).stable_letter_count
        good += induced == expected == letters
    return good == 200, f"{good}/200 edge-indexed graphs satisfy the count identity"


def criterion_8():
    rng = random.Random(8)
    finite = [P("< a | a^2 >"), P("< a | a^3 >"), P("< a, b | a^2, b^2, a b a b >"), P("< a | >"),
              P("< a, b | a^3, b^2, a b a b >"), POINT]


    def component(rng, name, pu, pv):
        if rng.random() < 0.4:
            return trivial_component(name, pu, pv)
        pc = P("< z | >")
        return IntersectionComponent(name, pc, random_map(rng, pc, pu, 2), random_map(rng, pc, pv, 2))

    same_ab = same_cosets = both_closed = 0
    for i in range(50):
        # odd cases are trees with one component per edge, so finite groups are common
        tree = i % 2 == 1
        pool = finite[:3] + finite[4:] if tree else finite
        cs = random_space(rng, min_pieces=2, max_pieces=4, max_edges=5, max_mu=0 if tree else 1, tree=tree,
                          piece_factory=lambda r: r.choice(pool), component_factory=component)
        first, second = peel_order(cs), peel_order(cs, largest_first=True)
        if first == second:
            second = list(reversed(first))
        assert first != second and is_admissible_order(cs, first) and is_admissible_order(cs, second)
        p1, p2 = pi1_combinatorial(cs, first).pres, pi1_combinatorial(cs, second).pres
        same_ab += abelianization(p1) == abelianization(p2)
        t1, t2 = todd_coxeter(p1, 10_000), todd_coxeter(p2, 10_000)
        if t1.complete and t2.complete:
            both_closed += 1
            same_cosets += t1.cosets == t2.cosets
    ok = same_ab == 50 and same_cosets == both_closed
    return ok, (f"{same_ab}/50 equal abelianizations; {same_cosets}/{both_closed} equal coset counts "
                f"where both enumerations closed")


def criterion_9():
    rng = random.Random(9)
    snf_ok = 0
    for _ in range(500):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        diag = smith_normal_form(m).diagonal
        nonzero = [d for d in diag if d]
        chain = all(b % a == 0 for a, b in zip(nonzero, nonzero[1:])) and all(d >= 0 for d in diag) \
            and all(d == 0 for d in diag[len(nonzero):])
        rows = rng.sample(range(r), r)
        cols = rng.sample(range(c), c)
        permuted = [[m[i][j] for j in cols] for i in rows]
        invariant = smith_normal_form(permuted).diagonal == diag == smith_normal_form(np.array(m).T).diagonal
        products, acc = [], 1
        for d in diag:
            acc *= d
            products.append(acc)
        minors = determinant_divisors(m) == products
        snf_ok += chain and invariant and minors
    tietze_ok = 0
    for _ in range(500):
        p = random_presentation(rng, ["a", "b", "c", "d"], max_gens=4, max_rels=4, max_len=8)
        tietze_ok += abelianization(tietze_simplify(p)) == abelianization(p)
    ok = snf_ok == 500 and tietze_ok == 500
    return ok, f"{snf_ok}/500 matrices match the minors oracle and invariances; {tietze_ok}/500 Tietze runs keep H1"


_FUZZ_TOKENS = [b"group", b"space", b"atlas", b"graph", b"attach", b"piece", b"glue", b"comp",
                b"into", b"vertex", b"edge", b"semi", b"base", b"H", b"loop", b"<", b">", b"|",
                b",", b";", b"{", b"}", b"(", b")", b"=", b":", b"->", b"^", b"-", b"1", b"2",
                b"a", b"b", b"U", b"V", b"#", b"\n", b" ", b"\xff", b"\xc3", b"\xe2\x82\xac", b"\x00"]


def _mutate(rng, data: bytes) -> bytes:
    b = bytearray(data)
    for _ in range(rng.randint(1, 4)):
        op = rng.randrange(6)
        i = rng.randint(0, len(b))
        if op == 0 and b:
            del b[min(i, len(b) - 1)]
        elif op == 1:
            b[i:i] = rng.choice(_FUZZ_TOKENS)
        elif op == 2 and b:
            b[min(i, len(b) - 1)] = rng.randrange(256)
        elif op == 3 and b:
            j = rng.randint(i, len(b))
            del b[i:j]
        elif op == 4:
            j = rng.randint(0, len(b))
            b[i:i] = b[j:j + rng.randint(1, 20)]
        else:
            b[i:i] = bytes(rng.randrange(256) for _ in range(rng.randint(1, 4)))
    return bytes(b)


def criterion_10():
    fixpoints = 0
    for path in CORPUS:
        doc = parse(path.read_bytes())
        text = print_document(doc)
        fixpoints += parse(text) == doc and print_document(parse(text)) == text
    rng = random.Random(10)
    seeds = [p.read_bytes() for p in CORPUS]
    crashes, parsed, diagnosed = [], 0, 0
    for i in range(10_000):
        if i % 10 == 0:
            data = bytes(rng.randrange(256) for _ in range(rng.randint(0, 60)))
        elif i % 10 == 1:
            data = b" ".join(rng.choice(_FUZZ_TOKENS) for _ in range(rng.randint(0, 30)))
        else:
            data = _mutate(rng, rng.choice(seeds))
        try:
            doc = parse(data)
        except DslError as e:
            if e.kind in DSL_KINDS and e.span.line >= 1 and e.span.column >= 1 and 0 <= e.span.start <= len(data):
                diagnosed += 1
            else:
                crashes.append((data, f"malformed diagnostic {e.kind} at {e.span}"))
            continue
        except Exception as e:  # any other exception is a crash
            crashes.append((data, repr(e)))
            continue
        try:
            text = print_document(doc)
            if parse(text) != doc:
                crashes.append((data, "round trip changed the document"))
                continue
            build_tasks(doc)
            parsed += 1
        except Exception as e:
            crashes.append((data, repr(e)))
    ok = fixpoints == len(CORPUS) and not crashes and len(CORPUS) > 0
    detail = (f"{fixpoints}/{len(CORPUS)} corpus files are printer fixpoints; 10000 fuzz cases: "
              f"{parsed} parsed, {diagnosed} structured diagnostics, {len(crashes)} crashes")
    if crashes:
        detail += f"; first crash {crashes[0][1]} on {crashes[0][0][:60]!r}"
    return ok, detail


CRITERIA = {
    1: ("circle from two arcs", criterion_1),
    2: ("one component equals classical", criterion_2),
    3: ("torus and Klein bottle", criterion_3),
    4: ("classical torus and projective plane", criterion_4),
    5: ("sphere and circle atlases", criterion_5),
    6: ("simply connected components shortcut", criterion_6),
    7: ("edge-induced graph count identity", criterion_7),
    8: ("peel-order independence", criterion_8),
    9: ("oracle self-tests", criterion_9),
    10: ("parser robustness", criterion_10),
}


def _line(n):
    title, fn = CRITERIA[n]
    ok, detail = fn()
    return ok, f"[acceptance {n:2d}] {'PASS' if ok else 'FAIL'}: {title}: {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = _line(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_line(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
