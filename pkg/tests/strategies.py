"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from vankampen.words import GeneratorSym, Presentation, Word, cyclic_reduce

NAMES = ("a", "b", "c")
SYMS = tuple(GeneratorSym(n) for n in NAMES)


def raw_letters(syms=SYMS, max_size=12):
    return st.lists(st.tuples(st.sampled_from(syms), st.sampled_from((1, -1))), max_size=max_size)


def words(syms=SYMS, max_size=12):
    return raw_letters(syms, max_size).map(Word)


@st.composite
def presentations(draw, max_gens=3, max_rels=3, max_len=6, prefix=""):
    n = draw(st.integers(1, max_gens))
    syms = tuple(GeneratorSym(f"{prefix}{NAMES[i]}") for i in range(n))
    rels = []
    for _ in range(draw(st.integers(0, max_rels))):
        w = cyclic_reduce(draw(words(syms, max_len)))
        if w:
            rels.append(w)
    return Presentation.build(syms, rels)
