"""
Free words, finite presentations and homomorphisms given on generators.

Words are tuples of signed letters, kept freely reduced at all times.
Relators inside a :class:`Presentation` are additionally cyclically
reduced and never empty.  Equality of words is free-group equality; no
attempt is made to decide equality modulo relators.

Text syntax
-----------
A word is a whitespace separated list of tokens ``name`` or ``name^k``
(``k`` a nonzero integer, usually ``-1``); ``1`` is the empty word.
A presentation is written ``< a, b | a b a^-1 b^-1 >``.  Namespaced
generators are written ``U.a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import MalformedInputError

__all__ = [
    "GeneratorSym", "Letter", "Word", "Presentation", "GroupMap",
    "AbelianInvariants", "EPSILON", "TRIVIAL_GROUP",
    "free_reduce", "cyclic_reduce", "concat", "invert", "apply_map",
    "canonical_relator", "rename", "disjointize", "free_product",
    "free_group", "quotient_by", "normalize_relators", "tietze_simplify",
    "exponent_matrix", "parse_word", "parse_presentation", "fresh_symbol",
    "DEFAULT_TIETZE_BUDGET",
]

_TOKEN = r"[A-Za-z][A-Za-z0-9_]*"
_NAME_RE = re.compile(rf"^{_TOKEN}$")
_NAMESPACE_RE = re.compile(rf"^{_TOKEN}(?:\.{_TOKEN})*$")
_WORD_TOKEN_RE = re.compile(rf"^({_TOKEN}(?:\.{_TOKEN})*)(?:\^(-?\d+))?$")

DEFAULT_TIETZE_BUDGET = 10_000


@dataclass(frozen=True)
class GeneratorSym:
    """A generator name, optionally qualified by the piece it came from."""

    name: str
    namespace: str | None = None

    def __post_init__(self):
        if not isinstance(self.name, str) or not _NAME_RE.match(self.name):
            raise MalformedInputError(f"invalid generator name {self.name!r}")
        if self.namespace is not None and not _NAMESPACE_RE.match(self.namespace):
            raise MalformedInputError(f"invalid namespace {self.namespace!r}")

    def __str__(self):
        if self.namespace is None:
            return self.name
        return f"{self.namespace}.{self.name}"

    def __repr__(self):
        return f"GeneratorSym({str(self)!r})"

    @property
    def sort_key(self):
        return (self.namespace or "", self.name)

    def qualified(self, namespace: str) -> GeneratorSym:
        """Return this symbol moved under ``namespace``."""
        inner = namespace if self.namespace is None else f"{namespace}.{self.namespace}"
        return GeneratorSym(self.name, inner)

    @classmethod
    def parse(cls, text: str) -> GeneratorSym:
        if not _NAMESPACE_RE.match(text):
            raise MalformedInputError(f"invalid generator {text!r}")
        namespace, _, name = text.rpartition(".")
        return cls(name, namespace or None)


def _sym(x) -> GeneratorSym:
    if isinstance(x, GeneratorSym):
        return x
    if isinstance(x, str):
        return GeneratorSym.parse(x)
    raise MalformedInputError(f"not a generator: {x!r}")


class Letter(NamedTuple):
    sym: GeneratorSym
    sign: int

    @property
    def inverse(self) -> Letter:
        return Letter(self.sym, -self.sign)

    def __str__(self):
        return str(self.sym) if self.sign > 0 else f"{self.sym}^-1"


def _reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for letter in letters:
        if letter.sign not in (1, -1):
            raise MalformedInputError(f"letter sign must be +1 or -1, got {letter.sign}")
        if stack and stack[-1].sym == letter.sym and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced element of a free group.

    The constructor accepts any sequence of :class:`Letter` (or
    ``(symbol, sign)`` pairs) and stores its free reduction, so every
    ``Word`` in existence is reduced.

    >>> a, b = GeneratorSym("a"), GeneratorSym("b")
    >>> str(Word([(a, 1), (a, -1), (b, 1)]))
    'b'
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        raw = (Letter(_sym(s), int(e)) for s, e in self.letters)
        object.__setattr__(self, "letters", _reduce_letters(raw))

    @classmethod
    def gen(cls, sym, power: int = 1) -> Word:
        s = _sym(sym)
        sign = 1 if power > 0 else -1
        return cls([(s, sign)] * abs(power))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else invert(self)
        return Word(base.letters * abs(n))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(str(letter) for letter in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def symbols(self) -> set[GeneratorSym]:
        return {letter.sym for letter in self.letters}

    def count(self, sym: GeneratorSym) -> int:
        """Number of occurrences of ``sym`` regardless of sign."""
        return sum(1 for letter in self.letters if letter.sym == sym)

    def exponent_sum(self, sym: GeneratorSym) -> int:
        return sum(letter.sign for letter in self.letters if letter.sym == sym)

    def substitute(self, images: Mapping[GeneratorSym, Word]) -> Word:
        """Replace every letter by its image (inverted for sign -1).

        Symbols missing from ``images`` are left in place.
        """
        out: list[Letter] = []
        for letter in self.letters:
            image = images.get(letter.sym)
            if image is None:
                out.append(letter)
            elif letter.sign > 0:
                out.extend(image.letters)
            else:
                out.extend(invert(image).letters)
        return Word(out)

    def rename(self, table: Mapping[GeneratorSym, GeneratorSym]) -> Word:
        return Word([(table.get(l.sym, l.sym), l.sign) for l in self.letters])


EPSILON = Word()


def free_reduce(letters: Iterable) -> Word:
    """Freely reduce a raw sequence of letters or ``(symbol, sign)`` pairs."""
    if isinstance(letters, Word):
        return letters
    return Word(tuple(letters))


def cyclic_reduce(w: Word) -> Word:
    """Strip cancelling first/last letter pairs; the result is conjugate to ``w``."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i].sym == letters[j].sym and letters[i].sign == -letters[j].sign:
        i += 1
        j -= 1
    if i == 0:
        return w
    return Word(letters[i:j + 1])


def concat(u: Word, v: Word) -> Word:
    return Word(u.letters + v.letters)


def invert(w: Word) -> Word:
    return Word(tuple(l.inverse for l in reversed(w.letters)))


def _letter_key(letter: Letter):
    return (letter.sym.sort_key, 0 if letter.sign > 0 else 1)


def canonical_relator(w: Word) -> tuple:
    """Key identifying a relator up to cyclic rotation and inversion.

    Two relators have the same key exactly when one is a cyclic
    permutation of the other or of its inverse.  The empty word maps to
    the empty tuple.
    """
    w = cyclic_reduce(w)
    if not w:
        return ()
    best = None
    for candidate in (w.letters, invert(w).letters):
        n = len(candidate)
        for i in range(n):
            rotated = candidate[i:] + candidate[:i]
            key = tuple(_letter_key(l) for l in rotated)
            if best is None or key < best:
                best = key
    return best


@dataclass(frozen=True)
class Presentation:
    """A finitely presented group ``< gens | relators >``.

    Generators are distinct :class:`GeneratorSym`; relators are nonempty,
    cyclically reduced words over them.  Relators are not deduplicated
    here; :func:`quotient_by` and :func:`tietze_simplify` do that.
    """

    gens: tuple[GeneratorSym, ...] = ()
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(_sym(g) for g in self.gens)
        if len(set(gens)) != len(gens):
            seen, dup = set(), None
            for g in gens:
                if g in seen:
                    dup = g
                    break
                seen.add(g)
            raise MalformedInputError(f"duplicate generator {dup}")
        allowed = set(gens)
        relators = tuple(self.relators)
        for r in relators:
            if not isinstance(r, Word):
                raise MalformedInputError(f"relator must be a Word, got {r!r}")
            if not r:
                raise MalformedInputError("relator reduces to the identity")
            if cyclic_reduce(r) != r:
                raise MalformedInputError(f"relator {r} is not cyclically reduced")
            unknown = r.symbols() - allowed
            if unknown:
                name = min(unknown, key=lambda s: s.sort_key)
                raise MalformedInputError(f"relator {r} uses unknown generator {name}")
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "relators", relators)

    @classmethod
    def build(cls, gens, relators=()) -> Presentation:
        """Construct from arbitrary words, cyclically reducing and dropping ``1``."""
        return cls(tuple(gens), normalize_relators(relators))

    @classmethod
    def parse(cls, text: str) -> Presentation:
        return parse_presentation(text)

    @property
    def rank(self) -> int:
        return len(self.gens)

    def __str__(self):
        gens = ", ".join(str(g) for g in self.gens)
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >".replace("  ", " ")

    def __repr__(self):
        return f"Presentation({str(self)!r})"


TRIVIAL_GROUP = Presentation()


def free_group(names: Iterable) -> Presentation:
    return Presentation(tuple(_sym(n) for n in names))


def normalize_relators(words: Iterable[Word]) -> tuple[Word, ...]:
    """Cyclically reduce each word and drop the ones equal to ``1``."""
    out = []
    for w in words:
        r = cyclic_reduce(free_reduce(w))
        if r:
            out.append(r)
    return tuple(out)


@dataclass(frozen=True, eq=True)
class GroupMap:
    """A homomorphism ``source -> target`` given by images of generators.

    ``images`` must be total on ``source.gens`` and every image must be a
    word over ``target.gens``.  Use :meth:`from_partial` to let missing
    generators map to the identity.
    """

    source: Presentation
    target: Presentation
    images: Mapping[GeneratorSym, Word] = field(default_factory=dict)

    def __post_init__(self):
        images = {_sym(k): (v if isinstance(v, Word) else parse_word(v))
                  for k, v in dict(self.images).items()}
        source_gens = set(self.source.gens)
        extra = set(images) - source_gens
        if extra:
            raise MalformedInputError(
                f"image given for non-generator {min(extra, key=lambda s: s.sort_key)}")
        missing = [g for g in self.source.gens if g not in images]
        if missing:
            raise MalformedInputError(f"no image given for generator {missing[0]}")
        allowed = set(self.target.gens)
        for g in self.source.gens:
            unknown = images[g].symbols() - allowed
            if unknown:
                raise MalformedInputError(
                    f"image of {g} uses {min(unknown, key=lambda s: s.sort_key)}, "
                    f"which is not a generator of the target")
        # Ordered like source.gens so equal maps compare and print the same.
        object.__setattr__(self, "images", {g: images[g] for g in self.source.gens})

    __hash__ = None

    @classmethod
    def from_partial(cls, source, target, images=None) -> GroupMap:
        given = {_sym(k): v for k, v in dict(images or {}).items()}
        full = {g: given.pop(g, EPSILON) for g in source.gens}
        full.update(given)  # leftovers are rejected by __post_init__
        return cls(source, target, full)

    def __call__(self, w: Word) -> Word:
        return apply_map(self, w)

    def retarget(self, target: Presentation,
                 table: Mapping[GeneratorSym, GeneratorSym] | None = None) -> GroupMap:
        """Same map composed with a renaming of (or inclusion into) ``target``."""
        table = table or {}
        return GroupMap(self.source, target,
                        {g: w.rename(table) for g, w in self.images.items()})

    def rename_source(self, source: Presentation,
                      table: Mapping[GeneratorSym, GeneratorSym]) -> GroupMap:
        return GroupMap(source, self.target,
                        {table.get(g, g): w for g, w in self.images.items()})


def apply_map(f: GroupMap, w: Word) -> Word:
    """Evaluate ``f`` on a word over ``f.source.gens``.

    Raises
    ------
    MalformedInputError
        If ``w`` contains a symbol that is not a source generator.
    """
    for letter in w.letters:
        if letter.sym not in f.images:
            raise MalformedInputError(f"{letter.sym} is not a generator of the map's source")
    return w.substitute(f.images)


def rename(p: Presentation, table: Mapping[GeneratorSym, GeneratorSym]) -> Presentation:
    return Presentation(tuple(table.get(g, g) for g in p.gens),
                        tuple(r.rename(table) for r in p.relators))


def _default_names(k: int) -> list[str]:
    return [f"P{i}" for i in range(1, k + 1)]


def disjointize(ps: Sequence[Presentation], names: Sequence[str] | None = None):
    """Make generator sets pairwise disjoint by namespacing.

    If the inputs already have disjoint generators they are returned
    unchanged.  Otherwise every presentation ``i`` has each generator
    moved under namespace ``names[i]``, which keeps output symbols
    traceable to the piece they came from.

    Returns
    -------
    presentations : list of Presentation
    tables : list of dict
        ``tables[i]`` maps each generator of ``ps[i]`` to its new symbol.
        Each table is injective, so it can be inverted.
    """
    ps = list(ps)
    if names is None:
        names = _default_names(len(ps))
    names = list(names)
    if len(names) != len(ps):
        raise ValueError("need one namespace per presentation")
    if len(set(names)) != len(names):
        raise ValueError("namespaces must be distinct")

    seen: set[GeneratorSym] = set()
    clash = False
    for p in ps:
        if seen.intersection(p.gens):
            clash = True
            break
        seen.update(p.gens)
    if not clash:
        return ps, [{g: g for g in p.gens} for p in ps]

    out, tables = [], []
    for p, name in zip(ps, names):
        table = {g: g.qualified(name) for g in p.gens}
        out.append(rename(p, table))
        tables.append(table)
    return out, tables


def free_product(ps: Sequence[Presentation], names: Sequence[str] | None = None) -> Presentation:
    """Free product; generator and relator lists are concatenated."""
    ps, _ = disjointize(ps, names)
    gens: list[GeneratorSym] = []
    rels: list[Word] = []
    for p in ps:
        gens.extend(p.gens)
        rels.extend(p.relators)
    return Presentation(tuple(gens), tuple(rels))


def quotient_by(p: Presentation, extra: Iterable[Word]) -> Presentation:
    """Append relators, skipping ``1`` and ones already present up to rotation/inversion."""
    allowed = set(p.gens)
    seen = {canonical_relator(r) for r in p.relators}
    rels = list(p.relators)
    for w in extra:
        unknown = w.symbols() - allowed
        if unknown:
            raise MalformedInputError(
                f"relator {w} uses unknown generator {min(unknown, key=lambda s: s.sort_key)}")
        r = cyclic_reduce(w)
        key = canonical_relator(r)
        if not r or key in seen:
            continue
        seen.add(key)
        rels.append(r)
    return Presentation(p.gens, tuple(rels))


def fresh_symbol(name: str, taken) -> GeneratorSym:
    """``GeneratorSym(name)`` unless taken, else the first free ``name_k``."""
    sym = GeneratorSym(name)
    k = 1
    while sym in taken:
        sym = GeneratorSym(f"{name}_{k}")
        k += 1
    return sym


# Tietze simplification

def _dedupe(rels):
    seen, out = set(), []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = canonical_relator(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def _total_length(rels) -> int:
    return sum(len(r) for r in rels)


def _eliminate(rels, index, x):
    """Solve relator ``rels[index]`` for ``x`` and substitute everywhere else."""
    r = rels[index].letters
    pos = next(i for i, l in enumerate(r) if l.sym == x)
    rotated = r[pos:] + r[:pos]
    rest = Word(rotated[1:])
    # x w = 1  =>  x = w^-1 ;  x^-1 w = 1  =>  x = w
    value = invert(rest) if rotated[0].sign > 0 else rest
    images = {x: value}
    return _dedupe([w.substitute(images) for i, w in enumerate(rels) if i != index])


def _find_elimination(gens, rels):
    old_total = _total_length(rels)
    order = sorted(range(len(rels)), key=lambda i: len(rels[i]))
    for i in order:
        r = rels[i]
        for x in gens:
            if r.count(x) != 1:
                continue
            new_rels = _eliminate(rels, i, x)
            if _total_length(new_rels) <= old_total:
                return x, new_rels
    return None


def tietze_simplify(p: Presentation, budget: int = DEFAULT_TIETZE_BUDGET, *,
                    drop_unused: bool = False, full_output: bool = False):
    """Simplify a presentation with conservative Tietze moves.

    The moves, applied in a deterministic loop until nothing changes or
    ``budget`` steps have been taken, are:

    * cyclic reduction of relators and removal of ``1`` and duplicates
      (up to rotation and inversion);
    * elimination of a generator ``x`` occurring exactly once in some
      relator ``x w`` (or ``x^-1 w``), substituting ``w^-1`` (or ``w``)
      for ``x``; only taken when the total relator length does not grow;
    * with ``drop_unused=True``, deletion of generators that occur in no
      relator.  This changes the group (it drops free factors) and is
      meant for reporting the rank of the remaining part.

    Parameters
    ----------
    p : Presentation
    budget : int
        Maximum number of generator eliminations.
    drop_unused : bool
    full_output : bool
        If True, return ``(presentation, exhausted)`` where ``exhausted``
        tells whether the budget ran out before a fixpoint was reached.
    """
    gens = list(p.gens)
    rels = _dedupe(p.relators)
    steps = 0
    exhausted = False
    while True:
        if drop_unused:
            used = set().union(*(r.symbols() for r in rels)) if rels else set()
            gens = [g for g in gens if g in used]
        move = _find_elimination(gens, rels)
        if move is None:
            break
        if steps >= budget:
            exhausted = True
            break
        x, rels = move
        gens.remove(x)
        steps += 1
    result = Presentation(tuple(gens), tuple(rels))
    if full_output:
        return result, exhausted
    return result


def exponent_matrix(p: Presentation) -> np.ndarray:
    """Integer matrix of exponent sums, one row per relator, one column per generator."""
    col = {g: j for j, g in enumerate(p.gens)}
    m = np.zeros((len(p.relators), len(p.gens)), dtype=np.int64)
    for i, r in enumerate(p.relators):
        for letter in r.letters:
            m[i, col[letter.sym]] += letter.sign
    return m


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z^free_rank + Z/d1 + Z/d2 + ...`` with ``d1 | d2 | ...`` and each ``di >= 2``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        torsion = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in torsion):
            raise ValueError("torsion coefficients must be at least 2")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise ValueError(f"torsion {torsion} is not a divisibility chain")
        object.__setattr__(self, "torsion", torsion)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


# Text syntax

def parse_word(text: str) -> Word:
    """Parse ``"a b^-1 c"``; ``"1"`` (or empty text) is the identity."""
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _WORD_TOKEN_RE.match(tok)
        if not m:
            raise MalformedInputError(f"bad word token {tok!r}")
        sym = GeneratorSym.parse(m.group(1))
        power = int(m.group(2)) if m.group(2) is not None else 1
        sign = 1 if power > 0 else -1
        letters.extend([(sym, sign)] * abs(power))
    return Word(letters)


def parse_presentation(text: str) -> Presentation:
    """Parse ``"< a, b | a b a^-1 b^-1 >"``.

    Relators are cyclically reduced and ``1`` entries are dropped.
    """
    s = text.strip()
    if not (s.startswith("<") and s.endswith(">")) or s.count("|") != 1:
        raise MalformedInputError(f"bad presentation {text!r}")
    gens_text, rels_text = s[1:-1].split("|")
    gens = [GeneratorSym.parse(g.strip()) for g in gens_text.split(",") if g.strip()]
    rels = [parse_word(r) for r in rels_text.split(",") if r.strip()]
    pres = Presentation.build(gens)
    allowed = set(pres.gens)
    for r in rels:
        unknown = r.symbols() - allowed
        if unknown:
            raise MalformedInputError(
                f"relator {r} uses unknown generator {min(unknown, key=lambda s: s.sort_key)}")
    return Presentation.build(gens, rels)
