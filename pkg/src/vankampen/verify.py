"""
Independent checks on computed presentations.

Abelianization is read off the Smith normal form of the relator exponent
matrix.  Small finite groups are checked by Todd-Coxeter enumeration of
the cosets of the trivial subgroup, which returns the group order when it
closes inside the coset cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .words import AbelianInvariants, GroupMap, Presentation, Word, apply_map, exponent_matrix

__all__ = [
    "SNFResult", "CosetTable", "MapCheckReport", "DEFAULT_COSET_CAP",
    "smith_normal_form", "smith_normal_form_with_transforms", "in_row_span",
    "abelianization", "todd_coxeter", "check_map_abelianized",
]

DEFAULT_COSET_CAP = 50_000


@dataclass(frozen=True)
class SNFResult:
    """Diagonal ``d1 | d2 | ...`` (length ``min(rows, cols)``, zeros last)."""

    diagonal: tuple[int, ...]
    rank: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def _as_int_rows(m) -> list[list[int]]:
    if isinstance(m, np.ndarray):
        if m.ndim != 2:
            raise ValueError("expected a 2-d integer matrix")
        return [[int(x) for x in row] for row in m.tolist()]
    rows = [[int(x) for x in row] for row in m]
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def _shape(m):
    if isinstance(m, np.ndarray):
        return m.shape
    rows = list(m)
    return (len(rows), len(rows[0]) if rows else 0)


class _Reducer:
    """In-place unimodular reduction of ``a``; ``right`` accumulates column operations."""

    def __init__(self, a, ncols, track):
        self.a = a
        self.m = len(a)
        self.n = ncols
        self.right = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track else None

    def swap_rows(self, i, k):
        self.a[i], self.a[k] = self.a[k], self.a[i]

    def swap_cols(self, j, k):
        for row in self.a:
            row[j], row[k] = row[k], row[j]
        if self.right is not None:
            for row in self.right:
                row[j], row[k] = row[k], row[j]

    def add_row(self, dst, src, q):
        # row_dst += q * row_src
        rd, rs = self.a[dst], self.a[src]
        for j in range(self.n):
            rd[j] += q * rs[j]

    def add_col(self, dst, src, q):
        for row in self.a:
            row[dst] += q * row[src]
        if self.right is not None:
            for row in self.right:
                row[dst] += q * row[src]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]

    def run(self):
        a, m, n = self.a, self.m, self.n
        for t in range(min(m, n)):
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            self.swap_rows(t, best[1])
            self.swap_cols(t, best[2])
            while True:
                p = a[t][t]
                clean = True
                for i in range(t + 1, m):
                    if a[i][t]:
                        self.add_row(i, t, -(a[i][t] // p))
                        clean = clean and a[i][t] == 0
                for j in range(t + 1, n):
                    if a[t][j]:
                        self.add_col(j, t, -(a[t][j] // p))
                        clean = clean and a[t][j] == 0
                if not clean:
                    # a remainder smaller than the pivot is left; make it the pivot
                    best = (abs(p), t, t)
                    for i in range(t + 1, m):
                        if a[i][t] and abs(a[i][t]) < best[0]:
                            best = (abs(a[i][t]), i, t)
                    for j in range(t + 1, n):
                        if a[t][j] and abs(a[t][j]) < best[0]:
                            best = (abs(a[t][j]), t, j)
                    self.swap_rows(t, best[1])
                    self.swap_cols(t, best[2])
                    continue
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                self.add_row(t, bad[0], 1)
            if a[t][t] < 0:
                self.negate_row(t)
        return self


def smith_normal_form(m) -> SNFResult:
    """Smith normal form diagonal of an integer matrix.

    Uses exact Python integers and elementary row/column operations,
    always pivoting on the entry of least absolute value, so the pivot
    strictly decreases until it divides its row, column and the rest of
    the matrix.

    Parameters
    ----------
    m : array_like of int, shape (rows, cols)

    Returns
    -------
    SNFResult
        ``diagonal`` has ``min(rows, cols)`` nonnegative entries forming a
        divisibility chain with zeros last; ``rank`` counts the nonzero ones.

    Examples
    --------
    >>> smith_normal_form([[2, 0], [0, 3]]).diagonal
    (1, 6)
    """
    rows = _as_int_rows(m)
    _, ncols = _shape(m)
    red = _Reducer(rows, ncols, track=False).run()
    diag = tuple(red.a[i][i] for i in range(min(red.m, ncols)))
    return SNFResult(diag, sum(1 for d in diag if d))


def smith_normal_form_with_transforms(m):
    """Return ``(D, R)`` with ``D = L @ m @ R`` for some unimodular ``L``.

    ``D`` is the full Smith form as a list of rows; ``R`` is the
    accumulated (unimodular) column transform.  ``L`` is not tracked.
    """
    rows = _as_int_rows(m)
    _, ncols = _shape(m)
    red = _Reducer(rows, ncols, track=True).run()
    return red.a, red.right


def in_row_span(m, v: Sequence[int]) -> bool:
    """Whether the integer vector ``v`` is an integer combination of the rows of ``m``."""
    v = [int(x) for x in v]
    nrows, ncols = _shape(m)
    if len(v) != ncols:
        raise ValueError("vector length does not match the column count")
    if nrows == 0:
        return not any(v)
    d, r = smith_normal_form_with_transforms(m)
    # x m = v  <=>  y D = v R  with y = x L^-1
    w = [sum(v[i] * r[i][j] for i in range(ncols)) for j in range(ncols)]
    for j in range(ncols):
        dj = d[j][j] if j < nrows else 0
        if dj == 0:
            if w[j]:
                return False
        elif w[j] % dj:
            return False
    return True


def abelianization(p: Presentation) -> AbelianInvariants:
    """``H_1`` of the presented group: free rank and torsion coefficients."""
    snf = smith_normal_form(exponent_matrix(p))
    return AbelianInvariants(len(p.gens) - snf.rank, snf.torsion)


@dataclass(frozen=True)
class CosetTable:
    """Outcome of a coset enumeration over the trivial subgroup.

    When ``complete`` is true, ``cosets`` is the order of the group.
    Otherwise the enumeration hit ``cap`` and ``cosets`` is the number of
    live cosets at that moment.
    """

    cosets: int
    complete: bool
    cap: int


class _CapReached(Exception):
    pass


class _Enumerator:
    # Column 2k acts by generator k, column 2k + 1 by its inverse.

    def __init__(self, p: Presentation, cap: int):
        self.ncols = 2 * len(p.gens)
        index = {g: k for k, g in enumerate(p.gens)}
        self.rels = [[2 * index[l.sym] + (0 if l.sign > 0 else 1) for l in r.letters]
                     for r in p.relators]
        self.cap = cap
        self.table = [[None] * self.ncols]
        self.parent = [0]

    def define(self, c, x):
        if len(self.table) >= self.cap:
            raise _CapReached
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(new)
        self.table[c][x] = new
        self.table[new][x ^ 1] = c

    def rep(self, k):
        parent = self.parent
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def merge(self, k, l, queue):
        a, b = self.rep(k), self.rep(l)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        queue.append(hi)

    def coincidence(self, a, b):
        table = self.table
        queue = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][x ^ 1] = None
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] is not None:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self.merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(self, c, w):
        table = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def run(self):
        c = 0
        while c < len(self.table):
            if self.parent[c] == c:
                for w in self.rels:
                    self.scan_and_fill(c, w)
                    if self.parent[c] != c:
                        break
                if self.parent[c] == c:
                    for x in range(self.ncols):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1

    def live(self):
        return [c for c in range(len(self.table)) if self.parent[c] == c]

    def closed(self):
        table = self.table
        for c in self.live():
            row = table[c]
            if any(d is None or self.parent[d] != d for d in row):
                return False
            for w in self.rels:
                f = c
                for x in w:
                    f = table[f][x]
                if f != c:
                    return False
        return True


def todd_coxeter(p: Presentation, cap: int = DEFAULT_COSET_CAP) -> CosetTable:
    """Enumerate cosets of the trivial subgroup (HLT strategy).

    Cosets are processed in order of definition; each live coset has
    every relator scanned from it, filling gaps by defining new cosets
    and processing coincidences immediately, and then has its undefined
    row entries defined.  If the total number of defined cosets would
    exceed ``cap``, enumeration stops with ``complete=False``.

    >>> from vankampen.words import parse_presentation
    >>> todd_coxeter(parse_presentation("< a, b | a^2, b^2, a b a b >")).cosets
    4
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    e = _Enumerator(p, cap)
    try:
        e.run()
    except _CapReached:
        return CosetTable(len(e.live()), False, cap)
    return CosetTable(len(e.live()), e.closed(), cap)


@dataclass(frozen=True)
class MapCheckReport:
    passed: bool
    violations: tuple[tuple[Word, tuple[int, ...]], ...] = ()

    def summary(self) -> str:
        if self.passed:
            return "ok"
        parts = [f"relator {r} maps to exponent vector {list(v)}" for r, v in self.violations]
        return "; ".join(parts) + ", outside the row span of the target relators"


def check_map_abelianized(f: GroupMap) -> MapCheckReport:
    """Necessary condition for ``f`` to be a homomorphism, checked after abelianizing.

    Every source relator must map into the normal closure of the target
    relators; abelianized, its image's exponent vector must lie in the
    integer row span of the target exponent matrix.
    """
    target = exponent_matrix(f.target)
    col = {g: j for j, g in enumerate(f.target.gens)}
    violations = []
    for r in f.source.relators:
        image = apply_map(f, r)
        v = [0] * len(f.target.gens)
        for letter in image.letters:
            v[col[letter.sym]] += letter.sign
        if not in_row_span(target, v):
            violations.append((r, tuple(v)))
    return MapCheckReport(not violations, tuple(violations))
