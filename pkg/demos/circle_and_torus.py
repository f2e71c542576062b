"""
Circles and tori from pieces
============================

Glue two contractible arcs along two points and a free generator appears.
Glue a disc onto a punctured torus and the commutator dies.
"""

from vankampen import (
    GroupMap, IntersectionComponent, Presentation, abelianization, classical_svk,
    generalized_svk, parse_presentation, parse_word,
)

# Two arcs meeting in two contractible components.  Each piece and each
# component has the trivial group, so only the stable letter survives.
point = Presentation()
comps = [IntersectionComponent(f"c{i}", point, GroupMap(point, point, {}), GroupMap(point, point, {}))
         for i in (1, 2)]
circle = generalized_svk(point, point, comps)
print("circle:", circle.pres)
print("  H1 =", abelianization(circle.pres))

# The punctured torus retracts onto a wedge of two circles; its boundary
# circle reads a b a^-1 b^-1.  A disc kills that loop.
f2 = parse_presentation("< a, b | >")
z = parse_presentation("< z | >")
boundary = IntersectionComponent(
    "boundary", z,
    GroupMap.from_partial(z, f2, {z.gens[0]: parse_word("a b a^-1 b^-1")}),
    GroupMap.from_partial(z, point),
)
torus = classical_svk(f2, point, boundary)
print("torus:", torus.pres)
print("  H1 =", abelianization(torus.pres))

# Provenance says where each relator came from.
for src in torus.provenance:
    print("  ", src.word, "<-", src.kind, src.origin, src.detail)
