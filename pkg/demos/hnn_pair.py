"""
Torus and Klein bottle as HNN gluings
=====================================

An annulus glued to another annulus along two circles gives the torus or
the Klein bottle, depending on how the second circle is attached.  The
two components produce one stable letter, and the abelianization tells
the two surfaces apart.
"""

from vankampen import GroupMap, IntersectionComponent, abelianization, generalized_svk, parse_presentation, parse_word, tietze_simplify

A = parse_presentation("< a | >")
B = parse_presentation("< b | >")
Z = parse_presentation("< z | >")
z = Z.gens[0]


def component(name, image_a, image_b):
    return IntersectionComponent(
        name, Z,
        GroupMap(Z, A, {z: parse_word(image_a)}),
        GroupMap(Z, B, {z: parse_word(image_b)}),
    )


for label, twist in (("torus", "b"), ("Klein bottle", "b^-1")):
    result = generalized_svk(A, B, [component("c1", "a", "b"), component("c2", "a", twist)])
    print(f"{label}: {result.pres}")
    print(f"  simplified: {tietze_simplify(result.pres)}")
    print(f"  H1 = {abelianization(result.pres)}")
