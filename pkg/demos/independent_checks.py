"""
Checking answers independently
==============================

Presentations are hard to compare directly.  The abelianization comes
from the Smith normal form of the relator exponent matrix, and small
finite groups can be counted by coset enumeration.
"""

from vankampen import (
    GroupMap, abelianization, check_map_abelianized, exponent_matrix, parse_presentation,
    parse_word, smith_normal_form, todd_coxeter,
)

klein = parse_presentation("< a, b | a b a^-1 b >")
print("exponent matrix:\n", exponent_matrix(klein))
print("Smith form:", smith_normal_form(exponent_matrix(klein)).diagonal)
print("H1 =", abelianization(klein))

for text in ("< a | a^2 >", "< a, b | a^2, b^2, a b a b >", "< a, b | a^3, b^2, a b a b >"):
    table = todd_coxeter(parse_presentation(text))
    print(f"|{text}| = {table.cosets}")

# z -> a cannot be a homomorphism from Z/2 to Z/3; abelianizing catches it.
src = parse_presentation("< z | z^2 >")
dst = parse_presentation("< a | a^3 >")
report = check_map_abelianized(GroupMap(src, dst, {src.gens[0]: parse_word("a")}))
print("Z/2 -> Z/3:", report.summary())
