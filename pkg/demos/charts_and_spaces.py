"""
Spaces covered by charts
========================

A combinatorial space lists pieces and, for every pair that meets, the
components of their intersection.  When all pieces are contractible the
group is generated by stable letters alone.
"""

from pathlib import Path

from vankampen import abelianization, expected_stable_letters, peel_order, pi1_combinatorial, tietze_simplify
from vankampen.dsl import build_tasks, parse

here = Path(__file__).parent
doc = parse((here / "svk" / "atlas.svk").read_bytes())

for task in build_tasks(doc):
    cs = task.space
    result = pi1_combinatorial(cs)
    print(f"{task.name}: gluing order {peel_order(cs)}")
    print(f"  raw:        {result.pres}")
    print(f"  simplified: {tietze_simplify(result.pres)}")
    print(f"  stable letters: {result.stable_letter_count} (expected {expected_stable_letters(cs)})")
    print(f"  H1 = {abelianization(result.pres)}")
