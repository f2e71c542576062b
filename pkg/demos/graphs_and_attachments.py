"""
Graphs and attached graphs
==========================

The fundamental group of a graph is free on the edges outside a spanning
tree.  Attaching a graph to a space along a subgraph identifies the loops
of the subgraph with their images in the space.
"""

from vankampen import Edge, MultiGraph, attach_graph, bouquet, cycle_rank, edge_induced_graph, graph_pi1, parse_presentation, parse_word
from vankampen.topograph import EdgeIndexedGraph

theta = MultiGraph(("p", "q"), (Edge("e1", "p", "q"), Edge("e2", "p", "q"), Edge("e3", "p", "q")))
pres, gens = graph_pi1(theta, "p")
print("theta graph:", pres, "cycle rank", cycle_rank(theta))

print("bouquet of 3 arcs:", graph_pi1(bouquet(3))[0])

# Each edge with mu extra components grows a bouquet; the cycle rank goes
# up by mu for every edge.
path = MultiGraph(("A", "B", "C"), (Edge("AB", "A", "B"), Edge("BC", "B", "C")))
blown_up = edge_induced_graph(EdgeIndexedGraph(path, {"AB": 2, "BC": 1}))
print("edge-induced graph cycle rank:", cycle_rank(blown_up))

# A torus with a circle attached at a point and a loop h glued to a.
bud = MultiGraph(("x", "y"), (Edge("h", "x", "x"), Edge("r", "x", "y"), Edge("w", "y", "y")))
torus = parse_presentation("< a, b | a b a^-1 b^-1 >")
print("torus with bud:", attach_graph(torus, bud, ["h"], {"h": parse_word("a")}))
