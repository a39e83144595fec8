"""
Building the four families
==========================

Every member of the families P, E, A and D is a closed triangulation with
very few pentachora.  This walk-through generates a few of them, checks
their homology, and looks at how they break apart into units.
"""

# The shared base of every family is a two-pentachoron 4-sphere.
from pachner4 import family, homology, validate
from pachner4.families import chain_sites, expected_b2, family_table_text

print(family_table_text("P", 0))

# A member of each family.  The second Betti number grows with k (and l),
# while the number of pentachora stays at 2 * b2 + 2.
for params in [("P", 3), ("E", 2), ("A", 2), ("D", 2, 1)]:
    t = family(*params)
    h = homology(t)
    print(params, "pentachora:", t.size, "homology:", h, "valid:", validate(t).valid)
    assert t.size == 2 * expected_b2(*params) + 2

# The gluings where consecutive units meet are listed by chain_sites.
# Cutting one of them separates the triangulation into two pieces, each
# bounded by the one-tetrahedron 3-sphere.
from pachner4.families import alternative_regluings

t = family("E", 2)
for site in chain_sites("E", 2):
    print("site", site, "valid regluings:", len(alternative_regluings(t, site)))

# The dual graph is a small multigraph: a path of bows for P_k.
from pachner4.kernel import dual_graph

g = dual_graph(family("P", 4))
print("dual graph of P4:", g.number_of_nodes(), "nodes,", g.number_of_edges(), "arcs")
