"""
Connected sums with the cylinder
================================

A connected sum opens one tetrahedron in each summand and joins the holes
with an eight-pentachoron triangulation of S^3 x I.
"""

from pachner4 import family, homology
from pachner4.csum import connected_sum, puncture
from pachner4.families import cylinder_c
from pachner4.kernel import boundary, components

# The cylinder has two boundary components, each a two-tetrahedron 3-sphere.
c = cylinder_c()
print("cylinder:", c.size, "pentachora, homology", homology(c))
print("boundary components:", [len(x) for x in components(boundary(c))])

# Puncturing the 4-sphere leaves a ball.
ball = puncture(family("P", 0), (0, 4))
print("punctured sphere:", ball.size, "pentachora, homology", homology(ball))

# P_1 # E_1 has the homology of D_{1,1}.  The sign flag picks the other
# orientation for the final identification.
for sign in (False, True):
    t = connected_sum(family("P", 1), (0, 4), family("E", 1), (0, 4), sign=sign)
    print("sign", sign, "->", t.size, "pentachora, homology", homology(t))
print("D(1,1):", homology(family("D", 1, 1)))
