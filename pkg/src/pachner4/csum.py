"""
Puncturing and connected sums.

To puncture a triangulation we open one internal tetrahedron and insert the
cylinder C (S^3 x I).  Facet 4 of cylinder pentachora 0 and 4 is glued to the
two sides of the opened tetrahedron, so one pillow end of C is sealed
against the old gluing and the other end (facet 0 of cylinder pentachora 3
and 7) becomes a new pillow-shaped boundary.  A connected sum seals that
pillow against a tetrahedron opened in the second triangulation.
"""
from __future__ import annotations

from . import perm as P
from .errors import BoundarySite, IndexOutOfRange, ParseError
from .families import cylinder_c
from .kernel import Triangulation, disjoint_union, join, unglue

SIGN_SWAP = (0, 2, 1, 3, 4)


def parse_site(text: str) -> tuple:
    """Parse ``"P.S"`` (pentachoron index, facet slot)."""
    try:
        p, s = text.split(".")
        return int(p), int(s)
    except ValueError:
        raise ParseError(f"site must look like 3.4, got {text!r}") from None


def _open(t: Triangulation, site):
    p, f = site
    if not 0 <= p < t.size or not 0 <= f <= 4:
        raise IndexOutOfRange(f"no facet {site}")
    g = t.gluings[p][f]
    if g is None:
        raise BoundarySite(f"facet {site} is already on the boundary")
    return unglue(t, site), g.target, g.perm


def _ascending(f: int, skip_first: bool) -> tuple:
    """Map the free slots of a cylinder end onto the facet opposite ``f`` in order."""
    verts = [v for v in range(5) if v != f]
    rho = [0] * 5
    if skip_first:
        rho[0] = f
        for i, v in enumerate(verts):
            rho[i + 1] = v
    else:
        rho[4] = f
        for i, v in enumerate(verts):
            rho[i] = v
    return tuple(rho)


def puncture(t: Triangulation, site) -> Triangulation:
    """Open the tetrahedron at ``site`` and insert the cylinder; adds 8 pentachora.

    The new boundary is facet 0 of pentachora ``n + 3`` and ``n + 7``
    (``n`` is the original size).
    """
    n = t.size
    opened, q, sigma = _open(t, site)
    u = disjoint_union(opened, cylinder_c())
    p, f = site
    rho = _ascending(f, skip_first=False)
    u = join(u, (n, 4), p, rho)
    u = join(u, (n + 4, 4), q, P.compose(sigma, rho))
    return Triangulation(4, u.gluings)


def connected_sum(t1: Triangulation, site1, t2: Triangulation, site2,
                  sign: bool = False) -> Triangulation:
    """Connected sum along internal facets ``site1`` of ``t1`` and ``site2`` of ``t2``.

    ``sign`` swaps two vertices in the final identification, giving the
    other of the two possible sums.
    """
    n1 = t1.size
    p2, f2 = site2
    # validate the second site before assembling anything
    _open(t2, site2)
    u = disjoint_union(t1, t2)
    u = puncture(u, site1)
    big = n1 + t2.size
    opened, q, sigma = _open(u, (p2 + n1, f2))
    rho = _ascending(f2, skip_first=True)
    if sign:
        rho = P.compose(rho, SIGN_SWAP)
    opened = join(opened, (big + 3, 0), p2 + n1, rho)
    opened = join(opened, (big + 7, 0), q, P.compose(sigma, rho))
    return Triangulation(4, opened.gluings)


def internal_sites(t: Triangulation) -> list:
    return [(p, f) for p in range(t.size) for f in range(5) if t.gluings[p][f] is not None]
