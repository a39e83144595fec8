"""
Named triangulations and the four infinite families P, E, A and D.

The families are written out row by row from their parametric gluing
tables.  Independently, :func:`build_chain` assembles the same manifolds
from units (bows and hooks) capped by two copies of DSB2, which gives a
structural cross-check of the tables.

Every family member is a chain: DSB2, then a run of units, then DSB2 again.
Each unit has two boundary tetrahedra (its "front" and "back"), and
consecutive pieces are joined along them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import perm as P
from .canonical import automorphisms, is_isomorphic
from .errors import NotAChainGluing, SelfIdentification
from .kernel import (Triangulation, boundary, components, disjoint_union,
                     join, parse_table_text, skeleton, subtriangulation, unglue,
                     validate)

DSB2_TEXT = "- 0(0324) 0(3214) 0(0214) 0(3104)\n"
S_TEXT = "0(032) 0(321) 0(021) 0(310)\n"
CAP_ROW = "1(0123) 0(0324) 0(3214) 0(0214) 0(3104)"
PILLOW_S4_TEXT = ("1(0123) 1(0124) 1(0134) 1(0234) 1(1234)\n"
                  "0(0123) 0(0124) 0(0134) 0(0234) 0(1234)\n")
CYLINDER_TEXT = """\
- 1(0124) 4(0134) 4(0234) 4(1234)
5(0123) 0(0124) 2(0134) 5(0234) 5(1234)
6(0123) 6(0124) 1(0134) 3(0234) 6(1234)
7(0123) 7(0124) 7(0134) 2(0234) -
- 5(0124) 0(0134) 0(0234) 0(1234)
1(0123) 4(0124) 6(0134) 1(0234) 1(1234)
2(0123) 2(0124) 5(0134) 7(0234) 2(1234)
3(0123) 3(0124) 3(0134) 6(0234) -
"""


def dsb2() -> Triangulation:
    """The one-pentachoron 4-ball whose boundary is :func:`boundary_s`."""
    return parse_table_text(DSB2_TEXT)


def boundary_s() -> Triangulation:
    """The one-tetrahedron 3-sphere S."""
    return parse_table_text(S_TEXT, dim=3)


def pillow_s4() -> Triangulation:
    return parse_table_text(PILLOW_S4_TEXT)


def pillow_s3() -> Triangulation:
    return parse_table_text("1(012) 1(013) 1(023) 1(123)\n0(012) 0(013) 0(023) 0(123)\n", dim=3)


def cylinder_c() -> Triangulation:
    """Eight-pentachoron S^3 x I whose two ends are pillow 3-spheres."""
    return parse_table_text(CYLINDER_TEXT)


def double_prism_cylinder() -> Triangulation:
    """Build the cylinder from two tetrahedral prisms, every gluing the identity."""
    from .kernel import Gluing
    ident = P.identity(5)
    rows = [[None] * 5 for _ in range(8)]

    def glue(p, f, q):
        rows[p][f] = Gluing(q, ident)
        rows[q][f] = Gluing(p, ident)

    for i in range(3):
        glue(i, 3 - i, i + 1)
        glue(i + 4, 3 - i, i + 5)
    for i in range(4):
        for j in list(range(0, 3 - i)) + list(range(5 - i, 5)):
            glue(i, j, i + 4)
    return Triangulation(4, rows)


# ---------------------------------------------------------------------------
# Parametric tables

def _rows_p(k: int) -> list:
    rows = [CAP_ROW]
    for i in range(1, k + 1):
        a, b = 2 * i - 1, 2 * i
        first = "0(0123)" if i == 1 else f"{a - 1}(2013)"
        rows.append(f"{first} {b}(1034) {a}(3214) {b}(0234) {a}(3104)")
        nxt = f"{b + 1}(0123)" if i == k else f"{b + 1}(1203)"
        rows.append(f"{nxt} {b}(3124) {a}(1024) {a}(0234) {b}(1204)")
    last = 2 * k + 1
    rows.append(f"{2 * k}(0123) {last}(3124) {last}(3024) {last}(1304) {last}(1204)")
    return rows


def _rows_hooks(k: int, odd: bool) -> list:
    x, y = ("1304", "2014") if odd else ("3014", "1204")
    rows = [CAP_ROW]
    for j in range(1, k + 1):
        r = 4 * j
        prev = 0 if j == 1 else r - 5
        rows.append(f"{prev}(0123) {r - 1}(0124) {r - 2}(3204) {r - 1}(0234) {r - 2}(1234)")
        rows.append(f"{r}(0123) {r - 2}({x}) {r - 2}({y}) {r - 3}(3104) {r - 3}(1234)")
        rows.append(f"{r + 1}(0123) {r - 3}(0124) {r - 1}(3214) {r - 3}(0234) {r - 1}(3104)")
        rows.append(f"{r - 2}(0123) {r}({x}) {r}({y}) {r}(1234) {r}(0234)")
    c = 4 * k + 1
    rows.append(f"{4 * k - 1}(0123) {c}(0324) {c}(3214) {c}(0214) {c}(3104)")
    return rows


def _rows_d(k: int, l: int) -> list:
    rows = _rows_p(k)[:-1]
    s = 2 * k
    a, b = s - 1, s
    rows[b] = f"{b + 1}(1204) {b}(3124) {a}(1024) {a}(0234) {b}(1204)"
    for j in range(1, l + 1):
        r1, r2, r3, r4 = s + 4 * j - 3, s + 4 * j - 2, s + 4 * j - 1, s + 4 * j
        back = f"{s}(2013)" if j == 1 else f"{r1 - 2}(0124)"
        rows.append(f"{r3}(0123) {back} {r2}(4230) {r3}(0234) {r2}(1234)")
        rows.append(f"{r2}(4013) {r4}(0124) {r2}(1230) {r1}(4130) {r1}(1234)")
        rows.append(f"{r1}(0123) {r3 + 2}(0124) {r3}(4231) {r1}(0234) {r3}(4130)")
        rows.append(f"{r4}(4013) {r2}(0124) {r4}(1230) {r4}(1234) {r4}(0234)")
    c = s + 4 * l + 1
    rows.append(f"{c}(0423) {s + 4 * l - 1}(0124) {c}(4231) {c}(0231) {c}(4130)")
    return rows


def family_table_text(kind: str, k: int, l: int = 0) -> str:
    """Gluing-table text of a family member (one line per pentachoron)."""
    kind = kind.upper()
    if k < 0 or l < 0:
        raise ValueError("family parameters must be non-negative")
    if kind == "P":
        rows = _rows_p(k) if k else [CAP_ROW, _CAP_ROW_1]
    elif kind in ("E", "A"):
        rows = _rows_hooks(k, odd=(kind == "A")) if k else [CAP_ROW, _CAP_ROW_1]
    elif kind == "D":
        if l == 0:
            return family_table_text("P", k)
        if k == 0:
            return family_table_text("E", l)
        rows = _rows_d(k, l)
    else:
        raise ValueError(f"unknown family {kind!r} (expected P, E, A or D)")
    return "\n".join(rows) + "\n"


_CAP_ROW_1 = "0(0123) 1(0324) 1(3214) 1(0214) 1(3104)"


@lru_cache(maxsize=256)
def family(kind: str, k: int, l: int = 0) -> Triangulation:
    """Member of P_k, E_k, A_k or D_{k,l}; ``l`` is used only for D."""
    return parse_table_text(family_table_text(kind, k, l))


def expected_size(kind: str, k: int, l: int = 0) -> int:
    kind = kind.upper()
    return {"P": 2 * k + 2, "E": 4 * k + 2, "A": 4 * k + 2, "D": 2 * k + 4 * l + 2}[kind]


def expected_b2(kind: str, k: int, l: int = 0) -> int:
    kind = kind.upper()
    return {"P": k, "E": 2 * k, "A": 2 * k, "D": k + 2 * l}[kind]


def chain_sites(kind: str, k: int, l: int = 0) -> list:
    """Facets ``(pentachoron, facet)`` where consecutive chain pieces meet."""
    kind = kind.upper()
    if kind == "D" and l == 0:
        kind = "P"
    elif kind == "D" and k == 0:
        kind, k = "E", l
    if kind == "P":
        return [(2 * i, 4) for i in range(k + 1)]
    if kind in ("E", "A"):
        return [(0, 4)] + [(4 * j - 1, 4) for j in range(1, k + 1)]
    if kind == "D":
        s = 2 * k
        return [(2 * i, 4) for i in range(k + 1)] + [(s + 4 * j - 1, 3) for j in range(1, l + 1)]
    raise ValueError(f"unknown family {kind!r}")


# ---------------------------------------------------------------------------
# Units and the chain builder

@dataclass(frozen=True)
class Unit:
    kind: str                 # "bow", "even_hook" or "odd_hook"
    triangulation: Triangulation
    front: tuple              # boundary facet joined towards the start of the chain
    back: tuple


def _strip(text: str, keep) -> Triangulation:
    t = parse_table_text(text)
    return subtriangulation(t, keep)


@lru_cache(maxsize=None)
def unit(kind: str) -> Unit:
    """A bow or hook, cut from the k = 1 tables by deleting the two caps."""
    if kind == "bow":
        tri = _strip(family_table_text("P", 1), [1, 2])
        return Unit(kind, tri, (0, 4), (1, 4))
    if kind in ("even_hook", "odd_hook"):
        tri = _strip(family_table_text("E" if kind == "even_hook" else "A", 1), [1, 2, 3, 4])
        return Unit(kind, tri, (0, 4), (2, 4))
    raise ValueError(f"unknown unit {kind!r}")


def _attach(t: Triangulation, site, piece: Triangulation, front) -> Triangulation:
    """Join ``piece`` to ``t`` along ``site`` using the first admissible identification."""
    n = t.size
    u = disjoint_union(t, piece)
    p, f = site
    q, g = front[0] + n, front[1]
    for sigma in P.all_perms(5):
        if sigma[f] != g:
            continue
        cand = join(u, (p, f), q, sigma)
        if not skeleton(cand, strict=False).self_identified:
            return cand
    raise SelfIdentification([], "no admissible identification between chain pieces")


def build_chain(pieces) -> Triangulation:
    """DSB2 + the given units (by kind name) + DSB2."""
    t = dsb2()
    site = (0, 4)
    for name in pieces:
        u = unit(name)
        n = t.size
        t = _attach(t, site, u.triangulation, u.front)
        site = (u.back[0] + n, u.back[1])
    return _attach(t, site, dsb2(), (0, 4))


def chain_pieces(kind: str, k: int, l: int = 0) -> list:
    kind = kind.upper()
    if kind == "P":
        return ["bow"] * k
    if kind == "E":
        return ["even_hook"] * k
    if kind == "A":
        return ["odd_hook"] * k
    if kind == "D":
        return ["bow"] * k + ["even_hook"] * l
    raise ValueError(f"unknown family {kind!r}")


def family_from_units(kind: str, k: int, l: int = 0) -> Triangulation:
    return build_chain(chain_pieces(kind, k, l))


# ---------------------------------------------------------------------------
# Regluing analysis

def _is_s_boundary(piece: Triangulation) -> bool:
    b = boundary(piece)
    return b.size == 1 and is_isomorphic(b, boundary_s())


def split_at(t: Triangulation, site):
    """Unglue ``site``; return the opened triangulation if it is a chain gluing."""
    p, f = site
    g = t.gluings[p][f]
    if g is None:
        raise NotAChainGluing(f"facet {site} is on the boundary")
    opened = unglue(t, site)
    comps = components(opened)
    if len(comps) != 2:
        raise NotAChainGluing("ungluing does not disconnect the triangulation")
    for comp in comps:
        if not _is_s_boundary(subtriangulation(opened, comp)):
            raise NotAChainGluing("a side of the cut is not bounded by S")
    return opened, (g.target, g.perm[f])


def regluing_report(t: Triangulation, site) -> list:
    """For each of the 24 identifications of the severed facets: ``(perm, valid, offending)``.

    ``offending`` lists the dimensions of faces identified with themselves.
    """
    opened, (q, g) = split_at(t, site)
    p, f = site
    out = []
    for sigma in P.all_perms(5):
        if sigma[f] != g:
            continue
        cand = join(opened, (p, f), q, sigma)
        sk = skeleton(cand, strict=False)
        bad = sorted({d for d, _ in sk.self_identified})
        valid = not bad and validate(cand).valid
        out.append((sigma, valid, bad))
    return out


def alternative_regluings(t: Triangulation, site) -> list:
    """Identifications of the severed facets that give a valid triangulation."""
    return [sigma for sigma, valid, _ in regluing_report(t, site) if valid]


def unit_symmetry(piece) -> tuple:
    """The non-identity relabelling of a unit (or DSB2) that fixes its front facet."""
    if isinstance(piece, Unit):
        tri, (p, f) = piece.triangulation, piece.front
    else:
        tri, (p, f) = piece, piece.boundary_facets()[0]
    found = []
    for smap, vmaps in automorphisms(tri):
        if smap[p] != p or vmaps[p][f] != f:
            continue
        if all(s == i for i, s in enumerate(smap)) and all(v == P.identity(5) for v in vmaps):
            continue
        found.append((smap, vmaps))
    if len(found) != 1:
        raise NotAChainGluing(f"expected one non-trivial symmetry, found {len(found)}")
    return found[0]
