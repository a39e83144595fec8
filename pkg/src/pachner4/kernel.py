"""
Generalised triangulations stored as gluing tables.

A d-dimensional triangulation is a list of d-simplices whose vertices are
labelled 0..d.  Facet ``f`` of a simplex is the (d-1)-face opposite vertex
``f``.  Each facet is either on the boundary (``None``) or carries a
``Gluing(target, perm)``: facet ``f`` of simplex ``p`` is attached to facet
``perm[f]`` of simplex ``target`` with vertex ``v`` of ``p`` matched to
vertex ``perm[v]`` of ``target``.

The same representation serves every dimension 0..4, so links and
boundaries are ordinary :class:`Triangulation` objects.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Optional

from . import perm as P
from .errors import (IndexOutOfRange, InconsistentGluing, NotBoundary,
                     NotInternal, ParseError, SelfIdentification)


class Gluing(NamedTuple):
    target: int
    perm: tuple


class Triangulation:
    """An immutable gluing table.

    ``gluings[p][f]`` is ``None`` for a boundary facet or a :class:`Gluing`.
    Construction checks that every gluing is matched by its inverse on the
    partner facet (pass ``check=False`` only for tables built internally from
    already consistent data).
    """

    __slots__ = ("dim", "gluings", "_skeleton")

    def __init__(self, dim: int, gluings, check: bool = True):
        self.dim = dim
        self.gluings = tuple(
            tuple(None if g is None else Gluing(g[0], tuple(g[1])) for g in row)
            for row in gluings)
        self._skeleton = None
        if check:
            _check_table(self)

    @property
    def size(self) -> int:
        return len(self.gluings)

    def __len__(self):
        return len(self.gluings)

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.dim == other.dim and self.gluings == other.gluings

    def __hash__(self):
        return hash((self.dim, self.gluings))

    def __repr__(self):
        return f"<Triangulation dim={self.dim} size={self.size}>"

    def __str__(self):
        return to_table_text(self)

    def boundary_facets(self) -> list:
        return [(p, f) for p, row in enumerate(self.gluings)
                for f, g in enumerate(row) if g is None]

    def is_closed(self) -> bool:
        return all(g is not None for row in self.gluings for g in row)

    def skeleton(self) -> "Skeleton":
        return skeleton(self)


def _check_table(t: Triangulation) -> None:
    n, d = t.size, t.dim
    for p, row in enumerate(t.gluings):
        if len(row) != d + 1:
            raise InconsistentGluing(f"simplex {p} has {len(row)} facets, expected {d + 1}")
        for f, g in enumerate(row):
            if g is None:
                continue
            if not 0 <= g.target < n:
                raise IndexOutOfRange(f"simplex {p} facet {f} targets {g.target} (size {n})")
            if len(g.perm) != d + 1 or not P.is_perm(g.perm):
                raise InconsistentGluing(f"simplex {p} facet {f}: {g.perm} is not a permutation")
            back = t.gluings[g.target][g.perm[f]]
            if back is None or back.target != p or back.perm != P.inverse(g.perm):
                raise InconsistentGluing(
                    f"simplex {p} facet {f} -> {g.target} facet {g.perm[f]} "
                    "is not matched by the inverse gluing")
            if g.target == p and g.perm[f] == f:
                raise InconsistentGluing(f"simplex {p} facet {f} glued to itself")


def build(table, dim: int = 4) -> Triangulation:
    """Build a triangulation from per-simplex rows of ``None | (target, perm)``."""
    return Triangulation(dim, table)


def empty(dim: int = 4) -> Triangulation:
    return Triangulation(dim, ())


# ---------------------------------------------------------------------------
# Face classes

@dataclass(frozen=True)
class FaceClass:
    """One face of the triangulation: an orbit of pre-glued faces.

    ``members[i] = (p, verts)`` with ``verts`` sorted; ``to_rep[i][j]`` is the
    position in the representative ``members[0]`` of the vertex matched with
    ``verts[j]``.
    """
    dim: int
    index: int
    members: tuple
    to_rep: tuple
    boundary: bool

    @property
    def degree(self) -> int:
        return len(self.members)

    @property
    def rep(self):
        return self.members[0]


@dataclass(frozen=True)
class Skeleton:
    faces: tuple                      # faces[k] = tuple of FaceClass of dimension k
    f_vector: tuple
    lookup: tuple = field(repr=False)  # lookup[k][(p, verts)] = (class index, to_rep)
    self_identified: tuple = ()       # (dim, index) pairs with a non-identity self-map

    def face_of(self, k: int, p: int, verts) -> FaceClass:
        return self.faces[k][self.lookup[k][(p, tuple(sorted(verts)))][0]]


@dataclass(frozen=True)
class ValidityReport:
    structural_ok: bool
    no_reverse_self_identification: bool
    closed: bool
    vertex_links_manifoldlike: bool
    offending_faces: tuple = ()

    @property
    def valid(self) -> bool:
        return (self.structural_ok and self.no_reverse_self_identification
                and self.vertex_links_manifoldlike)


def _face_orbits(t: Triangulation) -> Skeleton:
    d, n = t.dim, t.size
    glu = t.gluings
    faces, lookups, bad = [], [], []
    for k in range(d):
        subsets = list(combinations(range(d + 1), k + 1))
        ident = tuple(range(k + 1))
        look: dict = {}
        classes = []
        for p in range(n):
            for S in subsets:
                if (p, S) in look:
                    continue
                idx = len(classes)
                look[(p, S)] = (idx, ident)
                members, maps = [(p, S)], [ident]
                stack = [(p, S, ident)]
                on_boundary = selfid = False
                while stack:
                    q, T, pos = stack.pop()
                    for f in range(d + 1):
                        if f in T:
                            continue
                        g = glu[q][f]
                        if g is None:
                            on_boundary = True
                            continue
                        sig = g.perm
                        img = [sig[v] for v in T]
                        T2 = tuple(sorted(img))
                        pos2 = [0] * (k + 1)
                        for i, v in enumerate(img):
                            pos2[T2.index(v)] = pos[i]
                        pos2 = tuple(pos2)
                        key = (g.target, T2)
                        old = look.get(key)
                        if old is None:
                            look[key] = (idx, pos2)
                            members.append(key)
                            maps.append(pos2)
                            stack.append((g.target, T2, pos2))
                        elif old[1] != pos2:
                            selfid = True
                if selfid:
                    bad.append((k, idx))
                classes.append(FaceClass(k, idx, tuple(members), tuple(maps), on_boundary))
        faces.append(tuple(classes))
        lookups.append(look)
    fv = tuple(len(c) for c in faces) + (n,)
    return Skeleton(tuple(faces), fv, tuple(lookups), tuple(bad))


def skeleton(t: Triangulation, strict: bool = True) -> Skeleton:
    """Face classes of every dimension below ``t.dim`` and the f-vector.

    Raises :class:`SelfIdentification` when some face is glued to itself by a
    non-identity map, unless ``strict`` is false.
    """
    sk = t._skeleton
    if sk is None:
        sk = _face_orbits(t)
        t._skeleton = sk
    if strict and sk.self_identified:
        raise SelfIdentification(sk.self_identified)
    return sk


def f_vector(t: Triangulation) -> tuple:
    return skeleton(t, strict=False).f_vector


# ---------------------------------------------------------------------------
# Links, stars, dual graph, boundary

def star(t: Triangulation, face: FaceClass) -> list:
    """Top-dimensional occurrences of ``face`` as ``(simplex, vertex positions)``."""
    return list(face.members)


def link(t: Triangulation, face: FaceClass) -> Triangulation:
    """The link of ``face``: one simplex per occurrence, spanned by the opposite face.

    Simplex ``i`` of the link corresponds to ``face.members[i]``; its vertices
    are the complement of the occurrence, relabelled 0..m in ascending order.
    """
    d = t.dim
    m = d - face.dim - 1
    index = {mem: i for i, mem in enumerate(face.members)}
    comps = [tuple(v for v in range(d + 1) if v not in S) for (_, S) in face.members]
    rows = []
    for i, (p, S) in enumerate(face.members):
        C = comps[i]
        if m == 0:
            rows.append((None,))
            continue
        row = []
        for a, c in enumerate(C):
            g = t.gluings[p][c]
            if g is None:
                row.append(None)
                continue
            sig = g.perm
            target = (g.target, tuple(sorted(sig[v] for v in S)))
            j = index[target]
            C2 = comps[j]
            row.append(Gluing(j, tuple(C2.index(sig[v]) for v in C)))
        rows.append(tuple(row))
    if m == 0:
        # a 0-simplex has no proper faces to glue along
        return Triangulation(0, [(None,)] * len(rows), check=False)
    return Triangulation(m, rows)


def dual_graph(t: Triangulation):
    """Dual multigraph: a node per simplex, an edge (possibly a loop) per gluing."""
    import networkx as nx

    g = nx.MultiGraph()
    g.add_nodes_from(range(t.size))
    for p, row in enumerate(t.gluings):
        for f, gl in enumerate(row):
            if gl is None:
                continue
            q, f2 = gl.target, gl.perm[f]
            if (p, f) <= (q, f2):
                g.add_edge(p, q, facets=(f, f2))
    return g


def components(t: Triangulation) -> list:
    """Connected components as sorted lists of simplex indices."""
    seen = [False] * t.size
    out = []
    for s in range(t.size):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [], deque([s])
        while queue:
            p = queue.popleft()
            comp.append(p)
            for g in t.gluings[p]:
                if g is not None and not seen[g.target]:
                    seen[g.target] = True
                    queue.append(g.target)
        out.append(sorted(comp))
    return out


def is_connected(t: Triangulation) -> bool:
    return len(components(t)) <= 1


def subtriangulation(t: Triangulation, simplices) -> Triangulation:
    """Restrict to ``simplices`` (in the given order); gluings leaving the set become boundary."""
    new = {p: i for i, p in enumerate(simplices)}
    rows = []
    for p in simplices:
        row = []
        for g in t.gluings[p]:
            if g is None or g.target not in new:
                row.append(None)
            else:
                row.append(Gluing(new[g.target], g.perm))
        rows.append(row)
    return Triangulation(t.dim, rows)


def boundary(t: Triangulation) -> Triangulation:
    """The boundary as a (d-1)-dimensional triangulation.

    Simplex ``i`` is the ``i``-th boundary facet in ``t.boundary_facets()``
    order, with its vertices relabelled 0..d-1 ascending.
    """
    d = t.dim
    bfacets = t.boundary_facets()
    if d == 0 or not bfacets:
        return Triangulation(max(d - 1, 0), ())
    bindex = {bf: i for i, bf in enumerate(bfacets)}
    verts = [tuple(v for v in range(d + 1) if v != f) for (_, f) in bfacets]
    rows = []
    limit = 2 * (d + 1) * t.size + 2
    for i, (p, f) in enumerate(bfacets):
        C = verts[i]
        if d == 1:
            rows.append((None,))
            continue
        row = []
        for v in C:
            # walk around the ridge C \ {v} until reaching another boundary facet
            T = [w for w in C if w != v]
            phi = P.identity(d + 1)
            q, x, y = p, f, v
            for _ in range(limit):
                g = t.gluings[q][y]
                if g is None:
                    break
                sig = g.perm
                phi = P.compose(sig, phi)
                q, x, y = g.target, sig[y], sig[x]
            else:
                raise InconsistentGluing("boundary walk did not terminate")
            j = bindex[(q, y)]
            C2 = verts[j]
            images = {w: phi[w] for w in T}
            images[v] = x
            row.append(Gluing(j, tuple(C2.index(images[w]) for w in C)))
        rows.append(tuple(row))
    if d == 1:
        return Triangulation(0, rows, check=False)
    return Triangulation(d - 1, rows)


# ---------------------------------------------------------------------------
# Relabelling and surgery

def relabel(t: Triangulation, simplex_map, vertex_maps) -> Triangulation:
    """Apply ``p -> simplex_map[p]`` with vertex relabelling ``vertex_maps[p]`` (old -> new)."""
    n = t.size
    rows = [None] * n
    for p, row in enumerate(t.gluings):
        mp = vertex_maps[p]
        mp_inv = P.inverse(mp)
        new_row = [None] * (t.dim + 1)
        for f, g in enumerate(row):
            if g is None:
                continue
            mq = vertex_maps[g.target]
            new_row[mp[f]] = Gluing(simplex_map[g.target],
                                    P.compose(mq, P.compose(g.perm, mp_inv)))
        rows[simplex_map[p]] = new_row
    return Triangulation(t.dim, rows, check=False)


def disjoint_union(*ts: Triangulation) -> Triangulation:
    dims = {t.dim for t in ts}
    if len(dims) > 1:
        raise InconsistentGluing("cannot combine triangulations of different dimensions")
    rows, offset = [], 0
    for t in ts:
        for row in t.gluings:
            rows.append([None if g is None else Gluing(g.target + offset, g.perm) for g in row])
        offset += t.size
    return Triangulation(dims.pop() if dims else 4, rows, check=False)


def _set_gluing(rows, p, f, q, perm):
    rows[p][f] = Gluing(q, perm)
    rows[q][perm[f]] = Gluing(p, P.inverse(perm))


def join(t: Triangulation, site, target: int, perm) -> Triangulation:
    """Glue boundary facet ``site = (p, f)`` to simplex ``target`` by ``perm``, no validity check."""
    p, f = site
    perm = tuple(perm)
    g = perm[f]
    if t.gluings[p][f] is not None or t.gluings[target][g] is not None:
        raise NotBoundary(f"facets {site} and {(target, g)} must both be boundary")
    if (p, f) == (target, g):
        raise InconsistentGluing("cannot glue a facet to itself")
    rows = [list(r) for r in t.gluings]
    _set_gluing(rows, p, f, target, perm)
    return Triangulation(t.dim, rows, check=False)


def unglue(t: Triangulation, site) -> Triangulation:
    """Remove the gluing at ``site = (p, f)``; both facets become boundary."""
    p, f = site
    if not 0 <= p < t.size or not 0 <= f <= t.dim:
        raise IndexOutOfRange(f"no facet {site}")
    g = t.gluings[p][f]
    if g is None:
        raise NotInternal(f"facet {site} is already on the boundary")
    rows = [list(r) for r in t.gluings]
    rows[p][f] = None
    rows[g.target][g.perm[f]] = None
    return Triangulation(t.dim, rows, check=False)


def reglue(t: Triangulation, site_a, site_b, perm) -> Triangulation:
    """Glue boundary facet ``site_a`` to boundary facet ``site_b`` via ``perm``.

    Aborts with :class:`SelfIdentification` if the new gluing would identify
    some face with itself in a non-identity way.
    """
    p, f = site_a
    q, g = site_b
    perm = tuple(perm)
    if perm[f] != g:
        raise InconsistentGluing(f"perm sends facet {f} to {perm[f]}, not {g}")
    for (s, h) in (site_a, site_b):
        if not 0 <= s < t.size or not 0 <= h <= t.dim:
            raise IndexOutOfRange(f"no facet {(s, h)}")
    out = join(t, site_a, q, perm)
    sk = skeleton(out, strict=False)
    if sk.self_identified:
        raise SelfIdentification(sk.self_identified)
    return out


# ---------------------------------------------------------------------------
# Validity

def _sphere_or_ball(t: Triangulation) -> bool:
    """Certificate that ``t`` looks like a sphere (closed) or ball (bounded).

    Checks connectedness, absence of self-identifications, Euler
    characteristic, vanishing first homology, and recursively the vertex
    links.  Necessary, not sufficient, in dimension 3.
    """
    from .homology import homology

    d = t.dim
    if t.size == 0:
        return False
    if d == 0:
        return t.size in (1, 2)
    if not is_connected(t):
        return False
    sk = skeleton(t, strict=False)
    if sk.self_identified:
        return False
    chi = sum((-1) ** k * x for k, x in enumerate(sk.f_vector))
    closed = t.is_closed()
    sphere_chi = 1 + (-1) ** d
    if chi != (sphere_chi if closed else 1):
        return False
    if d == 1:
        return True
    if d >= 3:
        h = homology(t)
        if h.betti[1] != 0 or h.torsion[1]:
            return False
    if not closed:
        b = boundary(t)
        if not is_connected(b) or not _sphere_or_ball(b) or not b.is_closed():
            return False
    for v in sk.faces[0]:
        if not _sphere_or_ball(link(t, v)):
            return False
    return True


def vertex_link_certificates(t: Triangulation) -> list:
    """Per vertex class: True when its link passes the sphere/ball certificate."""
    sk = skeleton(t, strict=False)
    return [_sphere_or_ball(link(t, v)) for v in sk.faces[0]]


def validate(t: Triangulation) -> ValidityReport:
    try:
        _check_table(t)
        structural = True
    except (InconsistentGluing, IndexOutOfRange):
        return ValidityReport(False, False, False, False, ())
    sk = skeleton(t, strict=False)
    offending = list(sk.self_identified)
    no_self = not offending
    links_ok = True
    if no_self and t.dim >= 1:
        for v, ok in zip(sk.faces[0], vertex_link_certificates(t)):
            if not ok:
                links_ok = False
                offending.append((0, v.index))
    else:
        links_ok = False
    return ValidityReport(structural, no_self, t.is_closed(), links_ok, tuple(offending))


def is_orientable(t: Triangulation) -> bool:
    """True when simplices admit orientations with every gluing orientation-reversing."""
    orient = [0] * t.size
    for s in range(t.size):
        if orient[s]:
            continue
        orient[s] = 1
        queue = deque([s])
        while queue:
            p = queue.popleft()
            for g in t.gluings[p]:
                if g is None:
                    continue
                want = -orient[p] * P.sign(g.perm)
                if orient[g.target] == 0:
                    orient[g.target] = want
                    queue.append(g.target)
                elif orient[g.target] != want:
                    return False
    return True


# ---------------------------------------------------------------------------
# Text format
#
# One line per simplex, d+1 cells in the order of the facets' vertex sets
# listed lexicographically (0123, 0124, 0134, 0234, 1234 in dimension 4),
# i.e. facets d, d-1, ..., 0.  A cell is "-" or "q(abcd)": the images of the
# facet's vertices in ascending order inside simplex q.

def to_table_text(t: Triangulation) -> str:
    d = t.dim
    lines = []
    for row in t.gluings:
        cells = []
        for f in range(d, -1, -1):
            g = row[f]
            if g is None:
                cells.append("-")
            else:
                imgs = "".join(str(g.perm[v]) for v in range(d + 1) if v != f)
                cells.append(f"{g.target}({imgs})")
        lines.append(" ".join(cells))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_table_text(text: str, dim: Optional[int] = None) -> Triangulation:
    rows_cells = [line.split() for line in text.splitlines() if line.strip()
                  and not line.lstrip().startswith("#")]
    if not rows_cells:
        return empty(4 if dim is None else dim)
    width = len(rows_cells[0])
    d = width - 1 if dim is None else dim
    rows = []
    for lineno, cells in enumerate(rows_cells):
        if len(cells) != d + 1:
            raise ParseError(f"line {lineno}: expected {d + 1} cells, got {len(cells)}")
        row = [None] * (d + 1)
        for col, cell in enumerate(cells):
            f = d - col
            if cell == "-":
                continue
            try:
                q, rest = cell.split("(")
                digits = rest.rstrip(")")
                q = int(q)
            except ValueError:
                raise ParseError(f"line {lineno}: bad cell {cell!r}") from None
            facet = [v for v in range(d + 1) if v != f]
            if len(digits) != d or not digits.isdigit():
                raise ParseError(f"line {lineno}: bad cell {cell!r}")
            images = [int(c) for c in digits]
            missing = set(range(d + 1)) - set(images)
            if len(missing) != 1:
                raise ParseError(f"line {lineno}: cell {cell!r} repeats a vertex")
            perm = [0] * (d + 1)
            for v, img in zip(facet, images):
                perm[v] = img
            perm[f] = missing.pop()
            row[f] = Gluing(q, tuple(perm))
        rows.append(row)
    return Triangulation(d, rows)
