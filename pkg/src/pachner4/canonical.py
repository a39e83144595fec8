"""
Canonical labelling, isomorphism signatures and automorphisms.

For a connected triangulation every choice of a starting simplex and a
starting vertex labelling determines a breadth-first relabelling: simplices
are numbered in order of discovery (scanning facets 0..d of each simplex in
new-index order), and a newly reached simplex receives the vertex labelling
that turns the discovering gluing into the identity.  Each relabelling is
encoded as a sequence of integers (one per facet: ``target * (d+1)! + perm
index``, boundary facets encoded as the largest value), and the canonical
form is the lexicographically smallest one.
"""
from __future__ import annotations

from math import factorial

from . import perm as P
from .errors import ParseError
from .kernel import Gluing, Triangulation, components, relabel, subtriangulation


def _prepare(t: Triangulation):
    d = t.dim
    index = P._index_table(d + 1)
    tgt = [[-1 if g is None else g.target for g in row] for row in t.gluings]
    sig = [[0 if g is None else index[g.perm] for g in row] for row in t.gluings]
    return tgt, sig


def _run(t, tgt, sig, start, pi0, tables, best):
    """BFS relabelling from ``(start, pi0)``.

    Returns ``(codes, order, maps)`` or ``None`` if the code sequence
    exceeds ``best`` at some position (early abort).  ``maps[p]`` is the
    perm index sending old vertex labels of ``p`` to new ones.
    """
    d1 = t.dim + 1
    n = t.size
    perms, comp, inv = tables
    nperm = len(perms)
    bcode = n * nperm
    newidx = {start: 0}
    order = [start]
    maps = {start: pi0}
    codes = []
    pos = 0
    equal = best is not None
    i = 0
    while i < len(order):
        p = order[i]
        mp = maps[p]
        mpinv = perms[inv[mp]]
        tp, sp = tgt[p], sig[p]
        for fn in range(d1):
            f = mpinv[fn]
            q = tp[f]
            if q < 0:
                code = bcode
            else:
                s = sp[f]
                j = newidx.get(q)
                if j is None:
                    j = len(order)
                    newidx[q] = j
                    order.append(q)
                    mq = comp[mp][inv[s]]
                    maps[q] = mq
                    code = j * nperm
                else:
                    code = j * nperm + comp[comp[maps[q]][s]][inv[mp]]
            if equal:
                b = best[pos]
                if code > b:
                    return None
                if code < b:
                    equal = False
            codes.append(code)
            pos += 1
        i += 1
    return codes, order, maps


def _canonical_connected(t: Triangulation, want_all: bool = False):
    d1 = t.dim + 1
    tables = P.tables(d1)
    tgt, sig = _prepare(t)
    best = None
    winners = []
    for start in range(t.size):
        for pi0 in range(len(tables[0])):
            res = _run(t, tgt, sig, start, pi0, tables, best)
            if res is None:
                continue
            if best is None or res[0] < best:
                best = res[0]
                winners = [res]
            elif want_all:
                winners.append(res)
            elif res[0] == best:
                pass
    return best, winners


def _decode(dim, codes, n):
    d1 = dim + 1
    nperm = factorial(d1)
    perms = P.all_perms(d1)
    rows = []
    for p in range(n):
        row = []
        for f in range(d1):
            c = codes[p * d1 + f]
            if c >= n * nperm:
                row.append(None)
            else:
                row.append(Gluing(c // nperm, perms[c % nperm]))
        rows.append(row)
    return rows


def canonical_form(t: Triangulation):
    """Return ``(canonical triangulation, (simplex_map, vertex_maps))``.

    ``simplex_map[p]`` is the canonical index of old simplex ``p`` and
    ``vertex_maps[p]`` the vertex relabelling (old label -> new label).
    """
    d = t.dim
    perms = P.all_perms(d + 1)
    pieces = []
    for comp in components(t):
        sub = subtriangulation(t, comp)
        codes, winners = _canonical_connected(sub)
        _, order, maps = winners[0]
        pieces.append((len(comp), codes, comp, order, maps))
    pieces.sort(key=lambda x: (x[0], x[1]))
    n = t.size
    simplex_map = [0] * n
    vertex_maps = [None] * n
    rows = []
    offset = 0
    for size, codes, comp, order, maps in pieces:
        for new, old_local in enumerate(order):
            old = comp[old_local]
            simplex_map[old] = offset + new
            vertex_maps[old] = perms[maps[old_local]]
        for row in _decode(d, codes, size):
            rows.append([None if g is None else Gluing(g.target + offset, g.perm) for g in row])
        offset += size
    return Triangulation(d, rows, check=False), (simplex_map, vertex_maps)


def _width(x: int) -> int:
    return len(str(max(x, 0)))


def signature_of_canonical(c: Triangulation) -> str:
    d1 = c.dim + 1
    qw = _width(c.size - 1)
    pw = _width(factorial(d1) - 1)
    index = P._index_table(d1)
    cells = []
    for row in c.gluings:
        for g in row:
            if g is None:
                cells.append("b")
            else:
                cells.append(f"{g.target:0{qw}d}.{index[g.perm]:0{pw}d}")
    return f"d{c.dim}:{c.size}:" + ",".join(cells)


def signature(t: Triangulation) -> str:
    """Isomorphism signature: equal strings exactly for isomorphic inputs."""
    return signature_of_canonical(canonical_form(t)[0])


def parse_signature(text: str) -> Triangulation:
    text = text.strip()
    try:
        head, size, body = text.split(":", 2)
        if not head.startswith("d"):
            raise ValueError
        dim, n = int(head[1:]), int(size)
    except ValueError:
        raise ParseError(f"not a signature: {text[:40]!r}") from None
    d1 = dim + 1
    perms = P.all_perms(d1)
    cells = body.split(",") if body else []
    if len(cells) != n * d1:
        raise ParseError(f"expected {n * d1} cells, found {len(cells)}")
    rows = []
    for p in range(n):
        row = []
        for cell in cells[p * d1:(p + 1) * d1]:
            if cell == "b":
                row.append(None)
                continue
            try:
                q, k = cell.split(".")
                row.append(Gluing(int(q), perms[int(k)]))
            except (ValueError, IndexError):
                raise ParseError(f"bad signature cell {cell!r}") from None
        rows.append(row)
    return Triangulation(dim, rows)


def is_isomorphic(a: Triangulation, b: Triangulation) -> bool:
    if a.dim != b.dim or a.size != b.size:
        return False
    if len(a.boundary_facets()) != len(b.boundary_facets()):
        return False
    return signature(a) == signature(b)


def automorphisms(t: Triangulation) -> list:
    """All combinatorial automorphisms of a connected triangulation.

    Each is ``(simplex_map, vertex_maps)`` in the same convention as
    :func:`kernel.relabel`; the identity is included.
    """
    if t.size == 0:
        return []
    d1 = t.dim + 1
    perms = P.all_perms(d1)
    best, winners = _canonical_connected(t, want_all=True)
    winners = [w for w in winners if w[0] == best]
    _, order0, maps0 = winners[0]
    # invert the reference relabelling: canonical (index, vertex) -> original
    back = {new: (old, P.inverse(perms[maps0[old]])) for new, old in enumerate(order0)}
    out = []
    for _, order, maps in winners:
        smap = [0] * t.size
        vmaps = [None] * t.size
        for new, old in enumerate(order):
            tgt_old, to_old = back[new]
            smap[old] = tgt_old
            vmaps[old] = P.compose(to_old, perms[maps[old]])
        out.append((smap, vmaps))
    out.sort()
    return out


def is_identity_relabeling(relabeling) -> bool:
    smap, vmaps = relabeling
    return all(s == i for i, s in enumerate(smap)) and all(
        v == tuple(range(len(v))) for v in vmaps)


def random_relabel(t: Triangulation, rng) -> Triangulation:
    """Relabel ``t`` by a random simplex permutation and random vertex maps."""
    smap = list(range(t.size))
    rng.shuffle(smap)
    vmaps = []
    for _ in range(t.size):
        v = list(range(t.dim + 1))
        rng.shuffle(v)
        vmaps.append(tuple(v))
    return relabel(t, smap, vmaps)
