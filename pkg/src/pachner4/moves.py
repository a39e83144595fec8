"""
Elementary moves: Pachner (bistellar) moves, 2-0 moves and edge collapses.

Faces are addressed by ``(dim, index)`` where ``index`` is the position of
the face class in :func:`kernel.skeleton` order; a top-dimensional "face" is
just a simplex index.  Move sequences address faces in the canonical form of
the running triangulation, so a certificate is independent of how the input
was labelled.

Pachner moves are modelled on the boundary of a (d+1)-simplex with vertices
``0..d+1``.  For a face of dimension ``i`` put ``A = {0..i}`` and
``B = {i+1..d+1}``.  The star of the face is matched with the simplices
``model - {b}`` (``b`` in ``B``) and replaced by the simplices
``model - {a}`` (``a`` in ``A``); gluings on the outside are carried over
unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import perm as P
from .errors import (InvalidCollapse, InvalidSite, ParseError, SameEndpoints,
                     WouldCreateSelfIdentification)
from .kernel import (FaceClass, Gluing, Triangulation, components, skeleton,
                     validate)


# ---------------------------------------------------------------------------
# Move records

KINDS = ("pachner", "20v", "20e", "20t", "collapse")
_LETTER = {"20v": "V", "20e": "E", "20t": "T", "collapse": "C"}
_FROM_LETTER = {v: k for k, v in _LETTER.items()}
_TWO_ZERO_DIM = {"20v": 0, "20e": 1, "20t": 2}


@dataclass(frozen=True, order=True)
class MoveStep:
    """One move: ``kind`` in :data:`KINDS`, the face dimension and its index."""
    kind: str
    dim: int
    index: int

    def __str__(self):
        if self.kind == "pachner":
            return f"{self.dim},{self.index}"
        return f"{_LETTER[self.kind]},{self.index}"

    @classmethod
    def parse(cls, token: str) -> "MoveStep":
        try:
            head, idx = token.strip().split(",")
            idx = int(idx)
        except ValueError:
            raise ParseError(f"bad move {token!r}") from None
        if head in _FROM_LETTER:
            kind = _FROM_LETTER[head]
            dim = 1 if kind == "collapse" else _TWO_ZERO_DIM[kind]
            return cls(kind, dim, idx)
        try:
            return cls("pachner", int(head), idx)
        except ValueError:
            raise ParseError(f"bad move {token!r}") from None


def pachner(dim: int, index: int) -> MoveStep:
    return MoveStep("pachner", dim, index)


SEQUENCE_HEADER = "# face indices refer to this tool's canonical labelling"


def format_sequence(steps: Iterable[MoveStep], header: Optional[dict] = None) -> str:
    lines = [SEQUENCE_HEADER]
    for key, value in (header or {}).items():
        lines.append(f"# {key}: {value}")
    lines.append(" ".join(str(s) for s in steps))
    return "\n".join(lines) + "\n"


def parse_sequence(text: str):
    """Return ``(steps, header dict)`` from :func:`format_sequence` output."""
    steps, header = [], {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if ":" in line:
                key, _, value = line[1:].partition(":")
                header[key.strip()] = value.strip()
            continue
        steps.extend(MoveStep.parse(tok) for tok in line.split())
    return steps, header


# ---------------------------------------------------------------------------
# Pachner moves

def _resolve(t: Triangulation, face):
    """Normalise ``face`` to ``(dim, FaceClass or simplex index)``."""
    if isinstance(face, FaceClass):
        return face.dim, face
    dim, index = face
    if dim == t.dim:
        if not 0 <= index < t.size:
            raise InvalidSite(f"no simplex {index}")
        return dim, index
    sk = skeleton(t)
    if not 0 <= dim < t.dim or not 0 <= index < len(sk.faces[dim]):
        raise InvalidSite(f"no face of dimension {dim} with index {index}")
    return dim, sk.faces[dim][index]


def _pachner_plan(t: Triangulation, face):
    """Match the star of ``face`` with the model; returns ``(i, B, star, mu)``.

    ``star[b]`` is the simplex playing ``model - {b}`` and ``mu[b][x]`` the
    vertex of that simplex playing model vertex ``x``.
    """
    d = t.dim
    i, fc = _resolve(t, face)
    A = list(range(i + 1))
    B = list(range(i + 1, d + 2))
    if i == d:
        p, S = fc, tuple(range(d + 1))
    else:
        if fc.boundary:
            raise InvalidSite("face lies on the boundary")
        if fc.degree != len(B):
            raise InvalidSite(f"face has degree {fc.degree}, move needs {len(B)}")
        p, S = fc.rep
    comp = [v for v in range(d + 1) if v not in S]
    b0 = B[0]
    mu0 = {}
    for a, v in zip(A, S):
        mu0[a] = v
    for b, v in zip(B[1:], comp):
        mu0[b] = v
    star = {b0: p}
    mu = {b0: mu0}
    queue = [b0]
    while queue:
        b = queue.pop()
        pb, mb = star[b], mu[b]
        for b2 in B:
            if b2 == b:
                continue
            g = t.gluings[pb][mb[b2]]
            if g is None:
                raise InvalidSite("star of the face meets the boundary")
            sig = g.perm
            m2 = {x: sig[mb[x]] for x in mb if x != b2}
            m2[b] = sig[mb[b2]]
            if b2 in star:
                if star[b2] != g.target or mu[b2] != m2:
                    raise InvalidSite("link of the face is not the boundary of a simplex")
            else:
                star[b2] = g.target
                mu[b2] = m2
                queue.append(b2)
    if len(set(star.values())) != len(B):
        raise InvalidSite("star of the face is not embedded")
    return i, A, B, star, mu


def pachner_valid(t: Triangulation, face) -> bool:
    try:
        _pachner_plan(t, face)
    except InvalidSite:
        return False
    return True


def pachner_apply(t: Triangulation, face, check: bool = False) -> Triangulation:
    """Perform the Pachner move about ``face`` (a FaceClass or ``(dim, index)``).

    Surviving simplices keep their relative order; new ones are appended.
    With ``check`` the result is also checked for self-identified faces.
    """
    d = t.dim
    i, A, B, star, mu = _pachner_plan(t, face)
    removed = set(star.values())
    survivors = [p for p in range(t.size) if p not in removed]
    newidx = {p: j for j, p in enumerate(survivors)}
    base = len(survivors)
    qidx = {a: base + k for k, a in enumerate(A)}
    # order-preserving labels of the new simplices
    nu = {}
    for a in A:
        verts = [x for x in range(d + 2) if x != a]
        nu[a] = {x: j for j, x in enumerate(verts)}
    owner = {pb: b for b, pb in star.items()}
    mu_inv = {b: {v: x for x, v in mu[b].items()} for b in B}

    rows = []
    for p in survivors:
        row = []
        for g in t.gluings[p]:
            if g is None or g.target in removed:
                row.append(None)
            else:
                row.append(Gluing(newidx[g.target], g.perm))
        rows.append(row)
    rows.extend([None] * (d + 1) for _ in A)

    for a in A:
        na = nu[a]
        row = rows[qidx[a]]
        for a2 in A:
            if a2 == a:
                continue
            tau = [0] * (d + 1)
            for x in na:
                tau[na[x]] = nu[a2][a] if x == a2 else nu[a2][x]
            row[na[a2]] = Gluing(qidx[a2], tuple(tau))
        for b in B:
            mb = mu[b]
            g = t.gluings[star[b]][mb[a]]
            if g is None:
                continue
            sig = g.perm
            tau = [0] * (d + 1)
            if g.target in removed:
                b2 = owner[g.target]
                a2 = mu_inv[b2][sig[mb[a]]]
                for x in na:
                    if x == b:
                        tau[na[b]] = nu[a2][b2]
                    else:
                        tau[na[x]] = nu[a2][mu_inv[b2][sig[mb[x]]]]
                row[na[b]] = Gluing(qidx[a2], tuple(tau))
            else:
                for x in na:
                    tau[na[x]] = sig[mb[a]] if x == b else sig[mb[x]]
                tau = tuple(tau)
                tgt = newidx[g.target]
                row[na[b]] = Gluing(tgt, tau)
                rows[tgt][tau[na[b]]] = Gluing(qidx[a], P.inverse(tau))
    out = Triangulation(d, rows, check=False)
    if check:
        sk = skeleton(out, strict=False)
        if sk.self_identified:
            raise WouldCreateSelfIdentification("move would identify a face with itself")
    return out


def pachner_size_change(dim: int, face_dim: int) -> int:
    """Change in the number of top simplices for a move about a face of ``face_dim``."""
    return (face_dim + 1) - (dim + 1 - face_dim)


def pachner_sites(t: Triangulation, max_size: Optional[int] = None) -> list:
    """Valid Pachner sites ``(dim, index)``, dimension ascending then index ascending."""
    d = t.dim
    sk = skeleton(t)
    out = []
    for i in range(d + 1):
        if max_size is not None and t.size + pachner_size_change(d, i) > max_size:
            continue
        if i == d:
            out.extend((d, p) for p in range(t.size))
            continue
        need = d + 1 - i
        for fc in sk.faces[i]:
            if fc.degree == need and not fc.boundary and pachner_valid(t, fc):
                out.append((i, fc.index))
    return out


# ---------------------------------------------------------------------------
# 2-0 moves

def _safe_checks(t: Triangulation, out: Triangulation, safe: bool, err):
    if len(components(out)) != len(components(t)):
        raise err("result changes the number of components")
    rep = validate(out)
    if not rep.valid:
        raise err("result fails validation")
    if safe:
        from .homology import homology
        if homology(out) != homology(t):
            raise err("result changes homology")


def _drop(t: Triangulation, removed, rows_override):
    """Delete ``removed`` simplices, then apply ``{(p, f): (q, perm)}`` overrides."""
    survivors = [p for p in range(t.size) if p not in removed]
    newidx = {p: j for j, p in enumerate(survivors)}
    rows = []
    for p in survivors:
        row = []
        for g in t.gluings[p]:
            if g is None or g.target in removed:
                row.append(None)
            else:
                row.append(Gluing(newidx[g.target], g.perm))
        rows.append(row)
    for (p, f), (q, perm) in rows_override.items():
        rows[newidx[p]][f] = Gluing(newidx[q], tuple(perm))
    return Triangulation(t.dim, rows)


def two_zero(t: Triangulation, face, safe: bool = True) -> Triangulation:
    """Flatten the two simplices around a degree-two face of dimension 0, 1 or 2."""
    i, fc = _resolve(t, face)
    d = t.dim
    if i > d - 2:
        raise InvalidSite("2-0 moves act on faces of dimension at most d-2")
    if fc.boundary or fc.degree != 2:
        raise InvalidSite(f"2-0 move needs an internal face of degree 2 (got {fc.degree})")
    (p, S), (q, T) = fc.members
    if p == q:
        raise InvalidSite("both occurrences lie in the same simplex")
    outside = [v for v in range(d + 1) if v not in S]
    phi = None
    for v in outside:
        g = t.gluings[p][v]
        if g is None or g.target != q:
            raise InvalidSite("the two simplices are not joined around the face")
        if phi is None:
            phi = g.perm
        elif g.perm != phi:
            raise InvalidSite("gluings around the face do not agree")
    if tuple(sorted(phi[v] for v in S)) != T:
        raise InvalidSite("gluings do not match the face occurrences")
    overrides = {}
    for s in S:
        ga, gb = t.gluings[p][s], t.gluings[q][phi[s]]
        if ga is None or gb is None:
            raise InvalidSite("a flattened facet lies on the boundary")
        if ga.target in (p, q) or gb.target in (p, q):
            raise InvalidSite("a flattened facet is glued back into the pair")
        alpha, beta = ga.perm, gb.perm
        perm = P.compose(beta, P.compose(phi, P.inverse(alpha)))
        fx = alpha[s]
        overrides[(ga.target, fx)] = (gb.target, perm)
        overrides[(gb.target, perm[fx])] = (ga.target, P.inverse(perm))
    try:
        out = _drop(t, {p, q}, overrides)
    except Exception as exc:
        raise InvalidSite(f"flattening produces an inconsistent table: {exc}") from None
    if skeleton(out, strict=False).self_identified:
        raise WouldCreateSelfIdentification("flattening would identify a face with itself")
    _safe_checks(t, out, safe, InvalidSite)
    return out


# ---------------------------------------------------------------------------
# Edge collapse

def collapse_edge(t: Triangulation, face, safe: bool = True) -> Triangulation:
    """Contract an edge joining two distinct vertices, flattening its star."""
    i, fc = _resolve(t, face)
    if i != 1:
        raise InvalidSite("edge collapse needs an edge")
    d = t.dim
    sk = skeleton(t)
    p0, S0 = fc.rep
    u = sk.lookup[0][(p0, (S0[0],))][0]
    w = sk.lookup[0][(p0, (S0[1],))][0]
    if u == w:
        raise SameEndpoints("edge joins a vertex to itself")
    if fc.boundary:
        raise InvalidCollapse("edge lies on the boundary")
    ends = {}
    for p, S in fc.members:
        if p in ends:
            raise InvalidCollapse("edge occurs twice in one simplex")
        ends[p] = S
    removed = set(ends)
    overrides = {}
    limit = len(removed) + 1
    for p, (a, b) in ends.items():
        for start in (a, b):
            g = t.gluings[p][start]
            if g is None:
                raise InvalidCollapse("star of the edge meets the boundary")
            if g.target in removed:
                continue
            # the outside facet (x, fx) enters p through the facet opposite `start`
            x, fx = g.target, g.perm[start]
            m = P.inverse(g.perm)          # vertices of x -> vertices of the current simplex
            cur, enter = p, start
            for _ in range(limit):
                ca, cb = ends[cur]
                other = cb if enter == ca else ca
                m = P.compose(P.transposition(d + 1, ca, cb), m)
                g2 = t.gluings[cur][other]
                if g2 is None:
                    raise InvalidCollapse("star of the edge meets the boundary")
                m = P.compose(g2.perm, m)
                nxt, f2 = g2.target, g2.perm[other]
                if nxt not in removed:
                    break
                if f2 not in ends[nxt]:
                    raise InvalidCollapse("chain enters the star through a wrong facet")
                cur, enter = nxt, f2
            else:
                raise InvalidCollapse("facets of the star close up into a loop")
            if (nxt, f2) == (x, fx):
                raise InvalidCollapse("collapse would glue a facet to itself")
            overrides[(x, fx)] = (nxt, m)
    try:
        out = _drop(t, removed, overrides)
    except Exception as exc:
        raise InvalidCollapse(f"collapse produces an inconsistent table: {exc}") from None
    sk2 = skeleton(out, strict=False)
    if sk2.self_identified:
        raise WouldCreateSelfIdentification("collapse would identify a face with itself")
    if sk2.f_vector[0] != sk.f_vector[0] - 1 or out.size != t.size - fc.degree:
        raise InvalidCollapse("collapse does not remove exactly one vertex")
    _safe_checks(t, out, safe, InvalidCollapse)
    return out


# ---------------------------------------------------------------------------
# Dispatch

def apply_move(t: Triangulation, step: MoveStep, safe: bool = True) -> Triangulation:
    """Apply ``step`` to ``t`` exactly as labelled (no canonicalisation)."""
    if step.kind == "pachner":
        return pachner_apply(t, (step.dim, step.index))
    if step.kind in _TWO_ZERO_DIM:
        return two_zero(t, (_TWO_ZERO_DIM[step.kind], step.index), safe=safe)
    if step.kind == "collapse":
        return collapse_edge(t, (1, step.index), safe=safe)
    raise InvalidSite(f"unknown move kind {step.kind!r}")


def apply_step(t: Triangulation, step: MoveStep, safe: bool = True) -> Triangulation:
    """Apply ``step`` with face indices read in the canonical form of ``t``."""
    from .canonical import canonical_form
    return apply_move(canonical_form(t)[0], step, safe=safe)


def two_zero_sites(t: Triangulation, safe: bool = True) -> list:
    out = []
    sk = skeleton(t)
    for kind, dim in _TWO_ZERO_DIM.items():
        for fc in sk.faces[dim]:
            if fc.degree != 2 or fc.boundary:
                continue
            try:
                two_zero(t, fc, safe=safe)
            except InvalidSite:
                continue
            out.append(MoveStep(kind, dim, fc.index))
    return out


def collapse_sites(t: Triangulation, safe: bool = True) -> list:
    out = []
    for fc in skeleton(t).faces[1]:
        try:
            collapse_edge(t, fc, safe=safe)
        except InvalidSite:
            continue
        out.append(MoveStep("collapse", 1, fc.index))
    return out


def pachner_inverse_site(t: Triangulation, face) -> tuple:
    """Site ``(dim, index)`` in ``pachner_apply(t, face)`` that undoes the move."""
    d = t.dim
    i = face.dim if isinstance(face, FaceClass) else face[0]
    base = t.size - (d + 1 - i)
    out = pachner_apply(t, face)
    if i == 0:
        return out, (d, base)
    verts = tuple(b - 1 for b in range(i + 1, d + 2))
    idx = skeleton(out).lookup[d - i][(base, verts)][0]
    return out, (d - i, idx)


def insert_pillow(t: Triangulation, site) -> Triangulation:
    """Inverse of a 2-0 vertex move: open the gluing at ``site`` and insert a pillow.

    Two new simplices are glued to each other along facets 0..d-1 by the
    identity; their facets ``d`` are sealed against the two sides of the
    opened gluing.  Their shared vertex ``d`` is a new vertex of degree two.
    """
    from .kernel import join, unglue
    d = t.dim
    p, f = site
    if not 0 <= p < t.size or not 0 <= f <= d:
        raise InvalidSite(f"no facet {site}")
    g = t.gluings[p][f]
    if g is None:
        raise InvalidSite(f"facet {site} is on the boundary")
    n = t.size
    opened = unglue(t, site)
    ident = P.identity(d + 1)
    rows = [list(r) for r in opened.gluings]
    rows.append([Gluing(n + 1, ident)] * d + [None])
    rows.append([Gluing(n, ident)] * d + [None])
    u = Triangulation(d, rows, check=False)
    rho = tuple(list(v for v in range(d + 1) if v != f) + [f])
    u = join(u, (n, d), p, rho)
    u = join(u, (n + 1, d), g.target, P.compose(g.perm, rho))
    return Triangulation(d, u.gluings)
