"""
Integral simplicial homology of generalised triangulations.

The chain groups are generated by face classes (and the top simplices).  The
boundary of a class is taken on its representative occurrence, with each
facet's sign corrected by the parity of the vertex bijection onto that
facet's own representative.  Homology then follows from Smith normal forms
computed with exact Python integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import perm as P
from .errors import TriangulationError
from .kernel import Triangulation, skeleton


class InvalidInput(TriangulationError):
    pass


@dataclass(frozen=True)
class ChainComplex:
    ranks: tuple
    boundary_maps: tuple   # boundary_maps[d-1] is the matrix of ∂_d (rows: (d-1)-cells)

    def check(self) -> bool:
        """True when every composite ∂_{d-1} ∂_d vanishes."""
        for d in range(2, len(self.ranks)):
            A, B = self.boundary_maps[d - 2], self.boundary_maps[d - 1]
            for j in range(self.ranks[d]):
                for i in range(self.ranks[d - 2]):
                    if sum(A[i][m] * B[m][j] for m in range(self.ranks[d - 1])):
                        return False
        return True


@dataclass(frozen=True)
class HomologyGroups:
    betti: tuple
    torsion: tuple     # torsion[d] = invariant factors > 1, in divisibility order

    def __str__(self):
        parts = []
        for b, tors in zip(self.betti, self.torsion):
            terms = (["Z"] if b == 1 else [f"Z^{b}"] if b else []) + [f"Z_{t}" for t in tors]
            parts.append(" + ".join(terms) if terms else "0")
        return "(" + ", ".join(parts) + ")"

    def as_dict(self):
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}


def chain_complex(t: Triangulation) -> ChainComplex:
    sk = skeleton(t, strict=False)
    if sk.self_identified:
        raise InvalidInput("homology needs a triangulation without self-identified faces")
    d = t.dim
    ranks = sk.f_vector
    maps = []
    for k in range(1, d + 1):
        mat = [[0] * ranks[k] for _ in range(ranks[k - 1])]
        lower = sk.lookup[k - 1]
        if k == d:
            cells = [(p, tuple(range(d + 1))) for p in range(t.size)]
        else:
            cells = [fc.rep for fc in sk.faces[k]]
        for col, (p, S) in enumerate(cells):
            for i in range(k + 1):
                face = S[:i] + S[i + 1:]
                idx, pos = lower[(p, face)]
                mat[idx][col] += (-1) ** i * P.sign(pos)
        maps.append(mat)
    return ChainComplex(ranks, tuple(maps))


def smith_diagonal(matrix) -> list:
    """Nonzero invariant factors of an integer matrix (exact arithmetic)."""
    A = [list(r) for r in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        # smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            Ai = A[i]
            for j in range(t, cols):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for r in A:
                r[t], r[j] = r[j], r[t]
        while True:
            piv = A[t][t]
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // piv
                    Ai, At = A[i], A[t]
                    for j in range(t, cols):
                        Ai[j] -= q * At[j]
                    if Ai[t]:
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // piv
                    for r in A[t:]:
                        r[j] -= q * r[t]
                    if A[t][j]:
                        done = False
            if done:
                # the pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % piv), None)
                if bad is None:
                    break
                i, _ = bad
                At, Ai = A[t], A[i]
                for j in range(t, cols):
                    At[j] += Ai[j]
                continue
            # move the smallest remaining entry of row/column t onto the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
            _, i, j = min(cands)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for r in A:
                    r[t], r[j] = r[j], r[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def homology(t: Triangulation) -> HomologyGroups:
    cc = chain_complex(t)
    d = t.dim
    diags = [smith_diagonal(m) for m in cc.boundary_maps]
    rank = [0] + [len(x) for x in diags] + [0]      # rank[k] = rank of ∂_k
    betti = tuple(cc.ranks[k] - rank[k] - rank[k + 1] for k in range(d + 1))
    torsion = [()] * (d + 1)
    for k in range(d):
        torsion[k] = tuple(sorted(x for x in diags[k] if x > 1))
    return HomologyGroups(betti, tuple(torsion))


def euler_characteristic(t: Triangulation) -> int:
    return sum((-1) ** k * x for k, x in enumerate(skeleton(t, strict=False).f_vector))


def betti_numbers(t: Triangulation) -> tuple:
    return homology(t).betti
