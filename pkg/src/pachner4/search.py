"""
Bidirectional "outside-in" search of the Pachner graph.

Triangulations are stored only as signatures.  Each side of the search keeps
breadth-first rings: ring 1 holds the start triangulation, ring ``a + 1`` the
new Pachner neighbours of ring ``a``.  Only the two newest rings of each side
are held in memory; older rings are written to a temporary archive and read
back only for the backtrace, which recovers the moves by regenerating
neighbours instead of storing parents.

``outside_in`` keeps the shortest-path guarantee.  ``outside_in_simplify``
restarts a side (a new "generation") whenever a smaller triangulation is
found on it, recording a single parent link per restart.
"""
from __future__ import annotations

import os
import shutil
import tempfile
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .canonical import canonical_form, parse_signature, signature, signature_of_canonical
from .errors import IsomorphicInputs, SequenceError, TriangulationError
from .kernel import Triangulation
from .moves import (MoveStep, apply_move, collapse_sites, pachner, pachner_apply,
                    pachner_sites, two_zero_sites)


class SearchAborted(Exception):
    """Raised internally when a ring outgrows the configured limit."""


@dataclass
class SearchConfig:
    headroom: int = 2
    simplify: bool = False
    ring_size_limit: Optional[int] = None
    safe_mode: bool = True
    debug: bool = False
    threads: int = 1
    prepass: bool = False


@dataclass
class SearchStats:
    rings_expanded: int = 0
    peak_stored: int = 0
    visited: int = 0
    generations: tuple = (1, 1)
    debug_checks: int = 0
    violations: list = field(default_factory=list)

    def as_dict(self):
        return {
            "rings_expanded": self.rings_expanded,
            "peak_stored_signatures": self.peak_stored,
            "triangulations_visited": self.visited,
            "generations": list(self.generations),
            "debug_checks": self.debug_checks,
            "invariant_violations": list(self.violations),
        }


@dataclass
class SearchOutcome:
    result: str                         # "sequence", "not_found" or "aborted"
    sequence: Optional[list] = None
    stats: SearchStats = field(default_factory=SearchStats)
    reason: str = ""
    cap: int = 0

    @property
    def found(self) -> bool:
        return self.result == "sequence"


# ---------------------------------------------------------------------------
# Neighbours

def neighbours(sig: str, cap: int) -> list:
    """``(MoveStep, signature)`` for every Pachner move keeping at most ``cap`` simplices."""
    t = parse_signature(sig)
    out = []
    for dim, idx in pachner_sites(t, max_size=cap):
        res = pachner_apply(t, (dim, idx))
        out.append((pachner(dim, idx), signature(res)))
    return out


def _neighbour_sigs(args):
    sig, cap = args
    return [s for _, s in neighbours(sig, cap)]


class _Expander:
    """Computes neighbour lists for a ring, optionally with worker processes."""

    def __init__(self, threads: int):
        self.pool = ProcessPoolExecutor(threads) if threads > 1 else None

    def run(self, members, cap):
        if self.pool is None:
            for sig in members:
                yield sig, _neighbour_sigs((sig, cap))
        else:
            chunk = max(1, len(members) // 64)
            results = self.pool.map(_neighbour_sigs, [(s, cap) for s in members],
                                    chunksize=chunk)
            yield from zip(members, results)

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()


# ---------------------------------------------------------------------------
# Ring storage

class RingArchive:
    """Rings too old to be needed for expansion, kept on disk for the backtrace."""

    def __init__(self):
        self.dir = tempfile.mkdtemp(prefix="outside-in-")
        self.keys = set()

    def _path(self, key):
        side, gen, depth = key
        return os.path.join(self.dir, f"{side}-{gen}-{depth}.txt")

    def put(self, key, members):
        with open(self._path(key), "w") as fh:
            fh.write("\n".join(sorted(members)))
        self.keys.add(key)

    def get(self, key) -> set:
        if key not in self.keys:
            return set()
        with open(self._path(key)) as fh:
            text = fh.read()
        return set(text.split("\n")) if text else set()

    def close(self):
        shutil.rmtree(self.dir, ignore_errors=True)


class Side:
    """One side of the search: the current generation's newest rings."""

    def __init__(self, name, seed, archive, debug):
        self.name = name
        self.archive = archive
        self.debug = debug
        self.gen = 1
        self.depth = 1              # index of the newest complete ring
        self.prev = set()           # ring depth - 1
        self.cur = {seed}           # ring depth
        self.seed = seed
        self.complete = False
        self.seams = {}             # gen -> (seed, parent signature, parent depth in gen-1)
        self.history = {}           # debug only: (gen, depth) -> ring

    def key(self, depth, gen=None):
        return (self.name, self.gen if gen is None else gen, depth)

    def ring(self, depth, gen=None):
        gen = self.gen if gen is None else gen
        if gen == self.gen and depth == self.depth:
            return self.cur
        if gen == self.gen and depth == self.depth - 1:
            return self.prev
        return self.archive.get(self.key(depth, gen))

    def advance(self, new):
        if self.prev:
            self.archive.put(self.key(self.depth - 1), self.prev)
        self.prev, self.cur = self.cur, new
        self.depth += 1
        if self.debug:
            self.history[(self.gen, self.depth)] = set(new)

    def restart(self, seed, parent, parent_depth):
        for depth, ring in ((self.depth - 1, self.prev), (self.depth, self.cur)):
            if ring:
                self.archive.put(self.key(depth), ring)
        self.gen += 1
        self.seams[self.gen] = (seed, parent, parent_depth)
        self.depth = 1
        self.prev, self.cur = set(), {seed}
        self.seed = seed
        self.complete = False
        if self.debug:
            self.history[(self.gen, 1)] = {seed}

    def stored(self):
        return len(self.prev) + len(self.cur)


def _check_rings(L: Side, R: Side, stats: SearchStats, overlap=None, generation_local=False):
    """Full pairwise intersection check of every ring (debug mode)."""
    stats.debug_checks += 1
    for side in (L, R):
        keys = sorted(side.history)
        for a in range(len(keys)):
            for b in range(a + 1, len(keys)):
                ka, kb = keys[a], keys[b]
                if ka[0] != kb[0]:
                    continue
                if side.history[ka] & side.history[kb]:
                    stats.violations.append(f"{side.name} rings {ka} and {kb} intersect")
    if generation_local:
        return
    for ka, ra in L.history.items():
        for kb, rb in R.history.items():
            common = ra & rb
            if not common:
                continue
            if overlap is not None and ka == (L.gen, L.depth) and kb == (R.gen, R.depth) \
                    and common == {overlap}:
                continue
            stats.violations.append(f"L{ka} and R{kb} intersect")


# ---------------------------------------------------------------------------
# Backtrace

def _step_between(a: str, b: str, cap: int) -> MoveStep:
    for step, s in neighbours(a, cap):
        if s == b:
            return step
    raise TriangulationError("backtrace failed: triangulations are not adjacent")


def _trace_side(side: Side, node: str, depth: int, cap: int) -> list:
    """Path of signatures from the side's original start to ``node`` (inclusive)."""
    path = [node]
    gen = side.gen
    while True:
        while depth > 1:
            previous = side.ring(depth - 1, gen)
            nxt = None
            for _, s in neighbours(node, cap):
                if s in previous:
                    nxt = s
                    break
            if nxt is None:
                raise TriangulationError("backtrace failed: no parent in the previous ring")
            node = nxt
            depth -= 1
            path.append(node)
        if gen == 1:
            break
        seed, parent, parent_depth = side.seams[gen]
        node, depth, gen = parent, parent_depth, gen - 1
        path.append(node)
    path.reverse()
    return path


def _depth_of(side: Side, sig: str) -> int:
    return side.depth if sig in side.cur else side.depth - 1


def _path_to_steps(path, caps) -> list:
    return [_step_between(a, b, caps) for a, b in zip(path, path[1:])]


# ---------------------------------------------------------------------------
# Outside-in

def _prepass(t: Triangulation, safe: bool):
    """Greedy 2-0 / edge-collapse simplification; returns (triangulation, steps)."""
    steps = []
    cur = canonical_form(t)[0]
    while True:
        sites = two_zero_sites(cur, safe=safe) + collapse_sites(cur, safe=safe)
        if not sites:
            return cur, steps
        step = sites[0]
        cur = canonical_form(apply_move(cur, step, safe=safe))[0]
        steps.append(step)


def _search(t1, t2, config: SearchConfig) -> SearchOutcome:
    pre_steps = []
    if config.prepass:
        t1, pre_steps = _prepass(t1, config.safe_mode)
    s1, s2 = signature(t1), signature(t2)
    if s1 == s2:
        raise IsomorphicInputs("the two triangulations are isomorphic")
    stats = SearchStats()
    size = {s1: t1.size, s2: t2.size}
    n_max = max(t1.size, t2.size)
    max_cap = n_max + config.headroom
    archive = RingArchive()
    L = Side("L", s1, archive, config.debug)
    R = Side("R", s2, archive, config.debug)
    if config.debug:
        L.history[(1, 1)] = {s1}
        R.history[(1, 1)] = {s2}
    size1, size2 = t1.size, t2.size
    expander = _Expander(config.threads)
    simplify = config.simplify

    def expand(side: Side, other: Side):
        """One expansion step; returns ("overlap", sig) / ("reset", None) / ("done", new)."""
        nonlocal n_max, size1, size2
        cap = n_max + config.headroom
        new = set()
        stats.rings_expanded += 1
        for sig, nbrs in expander.run(sorted(side.cur), cap):
            for s in nbrs:
                stats.visited += 1
                if s not in side.prev and s not in side.cur:
                    new.add(s)
                    if config.ring_size_limit and len(new) > config.ring_size_limit:
                        raise SearchAborted(f"ring on side {side.name} exceeded "
                                            f"{config.ring_size_limit} signatures")
                if s in other.cur:
                    stats.peak_stored = max(stats.peak_stored,
                                            L.stored() + R.stored() + len(new))
                    if s in new:
                        side.advance(new)
                    return "overlap", (side, s)
                if simplify:
                    n = int(s.split(":")[1])
                    current = size1 if side is L else size2
                    if n < current:
                        parent_depth = side.depth
                        side.restart(s, sig, parent_depth)
                        if side is L:
                            size1 = n
                        else:
                            size2 = n
                        n_max = max(size1, size2)
                        return "reset", None
            stats.peak_stored = max(stats.peak_stored,
                                    L.stored() + R.stored() + len(new))
        return "done", new

    def finish(payload):
        _, overlap = payload
        if config.debug:
            _check_rings(L, R, stats, overlap, generation_local=simplify)
        stats.generations = (L.gen, R.gen)
        left = _trace_side(L, overlap, _depth_of(L, overlap), max_cap)
        right = _trace_side(R, overlap, _depth_of(R, overlap), max_cap)
        path = left + right[::-1][1:]
        steps = pre_steps + _path_to_steps(path, max_cap)
        return SearchOutcome("sequence", steps, stats, cap=max_cap)

    try:
        side, other = L, R
        while True:
            status, payload = expand(side, other)
            if status == "overlap":
                return finish(payload)
            if status == "reset":
                if config.debug:
                    _check_rings(L, R, stats, generation_local=True)
                # a fresh generation starts at depth 1; choose the next side at once
                if (len(L.cur) <= len(R.cur) and not L.complete) or R.complete:
                    side, other = L, R
                else:
                    side, other = R, L
                continue
            new = payload
            if not new:
                if not simplify:
                    stats.generations = (L.gen, R.gen)
                    return SearchOutcome("not_found", None, stats,
                                         reason=f"side {side.name} exhausted", cap=max_cap)
                side.complete = True
                if other.complete:
                    stats.generations = (L.gen, R.gen)
                    return SearchOutcome("not_found", None, stats,
                                         reason="both sides exhausted", cap=max_cap)
                side, other = other, side
                continue
            side.advance(new)
            if config.debug:
                _check_rings(L, R, stats, generation_local=simplify)
            if len(L.cur) <= len(R.cur):
                go_left = not L.complete or not simplify
            else:
                go_left = simplify and R.complete
            side, other = (L, R) if go_left else (R, L)
    except SearchAborted as exc:
        stats.generations = (L.gen, R.gen)
        return SearchOutcome("aborted", None, stats, reason=str(exc), cap=max_cap)
    finally:
        expander.close()
        archive.close()


def outside_in(t1: Triangulation, t2: Triangulation, config: Optional[SearchConfig] = None,
               **kwargs) -> SearchOutcome:
    """Shortest cap-respecting Pachner sequence from ``t1`` to ``t2`` (or NotFound)."""
    config = config or SearchConfig(**kwargs)
    if config.simplify:
        return outside_in_simplify(t1, t2, config)
    out = _search(t1, t2, config)
    _verify_outcome(t1, t2, out)
    return out


def outside_in_simplify(t1: Triangulation, t2: Triangulation,
                        config: Optional[SearchConfig] = None, **kwargs) -> SearchOutcome:
    """Outside-in search that restarts a side whenever it finds a smaller triangulation."""
    config = config or SearchConfig(**kwargs)
    config = SearchConfig(**{**config.__dict__, "simplify": True})
    out = _search(t1, t2, config)
    _verify_outcome(t1, t2, out)
    return out


def _verify_outcome(t1, t2, out: SearchOutcome):
    if out.found:
        report = verify_sequence(t1, t2, out.sequence, out.cap)
        if not report:
            raise SequenceError(report.step, f"search produced an invalid certificate: "
                                             f"{report.reason}")


# ---------------------------------------------------------------------------
# Naive BFS oracle

def naive_bfs(t1: Triangulation, t2: Triangulation, k: int,
              limit: Optional[int] = None) -> SearchOutcome:
    """Single-sided BFS storing every visited signature with its parent."""
    s1, s2 = signature(t1), signature(t2)
    if s1 == s2:
        raise IsomorphicInputs("the two triangulations are isomorphic")
    cap = max(t1.size, t2.size) + k
    stats = SearchStats()
    parent = {s1: None}
    queue = deque([s1])
    while queue:
        sig = queue.popleft()
        stats.rings_expanded += 1
        for step, s in neighbours(sig, cap):
            stats.visited += 1
            if s in parent:
                continue
            parent[s] = (sig, step)
            if s == s2:
                steps = []
                node = s
                while parent[node] is not None:
                    prev, st = parent[node]
                    steps.append(st)
                    node = prev
                stats.peak_stored = len(parent)
                return SearchOutcome("sequence", steps[::-1], stats, cap=cap)
            if limit and len(parent) > limit:
                stats.peak_stored = len(parent)
                return SearchOutcome("aborted", None, stats, reason="visited limit", cap=cap)
            queue.append(s)
    stats.peak_stored = len(parent)
    return SearchOutcome("not_found", None, stats, reason="component exhausted", cap=cap)


# ---------------------------------------------------------------------------
# Certificate replay

@dataclass
class VerifyReport:
    ok: bool
    step: Optional[int] = None
    reason: str = ""
    max_size: int = 0

    def __bool__(self):
        return self.ok


def verify_sequence(t1: Triangulation, t2: Triangulation, seq, cap: Optional[int] = None,
                    safe: bool = True) -> VerifyReport:
    """Replay ``seq`` from ``t1``; each step is read in the running canonical form."""
    cur = canonical_form(t1)[0]
    biggest = cur.size
    for n, step in enumerate(seq):
        try:
            nxt = apply_move(cur, step, safe=safe)
        except TriangulationError as exc:
            return VerifyReport(False, n, str(exc), biggest)
        cur = canonical_form(nxt)[0]
        biggest = max(biggest, cur.size)
        if cap is not None and cur.size > cap:
            return VerifyReport(False, n, f"size {cur.size} exceeds cap {cap}", biggest)
    if signature_of_canonical(cur) != signature(t2):
        return VerifyReport(False, len(seq), "final triangulation differs from the target",
                            biggest)
    return VerifyReport(True, None, "", biggest)


def check_sequence(t1, t2, seq, cap=None) -> int:
    """Like :func:`verify_sequence` but raises :class:`SequenceError`; returns peak size."""
    report = verify_sequence(t1, t2, seq, cap)
    if not report:
        raise SequenceError(report.step, report.reason)
    return report.max_size
