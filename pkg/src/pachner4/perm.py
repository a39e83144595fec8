"""
Permutations of {0, ..., n-1} stored as image tuples.

A permutation ``p`` sends ``i`` to ``p[i]``.  Composition follows function
notation: ``compose(a, b)`` is ``a o b``, i.e. apply ``b`` first.  Every
permutation group used here is small (at most 5! = 120 elements), so the
lexicographic index tables are built once per degree and cached.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

Perm = tuple  # tuple[int, ...]


@lru_cache(maxsize=None)
def all_perms(n: int) -> tuple:
    """All permutations of degree ``n`` in lexicographic order (identity first)."""
    return tuple(permutations(range(n)))


@lru_cache(maxsize=None)
def _index_table(n: int) -> dict:
    return {p: i for i, p in enumerate(all_perms(n))}


def perm_index(p: Perm) -> int:
    return _index_table(len(p))[p]


def perm_from_index(n: int, index: int) -> Perm:
    return all_perms(n)[index]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    return tuple([a[x] for x in b])


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def sign(p: Perm) -> int:
    """+1 for even permutations, -1 for odd ones."""
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def is_perm(p) -> bool:
    return sorted(p) == list(range(len(p)))


def transposition(n: int, a: int, b: int) -> Perm:
    p = list(range(n))
    p[a], p[b] = b, a
    return tuple(p)


@lru_cache(maxsize=None)
def tables(n: int):
    """Index-level tables ``(images, compose, inverse)`` for fast inner loops.

    ``compose[a][b]`` is the index of ``perm(a) o perm(b)``.
    """
    perms = all_perms(n)
    index = _index_table(n)
    comp = [[index[compose(a, b)] for b in perms] for a in perms]
    inv = [index[inverse(a)] for a in perms]
    return perms, comp, inv
