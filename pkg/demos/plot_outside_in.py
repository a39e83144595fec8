"""
Searching the Pachner graph
===========================

Two triangulations of the same manifold are linked by a sequence of
Pachner moves.  The outside-in search looks for the shortest such sequence
whose intermediate triangulations stay below a size cap.
"""

from pachner4 import family
from pachner4.families import pillow_s4
from pachner4.search import SearchConfig, naive_bfs, outside_in, verify_sequence

# Start from the two-pentachoron pillow sphere and aim for the base of the
# families.  Both are 4-spheres, so a sequence exists once the cap allows
# enough room.
a, b = pillow_s4(), family("P", 0)
out = outside_in(a, b, SearchConfig(headroom=4, debug=True))
print("found:", out.found, "length:", len(out.sequence))
print("moves:", " ".join(str(s) for s in out.sequence))
print("stats:", out.stats.as_dict())

# Each step is a face index in the canonical labelling of the current
# triangulation; replaying the sequence certifies the result.
print("replay ok:", bool(verify_sequence(a, b, out.sequence, out.cap)))

# On small inputs the single-sided BFS finds a sequence of the same length.
from pachner4.moves import pachner_apply, pachner_sites

t = family("P", 1)
u = pachner_apply(t, (4, 0))
two_four = [s for s in pachner_sites(u) if s[0] == 3]
u = pachner_apply(u, two_four[0])
fast = outside_in(t, u, SearchConfig(headroom=2))
slow = naive_bfs(t, u, 2)
print("outside-in:", len(fast.sequence), "naive BFS:", len(slow.sequence))
