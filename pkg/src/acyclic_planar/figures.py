"""The length-12 bunch example with its two thread colorings.

Threads are (color at v, color at w), listed by position 1..12.  The first
table is the input coloring of G_B; the second is the reordered one.  The
anchor edges x_0x_1 and x_12x_13 carry colors 4 and 9.
"""

from __future__ import annotations

from .acyclic_coloring import EdgeColoring, smallest_safe_color
from .generators import figure_gadget
from .plane_graph import Bunch, PlaneGraph

INPUT_THREADS = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1),
                 (7, 8), (8, 9), (9, 10), (10, 11), (11, 12), (12, 7))
REORDERED_THREADS = ((1, 2), (5, 6), (7, 8), (2, 3), (8, 9), (3, 4),
                     (11, 12), (6, 1), (9, 10), (4, 5), (10, 11), (12, 7))
ANCHOR_COLORS = (4, 9)
# conflict-graph components and the odd set named in the example
CONFLICT_COMPONENTS = ({1, 2, 3, 4, 5, 6}, {7, 8, 9, 10, 11, 12})
ODD_SET = {1, 7, 8, 9, 10, 11, 12}
# partial placement (position -> thread) and the matching of the example
PLACEMENT = {1: 1, 3: 7, 5: 8, 7: 11, 9: 9, 11: 10, 12: 12}
MATCHING = {2: 5, 4: 2, 6: 3, 8: 6, 10: 4}
# The parents see colors 1..12 on threads, so the four parent-anchor edges
# need three further colors; 15 is the smallest palette that works.
PALETTE = 15


def figure_coloring(threads=INPUT_THREADS) -> tuple[PlaneGraph, Bunch, EdgeColoring]:
    """Figure gadget and an acyclic coloring of G_B with the given threads."""
    g, b = figure_gadget()
    v, w = b.parents
    x = b.chain
    c = EdgeColoring(PALETTE)
    for i, (a, bb) in enumerate(threads, 1):
        c[v, x[i]] = a
        c[w, x[i]] = bb
    c[x[0], x[1]] = ANCHOR_COLORS[0]
    c[x[12], x[13]] = ANCHOR_COLORS[1]
    c[v, x[0]] = 13
    c[v, x[13]] = 14
    c[w, x[0]] = 14
    c[w, x[13]] = 15
    horizontals = set(b.horizontals)
    for e in g.edges:
        if e in c or e in horizontals:
            continue
        col = smallest_safe_color(g, c, e[0], e[1], PALETTE)
        if col is None:
            raise RuntimeError(f"cannot color fixture edge {e}")
        c[e] = col
    return g, b, c
