"""Reference implementations of the hot loops.

Both functions take the graph as flat edge arrays ``eu``/``ev`` over
vertices ``0..n-1``.  Colors are integers in ``1..k``; 0 means uncolored.
"""

from __future__ import annotations

from typing import Sequence


def first_bicolored_cycle(n: int, eu: Sequence[int], ev: Sequence[int],
                          ec: Sequence[int], k: int):
    """First 2-colored cycle of a proper coloring, or None.

    Returns ``(alpha, beta, cycle)`` with ``alpha < beta``.  Every edge of a
    bicolored cycle lies on a walk that alternates between two colors; we
    start a walk from each edge of the smaller color, toward each larger
    color seen at its far end, and never rewalk an (edge, color) pair.
    """
    nbr = [dict() for _ in range(n)]
    eid = [dict() for _ in range(n)]
    for i in range(len(eu)):
        c = ec[i]
        if c:
            nbr[eu[i]][c] = ev[i]
            nbr[ev[i]][c] = eu[i]
            eid[eu[i]][c] = i
            eid[ev[i]][c] = i
    done = set()
    for i in range(len(eu)):
        a = ec[i]
        if not a:
            continue
        for u, w in ((eu[i], ev[i]), (ev[i], eu[i])):
            for b in sorted(nbr[w]):
                if b <= a or b not in nbr[u] or (i, b) in done:
                    continue
                path = [u, w]
                cur, col = w, b
                closed = False
                steps = 0
                while steps <= n:
                    steps += 1
                    nxt = nbr[cur].get(col)
                    if nxt is None:
                        break
                    if col == a:
                        done.add((eid[cur][col], b))
                    if nxt == u:
                        closed = col == b
                        break
                    path.append(nxt)
                    cur = nxt
                    col = a if col == b else b
                done.add((i, b))
                if closed:
                    return a, b, path
    return None


def search_acyclic(n: int, eu: Sequence[int], ev: Sequence[int], k: int,
                   node_limit: int = 0):
    """Backtracking search for an acyclic coloring with colors 1..k.

    Edges are colored in the given order.  A new color may only be the
    smallest unused one, which removes palette symmetry.  Returns the color
    list or None; ``node_limit`` > 0 caps the number of search nodes and
    yields None when hit (callers treat that as unknown).
    """
    m = len(eu)
    seen = [dict() for _ in range(n)]
    colors = [0] * m
    nodes = 0

    def closes(u: int, w: int, a: int) -> bool:
        for b, x in seen[w].items():
            if b not in seen[u]:
                continue
            cur, col, steps = w, b, 0
            while True:
                nxt = seen[cur].get(col)
                if nxt is None:
                    break
                if nxt == u:
                    if col == b:
                        return True
                    break
                cur = nxt
                col = a if col == b else b
                steps += 1
                if steps > n:
                    break
        return False

    def rec(i: int, used: int) -> bool:
        nonlocal nodes
        if i == m:
            return True
        nodes += 1
        if node_limit and nodes > node_limit:
            raise _Limit
        u, w = eu[i], ev[i]
        for c in range(1, min(k, used + 1) + 1):
            if c in seen[u] or c in seen[w]:
                continue
            if closes(u, w, c):
                continue
            seen[u][c] = w
            seen[w][c] = u
            colors[i] = c
            if rec(i + 1, max(used, c)):
                return True
            del seen[u][c]
            del seen[w][c]
            colors[i] = 0
        return False

    try:
        ok = rec(0, 0)
    except _Limit:
        return None
    return colors if ok else None


class _Limit(Exception):
    pass
