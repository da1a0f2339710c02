"""Reordering the threads of a long bunch so its horizontals can be colored.

A thread is the pair (color on v x_i, color on w x_i).  With the horizontal
edges removed every bunch vertex is a 2-path between the parents, so any
permutation of the pairs over the slots keeps G_B acyclic.  We pick a
permutation in which neighbouring slots share no color, then color the
horizontals greedily.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import ceil

import networkx as nx
from networkx.algorithms import bipartite

from .acyclic_coloring import EdgeColoring, is_proper, verify_acyclic
from .plane_graph import TRIANGLES, Bunch, PlaneGraph, edge_key

MIN_LENGTH = 11
MIN_COLORS = 13

Thread = tuple[int, int]


class RethreadError(ValueError):
    pass


class MatchingError(RethreadError):
    """The position graph has no perfect matching."""


@dataclass(frozen=True)
class ThreadConflictGraph:
    t: int
    adj: dict[int, frozenset[int]]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i in self.adj for j in self.adj[i] if i < j)

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self.adj.values()), default=0)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in range(1, self.t + 1):
            if s in seen:
                continue
            comp, todo = [], [s]
            seen.add(s)
            while todo:
                x = todo.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            out.append(sorted(comp))
        return out


@dataclass(frozen=True)
class OddPlacement:
    t: int
    odd_set: frozenset[int]
    placement: dict[int, int]  # position -> thread
    case: str
    specials: tuple[int, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def open_positions(self) -> list[int]:
        return [p for p in range(1, self.t + 1) if p not in self.placement]


@dataclass(frozen=True)
class PositionGraph:
    positions: tuple[int, ...]
    threads: tuple[int, ...]
    edges: frozenset[tuple[int, int]]  # (position, thread)

    def degree(self, pos: int) -> int:
        return sum(1 for p, _ in self.edges if p == pos)


def threads_of(b: Bunch, c: EdgeColoring) -> list[Thread]:
    v, w = b.parents
    return [(c[v, x], c[w, x]) for x in b.vertices]


def end_colors(g: PlaneGraph, b: Bunch, c: EdgeColoring) -> tuple[int | None, int | None]:
    ch = b.chain
    out = []
    for a, x in ((ch[0], ch[1]), (ch[-1], ch[-2])):
        out.append(c.get(edge_key(a, x)) if g.has_edge(a, x) else None)
    return out[0], out[1]


def strip_horizontals(g: PlaneGraph, b: Bunch) -> PlaneGraph:
    for e in b.horizontals:
        if not g.has_edge(*e):
            raise RethreadError(f"{e} is not an edge, so this is not a bunch of g")
    for x in b.vertices:
        if not (g.has_edge(x, b.parents[0]) and g.has_edge(x, b.parents[1])):
            raise RethreadError(f"bunch vertex {x} misses a parent")
    return g.without_edges(b.horizontals)


def _conflict(p: Thread, q: Thread) -> bool:
    return bool(set(p) & set(q))


def build_conflict_graph(threads: list[Thread]) -> ThreadConflictGraph:
    t = len(threads)
    if len({a for a, _ in threads}) < t or len({b for _, b in threads}) < t:
        raise RethreadError("improper coloring: a parent sees a color twice")
    if any(a == b for a, b in threads):
        raise RethreadError("improper coloring: a thread repeats its color")
    adj = {i: set() for i in range(1, t + 1)}
    for i in range(1, t + 1):
        for j in range(i + 1, t + 1):
            if _conflict(threads[i - 1], threads[j - 1]):
                adj[i].add(j)
                adj[j].add(i)
    conf = ThreadConflictGraph(t, {i: frozenset(s) for i, s in adj.items()})
    assert conf.max_degree <= 2, "conflict graph degree above 2"
    return conf


# the odd set

def _grow_path(adj, start: list[int], allowed: set[int], out: list[int], size: int) -> None:
    """Add vertices of ``allowed`` breadth-first from ``start`` until ``size``."""
    q = deque()
    for s in start:
        if len(out) >= size:
            return
        if s not in out:
            out.append(s)
        q.append(s)
    while q and len(out) < size:
        x = q.popleft()
        for y in sorted(adj[x]):
            if y in allowed and y not in out:
                out.append(y)
                q.append(y)
                if len(out) >= size:
                    return


def _shortest_path(adj, s: int, e: int) -> list[int]:
    prev = {s: None}
    q = deque([s])
    while q:
        x = q.popleft()
        if x == e:
            break
        for y in sorted(adj[x]):
            if y not in prev:
                prev[y] = x
                q.append(y)
    out = [e]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def choose_odd_set(conf: ThreadConflictGraph) -> tuple[list[int], tuple[str, ...]]:
    t = conf.t
    m = ceil((t + 1) / 2)
    comps = conf.components()
    comp_of = {x: i for i, c in enumerate(comps) for x in c}
    adj = {x: set(s) for x, s in conf.adj.items()}
    notes = []
    out: list[int] = []
    used_comps: set[int] = set()
    c1, ct = comp_of[1], comp_of[t]
    if c1 != ct:
        first, second = (c1, ct) if len(comps[c1]) < len(comps[ct]) else (ct, c1)
        out.extend(comps[first])
        used_comps.add(first)
        seed = 1 if second == c1 else t
        _grow_path(adj, [seed], set(comps[second]), out, m)
        used_comps.add(second)
    else:
        comp = comps[c1]
        sp = _shortest_path(adj, 1, t)
        if len(sp) > m:
            ends = [x for x in comp if len(adj[x]) < 2]
            assert len(ends) == 2, "a long shortest path only occurs in a path"
            a, z = ends
            adj[a].add(z)
            adj[z].add(a)
            notes.append(f"virtual edge {a}-{z}")
            sp = _shortest_path(adj, 1, t)
        _grow_path(adj, sp, set(comp), out, m)
        used_comps.add(c1)
    # free choice: components holding odd-numbered threads first, so an
    # unconstrained input is left in place
    for i in sorted(range(len(comps)), key=lambda i: (min(comps[i]) % 2 == 0, i)):
        comp = comps[i]
        if len(out) >= m:
            break
        if i in used_comps:
            continue
        if len(comp) <= m - len(out):
            out.extend(comp)
        else:
            ends = [x for x in comp if len(adj[x]) < 2] or comp
            _grow_path(adj, [ends[0]], set(comp), out, m)
    assert len(out) == m
    return out, tuple(notes)


def _outside(conf: ThreadConflictGraph, odd: set[int]) -> dict[int, int]:
    out = {}
    for x in sorted(odd):
        n = len(conf.adj[x] - odd)
        if n:
            out[x] = n
    return out


def _fill(slots: list[int], pool: list[int], placement: dict[int, int], threads, t: int,
          end_t: int | None) -> None:
    """Fill ``slots`` from ``pool`` in index order, guarding slot t-1."""
    pool = sorted(pool)
    if t - 1 in slots:
        bad = set(threads[t - 1])
        if end_t is not None:
            bad.add(end_t)
        pick = next((x for x in pool if not bad & set(threads[x - 1])), None)
        if pick is None:
            raise RethreadError("no thread fits position t-1")
        placement[t - 1] = pick
        pool.remove(pick)
        slots = [s for s in slots if s != t - 1]
    for s, x in zip(sorted(slots), pool):
        placement[s] = x


def _place(t: int, odd: list[int], conf: ThreadConflictGraph, threads: list[Thread],
           end_t: int | None) -> tuple[dict[int, int], str, tuple[int, ...]]:
    """Placement in the orientation where thread t is never the lone special."""
    oset = set(odd)
    out = _outside(conf, oset)
    specials = tuple(out)
    if len(specials) > 2 or (len(specials) == 2 and max(out.values()) > 1):
        raise RethreadError(f"odd set violates the boundary condition: {out}")
    placement = {1: 1, t: t}
    rest = [x for x in odd if x not in (1, t)]
    odd_slots = [p for p in range(3, t, 2)]
    others = [x for x in specials if x not in (1, t)]
    if 1 in out and t in out:
        case = "ends"
    elif 1 in out and others:
        case = "one-end"
        i = others[0]
        placement[t - 2] = i
        rest.remove(i)
        if t % 2:
            slots = [p for p in odd_slots if p != t - 2]
            _fill(slots, rest, placement, threads, t, end_t)
            return placement, case, specials
        slots = list(range(3, t - 2, 2))
        pick = next((x for x in sorted(rest) if not _conflict(threads[x - 1], threads[i - 1])), None)
        if pick is None:
            raise RethreadError("no thread fits position t-3")
        placement[t - 3] = pick
        rest.remove(pick)
        for s, x in zip([p for p in slots if p != t - 3], sorted(rest)):
            placement[s] = x
        return placement, case, specials
    elif 1 in out:
        case = "one-end-double" if out[1] == 2 else "one-end-alone"
    elif others:
        i = others[0]
        placement[3] = i
        rest.remove(i)
        odd_slots = [p for p in odd_slots if p != 3]
        if len(others) == 2:
            case = "two-inner"
            placement[5] = others[1]
            rest.remove(others[1])
            odd_slots = [p for p in odd_slots if p != 5]
        else:
            case = "inner-double" if out[i] == 2 else "inner-single"
    else:
        case = "closed"
    _fill(odd_slots, rest, placement, threads, t, end_t)
    return placement, case, specials


def _mirror_conf(conf: ThreadConflictGraph) -> ThreadConflictGraph:
    t = conf.t
    return ThreadConflictGraph(t, {t + 1 - i: frozenset(t + 1 - j for j in s)
                                   for i, s in conf.adj.items()})


def select_odd_set(conf: ThreadConflictGraph, threads: list[Thread],
                   ends: tuple[int | None, int | None] = (None, None)) -> OddPlacement:
    t = conf.t
    if t < MIN_LENGTH:
        raise RethreadError(f"bunch length {t} is below {MIN_LENGTH}")
    odd, notes = choose_odd_set(conf)
    out = _outside(conf, set(odd))
    mirrored = t in out and 1 not in out
    # with both or neither end special either orientation is allowed; the
    # slot next to thread t can be blocked in one of them, so try both
    tries = [mirrored] if (1 in out) != (t in out) else [False, True]
    for n, mirrored in enumerate(tries):
        try:
            placement, case, specials = _oriented(t, odd, conf, threads, ends, mirrored)
            break
        except RethreadError:
            if n == len(tries) - 1:
                raise
    if n:
        notes = (*notes, "placement retried in the mirrored orientation")
    assert sorted(placement.values()) == sorted(odd)
    return OddPlacement(t, frozenset(odd), dict(sorted(placement.items())), case,
                        specials, notes)


def _oriented(t, odd, conf, threads, ends, mirrored):
    if not mirrored:
        return _place(t, odd, conf, threads, ends[1])
    mp, case, ms = _place(t, [t + 1 - x for x in odd], _mirror_conf(conf),
                          threads[::-1], ends[0])
    placement = {t + 1 - p: t + 1 - x for p, x in mp.items()}
    return placement, case + "-mirrored", tuple(sorted(t + 1 - x for x in ms))


def build_position_graph(placement: dict[int, int], remaining: list[int], threads: list[Thread],
                         ends: tuple[int | None, int | None] = (None, None)) -> PositionGraph:
    t = len(threads)
    positions = tuple(p for p in range(1, t + 1) if p not in placement)
    edges = set()
    for p in positions:
        bad: set[int] = set()
        for q in (p - 1, p + 1):
            if q in placement:
                bad.update(threads[placement[q] - 1])
        if p == 2 and ends[0] is not None:
            bad.add(ends[0])
        if p == t - 1 and ends[1] is not None:
            bad.add(ends[1])
        for x in remaining:
            if not bad & set(threads[x - 1]):
                edges.add((p, x))
    return PositionGraph(positions, tuple(sorted(remaining)), frozenset(edges))


def perfect_matching(h: PositionGraph) -> dict[int, int]:
    if len(h.positions) != len(h.threads):
        raise MatchingError("sides differ in size")
    if not h.positions:
        return {}
    # integer labels keep set iteration, and so the matching, stable across runs
    off = max(max(h.positions), max(h.threads)) + 1
    bg = nx.Graph()
    bg.add_nodes_from(h.positions, bipartite=0)
    bg.add_nodes_from((off + x for x in h.threads), bipartite=1)
    bg.add_edges_from((p, off + x) for p, x in h.edges)
    m = bipartite.hopcroft_karp_matching(bg, top_nodes=list(h.positions))
    out = {p: m[p] - off for p in h.positions if p in m}
    if len(out) != len(h.positions):
        raise MatchingError(f"matching covers {len(out)} of {len(h.positions)} positions")
    return out


def _search_order(t: int, threads: list[Thread], ends) -> list[int] | None:
    """Backtracking fallback: any order with threads 1 and t fixed."""
    order = [1] + [0] * (t - 2) + [t]
    free = set(range(2, t))

    def ok(p: int, x: int) -> bool:
        s = set(threads[x - 1])
        if _conflict(threads[order[p - 2] - 1], threads[x - 1]):
            return False
        if p == 2 and ends[0] in s:
            return False
        if p == t - 1 and (ends[1] in s or _conflict(threads[t - 1], threads[x - 1])):
            return False
        return True

    def rec(p: int) -> bool:
        if p == t:
            return True
        for x in sorted(free):
            if ok(p, x):
                order[p - 1] = x
                free.remove(x)
                if rec(p + 1):
                    return True
                free.add(x)
        return False

    return order if rec(2) else None


def check_order(threads: list[Thread], ends) -> list[str]:
    """Problems with an ordering (threads listed by position)."""
    t = len(threads)
    out = []
    for i in range(t - 1):
        if _conflict(threads[i], threads[i + 1]):
            out.append(f"positions {i + 1} and {i + 2} share a color")
    if ends[0] is not None and ends[0] in threads[1]:
        out.append("position 2 uses the color of the left anchor edge")
    if ends[1] is not None and ends[1] in threads[t - 2]:
        out.append("position t-1 uses the color of the right anchor edge")
    return out


def apply_order(b: Bunch, c: EdgeColoring, order_threads: list[Thread]) -> EdgeColoring:
    v, w = b.parents
    out = c.copy()
    for x, (a, bb) in zip(b.vertices, order_threads):
        out[v, x] = a
        out[w, x] = bb
    return out


def color_horizontals(g: PlaneGraph, b: Bunch, c: EdgeColoring, k: int,
                      notes: list[str] | None = None) -> EdgeColoring:
    if k < MIN_COLORS:
        raise RethreadError(f"need at least {MIN_COLORS} colors, got {k}")
    gb = g.without_edges(b.horizontals)
    probs = check_order(threads_of(b, c), end_colors(gb, b, c))
    if probs:
        raise RethreadError("; ".join(probs))
    out = c.with_palette(max(k, c.k))
    ch = b.chain
    last = len(ch) - 1
    hs = set(b.horizontals)
    for i in range(1, last - 1):
        e = edge_key(ch[i], ch[i + 1])
        if e not in hs:
            continue
        window = [ch[j] for j in range(max(0, i - 1), min(last, i + 2) + 1)]
        bad = set()
        for x in window:
            bad |= out.seen(g, x)
        col = next((a for a in range(1, k + 1) if a not in bad), None)
        if col is None:
            # anchors may be big; keep only their edges into the chain
            bad = set()
            for x in window:
                if x in (ch[0], ch[-1]):
                    for y in (ch[1] if x == ch[0] else ch[-2],):
                        if edge_key(x, y) in out:
                            bad.add(out[x, y])
                else:
                    bad |= out.seen(g, x)
            col = next((a for a in range(1, k + 1) if a not in bad), None)
            if notes is not None:
                notes.append(f"horizontal {e}: anchor vertices dropped from the window")
        if col is None:
            raise RethreadError(f"no color left for horizontal {e}")
        out[e] = col
    return out


@dataclass
class RethreadTrace:
    stages: list[dict] = field(default_factory=list)

    def add(self, stage: str, **data) -> None:
        self.stages.append({"stage": stage, **data})


def rethread_bunch_traced(g: PlaneGraph, b: Bunch, c: EdgeColoring,
                          k: int) -> tuple[EdgeColoring, RethreadTrace]:
    tr = RethreadTrace()
    t = b.length
    if t < MIN_LENGTH:
        raise RethreadError(f"bunch length {t} is below {MIN_LENGTH}")
    if k < MIN_COLORS:
        raise RethreadError(f"need at least {MIN_COLORS} colors, got {k}")
    gb = strip_horizontals(g, b)
    if set(c) != set(gb.edges):
        raise RethreadError("coloring does not cover exactly the edges of G_B")
    if not is_proper(gb, c):
        raise RethreadError("input coloring is not proper on G_B")
    rep = verify_acyclic(gb, c)
    if not rep.ok:
        raise RethreadError(f"input coloring is not acyclic on G_B: {rep.reason}")
    tr.add("strip", removed=[list(e) for e in b.horizontals])
    threads = threads_of(b, c)
    ends = end_colors(gb, b, c)
    conf = build_conflict_graph(threads)
    tr.add("conflict", threads=[list(x) for x in threads], edges=[list(e) for e in conf.edges],
           components=conf.components())
    try:
        pl = select_odd_set(conf, threads, ends)
    except RethreadError as exc:
        # no placement of O in either orientation; search orders directly
        odd, _ = choose_odd_set(conf)
        tr.add("odd-set", odd_set=sorted(odd), placement={}, case="unplaced",
               specials=[], notes=[str(exc)])
        order = _search_order(t, threads, ends)
        if order is None:
            raise
        return _finish(g, b, c, k, threads, ends, order, tr, "backtracking")
    tr.add("odd-set", odd_set=sorted(pl.odd_set), placement=pl.placement, case=pl.case,
           specials=list(pl.specials), notes=list(pl.notes))
    remaining = sorted(set(range(1, t + 1)) - pl.odd_set)
    h = build_position_graph(pl.placement, remaining, threads, ends)
    tr.add("position-graph", positions=list(h.positions), threads=list(h.threads),
           edges=sorted([list(e) for e in h.edges]))
    try:
        match = perfect_matching(h)
        order = [0] * t
        for p, x in {**pl.placement, **match}.items():
            order[p - 1] = x
        tr.add("matching", matching=match)
    except MatchingError as exc:
        order = _search_order(t, threads, ends)
        if order is None:
            raise
        tr.add("matching", fallback="backtracking", reason=str(exc))
    return _finish(g, b, c, k, threads, ends, order, tr)


def _finish(g, b, c, k, threads, ends, order, tr, fallback=None):
    t = b.length
    if fallback:
        tr.add("matching", fallback=fallback)
    ordered = [threads[x - 1] for x in order]
    if check_order(ordered, ends):
        order2 = _search_order(t, threads, ends)
        if order2 is None:
            raise RethreadError("; ".join(check_order(ordered, ends)))
        tr.add("reorder", fallback="backtracking")
        order, ordered = order2, [threads[x - 1] for x in order2]
    tr.add("reorder", order=order, threads=[list(x) for x in ordered])
    mid = apply_order(b, c, ordered)
    notes: list[str] = []
    out = color_horizontals(g, b, mid, k, notes)
    tr.add("horizontals", colors={f"{u}-{v}": out[u, v] for u, v in b.horizontals},
           notes=notes)
    rep = verify_acyclic(g, out)
    if not rep.ok:
        raise RethreadError(f"output is not acyclic: {rep.reason}")
    tr.add("verify", ok=True)
    return out, tr


def rethread_bunch(g: PlaneGraph, b: Bunch, c: EdgeColoring, k: int) -> EdgeColoring:
    return rethread_bunch_traced(g, b, c, k)[0]
