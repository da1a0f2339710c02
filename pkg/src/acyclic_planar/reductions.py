"""Recoloring kernels and a recursive coloring driver.

The kernels are the recoloring steps used to rule out the reducible
configurations; the driver runs the vertex-deletion argument forward.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .acyclic_coloring import (
    ColoringError,
    EdgeColoring,
    bicolored_cycles_through,
    greedy_extend_vertex,
    is_proper,
    merge_at_cut_vertex,
    random_acyclic_coloring,
    search_coloring,
    smallest_safe_color,
    verify_acyclic,
)
from .discharging import outside_counts
from .plane_graph import Bunch, PlaneGraph, Thresholds, edge_key, find_bunches
from .rethreading import rethread_bunch

BRUTE_FORCE_EDGES = 12


class RegimeError(ValueError):
    """The instance is outside the range where a kernel is guaranteed."""


# single big vertex with many private low neighbours

@dataclass(frozen=True)
class Lemma2Certificate:
    """Counts recorded when no (i, j) pair exists."""

    w_size: int
    q: int
    s1: tuple[int, ...]
    s_sizes: dict[int, int]
    occurrences: int  # S_1-colored edges at W away from v
    edge_cap: int  # 4|W|

    @property
    def count_ok(self) -> bool:
        """Each i in S_1 appears at least |S_i| times among at most 4|W| edges."""
        return sum(self.s_sizes.values()) <= self.occurrences <= self.edge_cap

    @property
    def quadratic_vacuous(self) -> bool:
        return self.w_size < self.q

    @property
    def quadratic_ok(self) -> bool:
        return self.quadratic_vacuous or (self.w_size - self.q) ** 2 <= 4 * self.w_size

    @property
    def bound(self) -> float:
        return self.q + 2 + math.sqrt(4 * self.q + 4)

    @property
    def bound_ok(self) -> bool:
        return self.w_size <= self.bound

    def to_dict(self) -> dict:
        return {"w_size": self.w_size, "q": self.q, "s1": list(self.s1),
                "s_sizes": {str(i): n for i, n in self.s_sizes.items()},
                "occurrences": self.occurrences, "edge_cap": self.edge_cap,
                "count_ok": self.count_ok, "quadratic_vacuous": self.quadratic_vacuous,
                "quadratic_ok": self.quadratic_ok, "bound": self.bound,
                "bound_ok": self.bound_ok}


@dataclass
class Lemma2State:
    q: int
    w_set: tuple[int, ...]
    s: set[int]
    c_sets: dict[int, set[int]]  # keyed by the color of v w_i
    s_sets: dict[int, set[int]]

    def w_of(self, g: PlaneGraph, c: EdgeColoring, v: int, i: int) -> int | None:
        u = c.edge_at(g, v, i)
        return u if u in self.w_set else None


@dataclass
class Lemma2Result:
    coloring: EdgeColoring | None
    steps: list[dict] = field(default_factory=list)
    certificate: Lemma2Certificate | None = None
    margin: float = 0.0  # d(v) - Delta + |W| - (q + sqrt(5q))

    @property
    def ok(self) -> bool:
        return self.coloring is not None


def lemma2_set(g: PlaneGraph, v: int, q: int) -> list[int]:
    """5^- neighbours w of v with sum of d(x) over N(w) - v at most q."""
    out = []
    for w in g.neighbors(v):
        if g.degree(w) <= 5 and sum(g.degree(x) for x in g.neighbors(w) if x != v) <= q:
            out.append(w)
    return out


def _lemma2_state(g: PlaneGraph, v: int, w_set, q: int, c: EdgeColoring, k: int) -> Lemma2State:
    at_v = c.seen(g, v)
    s = {a for a in range(1, k + 1) if a not in at_v}
    c_sets, s_sets = {}, {}
    for w in w_set:
        i = c.get((v, w))
        if i is None:
            continue
        s.add(i)
    for w in w_set:
        i = c.get((v, w))
        if i is None:
            continue
        ci = set()
        for x in g.neighbors(w):
            if x != v:
                ci |= c.seen(g, x)
        c_sets[i] = ci
        s_sets[i] = s - ci - {i}
    return Lemma2State(q, tuple(w_set), s, c_sets, s_sets)


def lemma2_extend(g: PlaneGraph, v: int, w_set, q: int, c: EdgeColoring, k: int,
                  w1: int | None = None) -> Lemma2Result:
    """Extend a coloring of g - w1 to the edges at w1.

    vw1 is colored greedily, then each w1 x1 either directly with a color i
    of S_1 or by coloring it i and moving w_i x_i from color 1 to j.
    """
    if q < 100:
        raise RegimeError("q must be at least 100")
    w_set = tuple(w_set)
    if not w_set:
        raise RegimeError("W is empty")
    for w in w_set:
        if not g.has_edge(v, w) or g.degree(w) > 5:
            raise RegimeError(f"{w} is not a 5^- neighbour of {v}")
        if sum(g.degree(x) for x in g.neighbors(w) if x != v) > q:
            raise RegimeError(f"{w} has neighbour degree sum above q")
    w1 = w_set[0] if w1 is None else w1
    if w1 not in w_set:
        raise RegimeError("w1 must lie in W")
    for x in g.neighbors(w1):
        if (w1, x) in c:
            raise ColoringError(f"edge {(w1, x)} should be uncolored")
    margin = g.degree(v) - g.max_degree + len(w_set) - (q + math.sqrt(5 * q))
    out = c.with_palette(max(k, c.k))
    col = smallest_safe_color(g, out, v, w1, k)
    if col is None:
        raise ColoringError(f"cannot extend to {(v, w1)}")
    out[v, w1] = col
    res = Lemma2Result(None, [{"edge": [v, w1], "color": col, "kind": "greedy"}], margin=margin)
    one = col
    for x1 in g.neighbors(w1):
        if x1 == v:
            continue
        st = _lemma2_state(g, v, w_set, q, out, k)
        s1 = sorted(st.s_sets[one])
        step = None
        for i in s1:
            wi = st.w_of(g, out, v, i)
            if wi is None or one not in out.seen(g, wi):
                out[w1, x1] = i
                step = {"edge": [w1, x1], "color": i, "kind": "direct"}
                break
        if step is None:
            for i in s1:
                wi = st.w_of(g, out, v, i)
                xi = out.edge_at(g, wi, one)
                if xi is None or xi == x1:
                    continue
                for j in sorted(st.s_sets[i] - {i, one}):
                    wj = st.w_of(g, out, v, j)
                    if wj is not None and i in out.seen(g, wj):
                        continue
                    out[w1, x1] = i
                    out[wi, xi] = j
                    step = {"edge": [w1, x1], "color": i, "kind": "swap",
                            "moved": [wi, xi], "to": j}
                    break
                if step is not None:
                    break
        if step is None:
            res.certificate = _certificate(g, v, w_set, q, out, st, one, s1, x1)
            res.steps.append({"edge": [w1, x1], "kind": "stuck"})
            return res
        res.steps.append(step)
    rep = verify_acyclic(g, out)
    if not rep.ok:
        raise ColoringError(f"extension is not acyclic: {rep.reason}")
    res.coloring = out
    return res


def _certificate(g, v, w_set, q, c, st: Lemma2State, one: int, s1, x1) -> Lemma2Certificate:
    # i with x_i = x_1 is the excluded corner case and carries no count
    s1w = [i for i in s1 if st.w_of(g, c, v, i) is not None
           and c.edge_at(g, st.w_of(g, c, v, i), one) != x1]
    sizes = {i: len(st.s_sets[i] - {one}) for i in s1w}
    occ = 0
    s1set = set(s1w)
    for w in w_set:
        for x in g.neighbors(w):
            if x != v and c.get((w, x)) in s1set:
                occ += 1
    return Lemma2Certificate(len(w_set), q, tuple(s1w), sizes, occ, 4 * len(w_set))


# one big vertex with long bunches

@dataclass
class ReductionState:
    v: int
    k: int
    c_good: set[int]
    long: list[Bunch]
    short: list[Bunch]
    nf: int
    ns: int
    removed: dict[str, set[int]] = field(default_factory=dict)

    @property
    def s(self) -> int:
        return len(self.short)

    @property
    def bound(self) -> int:
        nf, ns, s = self.nf, self.ns, self.s
        return 5 * nf + ns * (nf + ns + 1 - s) + 10 * s + 2

    @property
    def bound_holds(self) -> bool:
        return self.k - len(self.c_good) + 2 <= self.bound


def _v_bunches(bunches: list[Bunch], v: int) -> list[Bunch]:
    return [b for b in bunches if v in b.parents]


def build_c_good(g: PlaneGraph, v: int, c: EdgeColoring, bunches: list[Bunch],
                 th: Thresholds, k: int) -> ReductionState:
    mine = _v_bunches(bunches, v)
    long = [b for b in mine if b.length >= th.long_bunch_min]
    short = [b for b in mine if b.length < th.long_bunch_min]
    inside = {x for b in mine for x in b.vertices}
    good = set(range(1, k + 1))
    removed = {"outside": set(), "option": set(), "short": set()}
    two_nbrs = [u for u in g.neighbors(v) if g.degree(u) == 2]
    for p in g.neighbors(v):
        if p in inside:
            continue
        a = c.get((v, p))
        if a is None:
            continue
        removed["outside"].add(a)
        opt1 = c.seen(g, p) - {a}
        opt2 = set()
        for u in two_nbrs:
            if a in c.seen(g, u) and (v, u) in c:
                opt2.add(c[v, u])
        removed["option"] |= opt1 if len(opt1) <= len(opt2) else opt2
    for b in short:
        for x in b.vertices:
            if (v, x) in c:
                removed["short"].add(c[v, x])
    for s in removed.values():
        good -= s
    nf, ns = outside_counts(g, v, bunches)
    return ReductionState(v, k, good, long, short, nf, ns, removed)


@dataclass
class ReductionResult:
    coloring: EdgeColoring
    working: PlaneGraph
    state: ReductionState
    trace: list[dict]


def working_graph(g: PlaneGraph, v: int, bunches: list[Bunch], th: Thresholds) -> PlaneGraph:
    hs = [e for b in _v_bunches(bunches, v) if b.length >= th.long_bunch_min
          for e in b.horizontals]
    return g.without_edges(hs)


def reduce_big_vertex(g: PlaneGraph, v: int, th: Thresholds, k: int,
                      seed: int = 0, base: EdgeColoring | None = None,
                      restore: bool = False) -> ReductionResult:
    """Color the working graph G' (long-bunch horizontals at v removed).

    ``base`` is an acyclic coloring of G' - x; when omitted one is drawn
    at random.  With ``restore`` the horizontals are put back by
    rethreading each long bunch in turn, and the coloring is of g.
    """
    bunches = find_bunches(g, th)
    mine = _v_bunches(bunches, v)
    if not mine:
        raise RegimeError(f"{v} is a parent of no bunch")
    gp = working_graph(g, v, bunches, th)
    b = max(mine, key=lambda bb: bb.length)
    w = b.parents[1] if b.parents[0] == v else b.parents[0]
    x = b.vertices[b.length // 2]
    if set(gp.neighbors(x)) != {v, w}:
        raise RegimeError(f"bunch vertex {x} is not a 2-vertex of the working graph")
    trace: list[dict] = [{"stage": "setup", "bunch": b.to_dict(), "x": x, "w": w}]
    gx_edges = [e for e in gp.edges if x not in e]
    if base is None:
        gx = gp.without_vertices([x])
        base = random_acyclic_coloring(gx, k, random.Random(seed))
        if base is None:
            raise RegimeError("no random acyclic coloring of G' - x found")
    if set(base) != set(gx_edges):
        raise ColoringError("base coloring must cover exactly the edges of G' - x")
    phi = base.with_palette(k)
    col = smallest_safe_color(gp, phi, w, x, k)
    if col is None:
        raise RegimeError(f"cannot extend to {(w, x)}")
    phi[w, x] = col
    st = build_c_good(gp, v, phi, bunches, th, k)
    if b.length + len(st.c_good) < k + 2:
        raise RegimeError(f"pigeonhole fails: length {b.length} + |C_good| "
                          f"{len(st.c_good)} < k + 2 = {k + 2}")
    trace.append({"stage": "c_good", "c_good": sorted(st.c_good), "nf": st.nf,
                  "ns": st.ns, "s": st.s})
    pinned: dict[tuple[int, int], int] = {}
    wx = phi[w, x]
    y = next((u for u in b.vertices if u != x and phi.get((v, u)) == wx), None)
    stripped = [edge_key(v, u) for u in gp.neighbors(v)
                if phi.get((v, u)) in st.c_good]
    if y is not None:
        # the shortcut keeps vy as is and gives vx a fresh good color
        a = min(st.c_good - {wx, phi[w, y]}, default=None)
        if a is None:
            raise RegimeError("shortcut has no color for vx")
        pinned[edge_key(v, y)] = wx
        pinned[edge_key(v, x)] = a
        trace.append({"stage": "shortcut", "y": y, "vx": a})
    else:
        y = next((u for u in b.vertices if u != x and phi.get((w, u)) in st.c_good
                  and phi[w, u] != wx), None)
        if y is None:
            raise RegimeError("no alpha found despite the pigeonhole count")
        a = phi[w, y]
        at_y = {cc for e, cc in phi.items() if y in e and v not in e}
        vy = min(st.c_good - {wx, a} - at_y, default=None)
        if vy is None:
            raise RegimeError("no color for vy")
        pinned[edge_key(v, x)] = a
        pinned[edge_key(v, y)] = vy
        trace.append({"stage": "alpha", "alpha": a, "y": y, "vy": vy})
    for e in stripped:
        del phi[e]
    phi.pop(edge_key(v, y))
    for e, cc in pinned.items():
        phi[e] = cc
    todo = [e for e in stripped if e not in pinned]
    phi = _greedy_complete(gp, v, phi, todo, st, long=st.long)
    trace.append({"stage": "greedy", "edges": len(todo)})
    phi = swap_repair(gp, v, phi, th, st, pinned=set(pinned), trace=trace)
    rep = verify_acyclic(gp, phi)
    if not rep.ok:
        raise ColoringError(f"reduction produced a bad coloring: {rep.reason}")
    trace.append({"stage": "verify", "ok": True})
    if restore:
        cur = gp
        for bb in sorted(st.long, key=lambda z: z.chain):
            hs = bb.horizontals
            nxt = cur
            for e in hs:
                nxt = _add_back(nxt, g, e)
            phi = rethread_bunch(nxt, bb, phi, k)
            cur = nxt
            trace.append({"stage": "restore", "bunch": list(bb.vertices)})
        if cur != g:
            raise ColoringError("restoration did not rebuild the input graph")
        gp = g
    return ReductionResult(phi, gp, st, trace)


def _add_back(cur: PlaneGraph, g: PlaneGraph, e) -> PlaneGraph:
    """Reinsert edge e of g into cur at its original rotation slot."""
    u, w = e

    def after(a: int, b: int) -> int:
        # predecessor of b around a in g that is present in cur
        p = g.pred(a, b)
        while not cur.has_edge(a, p) and p != b:
            p = g.pred(a, p)
        return p if p != b else -1

    return cur.with_edge(u, w, after(u, w), after(w, u))


def _greedy_complete(g: PlaneGraph, v: int, c: EdgeColoring, todo, st: ReductionState,
                     long: list[Bunch]) -> EdgeColoring:
    """Proper coloring of the stripped v-edges from C_good.

    Two edges of one long bunch go last; a stuck final edge triggers one
    step of backtracking on the edge before it.
    """
    todo = list(todo)
    for b in long:
        mine = [edge_key(v, u) for u in b.vertices if edge_key(v, u) in todo]
        if len(mine) >= 2:
            for e in mine[-2:]:
                todo.remove(e)
                todo.append(e)
            break

    def options(e):
        u = e[0] if e[1] == v else e[1]
        bad = c.seen(g, v) | c.seen(g, u)
        return [a for a in sorted(st.c_good) if a not in bad]

    for n, e in enumerate(todo):
        opts = options(e)
        if opts:
            c[e] = opts[0]
            continue
        if n == len(todo) - 1 and n > 0:
            prev = todo[n - 1]
            old = c.pop(prev)
            for a in options(prev):
                if a == old:
                    continue
                c[prev] = a
                opts = options(e)
                if opts:
                    c[e] = opts[0]
                    break
                del c[prev]
            else:
                c[prev] = old
            if e in c:
                continue
        raise RegimeError(f"greedy completion stuck at {e}")
    return c


def swap_repair(g: PlaneGraph, v: int, c: EdgeColoring, th: Thresholds,
                st: ReductionState, pinned: set | None = None,
                trace: list | None = None) -> EdgeColoring:
    """Remove the 2-colored cycles through v by swapping colors at v."""
    pinned = pinned or set()
    out = c.copy()
    cycles = bicolored_cycles_through(g, out, v)
    if not cycles:
        return out
    t_count = len(st.long) + len(st.short)
    avail = g.degree(v) - t_count ** 2 - (st.k - len(st.c_good))
    if avail <= 0:
        raise RegimeError(f"availability d(v) - T^2 - (k - |C_good|) = {avail} <= 0")
    locked = {out[e] for e in pinned if e in out}

    def movable(a: int) -> bool:
        return a in st.c_good and a not in locked

    def swapped(a: int, b: int) -> EdgeColoring:
        trial = out.copy()
        ea, eb = out.edge_at(g, v, a), out.edge_at(g, v, b)
        if ea is not None:
            trial[v, ea] = b
        if eb is not None:
            trial[v, eb] = a
        return trial

    def key_color(cyc) -> int | None:
        a, b, _ = cyc
        return a if movable(a) else (b if movable(b) else None)

    while len(cycles) >= 2:
        n = len(cycles)
        best = None
        for i in range(n):
            bi = key_color(cycles[i])
            if bi is None:
                continue
            for j in range(i + 1, n):
                gj = key_color(cycles[j])
                if gj is None or gj == bi:
                    continue
                trial = swapped(bi, gj)
                if not is_proper(g, trial):
                    continue
                m = len(bicolored_cycles_through(g, trial, v))
                if m < n and (best is None or m < best[0]):
                    best = (m, trial, bi, gj)
        if best is None:
            raise RegimeError("no swap reduces the number of 2-colored cycles")
        out = best[1]
        if trace is not None:
            trace.append({"stage": "swap", "colors": [best[2], best[3]], "left": best[0]})
        cycles = bicolored_cycles_through(g, out, v)
    if cycles:
        b1 = key_color(cycles[0])
        if b1 is None:
            raise RegimeError("cycle through v has no movable color")
        threads = {}
        for u in g.neighbors(v):
            if g.degree(u) == 2 and (v, u) in out:
                other = next(z for z in g.neighbors(u) if z != v)
                if (u, other) in out:
                    threads[out[v, u]] = out[u, other]
        fixed = False
        for g1 in sorted(threads):
            if g1 == b1 or not movable(g1):
                continue
            g2 = threads[g1]
            if threads.get(g2) == b1:
                continue
            trial = swapped(b1, g1)
            if is_proper(g, trial) and not bicolored_cycles_through(g, trial, v):
                out = trial
                fixed = True
                if trace is not None:
                    trace.append({"stage": "relocate", "colors": [b1, g1]})
                break
        if not fixed:
            raise RegimeError("no thread can absorb the last 2-colored cycle")
    return out


# recursive driver

@dataclass
class ColorPlanarResult:
    coloring: EdgeColoring | None
    stuck_vertex: int | None = None
    reason: str = ""
    steps: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.coloring is not None


class _Stuck(Exception):
    def __init__(self, vertex, reason):
        super().__init__(reason)
        self.vertex = vertex
        self.reason = reason


def color_planar(g: PlaneGraph, k: int) -> ColorPlanarResult:
    steps: list[str] = []
    try:
        c = _color(g, k, steps)
    except _Stuck as s:
        return ColorPlanarResult(None, s.vertex, s.reason, steps)
    rep = verify_acyclic(g, c)
    if not rep.ok:
        return ColorPlanarResult(None, None, f"verification failed: {rep.reason}", steps)
    return ColorPlanarResult(c, steps=steps)


def _color(g: PlaneGraph, k: int, steps: list[str]) -> EdgeColoring:
    if not g.edges:
        return EdgeColoring(max(k, 1))
    if len(g.edges) <= BRUTE_FORCE_EDGES:
        c = search_coloring(g, k)
        if c is None:
            raise _Stuck(None, f"no acyclic {k}-edge-coloring of a {len(g.edges)}-edge piece")
        steps.append(f"brute force on {len(g.edges)} edges")
        return c
    comps = [cc for cc in g.components() if len(cc) > 1]
    if len(comps) > 1:
        out = EdgeColoring(k)
        for cc in comps:
            for e, col in _color(g.induced(cc), k, steps).items():
                out[e] = col
        steps.append(f"{len(comps)} components")
        return out
    cuts = g.cut_vertices()
    if cuts:
        v = cuts[0]
        if g.degree(v) > k:
            raise _Stuck(v, f"cut vertex degree {g.degree(v)} exceeds k")
        rest = g.without_vertices([v])
        parts = []
        for cc in rest.components():
            if len(cc) == 1 and not rest.degree(cc[0]) and not g.has_edge(v, cc[0]):
                continue
            parts.append(_color(g.induced(cc + [v]), k, steps))
        steps.append(f"split at cut vertex {v} into {len(parts)} blocks")
        return merge_at_cut_vertex(g, v, parts, k)
    for v in range(g.n):
        if g.degree(v) and sum(g.degree(u) for u in g.neighbors(v)) <= k:
            sub = _color(g.without_vertices([v]), k, steps)
            steps.append(f"removed vertex {v}")
            return greedy_extend_vertex(g, sub.restrict(g), v, k)
    low = min((v for v in range(g.n) if g.degree(v)), key=g.degree)
    raise _Stuck(low, "no vertex has neighbor degree sum at most k")
