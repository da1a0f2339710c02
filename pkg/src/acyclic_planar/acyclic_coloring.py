"""Edge colorings: properness, acyclicity, exact search and greedy steps."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from . import _kernels
from .plane_graph import Edge, PlaneGraph, edge_key


class ColoringError(ValueError):
    """Malformed coloring or violated precondition."""


class EdgeColoring:
    """A partial map from edges to colors 1..k.

    Keys are normalized so that ``c[u, v]`` and ``c[v, u]`` agree.
    """

    __slots__ = ("k", "_col")

    def __init__(self, k: int, colors: Mapping[Edge, int] | None = None):
        if k < 1:
            raise ColoringError("palette size must be positive")
        self.k = k
        self._col: dict[Edge, int] = {}
        for e, c in (colors or {}).items():
            self[e] = c

    def __getitem__(self, e: Edge) -> int:
        return self._col[edge_key(*e)]

    def get(self, e: Edge, default=None):
        return self._col.get(edge_key(*e), default)

    def __setitem__(self, e: Edge, c: int) -> None:
        c = int(c)
        if not 1 <= c <= self.k:
            raise ColoringError(f"color {c} outside palette 1..{self.k}")
        self._col[edge_key(*e)] = c

    def __delitem__(self, e: Edge) -> None:
        del self._col[edge_key(*e)]

    def pop(self, e: Edge, default=None):
        return self._col.pop(edge_key(*e), default)

    def __contains__(self, e) -> bool:
        return edge_key(*e) in self._col

    def __len__(self) -> int:
        return len(self._col)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._col)

    def items(self):
        return self._col.items()

    def copy(self) -> "EdgeColoring":
        out = EdgeColoring(self.k)
        out._col = dict(self._col)
        return out

    def with_palette(self, k: int) -> "EdgeColoring":
        return EdgeColoring(k, self._col)

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeColoring) and self._col == other._col

    def __repr__(self) -> str:
        return f"EdgeColoring(k={self.k}, {len(self._col)} edges)"

    def seen(self, g: PlaneGraph, v: int) -> set[int]:
        """Colors seen by v."""
        out = set()
        for u in g.neighbors(v):
            c = self._col.get(edge_key(u, v))
            if c is not None:
                out.add(c)
        return out

    def edge_at(self, g: PlaneGraph, v: int, c: int) -> int | None:
        """Neighbor u with c(vu) == c, if any."""
        for u in g.neighbors(v):
            if self._col.get(edge_key(u, v)) == c:
                return u
        return None

    def restrict(self, g: PlaneGraph) -> "EdgeColoring":
        """Drop entries for edges not in g."""
        out = EdgeColoring(self.k)
        out._col = {e: c for e, c in self._col.items() if g.has_edge(*e)}
        return out


@dataclass
class AcyclicityReport:
    ok: bool
    reason: str = ""
    witness: list = field(default_factory=list)
    colors: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _check_edges(g: PlaneGraph, c: EdgeColoring) -> None:
    for e in c:
        if not g.has_edge(*e):
            raise ColoringError(f"edge {e} is not in the graph")


def is_proper(g: PlaneGraph, c: EdgeColoring) -> bool:
    _check_edges(g, c)
    return _first_clash(g, c) is None


def _first_clash(g: PlaneGraph, c: EdgeColoring):
    for v in range(g.n):
        seen: dict[int, int] = {}
        for u in g.neighbors(v):
            col = c.get((u, v))
            if col is None:
                continue
            if col in seen:
                return v, seen[col], u, col
            seen[col] = u
    return None


def find_bicolored_cycle(g: PlaneGraph, c: EdgeColoring, alpha: int,
                         beta: int) -> list[int] | None:
    """A cycle whose edges alternate between alpha and beta, if any."""
    if alpha == beta:
        raise ColoringError("alpha and beta must differ")
    _check_edges(g, c)
    nxt: dict[int, dict[int, int]] = {}
    for (u, v), col in c.items():
        if col in (alpha, beta):
            nxt.setdefault(u, {})[col] = v
            nxt.setdefault(v, {})[col] = u
    visited = set()
    for start in sorted(nxt):
        if start in visited or alpha not in nxt[start]:
            continue
        path = [start]
        visited.add(start)
        cur, col = nxt[start][alpha], beta
        while True:
            if cur == start:
                return path
            if cur in visited:
                break
            visited.add(cur)
            path.append(cur)
            if col not in nxt.get(cur, {}):
                break
            cur = nxt[cur][col]
            col = alpha if col == beta else beta
    return None


def _arrays(g: PlaneGraph, c: EdgeColoring):
    eu, ev, ec = [], [], []
    for u, v in g.edges:
        eu.append(u)
        ev.append(v)
        ec.append(c.get((u, v), 0))
    return eu, ev, ec


def verify_acyclic(g: PlaneGraph, c: EdgeColoring) -> AcyclicityReport:
    for e in c:
        if not g.has_edge(*e):
            return AcyclicityReport(False, "unknown edge", [e])
    missing = [e for e in g.edges if e not in c]
    if missing:
        return AcyclicityReport(False, "uncolored edge", missing[:1])
    clash = _first_clash(g, c)
    if clash is not None:
        v, a, b, col = clash
        return AcyclicityReport(False, "improper", [a, v, b], (col,))
    return _cycle_report(g, c)


def _cycle_report(g: PlaneGraph, c: EdgeColoring) -> AcyclicityReport:
    eu, ev, ec = _arrays(g, c)
    top = max(ec, default=0)
    hit = _kernels.first_bicolored_cycle(g.n, eu, ev, ec, max(top, 1))
    if hit is None:
        return AcyclicityReport(True)
    a, b, cyc = hit
    return AcyclicityReport(False, "bicolored cycle", list(cyc), (a, b))


def has_bicolored_cycle(g: PlaneGraph, c: EdgeColoring) -> bool:
    """Proper partial coloring contains a 2-colored cycle."""
    return not _cycle_report(g, c).ok


def bicolored_cycles_through(g: PlaneGraph, c: EdgeColoring, v: int) -> list[tuple[int, int, list[int]]]:
    """All 2-colored cycles through v in a proper partial coloring."""
    at_v = {}
    for u in g.neighbors(v):
        col = c.get((u, v))
        if col is not None:
            at_v[col] = u
    out = []
    cols = sorted(at_v)
    for i, a in enumerate(cols):
        for b in cols[i + 1:]:
            path = [v, at_v[a]]
            cur, col = at_v[a], b
            while True:
                u = c.edge_at(g, cur, col)
                if u is None:
                    break
                if u == v:
                    out.append((a, b, path))
                    break
                path.append(u)
                cur = u
                col = a if col == b else b
                if len(path) > g.n:
                    break
    return out


# exact oracle

def _search_order(g: PlaneGraph, edges: Sequence[Edge] | None = None) -> list[Edge]:
    """Edges grouped around vertices in BFS order so cycles close early."""
    pool = set(edges if edges is not None else g.edges)
    order: list[Edge] = []
    seen_v: set[int] = set()
    verts = sorted(range(g.n), key=lambda v: -g.degree(v))
    for root in verts:
        if root in seen_v:
            continue
        queue = [root]
        seen_v.add(root)
        while queue:
            v = queue.pop(0)
            for u in sorted(g.neighbors(v), key=lambda x: -g.degree(x)):
                e = edge_key(u, v)
                if e in pool:
                    pool.discard(e)
                    order.append(e)
                if u not in seen_v:
                    seen_v.add(u)
                    queue.append(u)
    return order


def search_coloring(g: PlaneGraph, k: int, node_limit: int = 0) -> EdgeColoring | None:
    order = _search_order(g)
    cols = _kernels.search_acyclic(g.n, [e[0] for e in order], [e[1] for e in order],
                                   k, node_limit)
    if cols is None:
        return None
    return EdgeColoring(max(k, 1), dict(zip(order, cols)))


@dataclass
class OracleResult:
    index: int | None
    coloring: EdgeColoring | None

    @property
    def exceeded(self) -> bool:
        return self.index is None


def brute_force_index(g: PlaneGraph, k_max: int) -> OracleResult:
    """Exact acyclic chromatic index, or ``index=None`` if above k_max."""
    if not g.edges:
        return OracleResult(0, EdgeColoring(max(k_max, 1)))
    for k in range(max(g.max_degree, 1), k_max + 1):
        col = search_coloring(g, k)
        if col is not None:
            return OracleResult(k, col)
    return OracleResult(None, None)


# extension kernels

def neighbor_degree_sum(g: PlaneGraph, v: int) -> int:
    return sum(g.degree(u) for u in g.neighbors(v))


def greedy_extend_vertex(g: PlaneGraph, c: EdgeColoring, v: int, k: int) -> EdgeColoring:
    """Color the edges at v avoiding every color seen by a neighbor of v.

    Smallest admissible color first.  The colors on v's edges are then
    absent from all neighbors, so no 2-colored cycle can pass through v.
    """
    need = neighbor_degree_sum(g, v)
    if need > k:
        raise ColoringError(f"neighbor degree sum {need} exceeds k={k}")
    out = c.with_palette(max(k, c.k))
    for u in g.neighbors(v):
        if (u, v) in out:
            raise ColoringError(f"edge {(v, u)} already colored")
    forbidden = set()
    for u in g.neighbors(v):
        forbidden |= out.seen(g, u)
    free = (col for col in range(1, k + 1) if col not in forbidden)
    for u in g.neighbors(v):
        out[u, v] = next(free)
    return out


def merge_at_cut_vertex(g: PlaneGraph, v: int, parts: Sequence[EdgeColoring],
                        k: int) -> EdgeColoring:
    """Union of block colorings after renaming colors so v's sets are disjoint.

    Each part is renamed by a permutation of 1..k, so every part stays
    acyclic.  The first part keeps its colors.
    """
    seen_sets = []
    for p in parts:
        s = set()
        for e, col in p.items():
            if v in e:
                s.add(col)
        seen_sets.append(s)
    if sum(len(s) for s in seen_sets) > k:
        raise ColoringError("blocks demand more than k colors at the cut vertex")
    out = EdgeColoring(k)
    taken: set[int] = set()
    for p, s in zip(parts, seen_sets):
        # swap each clashing color with an unused one; a transposition is a
        # permutation of the palette, so acyclicity survives
        clash = sorted(s & taken)
        pool = sorted(set(range(1, k + 1)) - taken - s)
        ren: dict[int, int] = {}
        for a, b in zip(clash, pool):
            ren[a] = b
            ren[b] = a
        taken |= {ren.get(col, col) for col in s}
        for e, col in p.items():
            if e in out:
                raise ColoringError(f"edge {e} appears in two blocks")
            out[e] = ren.get(col, col)
    return out


def random_acyclic_coloring(g: PlaneGraph, k: int, rng: random.Random,
                            fixed: EdgeColoring | None = None,
                            edges: Iterable[Edge] | None = None,
                            attempts: int = 200) -> EdgeColoring | None:
    """Random greedy acyclic coloring with restarts.

    Edges are visited with high-degree endpoints first (ties shuffled) and
    each takes a uniformly random admissible color.  ``fixed`` entries are
    kept; only ``edges`` (default: all uncolored) are colored.
    """
    base = fixed.with_palette(k) if fixed is not None else EdgeColoring(k)
    todo = [e for e in (edges if edges is not None else g.edges) if e not in base]
    for _ in range(attempts):
        rng.shuffle(todo)
        todo.sort(key=lambda e: -max(g.degree(e[0]), g.degree(e[1])))
        out = base.copy()
        nbr: list[dict[int, int]] = [dict() for _ in range(g.n)]
        for (u, w), col in out.items():
            nbr[u][col] = w
            nbr[w][col] = u
        ok = True
        for u, w in todo:
            opts = [col for col in range(1, k + 1)
                    if col not in nbr[u] and col not in nbr[w]
                    and not _closes(nbr, g.n, u, w, col)]
            if not opts:
                ok = False
                break
            col = rng.choice(opts)
            out[u, w] = col
            nbr[u][col] = w
            nbr[w][col] = u
        if ok:
            return out
    return None


def _closes(nbr: list[dict[int, int]], n: int, u: int, w: int, a: int) -> bool:
    for b in nbr[w]:
        if b not in nbr[u]:
            continue
        cur, col = w, b
        for _ in range(n + 1):
            nxt = nbr[cur].get(col)
            if nxt is None:
                break
            if nxt == u:
                if col == b:
                    return True
                break
            cur = nxt
            col = a if col == b else b
    return False


def smallest_safe_color(g: PlaneGraph, c: EdgeColoring, u: int, w: int,
                        k: int, avoid: Iterable[int] = ()) -> int | None:
    """Smallest color for uw keeping c proper with no new 2-colored cycle."""
    nbr: list[dict[int, int]] = [dict() for _ in range(g.n)]
    for x in (u, w):
        for y in g.neighbors(x):
            col = c.get((x, y))
            if col is not None:
                nbr[x][col] = y
    bad = set(avoid)
    for col in range(1, k + 1):
        if col in bad or col in nbr[u] or col in nbr[w]:
            continue
        trial = c.copy()
        trial._col[edge_key(u, w)] = col
        if not any(a_b for a_b in _cycles_with_edge(g, trial, u, w, col)):
            return col
    return None


def _cycles_with_edge(g: PlaneGraph, c: EdgeColoring, u: int, w: int, a: int):
    for b in c.seen(g, w) & c.seen(g, u):
        if b == a:
            continue
        cur, col = w, b
        for _ in range(g.n + 1):
            nxt = c.edge_at(g, cur, col)
            if nxt is None:
                break
            if nxt == u:
                if col == b:
                    yield b
                break
            cur = nxt
            col = a if col == b else b


# text format

def parse_coloring(text: str, g: PlaneGraph, k: int | None = None) -> EdgeColoring:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ColoringError(f"line {lineno}: expected 'u v c'")
        try:
            u, v, col = map(int, parts)
        except ValueError:
            raise ColoringError(f"line {lineno}: non-integer field") from None
        if not g.has_edge(u, v):
            raise ColoringError(f"line {lineno}: ({u}, {v}) is not an edge")
        rows.append((u, v, col))
    kk = k if k is not None else max((r[2] for r in rows), default=1)
    out = EdgeColoring(max(kk, 1))
    for u, v, col in rows:
        if (u, v) in out:
            raise ColoringError(f"edge ({u}, {v}) listed twice")
        out[u, v] = col
    return out


def format_coloring(c: EdgeColoring) -> str:
    return "".join(f"{u} {v} {col}\n" for (u, v), col in sorted(c.items()))
