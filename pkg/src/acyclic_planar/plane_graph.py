"""Plane graphs stored as rotation systems.

A plane graph is given by listing, for every vertex, its neighbours in
clockwise order.  Faces are never part of the input; they are traced from
the rotation with the rule

    next(u -> v) = (v -> succ_v(u))

where ``succ_v`` is the clockwise successor in the rotation at ``v``.  The
face through the dart ``u -> v`` therefore occupies the angle at ``v``
between ``u`` and ``succ_v(u)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx

Edge = tuple[int, int]
Dart = tuple[int, int]

QUAD = "quad"
TRIANGLES = "triangles"


class EmbeddingError(ValueError):
    """Raised when a rotation system does not describe a simple graph."""


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Thresholds:
    """Degree thresholds used by the discharging argument.

    The defaults are the values needed at full scale.  Every field can be
    lowered so that the detectors fire on small graphs.
    """

    big: int = 8680
    very_big_offset: int = 4 * 8680
    k: int | None = None
    rc3_cap: int = 35
    rc4_cap: int = 141415
    long_bunch_min: int = 11
    rc2_offsets: tuple[int, int, int, int] = (8889, 17655, 26401, 35137)
    faithful: bool = True

    def __post_init__(self) -> None:
        if self.big < 1:
            raise ValueError("big threshold must be at least 1")
        if self.faithful and self.long_bunch_min < 11:
            raise ValueError("long_bunch_min must be >= 11 in faithful mode")
        if self.k is not None and self.k < 1:
            raise ValueError("palette size must be positive")

    @classmethod
    def scaled(cls, big: int, **kw) -> "Thresholds":
        """Parametric thresholds for desk-scale experiments."""
        kw.setdefault("very_big_offset", 4 * big)
        kw.setdefault("faithful", False)
        return cls(big=big, **kw)

    def palette(self, delta: int) -> int:
        if self.k is not None:
            return self.k
        return max(delta, 5 * self.big)


@dataclass(frozen=True)
class Bunch:
    """A maximal run of common low-degree neighbours of two big vertices.

    ``chain`` is x_0, x_1, ..., x_{t+1} listed in clockwise order around the
    second parent (so counterclockwise around the first).  ``gaps[i-1]``
    describes the region between x_{i-1} and x_i for i = 1..t+1.
    """

    parents: tuple[int, int]
    chain: tuple[int, ...]
    gaps: tuple[str, ...]

    @property
    def anchors(self) -> tuple[int, int]:
        return self.chain[0], self.chain[-1]

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.chain[1:-1]

    @property
    def length(self) -> int:
        return len(self.chain) - 2

    @property
    def horizontals(self) -> list[Edge]:
        """Edges x_i x_{i+1} with 1 <= i <= t-1 (anchor edges excluded)."""
        c = self.chain
        return [edge_key(c[i], c[i + 1]) for i in range(1, len(c) - 2)
                if self.gaps[i] == TRIANGLES]

    def signature(self) -> tuple[frozenset[int], tuple[int, ...]]:
        """Orientation-free form, used to compare bunch lists."""
        fwd = self.chain
        return frozenset(self.parents), min(fwd, fwd[::-1])

    def to_dict(self) -> dict:
        return {
            "parents": list(self.parents),
            "anchors": list(self.anchors),
            "vertices": list(self.vertices),
            "gaps": list(self.gaps),
        }


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    two_connected: bool
    euler_ok: bool
    simple: bool

    @property
    def ok(self) -> bool:
        return self.euler_ok and self.simple


@dataclass(frozen=True, eq=True)
class PlaneGraph:
    rotation: tuple[tuple[int, ...], ...]
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self._checked:
            _check_rotation(self.rotation)

    # basic queries

    @property
    def n(self) -> int:
        return len(self.rotation)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rotation)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((u, v) for u, rot in enumerate(self.rotation)
                            for v in rot if u < v))

    @cached_property
    def _adj(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adj[u]

    @cached_property
    def _pos(self) -> tuple[dict[int, int], ...]:
        return tuple({u: i for i, u in enumerate(r)} for r in self.rotation)

    def succ(self, v: int, u: int) -> int:
        """Clockwise successor of ``u`` in the rotation at ``v``."""
        r = self.rotation[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rotation[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    # faces

    @cached_property
    def _face_data(self) -> tuple[tuple[tuple[Dart, ...], ...], dict[Dart, int]]:
        face_of: dict[Dart, int] = {}
        faces: list[tuple[Dart, ...]] = []
        for u, rot in enumerate(self.rotation):
            for v in rot:
                if (u, v) in face_of:
                    continue
                fid = len(faces)
                darts = []
                d = (u, v)
                while d not in face_of:
                    face_of[d] = fid
                    darts.append(d)
                    a, b = d
                    d = (b, self.succ(b, a))
                faces.append(tuple(darts))
        return tuple(faces), face_of

    @property
    def faces(self) -> tuple[tuple[Dart, ...], ...]:
        return self._face_data[0]

    def face_vertices(self, f: int) -> tuple[int, ...]:
        return tuple(d[0] for d in self.faces[f])

    def face_length(self, f: int) -> int:
        return len(self.faces[f])

    def face_of_dart(self, u: int, v: int) -> int:
        return self._face_data[1][(u, v)]

    def angle_face(self, v: int, a: int) -> int:
        """Face filling the angle at ``v`` from ``a`` clockwise to succ_v(a)."""
        return self._face_data[1][(a, v)]

    # connectivity

    @cached_property
    def nx_graph(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h

    def components(self) -> list[list[int]]:
        return [sorted(c) for c in nx.connected_components(self.nx_graph)]

    def cut_vertices(self) -> list[int]:
        return sorted(nx.articulation_points(self.nx_graph))

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.nx_graph)

    # derived graphs

    def without_edges(self, edges: Iterable[Edge]) -> "PlaneGraph":
        drop = {edge_key(*e) for e in edges}
        for e in drop:
            if not self.has_edge(*e):
                raise EmbeddingError(f"edge {e} not in graph")
        rot = tuple(tuple(u for u in r if edge_key(v, u) not in drop)
                    for v, r in enumerate(self.rotation))
        return PlaneGraph(rot, _checked=True)

    def without_vertices(self, vs: Iterable[int]) -> "PlaneGraph":
        """Delete the edges at ``vs``; the vertices stay as isolated ids."""
        gone = set(vs)
        rot = tuple(() if v in gone else tuple(u for u in r if u not in gone)
                    for v, r in enumerate(self.rotation))
        return PlaneGraph(rot, _checked=True)

    def induced(self, keep: Iterable[int]) -> "PlaneGraph":
        keep = set(keep)
        return self.without_vertices(v for v in range(self.n) if v not in keep)

    def with_edge(self, u: int, v: int, after_u: int, after_v: int) -> "PlaneGraph":
        """Insert edge uv so that v follows ``after_u`` at u and vice versa.

        ``after_u`` may be -1 when u has no neighbours yet.
        """
        rot = [list(r) for r in self.rotation]
        for a, b, ref in ((u, v, after_u), (v, u, after_v)):
            if ref < 0:
                rot[a].append(b)
            else:
                rot[a].insert(rot[a].index(ref) + 1, b)
        return PlaneGraph(tuple(map(tuple, rot)))

    def relabel(self, perm: Sequence[int]) -> "PlaneGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rot: list[tuple[int, ...]] = [()] * self.n
        for v, r in enumerate(self.rotation):
            rot[perm[v]] = tuple(perm[u] for u in r)
        return PlaneGraph(tuple(rot))

    def iter_angles(self, v: int) -> Iterator[tuple[int, int]]:
        r = self.rotation[v]
        for i, a in enumerate(r):
            yield a, r[(i + 1) % len(r)]


def _check_rotation(rotation: Sequence[Sequence[int]]) -> None:
    n = len(rotation)
    adj = []
    for v, r in enumerate(rotation):
        s = set()
        for u in r:
            if not isinstance(u, int) or not 0 <= u < n:
                raise EmbeddingError(f"vertex {v}: neighbour {u!r} out of range")
            if u == v:
                raise EmbeddingError(f"loop at vertex pair ({v}, {v})")
            if u in s:
                raise EmbeddingError(f"duplicate neighbour: pair ({v}, {u})")
            s.add(u)
        adj.append(s)
    for v, s in enumerate(adj):
        for u in s:
            if v not in adj[u]:
                raise EmbeddingError(f"asymmetric adjacency: pair ({v}, {u})")


def build_from_rotation(rotation: Sequence[Sequence[int]]) -> PlaneGraph:
    return PlaneGraph(tuple(tuple(int(u) for u in r) for r in rotation))


def validate(g: PlaneGraph) -> ValidationReport:
    connected = g.is_connected()
    two = connected and g.n >= 3 and not g.cut_vertices()
    return ValidationReport(connected, two, _euler_ok(g), True)


def _euler_ok(g: PlaneGraph) -> bool:
    # Each component with an edge must be a sphere: V - E + F = 2.
    faces_per_comp: dict[int, int] = {}
    comp_id = {}
    for i, comp in enumerate(g.components()):
        for v in comp:
            comp_id[v] = i
    for f in g.faces:
        c = comp_id[f[0][0]]
        faces_per_comp[c] = faces_per_comp.get(c, 0) + 1
    for i, comp in enumerate(g.components()):
        e = sum(g.degree(v) for v in comp) // 2
        if e == 0:
            continue
        if len(comp) - e + faces_per_comp.get(i, 0) != 2:
            return False
    return True


# text format

def parse_embedding(text: str) -> PlaneGraph:
    rows: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise EmbeddingError(f"line {lineno}: expected 'v: n1 n2 ...'")
        try:
            v = int(head)
            nbrs = tuple(int(x) for x in tail.split())
        except ValueError as exc:
            raise EmbeddingError(f"line {lineno}: {exc}") from None
        if v in rows:
            raise EmbeddingError(f"line {lineno}: vertex {v} listed twice")
        rows[v] = nbrs
    n = len(rows)
    if sorted(rows) != list(range(n)):
        raise EmbeddingError("vertex ids must be dense in 0..n-1")
    return build_from_rotation([rows[v] for v in range(n)])


def format_embedding(g: PlaneGraph) -> str:
    lines = []
    for v, r in enumerate(g.rotation):
        lines.append(f"{v}: " + " ".join(map(str, r)) if r else f"{v}:")
    return "\n".join(lines) + "\n"


# bunches

def _gap_type(g: PlaneGraph, v: int, w: int, a: int, b: int) -> str | None:
    """Classify the region between consecutive common neighbours a, b.

    Requires b = succ_v(a).  Returns QUAD, TRIANGLES, or None when the
    4-cycle v a w b is not the boundary of a 4-face or two 3-faces.
    """
    f = g.angle_face(v, a)
    vs = g.face_vertices(f)
    if len(vs) == 4:
        i = vs.index(v)
        if (vs[(i + 1) % 4], vs[(i + 2) % 4], vs[(i + 3) % 4]) == (b, w, a):
            return QUAD
        return None
    if len(vs) == 3 and g.has_edge(a, b) and g.succ(w, b) == a:
        if g.face_length(g.angle_face(w, b)) == 3:
            return TRIANGLES
    return None


def _co_parent(g: PlaneGraph, v: int, a: int, b: int) -> int | None:
    f = g.angle_face(v, a)
    vs = g.face_vertices(f)
    if len(vs) == 4:
        i = vs.index(v)
        return vs[(i + 2) % 4]
    if len(vs) == 3 and g.has_edge(a, b):
        other = g.face_vertices(g.face_of_dart(a, b))
        if len(other) == 3:
            (w,) = set(other) - {a, b}
            return w if w != v else None
    return None


def _chains_for_pair(g: PlaneGraph, v: int, w: int,
                     links: dict[int, str]) -> list[tuple[list[int], list[str]]]:
    """Group the linked angles at v into maximal chains.

    ``links`` maps a neighbour a of v to the gap type between a and
    succ_v(a).  A fully linked rotation is returned as a closed chain whose
    first and last entries coincide.
    """
    rot = g.rotation[v]
    d = len(rot)
    if len(links) == d:
        return [(list(rot) + [rot[0]], [links[a] for a in rot])]
    out = []
    for i, a in enumerate(rot):
        if a not in links or rot[(i - 1) % d] in links:
            continue
        chain, gaps = [a], []
        cur = a
        while cur in links:
            gaps.append(links[cur])
            cur = g.succ(v, cur)
            chain.append(cur)
        out.append((chain, gaps))
    return out


def find_bunches(g: PlaneGraph, th: Thresholds) -> list[Bunch]:
    """All maximal bunches, each reported once with the smaller parent first."""
    deg = g.degrees
    big = [v for v in range(g.n) if deg[v] >= th.big]
    bigset = set(big)
    found: list[Bunch] = []
    for v in big:
        if deg[v] < 2:
            continue
        per_w: dict[int, dict[int, str]] = {}
        for a, b in g.iter_angles(v):
            if a == b:
                continue
            w = _co_parent(g, v, a, b)
            if w is None or w <= v or w not in bigset:
                continue
            kind = _gap_type(g, v, w, a, b)
            if kind is not None:
                per_w.setdefault(w, {})[a] = kind
        for w in sorted(per_w):
            for chain, gaps in _chains_for_pair(g, v, w, per_w[w]):
                for b in _split_chain(g, v, w, chain, gaps):
                    found.append(Bunch(b.parents, b.chain[::-1], b.gaps[::-1]))
    return found


def _split_chain(g: PlaneGraph, v: int, w: int, chain: list[int],
                 gaps: list[str]) -> list[Bunch]:
    low = [g.degree(x) <= 4 for x in chain]
    closed = chain[0] == chain[-1]
    if closed:
        highs = [i for i in range(len(chain) - 1) if not low[i]]
        if highs:
            # rotate so the closed chain starts at a high vertex
            s = highs[0]
            m = len(chain) - 1
            chain = [chain[(s + i) % m] for i in range(m)] + [chain[s]]
            gaps = [gaps[(s + i) % m] for i in range(m)]
            low = [g.degree(x) <= 4 for x in chain]
        else:
            # every vertex is low: treat the smallest id as the anchor
            m = len(chain) - 1
            s = min(range(m), key=lambda i: chain[i])
            chain = [chain[(s + i) % m] for i in range(m)] + [chain[s]]
            gaps = [gaps[(s + i) % m] for i in range(m)]
            return [Bunch((v, w), tuple(chain), tuple(gaps))] if m >= 2 else []
    out = []
    i = 1
    last = len(chain) - 1
    while i < last:
        if not low[i]:
            i += 1
            continue
        j = i
        while j + 1 < last and low[j + 1]:
            j += 1
        out.append(Bunch((v, w), tuple(chain[i - 1:j + 2]), tuple(gaps[i - 1:j + 1])))
        i = j + 1
    return out


def check_bunch(g: PlaneGraph, b: Bunch, th: Thresholds) -> list[str]:
    """Re-verify a bunch from scratch; returns a list of problems."""
    problems = []
    v, w = b.parents
    if g.degree(v) < th.big or g.degree(w) < th.big:
        problems.append("parent not big")
    if b.length < 1 or len(b.gaps) != b.length + 1:
        problems.append("bad shape")
        return problems
    for x in b.vertices:
        if g.degree(x) > 4:
            problems.append(f"vertex {x} has degree {g.degree(x)}")
    c = b.chain[::-1]
    gaps = b.gaps[::-1]
    for i in range(len(c) - 1):
        a, nxt = c[i], c[i + 1]
        if not (g.has_edge(v, a) and g.has_edge(w, a)):
            problems.append(f"{a} not a common neighbour")
            continue
        if not g.has_edge(v, nxt) or g.succ(v, a) != nxt or g.succ(w, nxt) != a:
            problems.append(f"{a},{nxt} not consecutive at both parents")
            continue
        if _gap_type(g, v, w, a, nxt) != gaps[i]:
            problems.append(f"gap {i + 1} is not a 4-face or two 3-faces")
    if c[0] != c[-1]:
        # maximality: the run cannot be prolonged through a low vertex
        for end, other in ((c[0], g.pred(v, c[0])), (c[-1], g.succ(v, c[-1]))):
            a, bb = (other, end) if end == c[0] else (end, other)
            linked = (g.has_edge(w, other)
                      and g.succ(v, a) == bb
                      and _gap_type(g, v, w, a, bb) is not None)
            if linked and g.degree(end) <= 4:
                problems.append(f"not maximal at {end}")
    return problems
