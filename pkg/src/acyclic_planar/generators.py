"""Graph families: small solids, the Borodin et al. triangulations, bunch
gadgets and seeded random plane graphs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .plane_graph import (QUAD, TRIANGLES, Bunch, EmbeddingError, PlaneGraph,
                          build_from_rotation, validate)


class GadgetError(ValueError):
    """A gadget specification that no bunch can realize."""


# small named graphs

def _from_points(points: Sequence[tuple[float, float]], edges) -> PlaneGraph:
    """Rotation of a straight-line drawing; clockwise is decreasing angle."""
    nb: list[list[int]] = [[] for _ in points]
    for u, v in edges:
        nb[u].append(v)
        nb[v].append(u)
    rot = []
    for v, (x, y) in enumerate(points):
        rot.append(sorted(nb[v], key=lambda u: -math.atan2(points[u][1] - y,
                                                           points[u][0] - x)))
    return build_from_rotation(rot)


def _from_solid(coords: np.ndarray) -> PlaneGraph:
    """Rotation system of a convex polyhedron given by its vertices.

    Edges join vertex pairs at minimum distance, which is right for the
    regular solids used here.  Neighbours are sorted clockwise as seen from
    outside.
    """
    n = len(coords)
    d = np.linalg.norm(coords[:, None, :] - coords[None, :, :], axis=2)
    dmin = d[d > 1e-9].min()
    nb = [[u for u in range(n) if u != v and abs(d[v, u] - dmin) < 1e-6] for v in range(n)]
    rot = []
    for v in range(n):
        normal = coords[v] / np.linalg.norm(coords[v])
        e1 = coords[nb[v][0]] - coords[v]
        e1 -= normal * e1.dot(normal)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)
        ang = {u: math.atan2((coords[u] - coords[v]).dot(e2),
                             (coords[u] - coords[v]).dot(e1)) for u in nb[v]}
        rot.append(sorted(nb[v], key=lambda u: -ang[u]))
    return build_from_rotation(rot)


def k4() -> PlaneGraph:
    pts = [(0.0, 0.0), (0.0, 1.0), (-0.87, -0.5), (0.87, -0.5)]
    return _from_points(pts, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])


def cube() -> PlaneGraph:
    pts = [(-1, -1), (1, -1), (1, 1), (-1, 1), (-2, -2), (2, -2), (2, 2), (-2, 2)]
    edges = [(i, (i + 1) % 4) for i in range(4)]
    edges += [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    edges += [(i, i + 4) for i in range(4)]
    return _from_points(pts, edges)


def octahedron() -> PlaneGraph:
    pts = [(math.cos(a), math.sin(a)) for a in (math.pi / 2, 7 * math.pi / 6, 11 * math.pi / 6)]
    pts += [(3 * math.cos(a), 3 * math.sin(a)) for a in (-math.pi / 2, math.pi / 6, 5 * math.pi / 6)]
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
             (0, 4), (0, 5), (1, 5), (1, 3), (2, 3), (2, 4)]
    return _from_points(pts, edges)


def icosahedron() -> PlaneGraph:
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for a in (-1, 1):
        for b in (-phi, phi):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return _from_solid(np.array(pts, dtype=float))


def dodecahedron() -> PlaneGraph:
    phi = (1 + 5 ** 0.5) / 2
    pts = [(a, b, c) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)]
    for a in (-1 / phi, 1 / phi):
        for b in (-phi, phi):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return _from_solid(np.array(pts, dtype=float))


def wheel(spokes: int) -> PlaneGraph:
    pts = [(0.0, 0.0)] + [(math.cos(2 * math.pi * i / spokes), math.sin(2 * math.pi * i / spokes))
                          for i in range(spokes)]
    edges = [(0, i) for i in range(1, spokes + 1)]
    edges += [(i, i % spokes + 1) for i in range(1, spokes + 1)]
    return _from_points(pts, edges)


def cycle(n: int) -> PlaneGraph:
    return build_from_rotation([[(i - 1) % n, (i + 1) % n] for i in range(n)])


def star(leaves: int) -> PlaneGraph:
    return build_from_rotation([list(range(1, leaves + 1))] + [[0]] * leaves)


def path(n: int) -> PlaneGraph:
    return build_from_rotation([[u for u in (i - 1, i + 1) if 0 <= u < n] for i in range(n)])


def bowtie() -> PlaneGraph:
    """Two triangles sharing vertex 0."""
    pts = [(0, 0), (-1, 1), (-1, -1), (1, 1), (1, -1)]
    return _from_points(pts, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


# combinatorial operations

def truncate(g: PlaneGraph) -> PlaneGraph:
    """Replace each vertex of degree d by a d-cycle (one vertex per dart)."""
    ids: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        for u in g.neighbors(v):
            ids[(v, u)] = len(ids)
    rot: list[list[int]] = [[] for _ in ids]
    for (v, u), i in ids.items():
        rot[i] = [ids[(u, v)], ids[(v, g.succ(v, u))], ids[(v, g.pred(v, u))]]
    return build_from_rotation(rot)


def subdivide(g: PlaneGraph, a: int, b: int, times: int) -> PlaneGraph:
    if times <= 0:
        return g
    rot = [list(r) for r in g.rotation]
    new = list(range(g.n, g.n + times))
    rot[a][rot[a].index(b)] = new[0]
    rot[b][rot[b].index(a)] = new[-1]
    chain = [a] + new + [b]
    for i in range(1, len(chain) - 1):
        rot.append([chain[i - 1], chain[i + 1]])
    return build_from_rotation(rot)


def stellate(g: PlaneGraph, faces: Sequence[int]) -> PlaneGraph:
    """Add a hub inside each listed face, adjacent to its boundary."""
    rot = [list(r) for r in g.rotation]
    for f in faces:
        h = len(rot)
        bd = g.face_vertices(f)
        L = len(bd)
        rot.append(list(reversed(bd)))
        for i, a in enumerate(bd):
            prev = bd[(i - 1) % L]
            r = rot[a]
            r.insert(r.index(prev) + 1, h)
    return build_from_rotation(rot)


def truncated_dodecahedron() -> PlaneGraph:
    return truncate(dodecahedron())


def borodin_construction(t: int, base: PlaneGraph | None = None) -> PlaneGraph:
    """Truncate ``base``, subdivide edges between two big faces t times,
    then put a hub in every face of length at least 4.

    ``base`` must be 3-connected, cubic-free of constraints, with faces of
    length 5 or 6; the dodecahedron is the default.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    base = base if base is not None else dodecahedron()
    for f in range(len(base.faces)):
        if base.face_length(f) not in (5, 6):
            raise ValueError("base faces must have length 5 or 6")
    g = truncate(base)
    targets = [(u, v) for u, v in g.edges
               if g.face_length(g.face_of_dart(u, v)) >= 4
               and g.face_length(g.face_of_dart(v, u)) >= 4]
    for u, v in targets:
        g = subdivide(g, u, v, t)
    return stellate(g, [f for f in range(len(g.faces)) if g.face_length(f) >= 4])


# bunch gadgets

FIG_GAPS = (1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1)
FIG_DEGREES = tuple(2 + FIG_GAPS[i] + FIG_GAPS[i + 1] for i in range(12))


@dataclass(frozen=True)
class GadgetSpec:
    """One bunch: its length, the degree of each bunch vertex, parent degrees.

    ``degrees`` fixes which gaps hold a horizontal edge up to the choice at
    the first gap; ``anchor_edges`` pins x_0x_1 and x_tx_{t+1} explicitly.
    Missing degrees are drawn from ``seed``.  ``parent_degrees`` default to
    t + 2 (no padding).
    """

    t: int
    degrees: tuple[int, ...] | None = None
    parent_degrees: tuple[int, int] | None = None
    seed: int | None = None
    anchor_edges: tuple[bool, bool] | None = None
    padding: str = "fan"

    def gaps(self) -> tuple[int, ...]:
        t = self.t
        if t < 1:
            raise GadgetError("bunch length must be positive")
        if self.degrees is None:
            rng = random.Random(self.seed)
            h = [rng.randint(0, 1) for _ in range(t + 1)]
            if self.anchor_edges is not None:
                h[0], h[-1] = map(int, self.anchor_edges)
            return tuple(h)
        if len(self.degrees) != t:
            raise GadgetError("need one degree per bunch vertex")
        firsts = [int(self.anchor_edges[0])] if self.anchor_edges else [0, 1]
        for h1 in firsts:
            h = [h1]
            for d in self.degrees:
                if d not in (2, 3, 4):
                    raise GadgetError(f"bunch vertex degree {d} not in 2..4")
                h.append(d - 2 - h[-1])
            if any(x not in (0, 1) for x in h):
                continue
            if self.anchor_edges and h[-1] != int(self.anchor_edges[1]):
                continue
            return tuple(h)
        raise GadgetError("degree pattern has no horizontal-edge support")

    def parent_pad(self) -> tuple[int, int]:
        pd = self.parent_degrees or (self.t + 2, self.t + 2)
        pads = (pd[0] - self.t - 2, pd[1] - self.t - 2)
        if min(pads) < 0:
            raise GadgetError("parent degree below t + 2")
        return pads


def hub_gadget(specs: Sequence[GadgetSpec], connectors: Sequence[int] | None = None,
               padding: str = "fan") -> tuple[PlaneGraph, list[Bunch]]:
    """A vertex 0 that parents one bunch per spec, sectors in clockwise order.

    ``connectors[j]`` extra neighbours of vertex 0 (degree 3, on a path) sit
    between sector j and sector j+1.  With one spec its default is the
    padding requested by ``parent_degrees[0]``.  Co-parent j is padded by a
    fan of ``parent_degrees[1] - t - 2`` vertices (or leaves).
    """
    m = len(specs)
    if m == 0:
        raise GadgetError("need at least one bunch")
    if connectors is None:
        connectors = [specs[0].parent_pad()[0]] if m == 1 else [0] * m
    if len(connectors) != m:
        raise GadgetError("one connector count per sector")
    rot: list[list[int]] = [[]]
    v = 0

    def new(r=None) -> int:
        rot.append(r if r is not None else [])
        return len(rot) - 1

    sectors = []
    for s in specs:
        h = s.gaps()
        w = new()
        chain = [new() for _ in range(s.t + 2)]
        sectors.append((s, h, w, chain))
    leaves_mode = padding == "leaves"
    # connector paths from sector j's x_0 to sector j+1's x_{t+1}
    paths = []
    for j in range(m):
        cs = [] if leaves_mode else [new() for _ in range(connectors[j])]
        leaves = [new([v]) for _ in range(connectors[j])] if leaves_mode else []
        blocker = None
        if m == 1 and not cs:
            blocker = new()
        paths.append((cs, leaves, blocker))
    for j, (s, h, w, chain) in enumerate(sectors):
        t = s.t
        pad_w = s.parent_pad()[1]
        qs = [] if leaves_mode else [new() for _ in range(pad_w)]
        wleaves = [new([w]) for _ in range(pad_w)] if leaves_mode else []
        rot[w] = list(chain) + wleaves + qs
        fan = [chain[-1]] + qs + [chain[0]]
        for i, q in enumerate(qs, 1):
            rot[q] = [w, fan[i - 1], fan[i + 1]]
        cs, leaves, blocker = paths[j]
        nxt_chain = sectors[(j + 1) % m][3]
        seq = [chain[0]] + cs + ([blocker] if blocker is not None else []) + [nxt_chain[-1]]
        for i, c in enumerate(cs, 1):
            rot[c] = [v, seq[i - 1], seq[i + 1]]
        if blocker is not None:
            rot[blocker] = [seq[-3] if len(seq) > 3 else chain[0], chain[-1]]
        rot[v] += list(reversed(chain)) + leaves + cs
        for i in range(1, t + 1):
            x = chain[i]
            r = [v]
            if h[i]:
                r.append(chain[i + 1])
            r.append(w)
            if h[i - 1]:
                r.append(chain[i - 1])
            rot[x] = r
        # anchors
        x0 = chain[0]
        r = [v] + ([chain[1]] if h[0] else []) + [w]
        if qs:
            r.append(qs[-1])
        r.append(seq[1])
        rot[x0] = r
    for j, (s, h, w, chain) in enumerate(sectors):
        xt = chain[-1]
        prev_cs, _, prev_blocker = paths[(j - 1) % m]
        prev_seq_first = sectors[(j - 1) % m][3][0]
        if prev_blocker is not None:
            back = prev_blocker
        elif prev_cs:
            back = prev_cs[-1]
        else:
            back = prev_seq_first
        qs_first = [u for u in rot[w][len(chain):] if len(rot[u]) == 3]
        r = [v, back]
        if qs_first:
            r.append(qs_first[0])
        r.append(w)
        if h[-1]:
            r.append(chain[-2])
        rot[xt] = r
    g = build_from_rotation(rot)
    rep = validate(g)
    if not rep.euler_ok:
        raise EmbeddingError("gadget rotation is not planar")
    bunches = []
    for s, h, w, chain in sectors:
        gaps = tuple(TRIANGLES if x else QUAD for x in h)
        p = (v, w)
        bunches.append(Bunch(p, tuple(chain), gaps))
    return g, bunches


def bunch_gadget(spec: GadgetSpec) -> tuple[PlaneGraph, Bunch]:
    g, bs = hub_gadget([spec], padding=spec.padding)
    return g, bs[0]


def figure_gadget() -> tuple[PlaneGraph, Bunch]:
    """Length-12 bunch with horizontals at both ends and in the middle."""
    return bunch_gadget(GadgetSpec(12, degrees=FIG_DEGREES, anchor_edges=(True, True)))


# random plane graphs

def random_planar(n: int, seed: int, two_connected: bool = True,
                  delete_fraction: float = 0.3) -> PlaneGraph:
    """Stacked triangulation grown by random face insertions, then random
    edge deletions (keeping 2-connectivity when asked, else connectivity).
    """
    if n < 4:
        raise ValueError("n must be at least 4")
    rng = random.Random(seed)
    g = k4()
    while g.n < n:
        f = rng.randrange(len(g.faces))
        g = stellate(g, [f])
    want = int(delete_fraction * len(g.edges))
    edges = list(g.edges)
    rng.shuffle(edges)
    removed = 0
    for e in edges:
        if removed >= want:
            break
        h = g.without_edges([e])
        rep = validate(h)
        if (rep.two_connected if two_connected else rep.connected):
            g = h
            removed += 1
    return g


def relabeled(g: PlaneGraph, seed: int) -> tuple[PlaneGraph, list[int]]:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm), perm


__all__ = [
    "FIG_DEGREES", "FIG_GAPS", "GadgetError", "GadgetSpec", "borodin_construction",
    "bowtie", "bunch_gadget", "cube", "cycle", "dodecahedron", "figure_gadget",
    "hub_gadget", "icosahedron", "k4", "octahedron", "path", "random_planar",
    "relabeled", "star", "stellate", "subdivide", "truncate", "truncated_dodecahedron",
    "wheel",
]
