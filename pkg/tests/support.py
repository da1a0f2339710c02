"""Instance builders shared by the test modules."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

from acyclic_planar import generators as gen
from acyclic_planar.acyclic_coloring import (
    EdgeColoring,
    bicolored_cycles_through,
    is_proper,
    random_acyclic_coloring,
)
from acyclic_planar.plane_graph import Thresholds, build_from_rotation, validate
from acyclic_planar.reductions import reduce_big_vertex

ACCEPTANCE: dict[int, str] = {}


@contextmanager
def criterion(n: int, name: str, budget: float | None = None):
    """Record one PASS/FAIL line per acceptance criterion, with its runtime."""
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        dt = time.perf_counter() - t0
        line = f"criterion {n:2d} FAIL  {name} ({dt:.2f} s): {exc}".splitlines()[0]
        ACCEPTANCE[n] = line
        print(line)
        raise
    dt = time.perf_counter() - t0
    if budget is not None and dt >= budget:
        line = f"criterion {n:2d} FAIL  {name} ({dt:.2f} s, budget {budget} s)"
        ACCEPTANCE[n] = line
        print(line)
        raise AssertionError(f"runtime {dt:.2f} s exceeds {budget} s")
    line = f"criterion {n:2d} PASS  {name} ({dt:.2f} s)"
    ACCEPTANCE[n] = line
    print(line)


def fixtures() -> dict:
    """Every named generator output, keyed by a readable label."""
    out = {
        "k4": gen.k4(), "cube": gen.cube(), "octahedron": gen.octahedron(),
        "icosahedron": gen.icosahedron(), "dodecahedron": gen.dodecahedron(),
        "trunc-dodec": gen.truncated_dodecahedron(), "wheel20": gen.wheel(20),
        "c5": gen.cycle(5), "star4": gen.star(4), "path5": gen.path(5),
        "bowtie": gen.bowtie(), "figure": gen.figure_gadget()[0],
    }
    for t in (1, 2, 3):
        out[f"borodin{t}"] = gen.borodin_construction(t)
    for s in range(3):
        out[f"bunch{s}"] = gen.bunch_gadget(gen.GadgetSpec(11 + s, seed=s))[0]
    out["hub"] = gen.hub_gadget([gen.GadgetSpec(18, seed=1), gen.GadgetSpec(18, seed=2)])[0]
    return out


def two_connected_fixtures() -> dict:
    return {k: g for k, g in fixtures().items() if validate(g).two_connected}


def rethread_instance(seed: int, heavy: bool = False):
    """A bunch gadget and a random acyclic coloring of G_B.

    t and k are drawn from 11..30 and 13..20; the palette actually used is
    max(k, Delta + 2) since the parents see every thread.  In heavy mode the
    thread colors are forced into one long conflict path or cycle.
    """
    rng = random.Random(seed)
    t = rng.randint(11, 30)
    k = rng.randint(13, 20)
    g, b = gen.bunch_gadget(gen.GadgetSpec(t, seed=seed))
    gb = g.without_edges(b.horizontals)
    pal = max(k, g.max_degree + 2)
    fixed = None
    if heavy:
        v, w = b.parents
        cols = rng.sample(range(1, pal + 1), t + 1)
        closed = rng.random() < 0.5
        fixed = EdgeColoring(pal)
        for i, x in enumerate(b.vertices):
            fixed[v, x] = cols[i]
            fixed[w, x] = cols[(i + 1) % t] if closed else cols[i + 1]
    c = random_acyclic_coloring(gb, pal, rng, fixed=fixed)
    assert c is not None
    return g, b, c, pal


def spider(m: int, arm_colors=None, hub_colors=None, k: int | None = None):
    """Vertex 0 joined to w_1..w_m, each w_i with one pendant x_i = m + i.

    Returns the graph and a coloring with both edges at w_1 uncolored.  By
    default v w_i gets color i and every other pendant edge gets color 1.
    """
    rot = [list(range(1, m + 1))]
    rot += [[0, m + i] for i in range(1, m + 1)]
    rot += [[i] for i in range(1, m + 1)]
    g = build_from_rotation(rot)
    k = k or m
    hub_colors = hub_colors or list(range(1, m + 1))
    arm_colors = arm_colors or [1] * m
    c = EdgeColoring(k)
    for i in range(2, m + 1):
        c[0, i] = hub_colors[i - 1]
        c[i, m + i] = arm_colors[i - 1]
    return g, c


def random_spider(seed: int):
    """Tight spider: palette m, most pendant edges on the one color free at v."""
    rng = random.Random(seed)
    m = rng.randint(2, 9)
    hub = rng.sample(range(1, m + 1), m)
    one = hub[0]
    arms = [one if rng.random() < 0.7 else rng.choice([a for a in range(1, m + 1) if a != h])
            for h in hub]
    return spider(m, arms, hub, m) + (m, m)


def two_bunch_hub(seed: int):
    """Vertex 0 parenting two length-12 bunches."""
    return gen.hub_gadget([gen.GadgetSpec(12, seed=seed), gen.GadgetSpec(12, seed=1000 + seed)])


def perturbed_reduction(seed: int, swaps: int, want: int, tries: int = 3000):
    """A reduced two-bunch hub with `swaps` random transpositions of C_good
    colors at vertex 0, chosen so that exactly `want` 2-colored cycles pass
    through 0.  Returns (working graph, coloring, state) or None.
    """
    g, _ = two_bunch_hub(seed)
    r = reduce_big_vertex(g, 0, Thresholds.scaled(14), 30, seed=seed)
    gp, phi, st = r.working, r.coloring, r.state
    rng = random.Random(seed)
    good = sorted(st.c_good)
    for _ in range(tries):
        trial = phi.copy()
        for _ in range(swaps):
            a, b = rng.sample(good, 2)
            ea, eb = trial.edge_at(gp, 0, a), trial.edge_at(gp, 0, b)
            if ea is None or eb is None:
                break
            trial[0, ea], trial[0, eb] = b, a
        if is_proper(gp, trial) and len(bicolored_cycles_through(gp, trial, 0)) == want:
            return gp, trial, st
    return None
