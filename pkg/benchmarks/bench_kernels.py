"""Time the compiled kernels against the pure Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import timeit

from acyclic_planar import generators as gen
from acyclic_planar._kernels import _pure
from acyclic_planar.acyclic_coloring import _search_order

try:
    from acyclic_planar._kernels import _ckernels
except ImportError:
    _ckernels = None


def proper_arrays(g, k, rng):
    seen = [set() for _ in range(g.n)]
    eu, ev, ec = [], [], []
    for u, v in g.edges:
        opts = [c for c in range(1, k + 1) if c not in seen[u] and c not in seen[v]]
        c = rng.choice(opts) if opts else 0
        eu.append(u)
        ev.append(v)
        ec.append(c)
        if c:
            seen[u].add(c)
            seen[v].add(c)
    return eu, ev, ec


def cycle_cases():
    rng = random.Random(0)
    out = []
    for seed in range(40):
        g = gen.random_planar(60, seed)
        k = g.max_degree + 2
        out.append((g.n, *proper_arrays(g, k, rng), k))
    return out


def search_cases():
    # palettes one below the index, so every case is an exhaustive refutation
    out = []
    for g, k in ((gen.icosahedron(), 5), (gen.octahedron(), 5), (gen.k4(), 4),
                 (gen.dodecahedron(), 3), (gen.cube(), 3)):
        order = _search_order(g)
        out.append((g.n, [e[0] for e in order], [e[1] for e in order], k))
    return out


def bench(mod, repeat):
    cyc, srch = cycle_cases(), search_cases()

    def run_cycles():
        for args in cyc:
            mod.first_bicolored_cycle(*args)

    def run_search():
        for args in srch * 10:
            mod.search_acyclic(*args)

    return {
        "first_bicolored_cycle": min(timeit.repeat(run_cycles, number=1, repeat=repeat)),
        "search_acyclic": min(timeit.repeat(run_search, number=1, repeat=repeat)),
    }


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    res = {"python": bench(_pure, args.repeat)}
    if _ckernels is not None:
        res["cython"] = bench(_ckernels, args.repeat)
    if args.json:
        print(json.dumps(res, indent=2, sort_keys=True))
        return 0
    print(f"{'kernel':24s} {'python (s)':>12s} {'cython (s)':>12s} {'speedup':>8s}")
    for name, t_py in res["python"].items():
        if "cython" in res:
            t_c = res["cython"][name]
            print(f"{name:24s} {t_py:12.4f} {t_c:12.4f} {t_py / t_c:7.1f}x")
        else:
            print(f"{name:24s} {t_py:12.4f} {'n/a':>12s}")
    if _ckernels is None:
        print("compiled kernels not built", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
