"""Charges, the three redistribution rules, and configuration detectors.

All charges are stored doubled, so the half-unit transfers of the first rule
stay integral.  A vertex starts with d(v) - 6, a face with 2l(f) - 6, and by
Euler's formula the total is -12 (stored as -24).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .plane_graph import Bunch, PlaneGraph, Thresholds, check_bunch, find_bunches, validate

SCHEMA_VERSION = 1
BANK = ("bank", 0)

Site = tuple[str, int]


class DischargingError(ValueError):
    pass


class StructuralLemmaViolation(AssertionError):
    """No configuration found where one must exist."""


@dataclass(frozen=True)
class Transfer:
    source: Site
    target: Site
    amount2: int
    rule: str

    def to_dict(self) -> dict:
        return {"source": list(self.source), "target": list(self.target),
                "amount2": self.amount2, "rule": self.rule}


@dataclass
class ChargeLedger:
    vertex: dict[int, int]
    face: dict[int, int]
    bank: int = 0
    log: list[Transfer] = field(default_factory=list)

    def total2(self) -> int:
        return sum(self.vertex.values()) + sum(self.face.values()) + self.bank

    def charge(self, site: Site) -> int:
        kind, i = site
        if kind == "vertex":
            return self.vertex[i]
        if kind == "face":
            return self.face[i]
        return self.bank

    def _add(self, site: Site, amount2: int) -> None:
        kind, i = site
        if kind == "vertex":
            self.vertex[i] += amount2
        elif kind == "face":
            self.face[i] += amount2
        else:
            self.bank += amount2

    def move(self, source: Site, target: Site, amount2: int, rule: str) -> None:
        self._add(source, -amount2)
        self._add(target, amount2)
        self.log.append(Transfer(source, target, amount2, rule))

    def copy_initial(self) -> "ChargeLedger":
        return ChargeLedger(dict(self.vertex), dict(self.face), self.bank, [])

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "units": "doubled",
            "vertex": {str(v): c for v, c in sorted(self.vertex.items())},
            "face": {str(f): c for f, c in sorted(self.face.items())},
            "bank": self.bank,
            "total2": self.total2(),
            "transfers": [t.to_dict() for t in self.log],
        }


def initial_charges(g: PlaneGraph) -> ChargeLedger:
    if not g.is_connected():
        raise DischargingError("initial charges need a connected graph")
    vertex = {v: 2 * (g.degree(v) - 6) for v in range(g.n)}
    face = {f: 2 * (2 * g.face_length(f) - 6) for f in range(len(g.faces))}
    if not g.edges:
        face[0] = 2 * -6  # the single face of a lone vertex has length 0
    return ChargeLedger(vertex, face)


def replay(initial: ChargeLedger, log: Iterable[Transfer]) -> ChargeLedger:
    out = initial.copy_initial()
    for t in log:
        out.move(t.source, t.target, t.amount2, t.rule)
    return out


def apply_rules(g: PlaneGraph, th: Thresholds, bunches: list[Bunch] | None = None) -> ChargeLedger:
    """Run R1, R2 and R3 on the initial charges.

    Amounts depend only on the structure, so the rules are applied in a
    fixed order and the log is deterministic.
    """
    if bunches is None:
        bunches = find_bunches(g, th)
    led = initial_charges(g)
    deg = g.degrees
    big = [d >= th.big for d in deg]
    parents_of: dict[int, set[int]] = {}
    for b in bunches:
        for x in b.vertices:
            parents_of.setdefault(x, set()).update(b.parents)

    # R1
    for x in range(g.n):
        if deg[x] > 5:
            continue
        bn = [u for u in g.neighbors(x) if big[u]]
        if len(bn) == 1:
            led.move(("vertex", bn[0]), ("vertex", x), 2 * (6 - deg[x]), "R1-single")
        if x in parents_of:
            for p in sorted(parents_of[x]):
                led.move(("vertex", p), ("vertex", x), 2, "R1-bunch")
        elif len(bn) == 2:
            for p in bn:
                led.move(("vertex", p), ("vertex", x), 1, "R1-pair")

    # R2
    for x in range(g.n):
        if deg[x] > 5:
            continue
        for a, b in g.iter_angles(x):
            if a == b or not (big[a] or big[b]):
                continue
            f = g.angle_face(x, a)
            ln = g.face_length(f)
            if ln == 4:
                led.move(("face", f), ("vertex", x), 2, "R2-quad")
            elif ln >= 5:
                amt = 4 if big[a] and big[b] else 2
                led.move(("face", f), ("vertex", x), amt, "R2-large")

    # R3
    for v in range(g.n):
        if big[v]:
            led.move(("vertex", v), BANK, 24, "R3-deposit")
    for x in range(g.n):
        if deg[x] > 5:
            continue
        for a, b in g.iter_angles(x):
            if a != b and big[a] and big[b] and g.face_length(g.angle_face(x, a)) == 3:
                led.move(BANK, ("vertex", x), 4, "R3-withdraw")
    return led


def unhappy_elements(led: ChargeLedger) -> list[Site]:
    out: list[Site] = [("vertex", v) for v, c in sorted(led.vertex.items()) if c < 0]
    out += [("face", f) for f, c in sorted(led.face.items()) if c < 0]
    if led.bank < 0:
        out.append(BANK)
    return out


# configurations

@dataclass(frozen=True)
class ConfigurationWitness:
    kind: str  # RC1, RC2, RC3, RC4
    vertex: int
    degree_sum: int | None = None
    cls: str | None = None
    vertices: tuple[int, ...] = ()
    nf: int | None = None
    ns: int | None = None

    def to_dict(self) -> dict:
        d = {"schema_version": SCHEMA_VERSION, "kind": self.kind, "vertex": self.vertex}
        if self.degree_sum is not None:
            d["degree_sum"] = self.degree_sum
        if self.cls is not None:
            d["class"] = self.cls
            d["vertices"] = list(self.vertices)
        if self.nf is not None:
            d["nf"] = self.nf
            d["ns"] = self.ns
        return d


RC2_CLASSES = (("i", 2), ("ii", 3), ("iii", 4), ("iv", 5))


def detect_rc1(g: PlaneGraph, k: int) -> ConfigurationWitness | None:
    for v in range(g.n):
        s = sum(g.degree(u) for u in g.neighbors(v))
        if s <= k:
            return ConfigurationWitness("RC1", v, degree_sum=s)
    return None


def _private_low_neighbors(g: PlaneGraph, v: int, big_t: int) -> list[int]:
    """5^- neighbours of v whose only big neighbour is v."""
    out = []
    for u in g.neighbors(v):
        if g.degree(u) > 5:
            continue
        if [x for x in g.neighbors(u) if g.degree(x) >= big_t] == [v]:
            out.append(u)
    return out


def rc2_threshold(g: PlaneGraph, v: int, delta: int, offset: int) -> int:
    return max(1, g.degree(v) - delta + offset)


def detect_rc2(g: PlaneGraph, delta: int, th: Thresholds) -> ConfigurationWitness | None:
    for v in range(g.n):
        if g.degree(v) < th.big:
            continue
        priv = _private_low_neighbors(g, v, th.big)
        for (cls, cap), off in zip(RC2_CLASSES, th.rc2_offsets):
            counted = tuple(u for u in priv if g.degree(u) <= cap)
            if len(counted) >= rc2_threshold(g, v, delta, off):
                return ConfigurationWitness("RC2", v, cls=cls, vertices=counted)
    return None


def outside_counts(g: PlaneGraph, v: int, bunches: list[Bunch]) -> tuple[int, int]:
    """(nf, ns) over neighbours of v in no bunch parented by v."""
    inside = set()
    for b in bunches:
        if v in b.parents:
            inside.update(b.vertices)
    nf = ns = 0
    for u in g.neighbors(v):
        if u in inside:
            continue
        if g.degree(u) <= 5:
            nf += 1
        else:
            ns += 1
    return nf, ns


def detect_rc34(g: PlaneGraph, th: Thresholds, bunches: list[Bunch]) -> ConfigurationWitness | None:
    delta = g.max_degree
    for v in range(g.n):
        if g.degree(v) < th.big:
            continue
        nf, ns = outside_counts(g, v, bunches)
        if nf + 2 * ns <= th.rc3_cap:
            return ConfigurationWitness("RC3", v, nf=nf, ns=ns)
        if g.degree(v) >= delta - th.very_big_offset and nf + 2 * ns <= th.rc4_cap:
            return ConfigurationWitness("RC4", v, nf=nf, ns=ns)
    return None


def structural_scan(g: PlaneGraph, th: Thresholds | None = None) -> ConfigurationWitness:
    th = th or Thresholds()
    if not validate(g).two_connected:
        raise DischargingError("structural scan needs a 2-connected plane graph")
    delta = g.max_degree
    w = detect_rc1(g, th.palette(delta))
    if w is None:
        w = detect_rc2(g, delta, th)
    if w is None:
        w = detect_rc34(g, th, find_bunches(g, th))
    if w is None:
        raise StructuralLemmaViolation("no configuration found")
    return w


def verify_witness(g: PlaneGraph, th: Thresholds, w: ConfigurationWitness) -> bool:
    """Re-check a witness from the graph and thresholds alone."""
    delta = g.max_degree
    v = w.vertex
    if not 0 <= v < g.n:
        return False
    if w.kind == "RC1":
        s = sum(g.degree(u) for u in g.neighbors(v))
        return s == w.degree_sum and s <= th.palette(delta)
    if g.degree(v) < th.big:
        return False
    if w.kind == "RC2":
        caps = dict(RC2_CLASSES)
        offs = dict(zip((c for c, _ in RC2_CLASSES), th.rc2_offsets))
        if w.cls not in caps or len(set(w.vertices)) != len(w.vertices):
            return False
        for u in w.vertices:
            if not g.has_edge(u, v) or g.degree(u) > caps[w.cls]:
                return False
            if [x for x in g.neighbors(u) if g.degree(x) >= th.big] != [v]:
                return False
        return len(w.vertices) >= rc2_threshold(g, v, delta, offs[w.cls])
    bunches = find_bunches(g, th)
    if any(check_bunch(g, b, th) for b in bunches):
        return False
    if (w.nf, w.ns) != outside_counts(g, v, bunches):
        return False
    if w.kind == "RC3":
        return w.nf + 2 * w.ns <= th.rc3_cap
    if w.kind == "RC4":
        return (g.degree(v) >= delta - th.very_big_offset
                and w.nf + 2 * w.ns <= th.rc4_cap)
    return False
