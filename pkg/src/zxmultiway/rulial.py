"""Rulial composition, multiway merging, the monoidal-product experiment and
the root-NOT quantum toy."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import random
from typing import Any, Callable, Sequence

import numpy as np

from .canon import LabeledGraph, certificate, isomorphism
from .exact import ExactScalar, Gaussian
from .multiway import (BranchialGraph, EngineConfig, Event, MultiwayGraph, RawEvent,
                       RewriteSystem, StateVertex, amplitude_weights, branchial, evolve)
from .zx.diagram import Diagram, Node, bend, color_invert, nend, stack
from .zx.phase import PI, ZERO
from .zx.rules import RuleInstance, identity_rule
from .zx.system import ZXSystem


class CompositionError(ValueError):
    pass


# ------------------------------------------------------------ composition
class RulialSystem(RewriteSystem):
    """Disjoint union of the rules of several systems of the same kind.

    A rule that an earlier component already provides is not applied twice.
    """

    def __init__(self, *systems: RewriteSystem):
        if not systems:
            raise CompositionError("nothing to compose")
        flat: list[RewriteSystem] = []
        for s in systems:
            flat.extend(s.components if isinstance(s, RulialSystem) else [s])
        kinds = {s.kind for s in flat}
        if len(kinds) != 1:
            raise CompositionError(f"cannot compose systems of kinds {sorted(kinds)}")
        self.kind = kinds.pop()
        self.components = flat
        self.name = "+".join(s.name for s in flat)
        self.origin: dict[str, int] = {}
        for i, s in enumerate(flat):
            for rid in s.rule_ids():
                self.origin.setdefault(rid, i)

    def rule_ids(self) -> list[str]:
        return list(self.origin)

    def events(self, state) -> list[RawEvent]:
        out = []
        for i, s in enumerate(self.components):
            out.extend(ev for ev in s.events(state) if self.origin.get(ev.rule, i) == i)
        return out

    def canonical(self, state) -> str:
        return self.components[0].canonical(state)

    def elements(self, state):
        return self.components[0].elements(state)

    def label(self, state) -> str:
        return self.components[0].label(state)


def rulial_compose(*systems: RewriteSystem) -> RulialSystem:
    return RulialSystem(*systems)


def merge_multiway(*graphs: MultiwayGraph) -> MultiwayGraph:
    """States-graph union with states identified by canonical form."""
    if not graphs:
        raise CompositionError("nothing to merge")
    kinds = {getattr(g, "kind", None) for g in graphs}
    if len(kinds) != 1:
        raise CompositionError(f"cannot merge graphs over different state kinds {kinds}")
    out = MultiwayGraph("states")
    out.kind = kinds.pop()
    gen: dict[str, int] = {}
    rep: dict[str, Any] = {}
    for g in graphs:
        for s in g.states:
            if s.key not in gen or s.generation < gen[s.key]:
                gen[s.key] = s.generation
            rep.setdefault(s.key, s.state)
    for k in sorted(gen, key=lambda k: (gen[k], k)):
        v = StateVertex(len(out.states), k, rep[k], gen[k])
        out.states.append(v)
        out._index[(k,)] = v.id
    seen = set()
    offset = 0
    for g in graphs:
        top = 0
        for e in g.events:
            src, dst = g.states[e.src].key, g.states[e.dst].key
            sig = (src, dst, e.rule, repr(e.position))
            top = max([top] + [t + 1 for t in e.inputs + e.outputs])
            if sig in seen:
                continue
            seen.add(sig)
            eid = len(out.events)
            ins = tuple(t + offset for t in e.inputs)
            outs = tuple(t + offset for t in e.outputs)
            out.events.append(Event(eid, e.rule, out._index[(src,)], out._index[(dst,)],
                                    e.position, ins, outs))
            for t in outs:
                out.token_producer[t] = eid
            for t in ins:
                out.token_producer.setdefault(t, None)
        offset += top
    return out


def weakly_connected(mw: MultiwayGraph) -> int:
    """Number of weakly connected components."""
    parent = list(range(len(mw.states)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for e in mw.events:
        parent[find(e.src)] = find(e.dst)
    return len({find(v.id) for v in mw.states})


# ----------------------------------------------------------------- isomorphism
def graph_isomorphic(g1: LabeledGraph, g2: LabeledGraph) -> tuple[bool, dict | None]:
    m = isomorphism(g1, g2)
    return m is not None, m


def digraph(vertices: Sequence, edges: Sequence[tuple], colors: dict | None = None) -> LabeledGraph:
    lg = LabeledGraph()
    idx = {v: lg.add_vertex((colors or {}).get(v, "")) for v in vertices}
    for a, b in sorted(set(edges), key=repr):
        lg.add_arc(idx[a], idx[b])
    return lg


def undirected(vertices: Sequence, edges: Sequence[tuple], colors: dict | None = None) -> LabeledGraph:
    lg = LabeledGraph()
    idx = {v: lg.add_vertex((colors or {}).get(v, "")) for v in vertices}
    for a, b in sorted({tuple(sorted(e, key=repr)) for e in edges}, key=repr):
        lg.add_edge(idx[a], idx[b])
    return lg


# ---------------------------------------------------------- monoidal experiment
def wire_skeleton_key(d: Diagram) -> str:
    """Class of ``d`` modulo where phase-free 1->1 spiders sit on a wire bundle.

    Every maximal chain of phase-free one-in/one-out Z and X spiders is
    replaced by a single wire.  Parallel chains (same two end legs) form a
    bundle labelled with its size and how many spiders of each colour it
    carried in total, so the insertions are not attributed to one of several
    interchangeable wires.  The canonical form of the labelled skeleton is
    returned.
    """
    ar = d.arities()
    trivial = {k for k, n in d.nodes.items()
               if n.kind in ("Z", "X") and n.phase == ZERO and ar[k] == (1, 1)}
    inc: dict[str, list[tuple[str, int]]] = defaultdict(list)
    for wid in sorted(d.wires):
        for side, e in enumerate(d.wires[wid]):
            if e[0] == "n" and e[1] in trivial:
                inc[e[1]].append((wid, side))
    def is_trivial(e) -> bool:
        return e[0] == "n" and e[1] in trivial

    def count(node: str, zx: list) -> None:
        zx[0 if d.nodes[node].kind == "Z" else 1] += 1

    used: set[str] = set()
    chains: list[tuple[tuple, tuple, int, int]] = []
    for wid in sorted(d.wires):
        for side in (0, 1):
            start = d.wires[wid][side]
            if wid in used or is_trivial(start):
                continue
            zx = [0, 0]
            cur, s = wid, side
            while True:
                used.add(cur)
                far = d.wires[cur][1 - s]
                if not is_trivial(far):
                    break
                count(far[1], zx)
                cur, s = next(o for o in inc[far[1]] if o != (cur, 1 - s))
            chains.append((start, far, zx[0], zx[1]))
    # closed chains made only of trivial spiders
    cycles: list[tuple[int, int]] = []
    for wid in sorted(d.wires):
        if wid in used:
            continue
        zx = [0, 0]
        cur, s = wid, 0
        while cur not in used:
            used.add(cur)
            far = d.wires[cur][1 - s]
            count(far[1], zx)
            cur, s = next(o for o in inc[far[1]] if o != (cur, 1 - s))
        cycles.append((zx[0], zx[1]))
    lg = LabeledGraph()
    nodes = [k for k in sorted(d.nodes) if k not in trivial]
    nidx = {k: lg.add_vertex("N|" + d.nodes[k].color()) for k in nodes}
    bidx = {}
    for k, b in enumerate(d.inputs):
        bidx[b] = lg.add_vertex(f"I|{k}")
    for k, b in enumerate(d.outputs):
        bidx[b] = lg.add_vertex(f"O|{k}")
    bundles: dict[tuple, list[int]] = {}
    for a, b, z, x in chains:
        tot = bundles.setdefault(tuple(sorted((a, b), key=repr)), [0, 0, 0])
        tot[0] += 1
        tot[1] += z
        tot[2] += x
    for (a, b), (m, z, x) in sorted(bundles.items(), key=repr):
        w = lg.add_vertex(f"W|{m}|{z}|{x}")
        for e in (a, b):
            if e[0] == "n":
                lg.add_edge(nidx[e[1]], w, e[2])
            else:
                lg.add_edge(bidx[e[1]], w, "b")
    extra = sorted(cycles) + [(0, 0)] * len(d.loops)
    for z, x in extra:
        lg.add_vertex(f"C|{z}|{x}")
    return repr(certificate(lg))


@dataclass
class SideGraphs:
    mw: MultiwayGraph
    steps: int

    def states_graph(self, quotient: Callable | None) -> tuple[LabeledGraph, int]:
        cls = self._classes(quotient)
        verts = sorted(set(cls.values()))
        edges = {(cls[e.src], cls[e.dst]) for e in self.mw.events if cls[e.src] != cls[e.dst]}
        roots = {cls[s.id] for s in self.mw.states if s.generation == 0}
        return digraph(verts, sorted(edges), {v: ("root" if v in roots else "") for v in verts}), len(verts)

    def _classes(self, quotient: Callable | None) -> dict[int, Any]:
        if quotient is None:
            return {s.id: s.key for s in self.mw.states}
        return {s.id: quotient(s.state) for s in self.mw.states}

    def branchial_graphs(self, quotient: Callable | None) -> list[LabeledGraph]:
        cls = self._classes(quotient)
        first: dict[Any, int] = {}
        for s in self.mw.states:
            c = cls[s.id]
            first[c] = min(first.get(c, s.generation), s.generation)
        out = []
        for t in range(self.mw.max_generation + 1):
            bg = branchial(self.mw, t)
            verts = sorted({cls[v] for v in bg.vertices if first[cls[v]] == t})
            edges = set()
            for e in bg.edges:
                a, b = (cls[v] for v in e)
                if a != b and a in verts and b in verts:
                    edges.add((a, b))
            out.append(undirected(verts, sorted(edges)))
        return out


@dataclass
class MonoidalReport:
    diagram: str
    steps: int
    raw_states: tuple[int, int]
    quotient_states: tuple[int, int]
    raw_isomorphic: bool
    quotient_isomorphic: bool
    witness: dict | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.quotient_isomorphic

    def to_json(self) -> dict:
        return {"diagram": self.diagram, "steps": self.steps,
                "raw_states": list(self.raw_states), "quotient_states": list(self.quotient_states),
                "raw_isomorphic": self.raw_isomorphic,
                "quotient_isomorphic": self.quotient_isomorphic,
                "witness": None if self.witness is None else
                {str(k): v for k, v in sorted(self.witness.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "MonoidalReport":
        return cls(data["diagram"], data["steps"], tuple(data["raw_states"]),
                   tuple(data["quotient_states"]), data["raw_isomorphic"],
                   data["quotient_isomorphic"], data.get("witness"))


def _compare(a: SideGraphs, b: SideGraphs, quotient) -> tuple[bool, dict | None, tuple[int, int]]:
    ga, na = a.states_graph(quotient)
    gb, nb = b.states_graph(quotient)
    ok, mapping = graph_isomorphic(ga, gb)
    if ok:
        for ba, bb in itertools.zip_longest(a.branchial_graphs(quotient), b.branchial_graphs(quotient)):
            if ba is None or bb is None or not graph_isomorphic(ba, bb)[0]:
                ok, mapping = False, None
                break
    return ok, mapping, (na, nb)


def monoidal_experiment(d: Diagram, rule_a: RuleInstance | None = None,
                        rule_b: RuleInstance | None = None, steps: int = 2,
                        config: EngineConfig | None = None) -> MonoidalReport:
    """Compare rulial composition with the monoidal product on ``d``.

    Side (i) evolves ``d`` under both rules; side (ii) evolves
    ``stack(d, color_invert(d))`` under ``rule_a`` alone.  States graphs and
    branchial graphs of each slice are compared raw and modulo
    :func:`wire_skeleton_key`.
    """
    rule_a = rule_a or identity_rule("Z")
    rule_b = rule_b or identity_rule("X")
    sa, sb = ZXSystem([rule_a], name="A"), ZXSystem([rule_b], name="B")
    left = SideGraphs(evolve(rulial_compose(sa, sb), [d], steps, "states", config), steps)
    right = SideGraphs(evolve(sa, [stack(d, color_invert(d))], steps, "states", config), steps)
    raw_ok, _, raw_n = _compare(left, right, None)
    q_ok, witness, q_n = _compare(left, right, wire_skeleton_key)
    return MonoidalReport(d.canonical_key(), steps, raw_n, q_n, raw_ok, q_ok,
                          {i: j for i, j in witness.items()} if witness else None)


def monoidal_tier(k: int) -> list[Diagram]:
    """Connected diagrams of one or two spiders with every spider arity <= k.

    Spiders are Z or X with phase 0 or pi; two spiders are joined by
    ``c >= 1`` wires from the first to the second; all remaining legs are
    boundary (inputs in spider order, then outputs in spider order).
    """
    if k < 1:
        raise ValueError("tier needs k >= 1")
    kinds = [(kd, ph) for kd in ("Z", "X") for ph in (ZERO, PI)]
    out: dict[str, Diagram] = {}

    def build(specs, links):
        nodes = {f"s{i}": Node(kd, ph) for i, (kd, ph, _, _) in enumerate(specs)}
        wires = {}
        ins = outs = 0
        for i, (_, _, n, m) in enumerate(specs):
            used_in = sum(c for (a, b2), c in links.items() if b2 == i)
            for _ in range(n - used_in):
                ins += 1
                wires[f"w{len(wires)}"] = (bend(f"i{ins}"), nend(f"s{i}", "in"))
        for i, (_, _, n, m) in enumerate(specs):
            used_out = sum(c for (a, b2), c in links.items() if a == i)
            for _ in range(m - used_out):
                outs += 1
                wires[f"w{len(wires)}"] = (nend(f"s{i}", "out"), bend(f"o{outs}"))
        for (a, b2), c in sorted(links.items()):
            for _ in range(c):
                wires[f"w{len(wires)}"] = (nend(f"s{a}", "out"), nend(f"s{b2}", "in"))
        return Diagram(nodes, wires, [f"i{j}" for j in range(1, ins + 1)],
                       [f"o{j}" for j in range(1, outs + 1)]).validate()

    for kd, ph in kinds:
        for n, m in itertools.product(range(k + 1), repeat=2):
            dd = build([(kd, ph, n, m)], {})
            out.setdefault(dd.canonical_key(), dd)
    for (k1, p1), (k2, p2) in itertools.product(kinds, repeat=2):
        for n1, m1, n2, m2 in itertools.product(range(k + 1), range(1, k + 1), range(1, k + 1), range(k + 1)):
            for c in range(1, min(m1, n2) + 1):
                dd = build([(k1, p1, n1, m1), (k2, p2, n2, m2)], {(0, 1): c})
                out.setdefault(dd.canonical_key(), dd)
    return [out[key] for key in sorted(out)]


def sample_tier(k: int, n: int, seed: int = 0) -> list[Diagram]:
    tier = monoidal_tier(k)
    if n >= len(tier):
        return tier
    rng = random.Random(seed)
    return [tier[i] for i in sorted(rng.sample(range(len(tier)), n))]


# ------------------------------------------------------------- quantum toy
class QuantumSystem(RewriteSystem):
    """Basis labels ``"0"``/``"1"``; a step moves ``b`` to every ``b'`` with
    non-zero ``gate[b'][b]``."""

    kind = "quantum"

    def __init__(self, gate):
        self.gate = gate
        self.name = "quantum"

    def rule_ids(self) -> list[str]:
        return ["gate"]

    def events(self, state: str) -> list[RawEvent]:
        b = int(state)
        out = []
        for b2 in (0, 1):
            amp = self.gate[b2][b]
            if complex(amp) != 0:
                out.append(RawEvent(f"{b}->{b2}", (b, b2), str(b2), ("q",), {}))
        return out

    def canonical(self, state: str) -> str:
        return state

    def elements(self, state: str) -> list:
        return ["q"]


_H = Fraction(1, 2)
ROOT_NOT = [[ExactScalar(Gaussian(_H, _H)), ExactScalar(Gaussian(_H, -_H))],
            [ExactScalar(Gaussian(_H, -_H)), ExactScalar(Gaussian(_H, _H))]]
PLUS = [ExactScalar.inv_sqrt2(), ExactScalar.inv_sqrt2()]


@dataclass
class QuantumRun:
    graph: MultiwayGraph
    labels: dict
    amplitudes: list     # per slice: [amp(|0>), amp(|1>)]


def quantum_toy(gate=ROOT_NOT, init=PLUS, steps: int = 8) -> QuantumRun:
    if steps < 0:
        raise ValueError("steps must be >= 0")
    sysq = QuantumSystem(gate)
    mw = evolve(sysq, ["0", "1"], steps, mode="evolution")
    labels = {e.id: gate[int(mw.states[e.dst].key)][int(mw.states[e.src].key)] for e in mw.events}
    roots = {v.id: init[int(v.key)] for v in mw.states if v.generation == 0}
    w = amplitude_weights(mw, labels, roots)
    zero = init[0] - init[0]
    amps = []
    for t in range(steps + 1):
        vec = [zero, zero]
        for v in mw.generation(t):
            vec[int(v.key)] = w[v.id]
        amps.append(vec)
    return QuantumRun(mw, labels, amps)


def matrix_power_apply(gate, init, t: int) -> list:
    vec = list(init)
    for _ in range(t):
        vec = [gate[0][0] * vec[0] + gate[0][1] * vec[1], gate[1][0] * vec[0] + gate[1][1] * vec[1]]
    return vec
