"""Generic multiway evolution over any rewrite system.

A :class:`RewriteSystem` only has to enumerate its one-step rewrites of a
concrete state (:meth:`RewriteSystem.events`) and give each state a canonical
string.  Everything else (evolution and states graphs, causal graphs,
foliations, branchial graphs, path weights, confluence, causal invariance and
bounded completion) lives here and is shared by every frontend.

Element provenance: every state exposes a list of element keys.  A rewrite
reports which keys of its input it consumed and, for the result, which keys
were carried over unchanged.  The engine turns this into global *tokens* so
that ``In(B) & Out(A)`` can be evaluated for causal edges.
"""
from __future__ import annotations

from collections import defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import hashlib
import itertools
import json
from typing import Any, Callable, Hashable, Iterable, Sequence

from .canon import LabeledGraph, canonical_form, certificate


class ResourceLimitError(RuntimeError):
    """Raised when a configured state/event/path cap is exceeded."""


class HashCollisionError(RuntimeError):
    pass


class CycleError(ValueError):
    pass


@dataclass
class RawEvent:
    """One rewrite of one concrete state, as reported by a frontend."""

    rule: str
    position: Any
    result: Any
    consumed: tuple
    carry: dict


class RewriteSystem:
    """Base class for frontends.

    Subclasses implement :meth:`events`, :meth:`canonical` and
    :meth:`elements`.  ``kind`` names the state representation; only systems
    of the same kind can be composed.
    """

    kind = "generic"
    name = "system"

    def rule_ids(self) -> list[str]:
        raise NotImplementedError

    def events(self, state) -> list[RawEvent]:
        raise NotImplementedError

    def canonical(self, state) -> str:
        raise NotImplementedError

    def elements(self, state) -> list[Hashable]:
        raise NotImplementedError

    def label(self, state) -> str:
        return self.canonical(state)


@dataclass
class EngineConfig:
    max_states: int = 10**6
    max_events: int = 10**7
    workers: int = 1


def state_hash(key: str) -> str:
    return hashlib.sha256(key.encode()).hexdigest()[:16]


@dataclass
class StateVertex:
    id: int
    key: str
    state: Any
    generation: int
    tokens: dict = field(default_factory=dict, repr=False)


@dataclass
class Event:
    id: int
    rule: str
    src: int
    dst: int
    position: Any
    inputs: tuple
    outputs: tuple


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def dot_label(key: str, limit: int = 64) -> str:
    if len(key) <= limit:
        return key
    return key[:limit] + "…#" + state_hash(key)[:8]


class MultiwayGraph:
    """States, events and evolution edges of a multiway evolution.

    ``mode`` is ``"evolution"`` (layered DAG; a vertex is a canonical state at
    a given generation) or ``"states"`` (one vertex per canonical state,
    cycles allowed).
    """

    def __init__(self, mode: str):
        if mode not in ("evolution", "states"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.kind: str | None = None
        self.states: list[StateVertex] = []
        self.events: list[Event] = []
        self.token_producer: dict[int, int | None] = {}
        self._index: dict[tuple, int] = {}

    # ------------------------------------------------------------------ access
    def vertex_key(self, key: str, generation: int) -> tuple:
        return (key, generation) if self.mode == "evolution" else (key,)

    def find(self, key: str, generation: int | None = None) -> StateVertex | None:
        if self.mode == "states":
            i = self._index.get((key,))
        else:
            i = self._index.get((key, generation))
        return None if i is None else self.states[i]

    def keys(self) -> set[str]:
        return {s.key for s in self.states}

    def generation(self, g: int) -> list[StateVertex]:
        return [s for s in self.states if s.generation == g]

    @property
    def max_generation(self) -> int:
        return max((s.generation for s in self.states), default=0)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(e.src, e.dst, e.id) for e in self.events]

    def successors(self, vid: int) -> list[int]:
        return [e.dst for e in self.events if e.src == vid]

    def out_events(self) -> dict[int, list[Event]]:
        d: dict[int, list[Event]] = defaultdict(list)
        for e in self.events:
            d[e.src].append(e)
        return d

    def in_events(self) -> dict[int, list[Event]]:
        d: dict[int, list[Event]] = defaultdict(list)
        for e in self.events:
            d[e.dst].append(e)
        return d

    def simple_edges(self) -> set[tuple[int, int]]:
        return {(e.src, e.dst) for e in self.events}

    def roots(self) -> list[StateVertex]:
        return [s for s in self.states if s.generation == 0]

    # ----------------------------------------------------------------- export
    def to_json(self) -> str:
        data = {
            "mode": self.mode,
            "kind": self.kind,
            "states": [{"id": s.id, "key": s.key, "hash": state_hash(s.key),
                        "generation": s.generation} for s in self.states],
            "events": [{"id": e.id, "rule": e.rule, "src": e.src, "dst": e.dst,
                        "position": _jsonable(e.position),
                        "inputs": list(e.inputs), "outputs": list(e.outputs)}
                       for e in self.events],
        }
        return json.dumps(data, indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MultiwayGraph":
        data = json.loads(text)
        g = cls(data["mode"])
        g.kind = data.get("kind")
        for s in data["states"]:
            v = StateVertex(s["id"], s["key"], s["key"], s["generation"])
            g.states.append(v)
            g._index[g.vertex_key(v.key, v.generation)] = v.id
        for e in data["events"]:
            ev = Event(e["id"], e["rule"], e["src"], e["dst"], e["position"],
                       tuple(e["inputs"]), tuple(e["outputs"]))
            g.events.append(ev)
            for t in ev.outputs:
                g.token_producer[t] = ev.id
        for e in g.events:
            for t in e.inputs:
                g.token_producer.setdefault(t, None)
        return g

    def to_dot(self, name: str = "multiway") -> str:
        order = sorted(self.states, key=lambda s: (s.key, s.generation))
        vname = {s.id: f"s{k}" for k, s in enumerate(order)}
        lines = [f"digraph {name} {{"]
        for s in order:
            lab = dot_label(s.key)
            if self.mode == "evolution":
                lab = f"{lab} @{s.generation}"
            lines.append(f'  {vname[s.id]} [label="{_dot_escape(lab)}"];')
        edges = sorted((vname[e.src], vname[e.dst], e.rule) for e in self.events)
        for a, b, r in edges:
            lines.append(f'  {a} -> {b} [label="{_dot_escape(r)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_labeled_graph(self, simple: bool = True, color_roots: bool = True,
                         vertex_color: Callable[[StateVertex], str] | None = None) -> LabeledGraph:
        """Unlabelled structure of the graph, for isomorphism tests."""
        lg = LabeledGraph()
        for s in self.states:
            c = ""
            if color_roots and s.generation == 0:
                c = "root"
            if vertex_color is not None:
                c += vertex_color(s)
            lg.add_vertex(c)
        if simple:
            for a, b in sorted(self.simple_edges()):
                lg.add_arc(a, b, "")
        else:
            for e in self.events:
                lg.add_arc(e.src, e.dst, "")
        return lg


# ---------------------------------------------------------------------- evolve
def _expand(system: RewriteSystem, state) -> list[tuple[RawEvent, str]]:
    evs = system.events(state)
    return [(ev, system.canonical(ev.result)) for ev in evs]


def evolve(system: RewriteSystem, init: Sequence, steps: int, mode: str = "evolution",
           config: EngineConfig | None = None) -> MultiwayGraph:
    """Breadth-first multiway closure of ``init`` for ``steps`` generations."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    cfg = config or EngineConfig()
    g = MultiwayGraph(mode)
    g.kind = system.kind
    hashes: dict[str, str] = {}
    counter = itertools.count()

    def register(state, key: str, generation: int) -> tuple[StateVertex, bool]:
        h = state_hash(key)
        prev = hashes.setdefault(h, key)
        if prev != key:
            raise HashCollisionError(f"hash collision between {prev!r} and {key!r}")
        vk = g.vertex_key(key, generation)
        if vk in g._index:
            return g.states[g._index[vk]], False
        if len(g.states) >= cfg.max_states:
            raise ResourceLimitError(f"state cap {cfg.max_states} exceeded")
        v = StateVertex(len(g.states), key, state, generation)
        g.states.append(v)
        g._index[vk] = v.id
        return v, True

    frontier: list[StateVertex] = []
    for s in init:
        v, new = register(s, system.canonical(s), 0)
        if new:
            for el in system.elements(s):
                t = next(counter)
                v.tokens[el] = t
                g.token_producer[t] = None
            frontier.append(v)

    pool = ThreadPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
    try:
        for gen in range(steps):
            if not frontier:
                break
            if pool is not None:
                expanded = list(pool.map(lambda v: _expand(system, v.state), frontier))
            else:
                expanded = [_expand(system, v.state) for v in frontier]
            nxt: list[StateVertex] = []
            for v, results in zip(frontier, expanded):
                for ev, key in results:
                    if len(g.events) >= cfg.max_events:
                        raise ResourceLimitError(f"event cap {cfg.max_events} exceeded")
                    w, new = register(ev.result, key, gen + 1)
                    eid = len(g.events)
                    inputs = tuple(v.tokens[k] for k in ev.consumed)
                    outputs = []
                    fresh: dict = {}
                    for el in system.elements(ev.result):
                        if el in ev.carry:
                            fresh[el] = v.tokens[ev.carry[el]]
                        else:
                            t = next(counter)
                            fresh[el] = t
                            outputs.append(t)
                            g.token_producer[t] = eid
                    if new:
                        w.tokens = fresh
                        nxt.append(w)
                    g.events.append(Event(eid, ev.rule, v.id, w.id, ev.position,
                                          inputs, tuple(outputs)))
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return g


# ---------------------------------------------------------------- causal graph
@dataclass
class CausalGraph:
    vertices: list[int]
    edges: set[tuple[int, int]]

    def successors(self) -> dict[int, set[int]]:
        d: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            d[a].add(b)
        return d

    def predecessors(self) -> dict[int, set[int]]:
        d: dict[int, set[int]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            d[b].add(a)
        return d

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for _, b in self.edges:
            indeg[b] += 1
        succ = self.successors()
        q = deque(v for v, d in indeg.items() if d == 0)
        seen = 0
        while q:
            v = q.popleft()
            seen += 1
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    q.append(w)
        return seen == len(self.vertices)

    def transitive_reduction(self) -> "CausalGraph":
        succ = self.successors()
        keep = set()
        for a, b in self.edges:
            # drop a->b when b is reachable from a through another successor
            stack = [w for w in succ[a] if w != b]
            seen = set(stack)
            found = False
            while stack:
                x = stack.pop()
                if x == b:
                    found = True
                    break
                for y in succ[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if not found:
                keep.add((a, b))
        return CausalGraph(list(self.vertices), keep)

    def to_labeled_graph(self) -> LabeledGraph:
        lg = LabeledGraph()
        idx = {}
        for v in self.vertices:
            idx[v] = lg.add_vertex("")
        for a, b in sorted(self.edges):
            lg.add_arc(idx[a], idx[b])
        return lg

    def to_json(self) -> str:
        return json.dumps({"vertices": sorted(self.vertices),
                           "edges": sorted([a, b] for a, b in self.edges)}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CausalGraph":
        data = json.loads(text)
        return cls(list(data["vertices"]), {(a, b) for a, b in data["edges"]})

    def to_dot(self, name: str = "causal", rules: dict[int, str] | None = None) -> str:
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertices):
            lab = f"e{v}" + (f": {rules[v]}" if rules else "")
            lines.append(f'  e{v} [label="{_dot_escape(lab)}"];')
        for a, b in sorted(self.edges):
            lines.append(f"  e{a} -> e{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def causal_edges_from_events(events: Iterable[Event], producer: dict[int, int | None]) -> set[tuple[int, int]]:
    edges = set()
    for e in events:
        for t in e.inputs:
            p = producer.get(t)
            if p is not None:
                edges.add((p, e.id))
    return edges


def causal_graph(mw: MultiwayGraph, reduce: bool = False) -> CausalGraph:
    cg = CausalGraph([e.id for e in mw.events],
                     causal_edges_from_events(mw.events, mw.token_producer))
    return cg.transitive_reduction() if reduce else cg


def causal_cones(cg: CausalGraph, event: int) -> tuple[set[int], set[int]]:
    """Future (out-component) and past (in-component), both excluding ``event``."""
    if event not in set(cg.vertices):
        raise KeyError(f"unknown event {event}")

    def reach(adj: dict[int, set[int]]) -> set[int]:
        seen: set[int] = set()
        stack = [event]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        seen.discard(event)
        return seen

    return reach(cg.successors()), reach(cg.predecessors())


# ----------------------------------------------------- foliation and branchial
def foliate(mw: MultiwayGraph) -> dict[int, int]:
    """Default foliation: the generation index of every state vertex."""
    return {s.id: s.generation for s in mw.states}


@dataclass
class BranchialGraph:
    t: int
    vertices: list[int]
    edges: set[frozenset]

    def adjacency(self) -> dict[int, set[int]]:
        d: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            d[a].add(b)
            d[b].add(a)
        return d

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = self.adjacency()
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.vertices)

    def to_labeled_graph(self, colors: dict[int, str] | None = None) -> LabeledGraph:
        lg = LabeledGraph()
        idx = {v: lg.add_vertex((colors or {}).get(v, "")) for v in self.vertices}
        for e in sorted(tuple(sorted(e)) for e in self.edges):
            lg.add_edge(idx[e[0]], idx[e[1]])
        return lg

    def to_json(self) -> str:
        return json.dumps({"t": self.t, "vertices": sorted(self.vertices),
                           "edges": sorted(sorted(e) for e in self.edges)}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "BranchialGraph":
        data = json.loads(text)
        return cls(data["t"], list(data["vertices"]), {frozenset(e) for e in data["edges"]})

    def to_dot(self, mw: MultiwayGraph | None = None, name: str = "branchial") -> str:
        lines = [f"graph {name} {{"]
        for v in sorted(self.vertices):
            lab = dot_label(mw.states[v].key) if mw else f"s{v}"
            lines.append(f'  s{v} [label="{_dot_escape(lab)}"];')
        for a, b in sorted(tuple(sorted(e)) for e in self.edges):
            lines.append(f"  s{a} -- s{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def branchial(mw: MultiwayGraph, t: int, window: int | None = 1) -> BranchialGraph:
    """Branchial graph of slice ``t``.

    Two distinct states of the slice are joined when they have a common
    ancestor within ``window`` slices back (``window=None``: any ancestor).
    Only edges that advance the foliation are followed backwards.
    """
    fol = foliate(mw)
    if t < 0 or t > mw.max_generation:
        raise IndexError(f"slice {t} out of range 0..{mw.max_generation}")
    parents: dict[int, set[int]] = defaultdict(set)
    for e in mw.events:
        if fol[e.src] < fol[e.dst]:
            parents[e.dst].add(e.src)
    floor = -1 if window is None else t - window
    slice_v = sorted(v for v, tt in fol.items() if tt == t)

    def ancestors(v: int) -> set[int]:
        seen: set[int] = set()
        stack = [v]
        while stack:
            x = stack.pop()
            for p in parents[x]:
                if fol[p] >= floor and p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    anc = {v: ancestors(v) for v in slice_v}
    edges = set()
    for a, b in itertools.combinations(slice_v, 2):
        if anc[a] & anc[b]:
            edges.add(frozenset((a, b)))
    return BranchialGraph(t, slice_v, edges)


# -------------------------------------------------------------- path weights
def _topological(mw: MultiwayGraph) -> list[int]:
    indeg = {s.id: 0 for s in mw.states}
    out = mw.out_events()
    for e in mw.events:
        indeg[e.dst] += 1
    q = deque(sorted(v for v, d in indeg.items() if d == 0))
    order = []
    while q:
        v = q.popleft()
        order.append(v)
        for e in out[v]:
            indeg[e.dst] -= 1
            if indeg[e.dst] == 0:
                q.append(e.dst)
    if len(order) != len(mw.states):
        raise CycleError("multiway graph has a cycle; path weights need a DAG")
    return order


def path_weights(mw: MultiwayGraph) -> dict[int, int]:
    """Number of distinct root-to-state event paths."""
    order = _topological(mw)
    incoming = mw.in_events()
    w: dict[int, int] = {}
    for v in order:
        ins = incoming[v]
        w[v] = 1 if not ins else sum(w[e.src] for e in ins)
    return w


def amplitude_weights(mw: MultiwayGraph, labels: dict[int, Any],
                      root_weights: dict[int, Any] | None = None) -> dict[int, Any]:
    """Sum over root-to-state paths of the product of edge labels.

    Works with any ring elements (complex, :class:`~zxmultiway.exact.ExactScalar`).
    """
    order = _topological(mw)
    incoming = mw.in_events()
    w: dict[int, Any] = {}
    for v in order:
        ins = incoming[v]
        if not ins:
            w[v] = (root_weights or {}).get(v, 1)
        else:
            acc = None
            for e in ins:
                term = w[e.src] * labels[e.id]
                acc = term if acc is None else acc + term
            w[v] = acc
    return w


# ------------------------------------------------------------------ confluence
def reachable(system: RewriteSystem, state, depth: int,
              cache: dict | None = None) -> dict[str, int]:
    """Canonical states reachable from ``state`` within ``depth`` steps -> distance."""
    key = system.canonical(state)
    if cache is not None and (key, depth) in cache:
        return cache[(key, depth)]
    dist = {key: 0}
    frontier = [state]
    for d in range(1, depth + 1):
        nxt = []
        for s in frontier:
            for ev in system.events(s):
                k = system.canonical(ev.result)
                if k not in dist:
                    dist[k] = d
                    nxt.append(ev.result)
        frontier = nxt
    if cache is not None:
        cache[(key, depth)] = dist
    return dist


def branch_pairs(system: RewriteSystem, state) -> list[tuple[Any, Any]]:
    """All unordered pairs of distinct one-step successors of ``state``."""
    succ: dict[str, Any] = {}
    for ev in system.events(state):
        succ.setdefault(system.canonical(ev.result), ev.result)
    keys = sorted(succ)
    return [(succ[a], succ[b]) for a, b in itertools.combinations(keys, 2)]


def join_distance(system: RewriteSystem, b, c, depth: int, cache: dict | None = None) -> int | None:
    rb = reachable(system, b, depth, cache)
    rc = reachable(system, c, depth, cache)
    common = set(rb) & set(rc)
    if not common:
        return None
    return min(max(rb[k], rc[k]) for k in common)


@dataclass
class ConfluenceReport:
    verdict: str
    pairs_checked: int
    unjoined: list[tuple[str, str, str]]
    max_join_distance: int

    @property
    def confluent(self) -> bool:
        return self.verdict == "confluent"


def check_confluence(system: RewriteSystem, init: Sequence, depth: int,
                     join_depth: int | None = None,
                     config: EngineConfig | None = None) -> ConfluenceReport:
    """Look for unjoinable one-step divergences among states within ``depth``."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    jd = depth if join_depth is None else join_depth
    try:
        mw = evolve(system, init, depth - 1, mode="states", config=config)
    except ResourceLimitError:
        return ConfluenceReport("inconclusive", 0, [], 0)
    cache: dict = {}
    unjoined = []
    checked = 0
    worst = 0
    for v in mw.states:
        for b, c in branch_pairs(system, v.state):
            checked += 1
            d = join_distance(system, b, c, jd, cache)
            if d is None:
                unjoined.append((v.key, system.canonical(b), system.canonical(c)))
            else:
                worst = max(worst, d)
    verdict = "confluent" if not unjoined else "not-confluent"
    return ConfluenceReport(verdict, checked, unjoined, worst)


# ------------------------------------------------------------ causal invariance
@dataclass
class PathCausal:
    rules: tuple[str, ...]
    graph: CausalGraph


def path_causal_graphs(system: RewriteSystem, init, depth: int,
                       max_paths: int = 5000) -> list[PathCausal]:
    """Causal graph of every maximal single-way path of length <= ``depth``."""
    out: list[PathCausal] = []
    counter = itertools.count()
    tokens0 = {el: next(counter) for el in system.elements(init)}

    def walk(state, tokens, producer, events, rules):
        evs = system.events(state) if len(rules) < depth else []
        if not evs:
            if len(out) >= max_paths:
                raise ResourceLimitError(f"path cap {max_paths} exceeded")
            edges = set()
            for eid, inputs in events:
                for t in inputs:
                    p = producer.get(t)
                    if p is not None:
                        edges.add((p, eid))
            out.append(PathCausal(tuple(rules), CausalGraph(list(range(len(events))), edges)))
            return
        for ev in evs:
            eid = len(events)
            inputs = tuple(tokens[k] for k in ev.consumed)
            new_tokens = {}
            new_prod = dict(producer)
            for el in system.elements(ev.result):
                if el in ev.carry:
                    new_tokens[el] = tokens[ev.carry[el]]
                else:
                    t = next(counter)
                    new_tokens[el] = t
                    new_prod[t] = eid
            walk(ev.result, new_tokens, new_prod, events + [(eid, inputs)], rules + [ev.rule])

    walk(init, tokens0, {}, [], [])
    return out


@dataclass
class InvarianceReport:
    verdict: str
    paths: int
    classes: int


def check_causal_invariance(system: RewriteSystem, init, depth: int,
                            max_paths: int = 5000) -> InvarianceReport:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    try:
        paths = path_causal_graphs(system, init, depth, max_paths)
    except ResourceLimitError:
        return InvarianceReport("inconclusive", max_paths, 0)
    certs = {certificate(p.graph.to_labeled_graph()) for p in paths}
    return InvarianceReport("invariant" if len(certs) <= 1 else "violated", len(paths), len(certs))


# ------------------------------------------------------------------ completion
class CompletedSystem(RewriteSystem):
    """A system extended with whole-state rules ``lhs -> rhs``."""

    def __init__(self, base: RewriteSystem, extra: Sequence[tuple[Any, Any]] = ()):
        self.base = base
        self.kind = base.kind
        self.name = base.name + "+completion"
        self.extra = list(extra)
        self._keys = [base.canonical(l) for l, _ in self.extra]

    def rule_ids(self) -> list[str]:
        return self.base.rule_ids() + [f"completion:{i}" for i in range(len(self.extra))]

    def events(self, state) -> list[RawEvent]:
        evs = list(self.base.events(state))
        key = self.base.canonical(state)
        for i, (k, (_, rhs)) in enumerate(zip(self._keys, self.extra)):
            if k == key:
                evs.append(RawEvent(f"completion:{i}", (), rhs,
                                    tuple(self.base.elements(state)), {}))
        return evs

    def canonical(self, state) -> str:
        return self.base.canonical(state)

    def elements(self, state):
        return self.base.elements(state)

    def label(self, state) -> str:
        return self.base.label(state)


def complete(system: RewriteSystem, init: Sequence, depth: int, orientation: str = "both",
             max_rounds: int = 50, order_key: Callable[[str], Any] | None = None) -> list[tuple[Any, Any]]:
    """Greedy bounded completion.

    Branch pairs are the one-step divergences of every state within
    ``depth`` (several initial states count as divergent from a common
    virtual root).  The first pair that cannot be joined within ``depth``
    steps receives rules in both directions (or one direction, ordered by
    ``order_key`` / shortlex, when ``orientation="order"``); the search is
    then repeated until nothing is left or ``max_rounds`` is hit.
    """
    if orientation not in ("both", "order"):
        raise ValueError("orientation must be 'both' or 'order'")
    okey = order_key or (lambda k: (len(k), k))
    added: list[tuple[Any, Any]] = []
    for _ in range(max_rounds):
        sys2 = CompletedSystem(system, added)
        mw = evolve(sys2, init, max(depth - 1, 0), mode="states")
        pairs: list[tuple[Any, Any]] = []
        roots = {}
        for s in init:
            roots.setdefault(system.canonical(s), s)
        rk = sorted(roots)
        pairs.extend((roots[a], roots[b]) for a, b in itertools.combinations(rk, 2))
        for v in mw.states:
            pairs.extend(branch_pairs(sys2, v.state))
        cache: dict = {}
        bad = None
        for b, c in pairs:
            if join_distance(sys2, b, c, depth, cache) is None:
                bad = (b, c)
                break
        if bad is None:
            return added
        b, c = bad
        kb, kc = system.canonical(b), system.canonical(c)
        if orientation == "both":
            added.extend([(b, c), (c, b)])
        elif okey(kb) > okey(kc):
            added.append((b, c))
        else:
            added.append((c, b))
    raise ResourceLimitError(f"completion did not converge in {max_rounds} rounds")


# ---------------------------------------------------------------- isomorphism
def graphs_isomorphic(a: LabeledGraph, b: LabeledGraph) -> bool:
    if len(a) != len(b) or len(a.arcs) != len(b.arcs):
        return False
    return canonical_form(a)[0] == canonical_form(b)[0]
