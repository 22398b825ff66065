"""ZX-diagram data model, text/JSON formats, canonical form and compositions.

Text format (``⊗`` may also be written ``(x)``; parentheses are ignored)::

    Z[z1,2,1,pi] ⊗ X[x1,1,2,pi/2] ⊗ W[i1,z1] ⊗ W[z1,o1] ⊗ W[x1,z1] ⊗ ...

``Z/X[name, in, out, phase]`` are spiders, ``H[name]`` a Hadamard box,
``B[name]`` a diamond, ``Loop[name]`` a closed wire loop.  ``W[s1, s2]``
leaves ``s1`` through an output leg and enters ``s2`` through an input leg;
``s1.in`` / ``s2.out`` override that where a wire joins two legs of the same
role (cups, caps).  Boundary points are named ``i1..in`` and ``o1..om``.

Leg roles only determine the spider arities; the linear map of a diagram
does not depend on them.
"""
from __future__ import annotations

from dataclasses import dataclass
import hashlib
import json
import re
from typing import Iterable, Mapping

from ..canon import LabeledGraph, canonical_form
from .phase import Phase, PhaseError, ZERO, parse_phase

KINDS = ("Z", "X", "H", "B")
_NAME_PREFIX = {"Z": "z", "X": "x", "H": "h", "B": "d"}


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    kind: str
    phase: Phase = ZERO

    def color(self) -> str:
        return f"{self.kind}|{self.phase}" if self.kind in ("Z", "X") else self.kind


def nend(nid: str, role: str) -> tuple:
    return ("n", nid, role)


def bend(name: str) -> tuple:
    return ("b", name)


_BOUNDARY = re.compile(r"^[io]\d+$")


def _bindex(name: str) -> int:
    return int(name[1:])


class Diagram:
    """An open ZX-diagram.

    ``nodes``: id -> :class:`Node`; ``wires``: id -> (end, end) where an end
    is ``("n", node_id, "in"|"out")`` or ``("b", boundary_name)``;
    ``inputs``/``outputs``: ordered boundary names; ``loops``: ids of closed
    wire loops.
    """

    __slots__ = ("nodes", "wires", "inputs", "outputs", "loops", "_canon")

    def __init__(self, nodes: Mapping[str, Node] | None = None,
                 wires: Mapping[str, tuple] | None = None,
                 inputs: Iterable[str] = (), outputs: Iterable[str] = (),
                 loops: Iterable[str] = ()):
        self.nodes = dict(nodes or {})
        self.wires = dict(wires or {})
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.loops = tuple(loops)
        self._canon = None

    # --------------------------------------------------------------- queries
    @property
    def n_in(self) -> int:
        return len(self.inputs)

    @property
    def n_out(self) -> int:
        return len(self.outputs)

    def arities(self) -> dict[str, tuple[int, int]]:
        ar = {nid: [0, 0] for nid in self.nodes}
        for a, b in self.wires.values():
            for e in (a, b):
                if e[0] == "n":
                    ar[e[1]][0 if e[2] == "in" else 1] += 1
        return {k: (v[0], v[1]) for k, v in ar.items()}

    def incident(self) -> dict[tuple, list[str]]:
        """Port (node, role) or boundary end -> wire ids attached there."""
        inc: dict[tuple, list[str]] = {}
        for wid in sorted(self.wires):
            for e in self.wires[wid]:
                inc.setdefault(e, []).append(wid)
        return inc

    def elements(self) -> list[tuple]:
        return ([("n", k) for k in sorted(self.nodes)] + [("w", k) for k in sorted(self.wires)]
                + [("l", k) for k in self.loops])

    def phase_variables(self) -> set[str]:
        out: set[str] = set()
        for n in self.nodes.values():
            out |= n.phase.variables
        return out

    def bind(self, env: Mapping[str, Phase]) -> "Diagram":
        nodes = {k: Node(n.kind, n.phase.bind(env)) for k, n in self.nodes.items()}
        return Diagram(nodes, self.wires, self.inputs, self.outputs, self.loops)

    def validate(self) -> "Diagram":
        for nid, n in self.nodes.items():
            if n.kind not in KINDS:
                raise DiagramError(f"unknown node kind {n.kind!r}")
        for name in self.inputs + self.outputs:
            if not _BOUNDARY.match(name):
                raise DiagramError(f"bad boundary name {name!r}")
        if list(self.inputs) != [f"i{k}" for k in range(1, self.n_in + 1)]:
            raise DiagramError(f"inputs must be i1..i{self.n_in}, got {self.inputs}")
        if list(self.outputs) != [f"o{k}" for k in range(1, self.n_out + 1)]:
            raise DiagramError(f"outputs must be o1..o{self.n_out}, got {self.outputs}")
        deg = {b: 0 for b in self.inputs + self.outputs}
        for wid, (a, b) in self.wires.items():
            for e in (a, b):
                if e[0] == "n":
                    if e[1] not in self.nodes:
                        raise DiagramError(f"wire {wid} references unknown node {e[1]!r}")
                    if e[2] not in ("in", "out"):
                        raise DiagramError(f"bad leg role {e[2]!r}")
                elif e[0] == "b":
                    if e[1] not in deg:
                        raise DiagramError(f"wire {wid} references unknown boundary {e[1]!r}")
                    deg[e[1]] += 1
                else:
                    raise DiagramError(f"bad wire end {e!r}")
        for b, d in deg.items():
            if d != 1:
                raise DiagramError(f"boundary point {b} has degree {d}, expected 1")
        for nid, (i, o) in self.arities().items():
            k = self.nodes[nid].kind
            if k == "H" and i + o != 2:
                raise DiagramError(f"Hadamard {nid} has degree {i + o}, expected 2")
            if k == "B" and i + o:
                raise DiagramError(f"diamond {nid} must have no wires")
        return self

    # ------------------------------------------------------------- rendering
    def _wire_text(self, a: tuple, b: tuple) -> str:
        def name(e, default_role):
            if e[0] == "b":
                return e[1]
            return e[1] if e[2] == default_role else f"{e[1]}.{e[2]}"

        def natural(x, y):
            return (x[0] == "b" or x[2] == "out") and (y[0] == "b" or y[2] == "in")

        opts = []
        for x, y in ((a, b), (b, a)):
            bonus = 0 if natural(x, y) else 1
            opts.append((bonus, f"W[{name(x, 'out')},{name(y, 'in')}]"))
        # boundary-first orientation for input points, boundary-last for outputs
        def pref(x, y):
            r = 0
            if x[0] == "b" and x[1].startswith("o"):
                r += 1
            if y[0] == "b" and y[1].startswith("i"):
                r += 1
            return r
        opts = [(o[0], pref(*xy), o[1]) for o, xy in zip(opts, ((a, b), (b, a)))]
        return min(opts)[2]

    def render(self, sep: str = " ⊗ ") -> str:
        items = []
        ar = self.arities()
        for nid in sorted(self.nodes, key=_natural_key):
            n = self.nodes[nid]
            if n.kind in ("Z", "X"):
                i, o = ar[nid]
                items.append(f"{n.kind}[{nid},{i},{o},{n.phase}]")
            else:
                items.append(f"{n.kind}[{nid}]")
        items.extend(sorted(self._wire_text(a, b) for a, b in self.wires.values()))
        items.extend(f"Loop[{l}]" for l in sorted(self.loops, key=_natural_key))
        if not items:
            # keep the boundary (only possible when there are no wires: empty diagram)
            return "Empty[]"
        return sep.join(items)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Diagram({self.render()!r})"

    def to_json(self) -> dict:
        def enc(e):
            return {"boundary": e[1]} if e[0] == "b" else {"node": e[1], "role": e[2]}
        return {
            "nodes": [{"id": k, "kind": n.kind, "phase": str(n.phase)}
                      for k, n in sorted(self.nodes.items(), key=lambda kv: _natural_key(kv[0]))],
            "wires": [{"id": w, "ends": [enc(a), enc(b)]}
                      for w, (a, b) in sorted(self.wires.items(), key=lambda kv: _natural_key(kv[0]))],
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "loops": list(self.loops),
        }

    @classmethod
    def from_json(cls, data) -> "Diagram":
        if isinstance(data, str):
            data = json.loads(data)

        def dec(e):
            if "boundary" in e:
                return bend(e["boundary"])
            return nend(e["node"], e["role"])
        try:
            nodes = {n["id"]: Node(n["kind"], parse_phase(n.get("phase", "0"))) for n in data["nodes"]}
            wires = {w["id"]: (dec(w["ends"][0]), dec(w["ends"][1])) for w in data["wires"]}
            d = cls(nodes, wires, data["inputs"], data["outputs"], data.get("loops", []))
        except (KeyError, TypeError, IndexError) as exc:
            raise DiagramError(f"malformed diagram JSON: {exc}") from exc
        return d.validate()

    # ----------------------------------------------------------- canonical form
    def labeled_graph(self) -> LabeledGraph:
        lg = LabeledGraph()
        nidx = {}
        for nid in sorted(self.nodes):
            nidx[nid] = lg.add_vertex("N|" + self.nodes[nid].color())
        bidx = {}
        for k, b in enumerate(self.inputs):
            bidx[b] = lg.add_vertex(f"I|{k}")
        for k, b in enumerate(self.outputs):
            bidx[b] = lg.add_vertex(f"O|{k}")
        for wid in sorted(self.wires):
            w = lg.add_vertex("W")
            for e in self.wires[wid]:
                if e[0] == "n":
                    lg.add_edge(nidx[e[1]], w, e[2])
                else:
                    lg.add_edge(bidx[e[1]], w, "b")
        return lg

    def canonical(self) -> tuple["Diagram", str]:
        """Renamed copy with canonical node/wire ids, and its text key."""
        if self._canon is None:
            lg = self.labeled_graph()
            _, order = canonical_form(lg)
            node_ids = sorted(self.nodes)
            wire_ids = sorted(self.wires)
            nb = len(self.inputs) + len(self.outputs)
            rename: dict[str, str] = {}
            counters = {k: 0 for k in KINDS}
            wire_rename: dict[str, str] = {}
            for v in order:
                if v < len(node_ids):
                    nid = node_ids[v]
                    kind = self.nodes[nid].kind
                    counters[kind] += 1
                    rename[nid] = f"{_NAME_PREFIX[kind]}{counters[kind]}"
                elif v >= len(node_ids) + nb:
                    wid = wire_ids[v - len(node_ids) - nb]
                    wire_rename[wid] = f"w{len(wire_rename) + 1}"
            nodes = {rename[k]: n for k, n in self.nodes.items()}

            def re_end(e):
                return e if e[0] == "b" else ("n", rename[e[1]], e[2])
            wires = {wire_rename[w]: (re_end(a), re_end(b)) for w, (a, b) in self.wires.items()}
            loops = tuple(f"l{k}" for k in range(1, len(self.loops) + 1))
            cd = Diagram(nodes, wires, self.inputs, self.outputs, loops)
            key = cd.render()
            key = f"{key} :: {len(self.inputs)}->{len(self.outputs)}"
            cd._canon = (cd, key)
            self._canon = (cd, key)
        return self._canon

    def canonical_key(self) -> str:
        return self.canonical()[1]

    def canonical_hash(self) -> str:
        return hashlib.sha256(self.canonical_key().encode()).hexdigest()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Diagram) and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())


def _natural_key(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


# -------------------------------------------------------------------- parsing
_ITEM = re.compile(r"([A-Za-z]+)\s*\[([^\[\]]*)\]")
_NAME = re.compile(r"^[A-Za-z_][\w]*$")


def parse(text: str) -> Diagram:
    """Parse the operator-expression syntax into a validated diagram."""
    src = text.strip()
    leftover = _ITEM.sub("", src)
    leftover = leftover.replace("⊗", "").replace("(x)", "").replace("\\otimes", "")
    if re.sub(r"[\s()]", "", leftover):
        raise DiagramError(f"unexpected text {leftover.strip()!r} in diagram expression")
    nodes: dict[str, Node] = {}
    declared: dict[str, tuple[int, int]] = {}
    raw_wires: list[tuple[str, str]] = []
    loops: list[str] = []
    for head, body in _ITEM.findall(src):
        args = [a.strip() for a in body.split(",")] if body.strip() else []
        if head in ("Z", "X"):
            if len(args) != 4:
                raise DiagramError(f"{head}[...] needs name, in, out, phase: {body!r}")
            name, i, o, p = args
            try:
                declared[name] = (int(i), int(o))
            except ValueError as exc:
                raise DiagramError(f"bad arity in {head}[{body}]") from exc
            try:
                phase = parse_phase(p)
            except PhaseError as exc:
                raise DiagramError(str(exc)) from exc
            _add_node(nodes, name, Node(head, phase))
        elif head in ("H", "B"):
            if len(args) != 1:
                raise DiagramError(f"{head}[...] takes one name: {body!r}")
            _add_node(nodes, args[0], Node(head))
        elif head == "W":
            if len(args) != 2:
                raise DiagramError(f"W[...] takes two endpoints: {body!r}")
            raw_wires.append((args[0], args[1]))
        elif head == "Loop":
            loops.append(args[0] if args else f"l{len(loops) + 1}")
        elif head == "Empty" and not args:
            pass
        else:
            raise DiagramError(f"unknown operator {head!r}")
    ins: set[str] = set()
    outs: set[str] = set()

    def endpoint(tok: str, default_role: str) -> tuple:
        base, _, role = tok.partition(".")
        if _BOUNDARY.match(base) and base not in nodes:
            if role:
                raise DiagramError(f"boundary point {base} takes no leg role")
            (ins if base[0] == "i" else outs).add(base)
            return bend(base)
        if base not in nodes:
            raise DiagramError(f"unknown wire endpoint {base!r}")
        role = role or default_role
        if role not in ("in", "out"):
            raise DiagramError(f"bad leg role {role!r}")
        return nend(base, role)

    wires = {f"w{k + 1}": (endpoint(a, "out"), endpoint(b, "in")) for k, (a, b) in enumerate(raw_wires)}
    d = Diagram(nodes, wires, sorted(ins, key=_bindex), sorted(outs, key=_bindex), loops)
    actual = d.arities()
    for name, decl in declared.items():
        if actual[name] != decl:
            raise DiagramError(f"spider {name} declared {decl[0]}->{decl[1]} "
                               f"but has {actual[name][0]}->{actual[name][1]} wires")
    return d.validate()


def _add_node(nodes: dict, name: str, node: Node) -> None:
    if not _NAME.match(name) or _BOUNDARY.match(name):
        raise DiagramError(f"bad node name {name!r}")
    if name in nodes:
        raise DiagramError(f"duplicate node name {name!r}")
    nodes[name] = node


# ------------------------------------------------------------- constructions
def empty() -> Diagram:
    return Diagram()


def identity(n: int = 1) -> Diagram:
    wires = {f"w{k}": (bend(f"i{k}"), bend(f"o{k}")) for k in range(1, n + 1)}
    return Diagram({}, wires, [f"i{k}" for k in range(1, n + 1)], [f"o{k}" for k in range(1, n + 1)])


def spider(kind: str, n: int, m: int, phase=ZERO) -> Diagram:
    """A single spider (or Hadamard box) with every leg on the boundary."""
    p = Phase.coerce(phase)
    nodes = {"s": Node(kind, p if kind in ("Z", "X") else ZERO)}
    wires = {}
    for k in range(1, n + 1):
        wires[f"wi{k}"] = (bend(f"i{k}"), nend("s", "in"))
    for k in range(1, m + 1):
        wires[f"wo{k}"] = (nend("s", "out"), bend(f"o{k}"))
    return Diagram(nodes, wires, [f"i{k}" for k in range(1, n + 1)], [f"o{k}" for k in range(1, m + 1)])


def fresh_id(used: Iterable[str], prefix: str, start: int = 0) -> tuple[str, int]:
    used = set(used)
    k = start
    while f"{prefix}{k}" in used:
        k += 1
    return f"{prefix}{k}", k + 1


def _relabel(d: Diagram, tag: str, bmap: Mapping[str, tuple]) -> tuple[dict, list, list]:
    """Copy of d's nodes/wires with ids tagged and boundary ends remapped."""
    nodes = {f"{k}_{tag}": n for k, n in d.nodes.items()}

    def re_end(e):
        if e[0] == "b":
            return bmap[e[1]]
        return ("n", f"{e[1]}_{tag}", e[2])
    wires = [(re_end(a), re_end(b)) for _, (a, b) in sorted(d.wires.items())]
    loops = [f"{l}_{tag}" for l in d.loops]
    return nodes, wires, loops


def stack(d1: Diagram, d2: Diagram) -> Diagram:
    """Monoidal product: d1 above d2, boundaries concatenated."""
    n1, m1 = d1.n_in, d1.n_out
    b1 = {b: bend(b) for b in d1.inputs + d1.outputs}
    b2 = {b: bend(f"{b[0]}{_bindex(b) + (n1 if b[0] == 'i' else m1)}") for b in d2.inputs + d2.outputs}
    na, wa, la = _relabel(d1, "1", b1)
    nb, wb, lb = _relabel(d2, "2", b2)
    wires = {f"w{k + 1}": w for k, w in enumerate(wa + wb)}
    ins = [f"i{k}" for k in range(1, n1 + d2.n_in + 1)]
    outs = [f"o{k}" for k in range(1, m1 + d2.n_out + 1)]
    return Diagram({**na, **nb}, wires, ins, outs, la + lb).validate()


def splice(wires: list[tuple], joints: set) -> tuple[list[tuple], int]:
    """Remove degree-2 joint ends, merging the wires through them.

    Returns the merged wires and the number of closed cycles formed purely
    out of joints.
    """
    at: dict = {}
    for idx, (a, b) in enumerate(wires):
        for e in (a, b):
            if e in joints:
                at.setdefault(e, []).append(idx)
    for j, ws in at.items():
        if len(ws) != 2:
            raise DiagramError(f"joint {j} has degree {len(ws)}")
    used = [False] * len(wires)
    out = []

    def walk(idx: int, start: tuple) -> tuple:
        cur_idx, cur_from = idx, start
        while True:
            used[cur_idx] = True
            a, b = wires[cur_idx]
            other = b if a == cur_from else a
            if other not in joints:
                return other
            ws = at[other]
            nxt = ws[1] if ws[0] == cur_idx else ws[0]
            if ws[0] == ws[1]:
                raise DiagramError("degenerate joint")
            cur_idx, cur_from = nxt, other

    for idx, (a, b) in enumerate(wires):
        if used[idx]:
            continue
        if a not in joints:
            out.append((a, walk(idx, a)))
        elif b not in joints:
            out.append((walk(idx, b), b))
    loops = 0
    for idx in range(len(wires)):
        if not used[idx]:
            loops += 1
            j = wires[idx][0]
            cur_idx, cur_from = idx, j
            while not used[cur_idx]:
                used[cur_idx] = True
                a, b = wires[cur_idx]
                other = b if a == cur_from else a
                ws = at[other]
                nxt = ws[1] if ws[0] == cur_idx else ws[0]
                cur_idx, cur_from = nxt, other
    return out, loops


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """Sequential composition: d1's outputs plugged into d2's inputs."""
    if d1.n_out != d2.n_in:
        raise DiagramError(f"cannot compose: {d1.n_out} outputs vs {d2.n_in} inputs")
    b1 = {b: bend(b) for b in d1.inputs}
    b1.update({b: ("j", _bindex(b)) for b in d1.outputs})
    b2 = {b: ("j", _bindex(b)) for b in d2.inputs}
    b2.update({b: bend(b) for b in d2.outputs})
    na, wa, la = _relabel(d1, "1", b1)
    nb, wb, lb = _relabel(d2, "2", b2)
    joints = {("j", k) for k in range(1, d1.n_out + 1)}
    merged, cycles = splice(wa + wb, joints)
    wires = {f"w{k + 1}": w for k, w in enumerate(merged)}
    loops = la + lb + [f"c{k}" for k in range(1, cycles + 1)]
    return Diagram({**na, **nb}, wires, d1.inputs, d2.outputs, loops).validate()


def color_invert(d: Diagram) -> Diagram:
    swap = {"Z": "X", "X": "Z"}
    nodes = {k: Node(swap.get(n.kind, n.kind), n.phase) for k, n in d.nodes.items()}
    return Diagram(nodes, d.wires, d.inputs, d.outputs, d.loops)

