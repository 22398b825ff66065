"""Subdiagram matching and rewriting.

A rule side ``L`` is embedded in a host diagram ``G`` injectively on nodes
(same kind, same leg counts per role, phases matched exactly with pattern
variables solved).  Every leg of a matched node must be accounted for by a
wire of ``L``: wires between two pattern nodes consume a whole host wire,
wires from a pattern node to an ``L`` boundary point consume only the host
wire's end at that node.  The far end of such a cut wire is the *outer end*
of the boundary point.  A bare ``L`` wire between two boundary points claims
an untouched host wire.

Rewriting deletes the matched part, places a joint at every ``L`` boundary
point, inserts ``R`` with its boundary plugged into the joints, and splices
the joints away.
"""
from __future__ import annotations

from dataclasses import dataclass
import itertools
from typing import Iterator

from .diagram import Diagram, Node, splice
from .phase import Phase


class PatternError(ValueError):
    pass


def _polarity(end: tuple) -> int:
    if end[0] == "b":
        return 1 if end[1].startswith("i") else -1
    return 1 if end[2] == "out" else -1


def phase_matchable(p: Phase) -> bool:
    return len(p.terms) == 0 or (len(p.terms) == 1 and abs(p.terms[0][1]) == 1)


def _solve(p: Phase, target: Phase, env: dict) -> dict | None:
    if p.is_constant:
        return env if p == target else None
    (v, k), = p.terms
    val = target - Phase(p.const)
    if k == -1:
        val = -val
    if v in env:
        return env if env[v] == val else None
    out = dict(env)
    out[v] = val
    return out


class Pattern:
    """A rule side compiled for matching."""

    def __init__(self, d: Diagram):
        self.d = d
        for n in d.nodes.values():
            if n.kind in ("Z", "X") and not phase_matchable(n.phase):
                raise PatternError(f"phase {n.phase} cannot be matched")
        self.arity = d.arities()
        self.spiders = [k for k in sorted(d.nodes) if d.nodes[k].kind != "B"]
        self.diamonds = [k for k in sorted(d.nodes) if d.nodes[k].kind == "B"]
        self.internal: list[tuple] = []   # (p1, r1, p2, r2)
        self.cut: dict[tuple, list[str]] = {}   # (p, r) -> boundary names, in order
        self.bare: list[tuple[str, str]] = []
        for wid in sorted(d.wires):
            a, b = d.wires[wid]
            if a[0] == "n" and b[0] == "n":
                self.internal.append((a[1], a[2], b[1], b[2]))
            elif a[0] == "n":
                self.cut.setdefault((a[1], a[2]), []).append(b[1])
            elif b[0] == "n":
                self.cut.setdefault((b[1], b[2]), []).append(a[1])
            else:
                self.bare.append((a[1], b[1]))
        self.order = self._order()

    def _order(self) -> list[str]:
        adj: dict[str, set[str]] = {k: set() for k in self.spiders}
        for p1, _, p2, _ in self.internal:
            adj[p1].add(p2)
            adj[p2].add(p1)
        order: list[str] = []
        rest = list(self.spiders)
        while rest:
            start = max(rest, key=lambda k: (sum(self.arity[k]), -rest.index(k)))
            queue = [start]
            seen = {start}
            while queue:
                x = queue.pop(0)
                order.append(x)
                rest.remove(x)
                for y in sorted(adj[x]):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return order


@dataclass
class Match:
    nodes: dict            # pattern node -> host node
    env: dict              # phase variable -> Phase
    outer: dict            # L boundary -> ("port", end) | ("joint", other boundary)
    wires: frozenset       # host wires removed
    loops: tuple           # host loops removed
    key: tuple

    def consumed(self) -> tuple:
        return (tuple(("n", g) for g in sorted(self.nodes.values()))
                + tuple(("w", w) for w in sorted(self.wires))
                + tuple(("l", l) for l in self.loops))


def find_matches(pat: Pattern, host: Diagram) -> list[Match]:
    L = pat.d
    if len(L.loops) > len(host.loops):
        return []
    h_ar = host.arities()
    by_sig: dict[tuple, list[str]] = {}
    for g in sorted(host.nodes):
        n = host.nodes[g]
        by_sig.setdefault((n.kind, h_ar[g]), []).append(g)
    host_diamonds = by_sig.get(("B", (0, 0)), [])
    if len(host_diamonds) < len(pat.diamonds):
        return []
    occ: dict[tuple, list[tuple[str, int]]] = {}
    pair_count: dict[tuple, int] = {}
    for wid in sorted(host.wires):
        a, b = host.wires[wid]
        for side, e in enumerate((a, b)):
            if e[0] == "n":
                occ.setdefault((e[1], e[2]), []).append((wid, side))
        if a[0] == "n" and b[0] == "n":
            k = tuple(sorted([(a[1], a[2]), (b[1], b[2])]))
            pair_count[k] = pair_count.get(k, 0) + 1
    need: dict[tuple, int] = {}
    for p1, r1, p2, r2 in pat.internal:
        k = tuple(sorted([(p1, r1), (p2, r2)]))
        need[k] = need.get(k, 0) + 1

    results: list[Match] = []
    seen: set = set()

    def compatible(m: dict) -> bool:
        for (x, y), c in need.items():
            if x[0] in m and y[0] in m:
                hk = tuple(sorted([(m[x[0]], x[1]), (m[y[0]], y[1])]))
                if pair_count.get(hk, 0) < c:
                    return False
        return True

    def assign_nodes(i: int, m: dict, env: dict) -> Iterator[tuple[dict, dict]]:
        if i == len(pat.order):
            yield m, env
            return
        p = pat.order[i]
        pn = L.nodes[p]
        used = set(m.values())
        for g in by_sig.get((pn.kind, pat.arity[p]), []):
            if g in used:
                continue
            env2 = env
            if pn.kind in ("Z", "X"):
                env2 = _solve(pn.phase, host.nodes[g].phase, env)
                if env2 is None:
                    continue
            m[p] = g
            if compatible(m):
                yield from assign_nodes(i + 1, m, env2)
            del m[p]

    for m, env in assign_nodes(0, {}, {}):
        m = dict(m)
        # diamonds: the lowest-id free ones (all choices give the same result)
        free_d = [g for g in host_diamonds if g not in m.values()]
        if len(free_d) < len(pat.diamonds):
            continue
        for p, g in zip(pat.diamonds, free_d):
            m[p] = g
        used_occ: set = set()
        removed: set = set()
        ok = True
        for p1, r1, p2, r2 in pat.internal:
            want = sorted([(m[p1], r1), (m[p2], r2)])
            found = None
            for wid, side in occ.get(want[0], []):
                if (wid, side) in used_occ or (wid, 1 - side) in used_occ:
                    continue
                a, b = host.wires[wid]
                other = b if side == 0 else a
                if other[0] == "n" and (other[1], other[2]) == want[1]:
                    found = wid
                    break
            if found is None:
                ok = False
                break
            used_occ.add((found, 0))
            used_occ.add((found, 1))
            removed.add(found)
        if not ok:
            continue
        ports = []
        for (p, r), names in sorted(pat.cut.items()):
            rem = [o for o in occ.get((m[p], r), []) if o not in used_occ]
            if len(rem) != len(names):
                ok = False
                break
            ports.append((names, rem))
        if not ok:
            continue
        perms = [list(itertools.permutations(rem)) for _, rem in ports]
        for choice in itertools.product(*perms):
            at: dict[tuple, str] = {}
            for (names, _), chosen in zip(ports, choice):
                for name, o in zip(names, chosen):
                    at[o] = name
            outer: dict[str, tuple] = {}
            wires_cut = set()
            for (wid, side), name in at.items():
                wires_cut.add(wid)
                partner = at.get((wid, 1 - side))
                if partner is not None:
                    outer[name] = ("joint", partner)
                else:
                    outer[name] = ("port", host.wires[wid][1 - side])
            base_removed = removed | wires_cut
            for bare_choice in _bare_choices(pat, host, base_removed, set(m.values())):
                outer2 = dict(outer)
                rem2 = set(base_removed)
                for (b1, b2), (wid, e1, e2) in zip(pat.bare, bare_choice):
                    outer2[b1] = ("port", e1)
                    outer2[b2] = ("port", e2)
                    rem2.add(wid)
                loops = tuple(host.loops[:len(L.loops)])
                key = (tuple(sorted(m.items())),
                       tuple(sorted((b, v) for b, v in outer2.items())), len(loops))
                if key in seen:
                    continue
                seen.add(key)
                results.append(Match(dict(m), dict(env), outer2, frozenset(rem2), loops, key))
    return results


def _bare_choices(pat: Pattern, host: Diagram, removed: set, matched: set):
    if not pat.bare:
        yield ()
        return
    cands = []
    for wid in sorted(host.wires):
        if wid in removed:
            continue
        a, b = host.wires[wid]
        if any(e[0] == "n" and e[1] in matched for e in (a, b)):
            continue
        cands.append(wid)

    def orient(b1: str, b2: str, wid: str):
        a, b = host.wires[wid]
        need1 = 1 if b1.startswith("i") else -1
        need2 = 1 if b2.startswith("i") else -1
        out = []
        for e1, e2 in ((a, b), (b, a)):
            if _polarity(a) == _polarity(b) or (_polarity(e1) == need1 and _polarity(e2) == need2):
                out.append((wid, e1, e2))
        if out and out[0][1] == out[-1][1] and len(out) == 2:
            out = out[:1]
        return out

    def rec(i: int, used: set, acc: list):
        if i == len(pat.bare):
            yield tuple(acc)
            return
        b1, b2 = pat.bare[i]
        for wid in cands:
            if wid in used:
                continue
            for o in orient(b1, b2, wid):
                used.add(wid)
                acc.append(o)
                yield from rec(i + 1, used, acc)
                acc.pop()
                used.discard(wid)

    yield from rec(0, set(), [])


def _fresh(used: set, prefix: str):
    k = 0
    while True:
        k += 1
        name = f"{prefix}{k}"
        if name not in used:
            used.add(name)
            yield name


def apply_match(host: Diagram, pat: Pattern, rhs: Diagram, match: Match) -> tuple[Diagram, dict]:
    """Rewrite ``host`` at ``match`` with ``rhs``.

    Returns the new diagram and the carry map (new element key -> old key)
    for every element that survives unchanged.
    """
    matched_nodes = set(match.nodes.values())
    nodes = {k: n for k, n in host.nodes.items() if k not in matched_nodes}
    kept_wires = {w: e for w, e in host.wires.items() if w not in match.wires}
    kept_loops = [l for l in host.loops if l not in match.loops]
    node_names = _fresh(set(host.nodes), "n")
    rmap = {}
    for k in sorted(rhs.nodes):
        nid = next(node_names)
        n = rhs.nodes[k]
        rmap[k] = nid
        nodes[nid] = Node(n.kind, n.phase.bind(match.env)) if n.kind in ("Z", "X") else n
    links = []
    done = set()
    for b, (tag, v) in sorted(match.outer.items()):
        if tag == "port":
            links.append((("j", b), v))
        elif (v, b) not in done:
            done.add((b, v))
            links.append((("j", b), ("j", v)))

    def re_end(e):
        return ("j", e[1]) if e[0] == "b" else ("n", rmap[e[1]], e[2])
    links.extend((re_end(a), re_end(b)) for _, (a, b) in sorted(rhs.wires.items()))
    joints = {("j", b) for b in match.outer}
    merged, cycles = splice(links, joints)
    wire_names = _fresh(set(host.wires), "w")
    wires = dict(kept_wires)
    for w in merged:
        wires[next(wire_names)] = w
    loop_names = _fresh(set(host.loops), "l")
    loops = kept_loops + [next(loop_names) for _ in range(len(rhs.loops) + cycles)]
    new = Diagram(nodes, wires, host.inputs, host.outputs, loops)
    carry = {("n", k): ("n", k) for k in host.nodes if k not in matched_nodes}
    carry.update({("w", w): ("w", w) for w in kept_wires})
    carry.update({("l", l): ("l", l) for l in kept_loops})
    return new, carry
