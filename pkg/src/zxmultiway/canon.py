"""Canonical labeling of small vertex-colored, arc-labeled graphs.

Every structure the package needs to compare up to renaming (ZX diagrams,
hypergraph states, causal graphs, multiway graphs) is lowered to a
:class:`LabeledGraph` and run through :func:`canonical_form`.  The algorithm
is plain individualization-refinement: colour refinement to a stable
partition, then branching on the first non-singleton cell, keeping the
lexicographically smallest leaf certificate.  Two pruning rules keep the
search small on the graphs we meet in practice:

* twin vertices (swapping them is an automorphism) are branched on once;
* two leaves with the same certificate give an automorphism, and siblings in
  one orbit of the automorphisms fixing the current path are branched on once;
* a branch whose partition invariant already exceeds the best path is cut.

Exactness is preferred over speed; graphs of a few hundred vertices are fine.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence


@dataclass
class LabeledGraph:
    """Directed multigraph with string vertex colours and string arc labels.

    Undirected edges are represented by adding both arcs.
    """

    colors: list[str] = field(default_factory=list)
    arcs: list[tuple[int, int, str]] = field(default_factory=list)

    def add_vertex(self, color: str) -> int:
        self.colors.append(color)
        return len(self.colors) - 1

    def add_arc(self, u: int, v: int, label: str = "") -> None:
        self.arcs.append((u, v, label))

    def add_edge(self, u: int, v: int, label: str = "") -> None:
        self.arcs.append((u, v, label))
        self.arcs.append((v, u, label))

    def __len__(self) -> int:
        return len(self.colors)


class CanonSizeError(RuntimeError):
    pass


def _adjacency(n: int, arcs: Iterable[tuple[int, int, str]]):
    out_l: list[dict[int, list[str]]] = [defaultdict(list) for _ in range(n)]
    in_l: list[dict[int, list[str]]] = [defaultdict(list) for _ in range(n)]
    for u, v, lab in arcs:
        out_l[u][v].append(lab)
        in_l[v][u].append(lab)
    out_a = [{v: tuple(sorted(ls)) for v, ls in d.items()} for d in out_l]
    in_a = [{u: tuple(sorted(ls)) for u, ls in d.items()} for d in in_l]
    return out_a, in_a


def _rank(keys: Sequence[Hashable]) -> list[int]:
    uniq = sorted(set(keys))
    index = {k: i for i, k in enumerate(uniq)}
    return [index[k] for k in keys]


def _refine(colors: list[int], out_a, in_a) -> list[int]:
    n = len(colors)
    ncol = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            o = tuple(sorted((lab, colors[w]) for w, lab in out_a[v].items()))
            i = tuple(sorted((lab, colors[w]) for w, lab in in_a[v].items()))
            sigs.append((colors[v], o, i))
        new = _rank(sigs)
        k = len(set(new))
        if k == ncol:
            return new
        colors, ncol = new, k


def _twins(u: int, v: int, out_a, in_a) -> bool:
    ou, ov = out_a[u], out_a[v]
    iu, iv = in_a[u], in_a[v]
    if ou.get(u) != ov.get(v) or ou.get(v) != ov.get(u):
        return False
    if iu.get(v) != iv.get(u):
        return False
    strip = (u, v)
    if {w: l for w, l in ou.items() if w not in strip} != {w: l for w, l in ov.items() if w not in strip}:
        return False
    return {w: l for w, l in iu.items() if w not in strip} == {w: l for w, l in iv.items() if w not in strip}


def canonical_form(graph: LabeledGraph, max_leaves: int = 200_000):
    """Return ``(certificate, order)``.

    ``certificate`` is a hashable value equal for two graphs iff they are
    isomorphic (colour- and label-preserving).  ``order[k]`` is the original
    vertex placed at canonical position ``k``.
    """
    n = len(graph.colors)
    out_a, in_a = _adjacency(n, graph.arcs)
    base = _rank(graph.colors)
    arcs = list(graph.arcs)
    best: dict = {"key": None, "order": None}
    first: dict = {"cert": None, "order": None}
    autos: list[list[int]] = []
    leaves = [0]

    def invariant(colors: list[int]) -> tuple:
        counts = defaultdict(int)
        for c in colors:
            counts[c] += 1
        return tuple(sorted(counts.items()))

    def leaf_cert(colors: list[int]):
        order = sorted(range(n), key=lambda v: colors[v])
        pos = {v: k for k, v in enumerate(order)}
        cert = (tuple(graph.colors[v] for v in order),
                tuple(sorted((pos[u], pos[v], lab) for u, v, lab in arcs)))
        return cert, order

    def record_automorphism(cert, order, ref) -> None:
        if ref["cert"] is not None and cert == ref["cert"] and order != ref["order"]:
            gamma = [0] * n
            for a, b in zip(ref["order"], order):
                gamma[a] = b
            autos.append(gamma)

    class Orbits:
        """Union-find over the automorphisms found so far that fix ``fixed``."""

        def __init__(self, fixed: tuple):
            self.fixed = fixed
            self.parent = list(range(n))
            self.seen = 0

        def root(self, x: int) -> int:
            parent = self.parent
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def same(self, v: int, done: list[int]) -> bool:
            for g in autos[self.seen:]:
                if all(g[x] == x for x in self.fixed):
                    for x in range(n):
                        a, b = self.root(x), self.root(g[x])
                        if a != b:
                            self.parent[a] = b
            self.seen = len(autos)
            rv = self.root(v)
            return any(self.root(r) == rv for r in done)

    def search(colors: list[int], path: tuple, fixed: tuple = ()) -> None:
        bk = best["key"]
        if bk is not None and path > bk[0][:len(path)]:
            return
        cells = defaultdict(list)
        for v, c in enumerate(colors):
            cells[c].append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            leaves[0] += 1
            if leaves[0] > max_leaves:
                raise CanonSizeError("canonical labeling search exceeded leaf cap")
            cert, order = leaf_cert(colors)
            if first["cert"] is None:
                first["cert"], first["order"] = cert, order
            else:
                record_automorphism(cert, order, first)
            if best["key"] is not None:
                record_automorphism(cert, order, {"cert": best["key"][1], "order": best["order"]})
            key = (path, cert)
            if best["key"] is None or key < best["key"]:
                best["key"] = key
                best["order"] = order
            return
        reps: list[int] = []
        for v in target:
            if any(_twins(r, v, out_a, in_a) for r in reps):
                continue
            reps.append(v)
        cell_set = set(target)
        done: list[int] = []
        orbits = Orbits(fixed)
        for v in reps:
            if orbits.same(v, done):
                continue
            done.append(v)
            ind = [2 * c + (1 if (x in cell_set and x != v) else 0) for x, c in enumerate(colors)]
            refined = _refine(_rank(ind), out_a, in_a)
            search(refined, path + (invariant(refined),), fixed + (v,))

    start = _refine(base, out_a, in_a)
    search(start, (invariant(start),))
    return best["key"][1], best["order"]


def certificate(graph: LabeledGraph) -> tuple:
    return canonical_form(graph)[0]


def isomorphism(g1: LabeledGraph, g2: LabeledGraph) -> dict[int, int] | None:
    """Colour/label preserving isomorphism ``g1 -> g2`` or ``None``."""
    if len(g1) != len(g2) or len(g1.arcs) != len(g2.arcs):
        return None
    if sorted(g1.colors) != sorted(g2.colors):
        return None
    c1, o1 = canonical_form(g1)
    c2, o2 = canonical_form(g2)
    if c1 != c2:
        return None
    return {o1[k]: o2[k] for k in range(len(o1))}
