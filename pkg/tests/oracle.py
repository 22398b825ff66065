"""Brute-force reference implementations used as test oracles."""
import cmath
import itertools
import math

import numpy as np

from zxmultiway.zx.diagram import Diagram


def _node_value(kind: str, alpha: float, bits: list[int]) -> complex:
    k = len(bits)
    if kind == "Z":
        if all(b == 0 for b in bits):
            return 1 + (cmath.exp(1j * alpha) if k == 0 else 0)
        if all(b == 1 for b in bits):
            return cmath.exp(1j * alpha)
        return 0
    if kind == "X":
        sign = -1 if sum(bits) % 2 else 1
        return (1 + cmath.exp(1j * alpha) * sign) / math.sqrt(2) ** k
    if kind == "H":
        return (-1 if bits[0] and bits[1] else 1) / math.sqrt(2)
    return math.sqrt(2)


def naive_matrix(d: Diagram) -> np.ndarray:
    """Sum over all bit assignments of the wires (exponential, tiny diagrams only)."""
    wires = sorted(d.wires)
    legs: dict[str, list[str]] = {n: [] for n in d.nodes}
    bpoint: dict[str, str] = {}
    for w in wires:
        for e in d.wires[w]:
            if e[0] == "n":
                legs[e[1]].append(w)
            else:
                bpoint[e[1]] = w
    n_in, n_out = len(d.inputs), len(d.outputs)
    m = np.zeros((2 ** n_out, 2 ** n_in), dtype=complex)
    for assign in itertools.product((0, 1), repeat=len(wires)):
        val = dict(zip(wires, assign))
        amp = 1 + 0j
        for nid, node in d.nodes.items():
            amp *= _node_value(node.kind, node.phase.radians() if node.kind in "ZX" else 0.0,
                               [val[w] for w in legs[nid]])
            if amp == 0:
                break
        if amp == 0:
            continue
        row = 0
        for o in d.outputs:
            row = 2 * row + val[bpoint[o]]
        col = 0
        for i in d.inputs:
            col = 2 * col + val[bpoint[i]]
        m[row, col] += amp
    return m * 2 ** len(d.loops)


def brute_paths(succ: dict, roots: list, length: int) -> dict:
    """Number of distinct length-``length`` directed paths from ``roots`` ending at each vertex."""
    counts: dict = {}

    def walk(v, k):
        if k == length:
            counts[v] = counts.get(v, 0) + 1
            return
        for w in succ.get(v, []):
            walk(w, k + 1)
    for r in roots:
        walk(r, 0)
    return counts


def _solve_phase(p, target, env):
    if p.is_constant:
        return env if p == target else None
    (v, k), = p.terms
    val = (target - type(p)(p.const)) if k == 1 else -(target - type(p)(p.const))
    if env.get(v, val) != val:
        return None
    return {**env, v: val}


def naive_node_maps(pattern: Diagram, host: Diagram) -> set:
    """Injective node maps of a rule side into a host, by exhaustive search.

    Kinds, per-role leg counts and phases must agree, and every wire between
    two pattern nodes needs a distinct host wire between the images with the
    same leg roles.  Diamonds are excluded (they match any free diamond).
    """
    pn = [k for k in sorted(pattern.nodes) if pattern.nodes[k].kind != "B"]
    hn = sorted(host.nodes)
    p_ar, h_ar = pattern.arities(), host.arities()

    def ends(wires, f=lambda x: x):
        c: dict = {}
        for a, b in wires.values():
            if a[0] == "n" and b[0] == "n":
                key = tuple(sorted([(f(a[1]), a[2]), (f(b[1]), b[2])]))
                c[key] = c.get(key, 0) + 1
        return c
    h_ends = ends(host.wires)
    out = set()
    for image in itertools.permutations(hn, len(pn)):
        f = dict(zip(pn, image))
        env: dict | None = {}
        for p, g in f.items():
            a, b = pattern.nodes[p], host.nodes[g]
            if a.kind != b.kind or p_ar[p] != h_ar[g]:
                env = None
                break
            if a.kind in "ZX":
                env = _solve_phase(a.phase, b.phase, env)
                if env is None:
                    break
        if env is None:
            continue
        need = ends({k: v for k, v in pattern.wires.items()
                     if v[0][0] == "n" and v[1][0] == "n"}, lambda x: f[x])
        if all(h_ends.get(k, 0) >= c for k, c in need.items()):
            out.add(frozenset(f.items()))
    return out
