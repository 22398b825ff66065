"""Shared diagram corpus and random generators for the test-suite."""
from fractions import Fraction
import random

from zxmultiway.zx.diagram import Diagram, Node, bend, nend, parse
from zxmultiway.zx.phase import Phase

FIG13 = ("Z[z1,2,1,pi] ⊗ (X[x1,1,2,pi/2] ⊗ (W[i1,z1] ⊗ (W[z1,o1] ⊗ (W[x1,z1] ⊗ "
         "(W[i2,x1] ⊗ W[x1,o2])))))")
TWO_SPIDER = "X[x,0,1,0] ⊗ Z[z,1,2,0] ⊗ W[x,z] ⊗ W[z,o1] ⊗ W[z,o2]"

FIGURES = [
    FIG13,
    "Z[z1,0,1,pi/2] ⊗ W[z1,o1]",
    "X[x1,0,1,pi] ⊗ W[x1,o1]",
    "Z[z1,1,1,pi/4] ⊗ (W[i1,z1] ⊗ W[z1,o1])",
    "X[x1,1,1,3pi/2] ⊗ (W[i1,x1] ⊗ W[x1,o1])",
    "Z[z1,1,2,pi] ⊗ (W[i1,z1] ⊗ (W[z1,o1] ⊗ W[z1,o2]))",
    "X[x1,1,2,pi/3] ⊗ (W[i1,x1] ⊗ (W[x1,o1] ⊗ W[x1,o2]))",
    "Z[z1,2,1,0] ⊗ (W[i1,z1] ⊗ (W[i2,z1] ⊗ W[z1,o1]))",
    "X[x1,2,1,pi/2] ⊗ (W[i1,x1] ⊗ (W[i2,x1] ⊗ W[x1,o1]))",
    "Z[z1,1,0,pi] ⊗ W[i1,z1]",
    "X[x1,1,0,0] ⊗ W[i1,x1]",
    "H[h1] ⊗ (W[i1,h1] ⊗ W[h1,o1])",
    "B[d1]",
    "W[i1,o1]",
    "W[i1,i2]",
    "W[o1,o2]",
    "Loop[l1]",
    "Empty[]",
    TWO_SPIDER,
    "Z[a,2,2,pi/2] ⊗ X[b,2,2,pi] ⊗ W[i1,a] ⊗ W[i2,a] ⊗ W[a,b] ⊗ W[a,b] ⊗ W[b,o1] ⊗ W[b,o2]",
    "Z[a,1,1,0] ⊗ W[i1,a] ⊗ W[a,h] ⊗ H[h] ⊗ W[h,o1] ⊗ B[d] ⊗ B[e]",
    "Z[a,1,2,0] ⊗ W[a,o1] ⊗ W[a,a] ⊗ X[b,0,0,pi/2]",
]


def figure_diagrams() -> list[Diagram]:
    return [parse(t) for t in FIGURES]


def random_phase(rng: random.Random, exact: bool = False) -> Phase:
    den = 2 if exact else rng.choice([1, 2, 3, 4, 6])
    return Phase(Fraction(rng.randrange(2 * den), den))


def random_diagram(rng: random.Random, max_boundary: int = 3, max_nodes: int = 3,
                   exact: bool = False) -> Diagram:
    """Random valid diagram: spiders/H boxes with random arities, legs paired at random."""
    while True:
        nodes = {}
        outs, ins = [], []
        for k in range(rng.randint(0, max_nodes)):
            kind = rng.choice("ZZXXH")
            nid = f"n{k}"
            if kind == "H":
                nodes[nid] = Node("H")
                outs.append(nend(nid, "out"))
                ins.append(nend(nid, "in"))
                continue
            nodes[nid] = Node(kind, random_phase(rng, exact))
            outs += [nend(nid, "out")] * rng.randint(0, 2)
            ins += [nend(nid, "in")] * rng.randint(0, 2)
        if rng.random() < 0.2:
            nodes["d"] = Node("B")
        diff = len(outs) - len(ins)
        choices = [(n, n + diff) for n in range(max_boundary + 1) if 0 <= n + diff <= max_boundary]
        if not choices:
            continue
        n_in, n_out = rng.choice(choices)
        outs += [bend(f"i{j}") for j in range(1, n_in + 1)]
        ins += [bend(f"o{j}") for j in range(1, n_out + 1)]
        rng.shuffle(ins)
        wires = {f"w{k}": (a, b) for k, (a, b) in enumerate(zip(outs, ins))}
        loops = ["l0"] if rng.random() < 0.1 else []
        return Diagram(nodes, wires, [f"i{j}" for j in range(1, n_in + 1)],
                       [f"o{j}" for j in range(1, n_out + 1)], loops).validate()


def relabel(d: Diagram, rng: random.Random) -> Diagram:
    """Same diagram with shuffled node names, wire names and wire order."""
    names = list(d.nodes)
    fresh = [f"r{k}" for k in range(len(names))]
    rng.shuffle(fresh)
    ren = dict(zip(names, fresh))

    def end(e):
        return e if e[0] == "b" else ("n", ren[e[1]], e[2])
    items = list(d.wires.values())
    rng.shuffle(items)
    wires = {}
    for k, (a, b) in enumerate(items):
        wires[f"q{k}"] = (end(a), end(b)) if rng.random() < 0.5 or a[0] == "b" or b[0] == "b" \
            else (end(b), end(a))
    nodes = {ren[n]: d.nodes[n] for n in rng.sample(names, len(names))}
    return Diagram(nodes, wires, list(d.inputs), list(d.outputs),
                   [f"lp{k}" for k in range(len(d.loops))]).validate()
