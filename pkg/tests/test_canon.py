import cmath
from fractions import Fraction
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from zxmultiway.canon import LabeledGraph, canonical_form, certificate, isomorphism
from zxmultiway.exact import ExactScalar, Gaussian

# ------------------------------------------------------------------ exact
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(Gaussian, fracs, fracs)
exacts = st.builds(ExactScalar, gauss, gauss)


@given(exacts, exacts)
def test_exact_ring_matches_complex(a, b):
    for got, want in ((a + b, complex(a) + complex(b)), (a - b, complex(a) - complex(b)),
                      (a * b, complex(a) * complex(b))):
        assert abs(complex(got) - want) <= 1e-9 * max(1, abs(want))


@given(exacts)
def test_exact_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


def test_exact_constants():
    assert ExactScalar.sqrt2() * ExactScalar.sqrt2() == 2
    assert ExactScalar.inv_sqrt2() * ExactScalar.sqrt2() == 1
    for k in range(8):
        assert abs(complex(ExactScalar.unit_phase(k)) - cmath.exp(1j * cmath.pi * k / 2)) < 1e-12
    assert ExactScalar.i() * ExactScalar.i() == -1
    assert ExactScalar(Fraction(1, 2)) == Fraction(1, 2)


# --------------------------------------------------------- canonical form
def random_graph(rng: random.Random, n: int, p: float, colors: str = "ab") -> LabeledGraph:
    g = LabeledGraph()
    for _ in range(n):
        g.add_vertex(rng.choice(colors))
    for u in range(n):
        for v in range(n):
            if rng.random() < p:
                g.add_arc(u, v, rng.choice("xy"))
    return g


def permuted(g: LabeledGraph, perm: list[int]) -> LabeledGraph:
    h = LabeledGraph()
    inv = {perm[i]: i for i in range(len(perm))}
    for k in range(len(perm)):
        h.add_vertex(g.colors[inv[k]])
    for u, v, lab in reversed(g.arcs):
        h.add_arc(perm[u], perm[v], lab)
    return h


def to_nx(g: LabeledGraph) -> nx.MultiDiGraph:
    h = nx.MultiDiGraph()
    for v, c in enumerate(g.colors):
        h.add_node(v, color=c)
    for u, v, lab in g.arcs:
        h.add_edge(u, v, label=lab)
    return h


def nx_isomorphic(a: LabeledGraph, b: LabeledGraph) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b),
                            node_match=lambda x, y: x["color"] == y["color"],
                            edge_match=lambda x, y: sorted(e["label"] for e in x.values())
                            == sorted(e["label"] for e in y.values()))


@pytest.mark.parametrize("seed", range(20))
def test_certificate_permutation_invariant(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 9), 0.3)
    cert = certificate(g)
    for _ in range(100):
        perm = list(range(len(g)))
        rng.shuffle(perm)
        assert certificate(permuted(g, perm)) == cert


@pytest.mark.parametrize("seed", range(60))
def test_isomorphism_agrees_with_networkx(seed):
    rng = random.Random(1000 + seed)
    n = rng.randint(1, 7)
    a = random_graph(rng, n, 0.35, "a" if seed % 2 else "ab")
    if seed % 3 == 0:
        perm = list(range(n))
        rng.shuffle(perm)
        b = permuted(a, perm)
    else:
        b = random_graph(rng, n, 0.35, "a" if seed % 2 else "ab")
    m = isomorphism(a, b)
    assert (m is not None) == nx_isomorphic(a, b)
    if m is not None:
        arcs_a = sorted((m[u], m[v], lab) for u, v, lab in a.arcs)
        assert arcs_a == sorted(b.arcs)
        assert all(a.colors[v] == b.colors[m[v]] for v in m)


def test_regular_graphs_hard_case():
    # two non-isomorphic 3-regular graphs on 6 vertices: K3,3 and the prism
    def undirected(edges):
        g = LabeledGraph()
        for _ in range(6):
            g.add_vertex("")
        for u, v in edges:
            g.add_edge(u, v)
        return g
    k33 = undirected([(i, j) for i in range(3) for j in range(3, 6)])
    prism = undirected([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    assert isomorphism(k33, prism) is None
    assert isomorphism(k33, k33) is not None
    assert nx.is_isomorphic(to_nx(k33), to_nx(prism)) is False


def test_canonical_order_is_a_permutation():
    g = random_graph(random.Random(5), 8, 0.3)
    _, order = canonical_form(g)
    assert sorted(order) == list(range(8))


def test_symmetric_union_is_fast_and_invariant():
    # many identical components: without automorphism pruning this is factorial
    g = LabeledGraph()
    for _ in range(12):
        a, b, c = g.add_vertex("p"), g.add_vertex("q"), g.add_vertex("q")
        g.add_arc(a, b)
        g.add_arc(a, c)
        g.add_arc(b, c)
    rng = random.Random(3)
    cert = certificate(g)
    for _ in range(5):
        perm = list(range(len(g)))
        rng.shuffle(perm)
        assert certificate(permuted(g, perm)) == cert
    h = permuted(g, list(range(len(g))))
    h.arcs[-1] = (h.arcs[-1][1], h.arcs[-1][0], "")
    assert (isomorphism(g, h) is None) == (not nx_isomorphic(g, h))
