import cmath
import math
import random

import numpy as np
import pytest

from corpus import FIGURES, random_diagram
from oracle import naive_matrix
from zxmultiway.exact import ExactScalar
from zxmultiway.zx.diagram import compose, empty, identity, parse, stack
from zxmultiway.zx.phase import Phase, parse_phase
from zxmultiway.zx.rules import instantiate
from zxmultiway.zx.semantics import (diagram_matrix, is_exact, matrix_to_json, proportional,
                                     spider_matrix, to_complex, verify_pair)

B2_TWO = "X[x,2,1,{b}] ⊗ Z[z,1,2,{a}] ⊗ W[i1,x] ⊗ W[i2,x] ⊗ W[x,z] ⊗ W[z,o1] ⊗ W[z,o2]"
B2_FOUR = ("Z[za,1,2,{a}] ⊗ Z[zb,1,2,{a}] ⊗ X[xc,2,1,{b}] ⊗ X[xd,2,1,{b}] ⊗ W[i1,za] ⊗ "
           "W[i2,zb] ⊗ W[za,xc] ⊗ W[za,xd] ⊗ W[zb,xc] ⊗ W[zb,xd] ⊗ W[xc,o1] ⊗ W[xd,o2] ⊗ B[d]")


def mat(d, **kw):
    return to_complex(diagram_matrix(d, **kw))


def test_spider_matrix_examples():
    np.testing.assert_allclose(to_complex(spider_matrix("Z", 1, 1, 0)), np.eye(2))
    p = parse_phase("pi/3")
    np.testing.assert_allclose(to_complex(spider_matrix("Z", 1, 1, p)),
                               np.diag([1, cmath.exp(1j * math.pi / 3)]), atol=1e-12)
    np.testing.assert_allclose(to_complex(spider_matrix("Z", 0, 0, 0)), [[2]])
    h = to_complex(spider_matrix("H", 1, 1))
    np.testing.assert_allclose(h, np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-12)
    np.testing.assert_allclose(to_complex(spider_matrix("B", 0, 0)), [[math.sqrt(2)]], atol=1e-12)


def test_x_is_hadamard_conjugated_z():
    hm = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    for n, m in [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2), (1, 0)]:
        p = parse_phase("3pi/4")
        z = to_complex(spider_matrix("Z", n, m, p))
        x = to_complex(spider_matrix("X", n, m, p))
        hn = np.ones((1, 1))
        for _ in range(n):
            hn = np.kron(hn, hm)
        hm_ = np.ones((1, 1))
        for _ in range(m):
            hm_ = np.kron(hm_, hm)
        np.testing.assert_allclose(x, hm_ @ z @ hn, atol=1e-12)


def test_trivial_diagrams():
    np.testing.assert_allclose(mat(empty()), [[1]])
    np.testing.assert_allclose(mat(identity(1)), np.eye(2))
    np.testing.assert_allclose(mat(parse("Loop[l]")), [[2]])
    bell = mat(parse("W[o1,o2]"))
    np.testing.assert_allclose(bell[:, 0], [1, 0, 0, 1])
    swap = mat(parse("W[i1,o2] ⊗ W[i2,o1]"))
    np.testing.assert_allclose(swap, np.eye(4)[[0, 2, 1, 3]])


def test_boundary_ordering_most_significant_first():
    # |0> on the first output, |+>-ish on the second: row index = 2*b1 + b2
    d = parse("X[x,0,1,0] ⊗ W[x,o1] ⊗ Z[z,0,1,pi] ⊗ W[z,o2]")
    got = mat(d)[:, 0]
    want = np.kron([math.sqrt(2), 0], [1, -1])
    np.testing.assert_allclose(got, want, atol=1e-12)


@pytest.mark.parametrize("text", FIGURES)
def test_corpus_matches_naive_sum(text):
    d = parse(text)
    np.testing.assert_allclose(mat(d), naive_matrix(d), atol=1e-10)


@pytest.mark.parametrize("seed", range(40))
def test_random_matches_naive_sum(seed):
    d = random_diagram(random.Random(seed))
    np.testing.assert_allclose(mat(d), naive_matrix(d), atol=1e-10)


@pytest.mark.parametrize("seed", range(30))
def test_monoidal_functoriality(seed):
    rng = random.Random(100 + seed)
    a, b = random_diagram(rng), random_diagram(rng)
    np.testing.assert_allclose(mat(stack(a, b)), np.kron(mat(a), mat(b)), atol=1e-10)


@pytest.mark.parametrize("seed", range(30))
def test_compositional_functoriality(seed):
    rng = random.Random(200 + seed)
    a = random_diagram(rng)
    for _ in range(200):
        b = random_diagram(rng)
        if b.n_in == a.n_out:
            break
    else:
        pytest.skip("no composable partner drawn")
    np.testing.assert_allclose(mat(compose(a, b)), mat(b) @ mat(a), atol=1e-10)


@pytest.mark.parametrize("seed", range(30))
def test_schedule_independence(seed):
    d = random_diagram(random.Random(300 + seed), max_nodes=4)
    np.testing.assert_allclose(mat(d, schedule="greedy"), mat(d, schedule="sequential"), atol=1e-10)


@pytest.mark.parametrize("seed", range(20))
def test_exact_mode_agrees_with_float(seed):
    d = random_diagram(random.Random(400 + seed), exact=True)
    ex = diagram_matrix(d, exact=True)
    assert is_exact(ex)
    np.testing.assert_allclose(to_complex(ex), mat(d, exact=False), atol=1e-10)


def test_proportional_examples():
    assert proportional(2 * np.eye(2), np.eye(2)) == pytest.approx(2)
    assert proportional(np.eye(2), np.array([[0, 1], [1, 0]])) is None
    assert proportional(np.eye(2), np.zeros((2, 2))) is None
    assert proportional(np.zeros((2, 2)), np.zeros((2, 2))) is not None
    with pytest.raises(ValueError):
        proportional(np.eye(2), np.eye(4))


@pytest.mark.parametrize("a,b,verdict", [
    ("0", "0", "equal"), ("pi", "0", "equal"), ("0", "pi", "equal"),
    ("pi/2", "pi/2", "unsound"), ("pi", "pi", "proportional"),
])
def test_b2_identity_exact(a, b, verdict):
    lhs = parse(B2_FOUR.format(a=a, b=b))
    rhs = parse(B2_TWO.format(a=a, b=b))
    v = verify_pair(lhs, rhs)
    assert v.kind == verdict
    if verdict != "unsound":
        assert is_exact(diagram_matrix(lhs))


def test_fusion_and_colour_change():
    for pa, pb in [("pi/3", "pi/5"), ("pi/2", "3pi/2"), ("0", "pi")]:
        r = instantiate("S1-fusion", "Z", n1=1, m1=1, n2=1, m2=1, k=1)
        env = {"a": parse_phase(pa), "b": parse_phase(pb)}
        lhs, rhs = r.lhs.bind(env), r.rhs.bind(env)
        want = np.diag([1, cmath.exp(1j * (env["a"].radians() + env["b"].radians()))])
        np.testing.assert_allclose(mat(rhs), want, atol=1e-12)
        assert verify_pair(lhs, rhs).kind == "equal"
        c = instantiate("C-colorchange", "Z", n=1, m=1)
        assert verify_pair(c.lhs.bind(env), c.rhs.bind(env)).kind == "equal"


def test_corrupted_rule_is_unsound():
    r = instantiate("S1-fusion", "Z", n1=1, m1=1, n2=1, m2=1, k=1)
    env = {"a": Phase.pi(1, 3), "b": Phase.pi(1, 4)}
    bad_env = {"a": Phase.pi(1, 3) + Phase.pi(), "b": Phase.pi(1, 4)}
    assert verify_pair(r.lhs.bind(env), r.rhs.bind(bad_env)).kind == "unsound"


def test_matrix_json_is_row_major_pairs():
    m = diagram_matrix(parse("Z[z1,0,1,pi/2]⊗W[z1,o1]"))
    assert matrix_to_json(m) == [[[1.0, 0.0]], [[0.0, 1.0]]]
    assert isinstance(diagram_matrix(parse("Z[z1,0,1,pi/2]⊗W[z1,o1]"))[1, 0], ExactScalar)
