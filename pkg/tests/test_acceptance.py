"""Acceptance suite: one test per criterion, each logging a pass/fail line."""
import itertools
import json
import random

import numpy as np

from corpus import FIGURES, TWO_SPIDER, figure_diagrams, random_diagram, relabel
from zxmultiway.multiway import (CompletedSystem, EngineConfig, branchial, causal_graph,
                                 check_causal_invariance, check_confluence, complete, evolve,
                                 path_weights)
from zxmultiway.rulial import (PLUS, ROOT_NOT, matrix_power_apply, monoidal_experiment,
                               monoidal_tier, quantum_toy, sample_tier, weakly_connected)
from zxmultiway.systems import (SetSystem, StringSystem, TermSystem, check_complete_consistent,
                                generated_strings, negation, tm_blank, tm_rulial)
from zxmultiway.terms import parse_term
from zxmultiway.zx.diagram import color_invert, compose, parse, stack
from zxmultiway.zx.rules import enumerate_rules, identity_rule, instantiate, verify_rule_sampled
from zxmultiway.zx.semantics import diagram_matrix, is_exact, to_complex, verify_pair
from zxmultiway.zx.system import ZXSystem

B2_TWO = "X[x,2,1,{b}] ⊗ Z[z,1,2,{a}] ⊗ W[i1,x] ⊗ W[i2,x] ⊗ W[x,z] ⊗ W[z,o1] ⊗ W[z,o2]"
B2_FOUR = ("Z[za,1,2,{a}] ⊗ Z[zb,1,2,{a}] ⊗ X[xc,2,1,{b}] ⊗ X[xd,2,1,{b}] ⊗ W[i1,za] ⊗ "
           "W[i2,zb] ⊗ W[za,xc] ⊗ W[za,xd] ⊗ W[zb,xc] ⊗ W[zb,xd] ⊗ W[xc,o1] ⊗ W[xd,o2] ⊗ B[d]")
FIG7 = "{{x,y}}->{{x,y},{y,z}}"
FIG35 = "{{x,y},{z,y}}->{{x,w},{y,w},{z,w}}"


def test_criterion_1_b2_identity(criterion):
    with criterion(1, "B2 identity in exact mode", 1.0):
        for a, b in [("0", "0"), ("pi", "0"), ("0", "pi")]:
            lhs, rhs = parse(B2_FOUR.format(a=a, b=b)), parse(B2_TWO.format(a=a, b=b))
            ml, mr = diagram_matrix(lhs), diagram_matrix(rhs)
            assert is_exact(ml) and is_exact(mr)
            assert (ml == mr).all()
            assert verify_pair(lhs, rhs).kind == "equal"
        lhs, rhs = parse(B2_FOUR.format(a="pi/2", b="pi/2")), parse(B2_TWO.format(a="pi/2", b="pi/2"))
        assert not (diagram_matrix(lhs) == diagram_matrix(rhs)).all()
        assert verify_pair(lhs, rhs).kind == "unsound"


def test_criterion_2_rule_soundness_sweep(criterion):
    with criterion(2, "every rule with arities <= 3 is equal at sampled phases", 300.0):
        rules = enumerate_rules(3, 3)
        assert len(rules) == 685
        checks = 0
        for r in rules:
            for env, v in verify_rule_sampled(r, tol=1e-9, exact=False):
                assert v.kind == "equal", (r.id, env, v)
                assert abs(v.lam - 1) < 1e-9
                checks += 1
        assert checks > len(rules)


def test_criterion_3_quantum_faithfulness(criterion):
    with criterion(3, "root-NOT amplitudes match matrix powers for t = 1..8", 1.0):
        run = quantum_toy(ROOT_NOT, PLUS, 8)
        for t in range(1, 9):
            assert run.amplitudes[t] == matrix_power_apply(ROOT_NOT, PLUS, t)
        # the same check from the basis state |0>, where the amplitudes move
        one = PLUS[0] * 0 + 1
        basis = [one, one - one]
        run0 = quantum_toy(ROOT_NOT, basis, 8)
        assert all(run0.amplitudes[t] == matrix_power_apply(ROOT_NOT, basis, t) for t in range(9))
        assert run0.amplitudes[2] != run0.amplitudes[0]


def _strings(n: int):
    return ["".join(p) for k in range(1, n + 1) for p in itertools.product("01", repeat=k)]


def test_criterion_4_toy_calculi(criterion):
    with criterion(4, "Figure 63 toy calculi", 30.0):
        g1 = generated_strings(StringSystem.parse("1->01,0->10"), "1", 10)
        assert "111" not in g1 and "000" not in g1
        g2 = generated_strings(StringSystem.parse("1->01,0->10,01->00"), "1", 10)
        assert "010" in g2 and "101" in g2
        s3 = StringSystem.parse("1->01,0->10,1->11")
        g3 = generated_strings(s3, "1", 12)
        assert all((w in g3) != (negation(w) in g3) for w in _strings(4))
        rep = check_complete_consistent(s3, "1", 12, 4)
        assert rep.consistent and rep.complete


def test_criterion_5_confluence_and_invariance(criterion):
    with criterion(5, "Figure 7 joins in one step, Figure 35 causal invariance", 30.0):
        s = SetSystem.parse(FIG7)
        init = SetSystem.parse_state("{{0,1}}")
        rep = check_confluence(s, [init], 3)
        assert rep.confluent and rep.pairs_checked > 0 and rep.max_join_distance == 1
        # direct check: every one-step divergence shares a successor
        for st in evolve(s, [init], 2, mode="states").states:
            state = SetSystem.parse_state(st.key)
            succ = sorted({s.canonical(e.result) for e in s.events(state)})
            for b, c in itertools.combinations(succ, 2):
                nb = {s.canonical(e.result) for e in s.events(SetSystem.parse_state(b))}
                nc = {s.canonical(e.result) for e in s.events(SetSystem.parse_state(c))}
                assert nb & nc
        rep = check_causal_invariance(SetSystem.parse(FIG35), SetSystem.parse_state("{{1,2},{3,2}}"), 3)
        assert rep.verdict == "invariant" and rep.paths > 1 and rep.classes == 1


def test_criterion_6_monoidal_compatibility(criterion):
    with criterion(6, "monoidal experiment on tier 1 and a tier-2 sample", 600.0):
        assert monoidal_experiment(parse(TWO_SPIDER), steps=2).passed
        tier1 = monoidal_tier(1)
        failed = [d.canonical_key() for d in tier1 if not monoidal_experiment(d, steps=2).passed]
        assert not failed, failed[:3]
        sample = sample_tier(2, 50, seed=0)
        assert len(sample) == 50
        failed = [d.canonical_key() for d in sample if not monoidal_experiment(d, steps=2).passed]
        assert not failed, failed[:3]


def test_criterion_7_completion_merges(criterion):
    with criterion(7, "completion merges the two-spider components", 60.0):
        d = parse(TWO_SPIDER)
        system = ZXSystem([identity_rule("Z"), identity_rule("X")])
        init = [d, color_invert(d)]
        before = evolve(system, init, 2, mode="states")
        assert weakly_connected(before) == 2
        added = complete(system, init, 1)
        assert len(added) == 2
        after = evolve(CompletedSystem(system, added), init, 2, mode="states")
        assert weakly_connected(after) == 1


def _corpus():
    two = parse(TWO_SPIDER)
    zx = ZXSystem([identity_rule("Z"), identity_rule("X")])
    return [
        (StringSystem.parse("1->01,0->10"), ["1"], 6),
        (StringSystem.parse("1->01,0->10,01->00"), ["1"], 5),
        (StringSystem.parse("A->AB,A->BA,B->A"), ["A", "B"], 5),
        (SetSystem.parse("{{x,y},{y,z}}->{{w,y},{y,z},{z,w},{x,w}}"),
         [SetSystem.parse_state("{{0,0},{0,0}}")], 3),
        (SetSystem.parse(FIG7), [SetSystem.parse_state("{{0,1}}")], 4),
        (SetSystem.parse(FIG35), [SetSystem.parse_state("{{1,2},{3,2}}")], 3),
        (tm_rulial(), [tm_blank()], 3),
        (TermSystem(["f[x_] :> g[x, x]", "g[a, b_] :> b"]), [parse_term("f[f[a]]")], 3),
        (zx, [two, color_invert(two)], 2),
    ]


def _artifacts(system, init, steps, workers: int) -> tuple:
    cfg = EngineConfig(workers=workers)
    out = []
    for mode in ("evolution", "states"):
        mw = evolve(system, init, steps, mode=mode, config=cfg)
        out += [mw.to_json(), mw.to_dot()]
    mw = evolve(system, init, steps, config=cfg)
    cg = causal_graph(mw, reduce=True)
    out += [cg.to_json(), cg.to_dot()]
    for t in range(steps + 1):
        bg = branchial(mw, t)
        out += [bg.to_json(), bg.to_dot(mw)]
    return tuple(out)


def test_criterion_8_engine_determinism(criterion):
    with criterion(8, "byte-identical artifacts for workers 1, 4, 8", 300.0):
        for system, init, steps in _corpus():
            arts = {w: _artifacts(system, init, steps, w) for w in (1, 4, 8)}
            assert arts[1] == arts[4] == arts[8], system.name
            assert all(isinstance(a, str) and a for a in arts[1])
            json.loads(arts[1][0])


def _string_paths(rules, init: str, t: int) -> dict:
    """Number of length-t rewrite sequences ending in each string, by direct enumeration."""
    counts = {init: 1}
    for _ in range(t):
        nxt: dict = {}
        for s, n in counts.items():
            for lhs, rhs in rules:
                for i in range(len(s) - len(lhs) + 1):
                    if s.startswith(lhs, i):
                        r = s[:i] + rhs + s[i + len(lhs):]
                        nxt[r] = nxt.get(r, 0) + n
        counts = nxt
    return counts


def test_criterion_9_property_suites(criterion):
    with criterion(9, "canonicalization, functoriality, fission count, path weights", 300.0):
        rng = random.Random(9)
        # canonical keys survive 100 relabelings of every corpus diagram
        for d in figure_diagrams() + [random_diagram(rng, max_nodes=4) for _ in range(20)]:
            key = d.canonical_key()
            assert all(relabel(d, rng).canonical_key() == key for _ in range(100))
        assert len(FIGURES) >= 20
        # diagram_matrix is a monoidal functor
        composed = 0
        for _ in range(40):
            a, b = random_diagram(rng), random_diagram(rng)
            ma, mb = to_complex(diagram_matrix(a)), to_complex(diagram_matrix(b))
            np.testing.assert_allclose(to_complex(diagram_matrix(stack(a, b))), np.kron(ma, mb),
                                       atol=1e-10)
            if a.n_out == b.n_in:
                np.testing.assert_allclose(to_complex(diagram_matrix(compose(a, b))), mb @ ma,
                                           atol=1e-10)
                composed += 1
        assert composed > 0
        # fission of an (n, m) spider has (n+1)(m+1) distinct instances
        for n, m in [(0, 1), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]:
            keys = {instantiate("S1-fission", "Z", n=n, m=m, j=j, l=l, k=1).canonical_key()
                    for j in range(n + 1) for l in range(m + 1)}
            assert len(keys) == (n + 1) * (m + 1)
        # path weights against direct enumeration of rewrite sequences
        for text, init in [("1->01,0->10", "1"), ("AB->BA,A->AA", "AB"), ("1->01,1->11", "1")]:
            system = StringSystem.parse(text)
            mw = evolve(system, [init], 6)
            w = path_weights(mw)
            for t in range(7):
                got = {v.key: w[v.id] for v in mw.generation(t)}
                assert got == _string_paths(system.rules, init, t)
