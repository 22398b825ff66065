import pytest
from hypothesis import given, settings, strategies as st

from zxmultiway.terms import (GROUP_AXIOMS, Term, TermError, UnboundVariableError, find_matches,
                              match, parse_rule, parse_term, rewrite_at, substitute)

T = parse_term


def test_match_associativity_pattern():
    b = match(T("g[x_, g[y_, z_]]"), T("g[a, g[b, c]]"))
    assert b == {"x": T("a"), "y": T("b"), "z": T("c")}


def test_universal_variable():
    t = T("f[g[a], h[b, c]]")
    assert match(T("x_"), t) == {"x": t}


def test_nonlinear_pattern():
    assert match(T("g[x_, x_]"), T("g[a, b]")) is None
    assert match(T("g[x_, x_]"), T("g[a, a]")) == {"x": T("a")}


def test_find_matches_counts():
    assert [p for p, _ in find_matches(T("g[x_, y_]"), T("g[g[a,b], g[c,d]]"))] == [(), (0,), (1,)]
    assert [p for p, _ in find_matches(T("e"), T("g[a, e]"))] == [(1,)]
    assert len(find_matches(T("g[a_, inv[a_]]"), T("g[g[a, inv[a]], e]"))) == 1


def test_substitute():
    b = {"x": T("a"), "y": T("b"), "z": T("c")}
    assert substitute(T("g[g[x,y],z]"), b) == T("g[g[a,b],c]")
    assert substitute(T("e"), {}) == T("e")
    rule = parse_rule("e :> g[a, inv[a]]")
    assert substitute(rule.rhs, {"a": T("b")}) == T("g[b, inv[b]]")


def test_substitute_unbound():
    with pytest.raises(UnboundVariableError):
        substitute(T("g[x_, y_]"), {"x": T("a")})


def test_rewrite_at():
    assoc = parse_rule(GROUP_AXIOMS[0])
    assert rewrite_at(T("g[a, g[b, c]]"), (), assoc.lhs, assoc.rhs) == T("g[g[a, b], c]")
    ident = parse_rule(GROUP_AXIOMS[2])
    assert rewrite_at(T("g[a, e]"), (), ident.lhs, ident.rhs) == T("a")
    assert rewrite_at(T("g[e, g[a,e]]"), (1,), ident.lhs, ident.rhs) == T("g[e, a]")


def test_rewrite_errors():
    ident = parse_rule(GROUP_AXIOMS[2])
    with pytest.raises(TermError):
        rewrite_at(T("g[a, b]"), (), ident.lhs, ident.rhs)
    with pytest.raises(TermError):
        rewrite_at(T("g[a, e]"), (5,), ident.lhs, ident.rhs)


@pytest.mark.parametrize("bad", ["", "g[a,", "g[a]]", "[a]", "g[a b]"])
def test_parse_errors(bad):
    with pytest.raises(TermError):
        parse_term(bad)


# ------------------------------------------------------------ properties
ATOMS = ["a", "b", "c", "e"]
HEADS = ["g", "f", "inv"]


def terms(max_depth: int, allow_vars: bool = False):
    leaves = ATOMS + (["x_", "y_", "z_"] if allow_vars else [])
    leaf = st.sampled_from(leaves).map(Term)
    if max_depth <= 1:
        return leaf
    node = st.builds(lambda h, a: Term(h, tuple(a)), st.sampled_from(HEADS),
                     st.lists(terms(max_depth - 1, allow_vars), min_size=1, max_size=2))
    return st.one_of(leaf, node)


def _depth(t: Term) -> int:
    return 1 + max((_depth(a) for a in t.args), default=0)


@given(terms(5))
def test_print_parse_roundtrip(t):
    assert parse_term(str(t)) == t


@given(terms(4, allow_vars=True), terms(6))
@settings(max_examples=200)
def test_match_substitute_roundtrip(p, t):
    b = match(p, t)
    if b is not None:
        assert substitute(p, b) == t


def _brute_matches(p: Term, t: Term):
    """Every subterm position, found by explicit recursion rather than positions()."""
    out = []

    def walk(node, pos):
        b = match(p, node)
        if b is not None:
            out.append(pos)
        for i, a in enumerate(node.args):
            walk(a, pos + (i,))
    walk(t, ())
    return out


@given(terms(3, allow_vars=True), terms(6))
@settings(max_examples=200)
def test_find_matches_exhaustive(p, t):
    assert _depth(t) <= 6
    assert [pos for pos, _ in find_matches(p, t)] == _brute_matches(p, t)


@given(terms(6), st.data())
def test_rewrite_locality(t, data):
    positions = list(t.positions())
    pos = data.draw(st.sampled_from(positions))
    new = Term("fresh")
    out = rewrite_at(t, pos, t.at(pos), new)
    assert out.at(pos) == new
    for q in positions:
        disjoint = q[:len(pos)] != pos and pos[:len(q)] != q
        if disjoint:
            assert out.at(q) == t.at(q)
