"""Concrete rewrite systems: strings, ordered-relation sets, Turing machines, terms."""
from __future__ import annotations

from dataclasses import dataclass
import itertools
import json
import re
from typing import Sequence

from .canon import LabeledGraph, canonical_form
from .multiway import RawEvent, RewriteSystem, evolve, EngineConfig
from .terms import Term, TermRule, find_matches as term_matches, parse_rule, substitute


class FrontendError(ValueError):
    pass


# ------------------------------------------------------------------- strings
class StringSystem(RewriteSystem):
    kind = "string"

    def __init__(self, rules: Sequence[tuple[str, str]], name: str = "string"):
        self.rules = []
        for lhs, rhs in rules:
            if not lhs:
                raise FrontendError("string rules need a non-empty left-hand side")
            if (lhs, rhs) not in self.rules:
                self.rules.append((lhs, rhs))
        self.name = name

    @classmethod
    def parse(cls, text: str) -> "StringSystem":
        """``"1->01, 0->10"`` (``→`` also accepted)."""
        rules = []
        for part in text.replace("→", "->").split(","):
            part = part.strip()
            if not part:
                continue
            if "->" not in part:
                raise FrontendError(f"bad string rule {part!r}")
            l, r = part.split("->", 1)
            rules.append((l.strip(), r.strip()))
        return cls(rules)

    def rule_ids(self) -> list[str]:
        return [f"{l}->{r}" for l, r in self.rules]

    def events(self, state: str) -> list[RawEvent]:
        evs = []
        for lhs, rhs in self.rules:
            rid = f"{lhs}->{rhs}"
            start = state.find(lhs)
            while start != -1:
                end = start + len(lhs)
                new = state[:start] + rhs + state[end:]
                carry = {j: j for j in range(start)}
                shift = len(lhs) - len(rhs)
                carry.update({j: j + shift for j in range(start + len(rhs), len(new))})
                evs.append(RawEvent(rid, start, new, tuple(range(start, end)), carry))
                start = state.find(lhs, start + 1)
        return evs

    def canonical(self, state: str) -> str:
        return state

    def elements(self, state: str) -> list[int]:
        return list(range(len(state)))


def negation(s: str) -> str:
    if set(s) - {"0", "1"}:
        raise FrontendError(f"negation needs a binary string, got {s!r}")
    return s.translate(str.maketrans("01", "10"))


@dataclass
class ConsistencyReport:
    generated: set
    both: list
    neither: list
    exactly_one: list

    @property
    def consistent(self) -> bool:
        return not self.both

    @property
    def complete(self) -> bool:
        return not self.neither


def generated_strings(system: StringSystem, init: str, depth: int) -> set[str]:
    mw = evolve(system, [init], depth, mode="states")
    return mw.keys()


def check_complete_consistent(system: StringSystem, init: str, depth: int, max_len: int) -> ConsistencyReport:
    gen = generated_strings(system, init, depth)
    for s in gen:
        negation(s)
    both, neither, one = [], [], []
    for n in range(1, max_len + 1):
        for bits in itertools.product("01", repeat=n):
            s = "".join(bits)
            if s > negation(s):
                continue
            a, b = s in gen, negation(s) in gen
            (both if a and b else one if a or b else neither).append(s)
    return ConsistencyReport(gen, both, neither, one)


# ---------------------------------------------------------- ordered relations
Relation = tuple[int, ...]


def _parse_relations(text: str) -> list[tuple[str, ...]]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise FrontendError(f"relations must be written {{{{...}},...}}: {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return []
    rels = re.findall(r"\{([^{}]*)\}", inner)
    if re.sub(r"\{[^{}]*\}|[\s,]", "", inner):
        raise FrontendError(f"malformed relation list {text!r}")
    return [tuple(x.strip() for x in r.split(",") if x.strip()) for r in rels]


def canonical_relations(state: Sequence[Relation]) -> str:
    """Canonical text of a set of ordered relations under vertex renaming."""
    atoms = sorted({v for r in state for v in r})
    lg = LabeledGraph()
    aidx = {a: lg.add_vertex("a") for a in atoms}
    for r in state:
        e = lg.add_vertex(f"r{len(r)}")
        for pos, v in enumerate(r):
            lg.add_arc(e, aidx[v], str(pos))
    _, order = canonical_form(lg)
    na = len(atoms)
    rename = {}
    rel_order = []
    for v in order:
        if v < na:
            rename[atoms[v]] = len(rename)
        else:
            rel_order.append(v - na)
    rels = [tuple(rename[x] for x in state[i]) for i in rel_order]
    return "{" + ",".join("{" + ",".join(map(str, r)) + "}" for r in rels) + "}"


class SetSystem(RewriteSystem):
    kind = "set"

    def __init__(self, rules: Sequence[tuple[Sequence[Sequence[str]], Sequence[Sequence[str]]]],
                 name: str = "set"):
        self.rules = []
        for lhs, rhs in rules:
            lhs = [tuple(r) for r in lhs]
            rhs = [tuple(r) for r in rhs]
            if not lhs or any(not r for r in lhs + rhs):
                raise FrontendError("set rules need non-empty relations on the left")
            self.rules.append((lhs, rhs))
        self.name = name

    @classmethod
    def parse(cls, text: str) -> "SetSystem":
        """``"{{x,y},{y,z}} -> {{w,y},{y,z},{z,w},{x,w}}"``; several rules separated by ``;``."""
        rules = []
        for part in text.replace("→", "->").split(";"):
            if not part.strip():
                continue
            if "->" not in part:
                raise FrontendError(f"bad set rule {part!r}")
            l, r = part.split("->", 1)
            rules.append((_parse_relations(l), _parse_relations(r)))
        return cls(rules)

    @staticmethod
    def parse_state(text: str) -> tuple[Relation, ...]:
        try:
            return tuple(tuple(int(v) for v in r) for r in _parse_relations(text))
        except ValueError as exc:
            raise FrontendError(f"state vertices must be integers: {text!r}") from exc

    def rule_ids(self) -> list[str]:
        return [self._rid(l, r) for l, r in self.rules]

    @staticmethod
    def _rid(lhs, rhs) -> str:
        def f(rs):
            return "{" + ",".join("{" + ",".join(r) + "}" for r in rs) + "}"
        return f"{f(lhs)}->{f(rhs)}"

    def matches(self, lhs, state) -> list[tuple[tuple[int, ...], dict]]:
        out = []

        def rec(i, used, binding):
            if i == len(lhs):
                out.append((tuple(used), dict(binding)))
                return
            pat = lhs[i]
            for k, rel in enumerate(state):
                if k in used or len(rel) != len(pat):
                    continue
                b = dict(binding)
                ok = True
                for var, v in zip(pat, rel):
                    if b.setdefault(var, v) != v:
                        ok = False
                        break
                if ok:
                    used.append(k)
                    rec(i + 1, used, b)
                    used.pop()

        rec(0, [], {})
        return out

    def events(self, state) -> list[RawEvent]:
        evs = []
        for lhs, rhs in self.rules:
            rid = self._rid(lhs, rhs)
            fresh_vars = sorted({v for r in rhs for v in r} - {v for r in lhs for v in r},
                                key=lambda v: [x for r in rhs for x in r].index(v))
            for used, binding in self.matches(lhs, state):
                taken = {v for r in state for v in r}
                b = dict(binding)
                n = 0
                for var in fresh_vars:
                    while n in taken:
                        n += 1
                    b[var] = n
                    taken.add(n)
                keep = [k for k in range(len(state)) if k not in used]
                new = tuple(state[k] for k in keep) + tuple(tuple(b[v] for v in r) for r in rhs)
                carry = {j: keep[j] for j in range(len(keep))}
                evs.append(RawEvent(rid, tuple(used), new, tuple(used), carry))
        return evs

    def canonical(self, state) -> str:
        return canonical_relations(state)

    def elements(self, state) -> list[int]:
        return list(range(len(state)))


# ------------------------------------------------------------ Turing machines
@dataclass(frozen=True)
class TMState:
    head: int
    pos: int
    tape: tuple   # sorted (position, colour) pairs with colour != 0

    def read(self) -> int:
        return dict(self.tape).get(self.pos, 0)

    def window(self) -> tuple[int, int]:
        cells = [p for p, _ in self.tape] + [self.pos]
        return min(cells), max(cells)


@dataclass(frozen=True)
class TMRule:
    s: int
    c: int
    s2: int
    c2: int
    d: int   # -1 left, 0 stay, +1 right

    def __str__(self) -> str:
        return f"({self.s},{self.c})->({self.s2},{self.c2},{'LSR'[self.d + 1]})"


class TMSystem(RewriteSystem):
    kind = "tm"

    def __init__(self, rules: Sequence[TMRule], name: str = "tm"):
        self.rules = list(dict.fromkeys(rules))
        self.name = name

    def rule_ids(self) -> list[str]:
        return [str(r) for r in self.rules]

    def elements(self, state: TMState) -> list:
        lo, hi = state.window()
        return [("head",)] + [("cell", p) for p in range(lo, hi + 1)]

    def events(self, state: TMState) -> list[RawEvent]:
        evs = []
        c = state.read()
        for r in self.rules:
            if (r.s, r.c) != (state.head, c):
                continue
            tape = dict(state.tape)
            if r.c2:
                tape[state.pos] = r.c2
            else:
                tape.pop(state.pos, None)
            new = TMState(r.s2, state.pos + r.d, tuple(sorted(tape.items())))
            old_el = set(self.elements(state))
            carry = {el: el for el in self.elements(new)
                     if el in old_el and el != ("head",) and el != ("cell", state.pos)}
            evs.append(RawEvent(str(r), state.pos, new, (("head",), ("cell", state.pos)), carry))
        return evs

    def canonical(self, state: TMState) -> str:
        lo, hi = state.window()
        tape = dict(state.tape)
        cells = "".join(str(tape.get(p, 0)) for p in range(lo, hi + 1))
        return f"{state.head}|{cells}|{state.pos - lo}"


def tm_rulial(states: int = 2, colors: int = 2, include_stay: bool = False) -> TMSystem:
    """Every single-case transition ``(s, c) -> (s', c', d)``."""
    if states < 1 or colors < 1:
        raise FrontendError("states and colors must be >= 1")
    moves = (-1, 0, 1) if include_stay else (-1, 1)
    rules = [TMRule(s, c, s2, c2, d)
             for s in range(1, states + 1) for c in range(colors)
             for s2 in range(1, states + 1) for c2 in range(colors) for d in moves]
    return TMSystem(rules, name=f"tm{states}x{colors}")


def tm_blank(head: int = 1) -> TMState:
    return TMState(head, 0, ())


# ---------------------------------------------------------------------- terms
class TermSystem(RewriteSystem):
    kind = "term"

    def __init__(self, rules: Sequence[TermRule | str], name: str = "term"):
        self.rules = [parse_rule(r) if isinstance(r, str) else r for r in rules]
        self.name = name

    def rule_ids(self) -> list[str]:
        return [f"{r.lhs} :> {r.rhs}" for r in self.rules]

    def elements(self, state: Term) -> list:
        return list(state.positions())

    def events(self, state: Term) -> list[RawEvent]:
        evs = []
        for r, rid in zip(self.rules, self.rule_ids()):
            for pos, b in term_matches(r.lhs, state):
                new = state.replace_at(pos, substitute(r.rhs, b))
                consumed = tuple(p for p in state.positions() if p[:len(pos)] == pos)
                new_pos = set(new.positions())
                carry = {p: p for p in state.positions()
                         if p[:len(pos)] != pos and p in new_pos}
                evs.append(RawEvent(rid, pos, new, consumed, carry))
        return evs

    def canonical(self, state: Term) -> str:
        return str(state)


def load_rules_json(text: str):
    """Rule file: ``{"system": "string"|"set"|"term", "rules": [...]}``."""
    data = json.loads(text)
    kind = data.get("system")
    rules = data.get("rules", [])
    if kind == "string":
        return StringSystem([tuple(r) for r in rules])
    if kind == "set":
        return SetSystem.parse(";".join(rules))
    if kind == "term":
        return TermSystem(rules)
    raise FrontendError(f"unknown system kind {kind!r}")
