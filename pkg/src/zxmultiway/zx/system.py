"""ZX-diagram rewriting as a multiway rewrite system."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..multiway import RawEvent, RewriteSystem
from .diagram import Diagram
from .matching import Pattern, PatternError, apply_match, find_matches
from .rules import RuleInstance


@dataclass
class DirectedRule:
    id: str
    instance: RuleInstance
    pattern: Pattern
    rhs: Diagram


def directed_rules(rules: Sequence[RuleInstance], both: bool = True) -> list[DirectedRule]:
    """Usable orientations of each rule.

    An orientation is skipped when its left side carries a phase expression
    that cannot be solved by matching (``a+b``) or its right side mentions a
    variable the left side does not bind.
    """
    out = []
    for r in rules:
        sides = [(r.lhs, r.rhs, ">")]
        if both:
            sides.append((r.rhs, r.lhs, "<"))
        for lhs, rhs, arrow in sides:
            if not rhs.phase_variables() <= lhs.phase_variables():
                continue
            try:
                pat = Pattern(lhs)
            except PatternError:
                continue
            out.append(DirectedRule(f"{r.id}{arrow}", r, pat, rhs))
    return out


class ZXSystem(RewriteSystem):
    kind = "zx"

    def __init__(self, rules: Sequence[RuleInstance], both: bool = True, name: str = "zx"):
        if not rules:
            raise ValueError("a ZX system needs at least one rule")
        self.rules = list(rules)
        self.name = name
        self.directed = directed_rules(self.rules, both)

    def rule_ids(self) -> list[str]:
        return [r.id for r in self.directed]

    def events(self, state: Diagram) -> list[RawEvent]:
        evs = []
        for dr in self.directed:
            for m in find_matches(dr.pattern, state):
                new, carry = apply_match(state, dr.pattern, dr.rhs, m)
                evs.append(RawEvent(dr.id, m.key, new, m.consumed(), carry))
        return evs

    def canonical(self, state: Diagram) -> str:
        return state.canonical_key()

    def elements(self, state: Diagram) -> list:
        return state.elements()

    def label(self, state: Diagram) -> str:
        return state.canonical()[0].render()

    def parse_state(self, text: str) -> Diagram:
        from .diagram import parse
        return parse(text)
