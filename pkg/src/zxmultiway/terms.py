"""Terms, patterns with variables, one-sided matching and substitution.

Text syntax is ``head[child, child, ...]``; a leaf whose name ends in ``_``
is a pattern variable (``x_``).  On the right-hand side of a rule a variable
may be referenced either as ``x_`` or as the bare atom ``x``; bare atoms that
are not bound are kept literally, which is what rules like
``e :> g[a, inv[a]]`` need.
"""
from __future__ import annotations

from dataclasses import dataclass
import re
from typing import Iterator

Position = tuple[int, ...]
Binding = dict[str, "Term"]


class TermError(ValueError):
    pass


class UnboundVariableError(TermError):
    pass


@dataclass(frozen=True)
class Term:
    head: str
    args: tuple["Term", ...] = ()

    @property
    def is_var(self) -> bool:
        return not self.args and self.head.endswith("_")

    @property
    def var_name(self) -> str:
        return self.head[:-1]

    def __str__(self) -> str:
        if not self.args:
            return self.head
        return f"{self.head}[{', '.join(map(str, self.args))}]"

    def __repr__(self) -> str:
        return f"Term({str(self)!r})"

    def at(self, pos: Position) -> "Term":
        t = self
        for i in pos:
            if i >= len(t.args):
                raise TermError(f"invalid position {pos} in {self}")
            t = t.args[i]
        return t

    def positions(self) -> Iterator[Position]:
        """All subterm positions, depth-first pre-order."""
        yield ()
        for i, a in enumerate(self.args):
            for p in a.positions():
                yield (i,) + p

    def replace_at(self, pos: Position, new: "Term") -> "Term":
        if not pos:
            return new
        i = pos[0]
        if i >= len(self.args):
            raise TermError(f"invalid position {pos} in {self}")
        args = list(self.args)
        args[i] = args[i].replace_at(pos[1:], new)
        return Term(self.head, tuple(args))

    def variables(self) -> set[str]:
        if self.is_var:
            return {self.var_name}
        out: set[str] = set()
        for a in self.args:
            out |= a.variables()
        return out

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)


_TOKEN = re.compile(r"\s*(?:([\[\],])|([^\s\[\],]+))")


def parse_term(text: str) -> Term:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TermError(f"bad term syntax near {text[pos:]!r}")
        tokens.append(m.group(1) or m.group(2))
        pos = m.end()
    tokens = [t for t in tokens if t]
    k = 0

    def parse() -> Term:
        nonlocal k
        if k >= len(tokens) or tokens[k] in "[],":
            raise TermError(f"expected symbol in {text!r}")
        head = tokens[k]
        k += 1
        if k < len(tokens) and tokens[k] == "[":
            k += 1
            args = []
            if k < len(tokens) and tokens[k] == "]":
                k += 1
                return Term(head, ())
            while True:
                args.append(parse())
                if k >= len(tokens):
                    raise TermError(f"unclosed bracket in {text!r}")
                if tokens[k] == ",":
                    k += 1
                    continue
                if tokens[k] == "]":
                    k += 1
                    break
                raise TermError(f"unexpected {tokens[k]!r} in {text!r}")
            return Term(head, tuple(args))
        return Term(head)

    t = parse()
    if k != len(tokens):
        raise TermError(f"trailing input in {text!r}")
    return t


def match(pattern: Term, term: Term, binding: Binding | None = None) -> Binding | None:
    """Match ``pattern`` against ``term`` at the root.

    Repeated variables must bind structurally equal subterms.
    """
    b: Binding = dict(binding or {})
    stack = [(pattern, term)]
    while stack:
        p, t = stack.pop()
        if p.is_var:
            name = p.var_name
            if name in b:
                if b[name] != t:
                    return None
            else:
                b[name] = t
            continue
        if p.head != t.head or len(p.args) != len(t.args):
            return None
        stack.extend(zip(reversed(p.args), reversed(t.args)))
    return b


def find_matches(pattern: Term, term: Term) -> list[tuple[Position, Binding]]:
    out = []
    for pos in term.positions():
        b = match(pattern, term.at(pos))
        if b is not None:
            out.append((pos, b))
    return out


def substitute(pattern: Term, binding: Binding) -> Term:
    if pattern.is_var:
        if pattern.var_name not in binding:
            raise UnboundVariableError(f"variable {pattern.head} is unbound")
        return binding[pattern.var_name]
    if not pattern.args and pattern.head in binding:
        return binding[pattern.head]
    if not pattern.args:
        return pattern
    return Term(pattern.head, tuple(substitute(a, binding) for a in pattern.args))


def rewrite_at(term: Term, pos: Position, lhs: Term, rhs: Term,
               binding: Binding | None = None) -> Term:
    sub = term.at(pos)
    b = match(lhs, sub, binding)
    if b is None:
        raise TermError(f"{lhs} does not match {sub} at {pos}")
    return term.replace_at(pos, substitute(rhs, b))


@dataclass(frozen=True)
class TermRule:
    lhs: Term
    rhs: Term
    name: str = ""

    def __str__(self) -> str:
        return self.name or f"{self.lhs} :> {self.rhs}"


def parse_rule(text: str) -> TermRule:
    for sep in (":>", "->"):
        if sep in text:
            l, r = text.split(sep, 1)
            return TermRule(parse_term(l), parse_term(r))
    raise TermError(f"rule needs ':>' or '->': {text!r}")


GROUP_AXIOMS = [
    "g[x_, g[y_, z_]] :> g[g[x, y], z]",
    "g[g[x_, y_], z_] :> g[x, g[y, z]]",
    "g[a_, e] :> a",
    "a_ :> g[a, e]",
    "g[a_, inv[a_]] :> e",
    "e :> g[a, inv[a]]",
]
