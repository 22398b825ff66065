"""Exact spider phases: rational multiples of pi, optionally linear in variables.

``Phase(const, terms)`` denotes ``const*pi + sum(coef*var)`` with ``const``
reduced into ``[0, 2)``.  Rule patterns use the variable part; concrete
diagrams only ever carry constants.
"""
from __future__ import annotations

from fractions import Fraction
import math
import re
from typing import Mapping


class PhaseError(ValueError):
    pass


class Phase:
    __slots__ = ("const", "terms")

    def __init__(self, const: Fraction | int = 0, terms: Mapping[str, int] | None = None):
        c = Fraction(const) % 2
        self.const = c
        self.terms = tuple(sorted((v, int(k)) for v, k in (terms or {}).items() if k))

    # construction
    @classmethod
    def pi(cls, num: int = 1, den: int = 1) -> "Phase":
        return cls(Fraction(num, den))

    @classmethod
    def var(cls, name: str, coef: int = 1) -> "Phase":
        return cls(0, {name: coef})

    @classmethod
    def coerce(cls, x) -> "Phase":
        if isinstance(x, Phase):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, str):
            return parse_phase(x)
        raise PhaseError(f"cannot interpret {x!r} as a phase")

    # queries
    @property
    def is_constant(self) -> bool:
        return not self.terms

    @property
    def variables(self) -> set[str]:
        return {v for v, _ in self.terms}

    def is_multiple_of(self, frac: Fraction) -> bool:
        return self.is_constant and (self.const / frac).denominator == 1

    def radians(self) -> float:
        if not self.is_constant:
            raise PhaseError(f"phase {self} has free variables")
        return float(self.const) * math.pi

    # arithmetic
    def __add__(self, other) -> "Phase":
        o = Phase.coerce(other)
        t = dict(self.terms)
        for v, k in o.terms:
            t[v] = t.get(v, 0) + k
        return Phase(self.const + o.const, t)

    __radd__ = __add__

    def __neg__(self) -> "Phase":
        return Phase(-self.const, {v: -k for v, k in self.terms})

    def __sub__(self, other) -> "Phase":
        return self + (-Phase.coerce(other))

    def bind(self, env: Mapping[str, "Phase"]) -> "Phase":
        out = Phase(self.const)
        for v, k in self.terms:
            if v in env:
                val = Phase.coerce(env[v])
                for _ in range(abs(k)):
                    out = out + (val if k > 0 else -val)
            else:
                out = out + Phase(0, {v: k})
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, str)):
            other = Phase.coerce(other)
        return isinstance(other, Phase) and self.const == other.const and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.const, self.terms))

    def sort_key(self):
        return (self.terms, self.const)

    def __str__(self) -> str:
        parts = []
        for v, k in self.terms:
            if k == 1:
                s = v
            elif k == -1:
                s = "-" + v
            else:
                s = f"{k}*{v}"
            parts.append(s)
        c = self.const
        if c or not parts:
            parts.append(_const_str(c))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:
        return f"Phase({str(self)!r})"


def _const_str(c: Fraction) -> str:
    if c == 0:
        return "0"
    num, den = c.numerator, c.denominator
    s = "pi" if num == 1 else f"{num}pi"
    return s if den == 1 else f"{s}/{den}"


_TERM = re.compile(r"""
    ^(?P<num>\d+)?\s*\*?\s*(?P<pi>pi|π)\s*(?:/\s*(?P<den>\d+))?$   # 3pi/4, 3*pi/4, pi
  | ^(?P<rat>\d+(?:/\d+)?)$                                           # bare rational (must be 0)
  | ^(?P<coef>\d+)?\s*\*?\s*(?P<var>[A-Za-z_αβγδθφ][\w]*)$            # 2*a, a
""", re.X)


def parse_phase(text: str) -> Phase:
    s = text.strip().replace("−", "-")
    if not s:
        raise PhaseError("empty phase")
    chunks = re.findall(r"[+-]?[^+-]+", s.replace(" ", ""))
    if "".join(chunks) != s.replace(" ", ""):
        raise PhaseError(f"bad phase {text!r}")
    total = Phase()
    for ch in chunks:
        sign = -1 if ch.startswith("-") else 1
        body = ch.lstrip("+-")
        m = _TERM.match(body)
        if not m:
            raise PhaseError(f"bad phase term {ch!r} in {text!r}")
        if m.group("pi"):
            num = int(m.group("num") or 1)
            den = int(m.group("den") or 1)
            if den == 0:
                raise PhaseError(f"zero denominator in {text!r}")
            total = total + Phase(Fraction(sign * num, den))
        elif m.group("rat") is not None:
            if Fraction(m.group("rat")) != 0:
                raise PhaseError(f"phase {text!r} must be written as a multiple of pi")
        else:
            total = total + Phase(0, {m.group("var"): sign * int(m.group("coef") or 1)})
    return total


ZERO = Phase(0)
PI = Phase(1)
