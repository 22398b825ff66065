"""Rule families of the ZX-calculus as concrete bidirectional rewrite rules.

Each family is instantiated in its Z-rooted form and colour-inverted for the
X-rooted one.  Free phases are pattern variables ``a`` and ``b``.  All rules
are scalar exact: diamonds (and, for the pi-commutation family, a pair of
scalar spiders) balance the two sides so that their matrices agree with
factor 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import itertools
import json

from .diagram import Diagram, Node, bend, color_invert, nend
from .phase import PI, ZERO, Phase
from .semantics import Verdict, sample_phases, verify_pair

A = Phase.var("a")
B = Phase.var("b")

FAMILIES = ("S1-fusion", "S1-fission", "S2-identity", "B1-copy", "B2-bialgebra", "B2-piX",
            "B2-piZ", "K1-picopy", "K2-phaseflip", "C-colorchange", "D1-cancel", "D2-scalar")


class RuleError(ValueError):
    pass


@dataclass
class RuleInstance:
    id: str
    family: str
    color: str
    params: tuple
    lhs: Diagram
    rhs: Diagram
    expected: str = "equal"
    meta: dict = field(default_factory=dict)

    def canonical_key(self) -> tuple[str, str]:
        a, b = self.lhs.canonical_key(), self.rhs.canonical_key()
        return min((a, b), (b, a))

    def variables(self) -> set[str]:
        return self.lhs.phase_variables() | self.rhs.phase_variables()

    def reversed(self) -> "RuleInstance":
        return RuleInstance(self.id + "~", self.family, self.color, self.params,
                            self.rhs, self.lhs, self.expected, dict(self.meta))

    def to_json(self) -> dict:
        return {"id": self.id, "family": self.family, "color": self.color,
                "params": list(self.params), "lhs": self.lhs.to_json(),
                "rhs": self.rhs.to_json(), "expected": self.expected}

    @classmethod
    def from_json(cls, data) -> "RuleInstance":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["id"], data["family"], data["color"], tuple(data["params"]),
                   Diagram.from_json(data["lhs"]), Diagram.from_json(data["rhs"]),
                   data.get("expected", "equal"))


class _Builder:
    def __init__(self):
        self.nodes: dict[str, Node] = {}
        self.wires: dict[str, tuple] = {}
        self.n_in = 0
        self.n_out = 0
        self.loops: list[str] = []

    def node(self, kind: str, phase: Phase = ZERO) -> str:
        nid = f"{kind.lower()}{len(self.nodes) + 1}"
        self.nodes[nid] = Node(kind, phase)
        return nid

    def wire(self, a: tuple, b: tuple) -> None:
        self.wires[f"w{len(self.wires) + 1}"] = (a, b)

    def inp(self) -> tuple:
        self.n_in += 1
        return bend(f"i{self.n_in}")

    def out(self) -> tuple:
        self.n_out += 1
        return bend(f"o{self.n_out}")

    def link(self, src: str, dst: str) -> None:
        self.wire(nend(src, "out"), nend(dst, "in"))

    def build(self) -> Diagram:
        return Diagram(self.nodes, self.wires, [f"i{k}" for k in range(1, self.n_in + 1)],
                       [f"o{k}" for k in range(1, self.n_out + 1)], self.loops).validate()


def _spider_side(kind: str, n: int, m: int, phase: Phase) -> Diagram:
    b = _Builder()
    s = b.node(kind, phase)
    for _ in range(n):
        b.wire(b.inp(), nend(s, "in"))
    for _ in range(m):
        b.wire(nend(s, "out"), b.out())
    return b.build()


# ------------------------------------------------------------------ families
def _fusion(n1: int, m1: int, n2: int, m2: int, k: int):
    if min(n1, m1, n2, m2) < 0 or k < 1 or k > min(m1, n2):
        raise RuleError(f"bad fusion parameters {(n1, m1, n2, m2, k)}")
    b = _Builder()
    s1, s2 = b.node("Z", A), b.node("Z", B)
    for _ in range(n1):
        b.wire(b.inp(), nend(s1, "in"))
    for _ in range(n2 - k):
        b.wire(b.inp(), nend(s2, "in"))
    for _ in range(m1 - k):
        b.wire(nend(s1, "out"), b.out())
    for _ in range(m2):
        b.wire(nend(s2, "out"), b.out())
    for _ in range(k):
        b.link(s1, s2)
    return b.build(), _spider_side("Z", n1 + n2 - k, m1 + m2 - k, A + B)


def _fission(n: int, m: int, j: int, l: int, k: int):
    if not (0 <= j <= n and 0 <= l <= m and k >= 1):
        raise RuleError(f"bad fission parameters {(n, m, j, l, k)}")
    b = _Builder()
    s1, s2 = b.node("Z", A), b.node("Z", ZERO)
    for t in range(n):
        b.wire(b.inp(), nend(s1 if t < j else s2, "in"))
    for t in range(m):
        b.wire(nend(s1 if t < l else s2, "out"), b.out())
    for _ in range(k):
        b.link(s1, s2)
    return _spider_side("Z", n, m, A), b.build()


def _identity(n: int, m: int):
    if (n, m) not in ((1, 1), (2, 0), (0, 2)):
        raise RuleError(f"identity rule needs arities (1,1), (2,0) or (0,2), got {(n, m)}")
    b = _Builder()
    if (n, m) == (1, 1):
        b.wire(b.inp(), b.out())
    elif n == 2:
        b.wire(b.inp(), b.inp())
    else:
        b.wire(b.out(), b.out())
    return _spider_side("Z", n, m, ZERO), b.build()


def _copy(a: Phase, m: int):
    if m < 0 or not (a == ZERO or a == PI):
        raise RuleError("copy rule needs phase 0 or pi and m >= 0")
    lb = _Builder()
    s = lb.node("Z", a)
    x = lb.node("X", ZERO)
    lb.link(s, x)
    for _ in range(m):
        lb.wire(nend(x, "out"), lb.out())
    for _ in range(max(m - 1, 0)):
        lb.node("B")
    rb = _Builder()
    for _ in range(m):
        t = rb.node("Z", a)
        rb.wire(nend(t, "out"), rb.out())
    if m == 0:
        rb.node("B")
    return lb.build(), rb.build()


def _bialgebra(alpha: Phase, beta: Phase):
    lb = _Builder()
    x = lb.node("X", beta)
    z = lb.node("Z", alpha)
    lb.wire(lb.inp(), nend(x, "in"))
    lb.wire(lb.inp(), nend(x, "in"))
    lb.link(x, z)
    lb.wire(nend(z, "out"), lb.out())
    lb.wire(nend(z, "out"), lb.out())
    rb = _Builder()
    za, zb = rb.node("Z", alpha), rb.node("Z", alpha)
    xc, xd = rb.node("X", beta), rb.node("X", beta)
    rb.wire(rb.inp(), nend(za, "in"))
    rb.wire(rb.inp(), nend(zb, "in"))
    for z_ in (za, zb):
        rb.link(z_, xc)
        rb.link(z_, xd)
    rb.wire(nend(xc, "out"), rb.out())
    rb.wire(nend(xd, "out"), rb.out())
    rb.node("B")
    return lb.build(), rb.build()


def _picopy(m: int):
    if m < 0:
        raise RuleError("m must be >= 0")
    lb = _Builder()
    x = lb.node("X", PI)
    z = lb.node("Z", ZERO)
    lb.wire(lb.inp(), nend(x, "in"))
    lb.link(x, z)
    for _ in range(m):
        lb.wire(nend(z, "out"), lb.out())
    rb = _Builder()
    z2 = rb.node("Z", ZERO)
    rb.wire(rb.inp(), nend(z2, "in"))
    for _ in range(m):
        xo = rb.node("X", PI)
        rb.link(z2, xo)
        rb.wire(nend(xo, "out"), rb.out())
    return lb.build(), rb.build()


def _phaseflip(n: int, m: int):
    if n < 0 or m < 0 or n + m < 1:
        raise RuleError("phase-flip rule needs n + m >= 1")
    lb = _Builder()
    z = lb.node("Z", A)
    for _ in range(n):
        x = lb.node("X", PI)
        lb.wire(lb.inp(), nend(x, "in"))
        lb.link(x, z)
    for _ in range(m):
        lb.wire(nend(z, "out"), lb.out())
    lb.node("Z", -A)
    rb = _Builder()
    z2 = rb.node("Z", -A)
    for _ in range(n):
        rb.wire(rb.inp(), nend(z2, "in"))
    for _ in range(m):
        x = rb.node("X", PI)
        rb.link(z2, x)
        rb.wire(nend(x, "out"), rb.out())
    rb.node("Z", A)
    return lb.build(), rb.build()


def _colorchange(n: int, m: int):
    if n < 0 or m < 0 or n + m < 1:
        raise RuleError("colour-change rule needs n + m >= 1")
    lb = _Builder()
    z = lb.node("Z", A)
    for _ in range(n):
        h = lb.node("H")
        lb.wire(lb.inp(), nend(h, "in"))
        lb.link(h, z)
    for _ in range(m):
        h = lb.node("H")
        lb.link(z, h)
        lb.wire(nend(h, "out"), lb.out())
    return lb.build(), _spider_side("X", n, m, A)


def _cancel(phase_on_state: bool):
    lb = _Builder()
    s = lb.node("Z", A if phase_on_state else ZERO)
    e = lb.node("X", ZERO if phase_on_state else A)
    lb.link(s, e)
    rb = _Builder()
    rb.node("B")
    return lb.build(), rb.build()


def _scalar():
    lb = _Builder()
    lb.node("B")
    lb.node("B")
    rb = _Builder()
    rb.loops.append("l1")
    return lb.build(), rb.build()


def _param_names(family: str) -> tuple[str, ...]:
    return {
        "S1-fusion": ("n1", "m1", "n2", "m2", "k"),
        "S1-fission": ("n", "m", "j", "l", "k"),
        "S2-identity": ("n", "m"),
        "B1-copy": ("a", "m"),
        "B2-bialgebra": (), "B2-piX": (), "B2-piZ": (),
        "K1-picopy": ("m",),
        "K2-phaseflip": ("n", "m"),
        "C-colorchange": ("n", "m"),
        "D1-cancel": ("phase_on_state",),
        "D2-scalar": (),
    }[family]


def instantiate(family: str, color: str = "Z", **params) -> RuleInstance:
    """Concrete rule of ``family`` (Z-rooted, or its colour inverse for ``color="X"``)."""
    if family not in FAMILIES:
        raise RuleError(f"unknown rule family {family!r}")
    if color not in ("Z", "X"):
        raise RuleError(f"colour must be Z or X, got {color!r}")
    names = _param_names(family)
    if set(params) != set(names):
        raise RuleError(f"{family} takes parameters {names}, got {sorted(params)}")
    vals = tuple(params[k] for k in names)
    if family == "S1-fusion":
        lhs, rhs = _fusion(*vals)
    elif family == "S1-fission":
        lhs, rhs = _fission(*vals)
    elif family == "S2-identity":
        lhs, rhs = _identity(*vals)
    elif family == "B1-copy":
        lhs, rhs = _copy(Phase.coerce(vals[0]), vals[1])
    elif family == "B2-bialgebra":
        lhs, rhs = _bialgebra(ZERO, ZERO)
    elif family == "B2-piX":
        lhs, rhs = _bialgebra(ZERO, PI)
    elif family == "B2-piZ":
        lhs, rhs = _bialgebra(PI, ZERO)
    elif family == "K1-picopy":
        lhs, rhs = _picopy(*vals)
    elif family == "K2-phaseflip":
        lhs, rhs = _phaseflip(*vals)
    elif family == "C-colorchange":
        lhs, rhs = _colorchange(*vals)
    elif family == "D1-cancel":
        lhs, rhs = _cancel(bool(vals[0]))
    else:
        lhs, rhs = _scalar()
    if color == "X":
        lhs, rhs = color_invert(lhs), color_invert(rhs)
    shown = tuple(str(v) if isinstance(v, Phase) else v for v in vals)
    rid = f"{family}/{color}" + (f"{list(shown)}" if shown else "")
    return RuleInstance(rid, family, color, shown, lhs, rhs)


def _sides(inst: RuleInstance) -> list[tuple[int, int]]:
    out = []
    for d in (inst.lhs, inst.rhs):
        out.extend(d.arities().values())
    return out


def _family_params(family: str, bi: int, bo: int):
    if family == "S1-fusion":
        for n1, m1, n2, m2 in itertools.product(range(bi + 1), range(1, bo + 1),
                                                range(1, bi + 1), range(bo + 1)):
            for k in range(1, min(m1, n2) + 1):
                yield dict(n1=n1, m1=m1, n2=n2, m2=m2, k=k)
    elif family == "S1-fission":
        for n, m in itertools.product(range(bi + 1), range(bo + 1)):
            for j, l in itertools.product(range(n + 1), range(m + 1)):
                for k in range(1, max(bi, bo) + 1):
                    yield dict(n=n, m=m, j=j, l=l, k=k)
    elif family == "S2-identity":
        for n, m in ((1, 1), (2, 0), (0, 2)):
            yield dict(n=n, m=m)
    elif family == "B1-copy":
        for a in ("0", "pi"):
            for m in range(bo + 1):
                yield dict(a=a, m=m)
    elif family in ("B2-bialgebra", "B2-piX", "B2-piZ", "D2-scalar"):
        yield {}
    elif family == "K1-picopy":
        for m in range(bo + 1):
            yield dict(m=m)
    elif family in ("K2-phaseflip", "C-colorchange"):
        for n, m in itertools.product(range(bi + 1), range(bo + 1)):
            if n + m >= 1:
                yield dict(n=n, m=m)
    elif family == "D1-cancel":
        for f in (True, False):
            yield dict(phase_on_state=f)


def enumerate_rules(max_in: int = 3, max_out: int = 3,
                    families: tuple[str, ...] = FAMILIES) -> list[RuleInstance]:
    """All rule instances whose boundary fits ``max_in -> max_out``.

    Spiders inside a rule may have up to ``max(max_in, 1)`` input and
    ``max(max_out, 1)`` output legs.  Rules equal up to orientation and
    renaming are listed once.
    """
    if max_in < 0 or max_out < 0:
        raise RuleError("bounds must be >= 0")
    bi, bo = max(max_in, 1), max(max_out, 1)
    out: list[RuleInstance] = []
    seen: set = set()
    for family in families:
        for color in ("Z", "X"):
            for params in _family_params(family, bi, bo):
                inst = instantiate(family, color, **params)
                if inst.lhs.n_in > max_in or inst.lhs.n_out > max_out:
                    continue
                if any(i > bi or o > bo for i, o in _sides(inst)):
                    continue
                key = inst.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                out.append(inst)
    return out


def identity_rule(color: str = "Z", n: int = 1, m: int = 1) -> RuleInstance:
    return instantiate("S2-identity", color, n=n, m=m)


# --------------------------------------------------------------- soundness
QUADRANTS = (ZERO, Phase.pi(1, 2), PI, Phase.pi(3, 2))


def verify_rule(rule: RuleInstance, tol: float = 1e-9, env: dict | None = None,
                exact: bool | None = None) -> Verdict:
    """Compare both sides of ``rule`` with its phase variables bound by ``env``."""
    env = env or {}
    missing = rule.variables() - set(env)
    if missing:
        raise RuleError(f"{rule.id}: phase variables {sorted(missing)} need values")
    return verify_pair(rule.lhs.bind(env), rule.rhs.bind(env), tol=tol, exact=exact)


def phase_pairs(extra: int = 5, seed: int = 0) -> list[tuple[Phase, Phase]]:
    """Values for the two phase variables: the quadrant phases plus ``extra``
    random rationals, paired with a rotated copy of the same list so both
    variables run over every value."""
    vals = list(QUADRANTS) + sample_phases(extra, seed)
    shift = len(vals) // 2
    return list(zip(vals, vals[shift:] + vals[:shift]))


def verify_rule_sampled(rule: RuleInstance, tol: float = 1e-9, exact: bool | None = None,
                        pairs: list[tuple[Phase, Phase]] | None = None) -> list[tuple[dict, Verdict]]:
    """Verdicts of ``rule`` over sampled phase values (one check if it has none)."""
    names = sorted(rule.variables())
    if not names:
        return [({}, verify_rule(rule, tol, exact=exact))]
    out = []
    for a, b in pairs or phase_pairs():
        env = dict(zip(names, (a, b)))
        out.append((env, verify_rule(rule, tol, env, exact)))
    return out
