"""Linear-map semantics of ZX-diagrams by tensor-network contraction.

Matrices have ``2**n_out`` rows and ``2**n_in`` columns; the first boundary
point of each list is the most significant bit.  When every phase is a
multiple of pi/2 the contraction runs over exact :class:`ExactScalar`
entries (numpy object arrays); otherwise complex128.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import cmath
import itertools
import math
import random
from typing import Sequence

import numpy as np

from ..exact import ExactScalar
from .diagram import Diagram, DiagramError, spider
from .phase import Phase


@dataclass
class _T:
    data: np.ndarray
    labels: list


def _phase_value(p: Phase, exact: bool):
    if exact:
        q = p.const * 2
        return ExactScalar.unit_phase(int(q))
    return cmath.exp(1j * p.radians())


def _inv_sqrt2_pow(k: int, exact: bool):
    if exact:
        r = ExactScalar(1)
        for _ in range(k):
            r = r * ExactScalar.inv_sqrt2()
        return r
    return (1 / math.sqrt(2)) ** k


def spider_tensor(kind: str, k: int, phase: Phase, exact: bool = False) -> np.ndarray:
    """Tensor of a Z or X spider with ``k`` legs (leg order irrelevant)."""
    e = _phase_value(phase, exact)
    dtype = object if exact else complex
    zero, one = (ExactScalar(0), ExactScalar(1)) if exact else (0j, 1 + 0j)
    t = np.empty((2,) * k, dtype=dtype)
    if kind == "Z":
        t[...] = zero
        if k == 0:
            return np.array(one + e, dtype=dtype)
        t[(0,) * k] = one
        t[(1,) * k] = e
        return t
    if kind == "X":
        scale = _inv_sqrt2_pow(k, exact)
        for bits in itertools.product((0, 1), repeat=k):
            sign = -1 if sum(bits) % 2 else 1
            t[bits] = scale * (one + e * sign)
        if k == 0:
            return np.array(one + e, dtype=dtype)
        return t
    raise DiagramError(f"no spider tensor for kind {kind!r}")


def hadamard_tensor(exact: bool = False) -> np.ndarray:
    if exact:
        h = ExactScalar.inv_sqrt2()
        return np.array([[h, h], [h, -h]], dtype=object)
    return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def is_exact_diagram(d: Diagram) -> bool:
    return all(n.phase.is_constant and (n.phase.const * 2).denominator == 1
               for n in d.nodes.values())


def _self_trace(t: _T) -> _T:
    while True:
        seen = {}
        pair = None
        for i, l in enumerate(t.labels):
            if l in seen:
                pair = (seen[l], i)
                break
            seen[l] = i
        if pair is None:
            return t
        data = np.trace(t.data, axis1=pair[0], axis2=pair[1])
        labels = [l for i, l in enumerate(t.labels) if i not in pair]
        t = _T(np.asarray(data), labels)


def _contract(a: _T, b: _T) -> _T:
    shared = [l for l in a.labels if l in b.labels]
    ax_a = [a.labels.index(l) for l in shared]
    ax_b = [b.labels.index(l) for l in shared]
    data = np.tensordot(a.data, b.data, axes=(ax_a, ax_b))
    labels = [l for l in a.labels if l not in shared] + [l for l in b.labels if l not in shared]
    return _T(np.asarray(data), labels)


def _network(d: Diagram, exact: bool) -> tuple[list[_T], list, object]:
    d.validate()
    if any(not n.phase.is_constant for n in d.nodes.values()):
        raise DiagramError("diagram has unbound phase variables")
    label_of_end = {}
    tensors: list[_T] = []
    for wid, (a, b) in sorted(d.wires.items()):
        if a[0] == "b" and b[0] == "b":
            eye = np.array([[1, 0], [0, 1]], dtype=object if exact else complex)
            if exact:
                eye = np.vectorize(ExactScalar.coerce, otypes=[object])(eye)
            tensors.append(_T(eye, [("b", a[1]), ("b", b[1])]))
    legs: dict[str, list] = {nid: [] for nid in d.nodes}
    for wid, (a, b) in sorted(d.wires.items()):
        if a[0] == "b" and b[0] == "b":
            continue
        lab = ("b", a[1]) if a[0] == "b" else ("b", b[1]) if b[0] == "b" else ("w", wid)
        for e in (a, b):
            if e[0] == "n":
                legs[e[1]].append(lab)
        label_of_end[wid] = lab
    scalar = ExactScalar(1) if exact else 1 + 0j
    two = ExactScalar(2) if exact else 2
    root2 = ExactScalar.sqrt2() if exact else math.sqrt(2)
    for _ in d.loops:
        scalar = scalar * two
    for nid in sorted(d.nodes):
        n = d.nodes[nid]
        if n.kind == "B":
            scalar = scalar * root2
            continue
        if n.kind == "H":
            t = _T(hadamard_tensor(exact), list(legs[nid]))
        else:
            t = _T(spider_tensor(n.kind, len(legs[nid]), n.phase, exact), list(legs[nid]))
        t = _self_trace(t)
        if t.labels:
            tensors.append(t)
        else:
            scalar = scalar * t.data.item()
    return tensors, [("b", p) for p in d.outputs + d.inputs], scalar


def _size(a: _T, b: _T) -> int:
    shared = set(a.labels) & set(b.labels)
    return 2 ** (len(a.labels) + len(b.labels) - 2 * len(shared))


def diagram_matrix(d: Diagram, exact: bool | None = None, schedule: str = "greedy") -> np.ndarray:
    """Matrix of ``d``; ``exact=None`` chooses exact mode when possible."""
    if exact is None:
        exact = is_exact_diagram(d)
    tensors, order, scalar = _network(d, exact)
    tensors = list(tensors)
    while len(tensors) > 1:
        if schedule == "greedy":
            best = None
            for i, j in itertools.combinations(range(len(tensors)), 2):
                a, b = tensors[i], tensors[j]
                conn = bool(set(a.labels) & set(b.labels))
                key = (not conn, _size(a, b), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
            _, i, j = best
        elif schedule == "sequential":
            i, j = 0, 1
        else:
            raise ValueError(f"unknown schedule {schedule!r}")
        merged = _self_trace(_contract(tensors[i], tensors[j]))
        tensors = [t for k, t in enumerate(tensors) if k not in (i, j)] + [merged]
    m, n = d.n_out, d.n_in
    if tensors:
        t = tensors[0]
        if t.labels:
            perm = [t.labels.index(l) for l in order]
            data = np.transpose(t.data, perm)
        else:
            data = t.data
        data = data * scalar
    else:
        data = np.array(scalar, dtype=object if exact else complex)
    return np.asarray(data).reshape(2 ** m, 2 ** n)


def spider_matrix(kind: str, n: int, m: int, phase=0, exact: bool | None = None) -> np.ndarray:
    if kind == "B":
        return np.array([[ExactScalar.sqrt2() if exact else math.sqrt(2)]],
                        dtype=object if exact else complex)
    if kind == "H":
        if (n, m) != (1, 1):
            raise DiagramError("a Hadamard box is 1->1")
    return diagram_matrix(spider(kind, n, m, phase), exact=exact)


def to_complex(m: np.ndarray) -> np.ndarray:
    if m.dtype == object:
        return np.vectorize(complex, otypes=[complex])(m)
    return m.astype(complex)


def is_exact(m: np.ndarray) -> bool:
    return m.dtype == object


def proportional(m1: np.ndarray, m2: np.ndarray, tol: float = 1e-9):
    """Scalar ``lam`` with ``m1 ~= lam * m2``, or ``None``."""
    if m1.shape != m2.shape:
        raise ValueError(f"shape mismatch {m1.shape} vs {m2.shape}")
    if is_exact(m1) and is_exact(m2):
        flat2 = list(m2.flat)
        k = max(range(len(flat2)), key=lambda i: abs(flat2[i])) if flat2 else None
        if k is None or flat2[k].is_zero():
            return ExactScalar(1) if all(x.is_zero() for x in m1.flat) else None
        lam = list(m1.flat)[k] / flat2[k]
        ok = all(a == lam * b for a, b in zip(m1.flat, flat2))
        return lam if ok else None
    c1, c2 = to_complex(m1), to_complex(m2)
    scale = max(1.0, float(np.max(np.abs(c1), initial=0.0)))
    if c2.size == 0:
        return 1
    k = int(np.argmax(np.abs(c2)))
    if abs(c2.flat[k]) <= tol:
        return (1 + 0j) if np.max(np.abs(c1), initial=0.0) <= tol * scale else None
    lam = c1.flat[k] / c2.flat[k]
    if np.max(np.abs(c1 - lam * c2), initial=0.0) <= tol * scale:
        return lam
    return None


@dataclass
class Verdict:
    kind: str           # "equal", "proportional" or "unsound"
    lam: object = None

    @property
    def sound(self) -> bool:
        return self.kind != "unsound"


def verify_pair(lhs: Diagram, rhs: Diagram, tol: float = 1e-9, exact: bool | None = None) -> Verdict:
    if (lhs.n_in, lhs.n_out) != (rhs.n_in, rhs.n_out):
        raise DiagramError("rule sides have different boundaries")
    if exact is None:
        exact = is_exact_diagram(lhs) and is_exact_diagram(rhs)
    m1 = diagram_matrix(lhs, exact=exact)
    m2 = diagram_matrix(rhs, exact=exact)
    lam = proportional(m1, m2, tol)
    if lam is None:
        return Verdict("unsound")
    if exact:
        return Verdict("equal" if lam == 1 else "proportional", lam)
    return Verdict("equal" if abs(lam - 1) <= tol else "proportional", lam)


def matrix_to_json(m: np.ndarray) -> list:
    c = to_complex(m)
    return [[[float(x.real), float(x.imag)] for x in row] for row in c]


def sample_phases(k: int, seed: int) -> list[Phase]:
    """``k`` reproducible random rational multiples of pi."""
    rng = random.Random(seed)
    return [Phase(Fraction(rng.randint(1, 199), rng.choice([3, 5, 7, 9, 11, 13, 17]))) for _ in range(k)]
