"""Splitting off the first tensor factor of a q-wedge, and iterated splits.

Write S_L as c_r . S' with c_r = s_{r-1} ... s_1 (r = 1..L) and S' the
permutations of slots 2..L.  Lengths add, so

    A_L(x) = sum_r A'(x . T_{r-1} ... T_1),

where A' leaves slot 1 alone.  Grouping by the value in slot 1 and
straightening what remains gives the image of x in V(z) (x) F, with the rest
of charge one lower.  The rests are exact; only the range r <= L is truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TargetClassMismatch
from .fock import Basis, TensorVector, _Acc
from .hecke import apply_Ti
from .wedge import WedgeTerm, WedgeVector, straighten_tensor


@dataclass
class SplitExpansion:
    """first flat index -> rest (a WedgeVector whose coefficients carry the scalars)."""

    basis: Basis
    depth: int
    groups: dict = field(default_factory=dict)

    def rows(self) -> list:
        """(first, coefficient, rest term) triples, first factor decreasing."""
        out = []
        for first in sorted(self.groups, reverse=True):
            for w, c in self.groups[first].sorted_terms():
                out.append((first, c, w))
        return out

    def coefficient(self, first: int, rest: WedgeTerm):
        g = self.groups.get(first)
        return g[rest] if g is not None else WedgeVector(self.basis)[rest]

    def firsts(self) -> list:
        return sorted(self.groups, reverse=True)


def _split_tensor(basis: Basis, key: tuple, tail, coeff, depth: int, acc: dict):
    x = TensorVector(basis, depth, tail, {key: coeff})
    for r in range(1, depth + 1):
        y = x
        for i in range(r - 1, 0, -1):
            y = apply_Ti(y, i)
        for k, c in y.items():
            rest = straighten_tensor(basis, k[1:], y.tail)
            if rest.is_zero():
                continue
            prev = acc.get(k[0])
            rest = rest.scale(c)
            acc[k[0]] = rest if prev is None else prev + rest


def split_first(w: WedgeVector, depth: int) -> SplitExpansion:
    acc: dict = {}
    for term, c in w.items():
        if term.tail is None:
            d = len(term.prefix)
            _split_tensor(w.basis, term.prefix, None, c, d, acc)
        else:
            t = term.as_tensor(max(depth, len(term.prefix)))
            _split_tensor(w.basis, t.prefix, t.tail, c, t.depth, acc)
    groups = {k: v for k, v in acc.items() if not v.is_zero()}
    return SplitExpansion(w.basis, depth, groups)


def compose(w: WedgeVector, k: int, depth: int) -> dict:
    """k-fold split: tuple of first factors -> remaining WedgeVector."""
    layer = {(): w}
    for _ in range(k):
        nxt: dict = {}
        for prefix, v in layer.items():
            for first, rest in split_first(v, depth).groups.items():
                key = prefix + (first,)
                nxt[key] = nxt[key] + rest if key in nxt else rest
        layer = {p: v for p, v in nxt.items() if not v.is_zero()}
    return layer


def matrix_coefficient(expansion: dict, target: WedgeTerm, basis: Basis) -> TensorVector:
    """Coefficient of ``target`` in every group, assembled as a finite tensor."""
    if not expansion:
        raise ValueError("empty expansion")
    if target.tail is None:
        raise TargetClassMismatch("target must be a semi-infinite wedge")
    k = len(next(iter(expansion)))
    charges = {w.charge for v in expansion.values() for w in v}
    if charges:
        (s,) = charges
        delta = s - target.charge
        if delta and (basis.n is None or delta % basis.n):
            raise TargetClassMismatch(f"target has charge {target.charge}, rests have {s}")
        # same class: identify through multiplication by a power of z
        target = shift_wedge(target, delta)
    acc = _Acc()
    for prefix, v in expansion.items():
        c = v[target]
        if c:
            acc.add(prefix, c)
    return TensorVector._raw(basis, k, None, acc.result())


def shift_wedge(w: WedgeTerm, delta: int) -> WedgeTerm:
    """Add delta to every flat index (delta = -n c multiplies each factor by z^c)."""
    return WedgeTerm(tuple(m + delta for m in w.prefix), w.tail + delta)
