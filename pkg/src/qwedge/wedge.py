"""Normally ordered q-wedges and the straightening rewrite.

A q-wedge is the (Hecke) antisymmetrization A(x) = sum_w x . T_w of a tensor x.
Normal order is strictly decreasing flat index.  Any A(x) is rewritten into
normal form with two exact identities:

* A(x) = 0 when x has two equal adjacent flat indices;
* A(y . T_i) = q^2 A(y) for every generator T_i.

For x with an ascent x_i < x_{i+1}, let y be x with those slots swapped.  The
expansion y . T_i contains x with a unit coefficient c (-q or -q^2) plus
correction tensors whose two entries lie strictly between x_i and x_{i+1}, so
A(x) = c^-1 (q^2 A(y) - sum A(corrections)).  Each step either removes an
ascent or strictly lowers the sum of squared entries, which bounds the
recursion.  Because only these two identities are used, results are exact for
the infinite antisymmetrization, independent of any truncation depth.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .coeff import LaurentQ, ONE, qpow
from .errors import BoundaryViolation, NonTerminating, RecognitionFailure, TruncationTooShallow
from .fock import Basis, PureTensor, TensorVector, _Acc
from .hecke import antisymmetrize, pair_action

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_Q2 = qpow(2)


@dataclass(frozen=True, order=True)
class WedgeTerm:
    """Normally ordered wedge label: strictly decreasing prefix, then t, t-1, ...

    Stored in canonical form (trailing prefix entries that continue the tail are
    absorbed into it).  ``tail=None`` denotes a finite wedge.
    """

    prefix: tuple
    tail: int | None = None

    def __post_init__(self):
        p = tuple(self.prefix)
        if any(p[k] <= p[k + 1] for k in range(len(p) - 1)):
            raise ValueError(f"wedge prefix {p} is not strictly decreasing")
        t = self.tail
        if t is not None:
            if p and p[-1] <= t:
                raise ValueError(f"wedge prefix {p} does not sit above its tail vac({t})")
            while p and p[-1] == t + 1:
                p = p[:-1]
                t += 1
        object.__setattr__(self, "prefix", p)
        object.__setattr__(self, "tail", t)

    @property
    def charge(self) -> int:
        """Start of the vacuum this wedge agrees with eventually."""
        if self.tail is None:
            raise ValueError("finite wedge has no charge")
        return self.tail + len(self.prefix)

    def as_tensor(self, depth: int | None = None) -> PureTensor:
        t = PureTensor(self.prefix, self.tail)
        return t if depth is None else t.truncate(depth)

    def values(self, depth: int) -> tuple:
        return self.as_tensor(depth).prefix


def vacuum_wedge(basis: Basis, i: int) -> WedgeTerm:
    # empty prefix: the tail itself starts at the vacuum's first factor
    return WedgeTerm((), basis.vacuum_start(i))


def vacuum_at(start: int) -> WedgeTerm:
    """Vacuum wedge whose first factor has flat index ``start``."""
    return WedgeTerm((), start)


class WedgeVector:
    """Finite combination of normally ordered wedges with Laurent coefficients."""

    __slots__ = ("basis", "_terms")

    def __init__(self, basis: Basis, terms: Mapping[WedgeTerm, LaurentQ] | None = None):
        self.basis = basis
        t = {}
        for w, c in (terms or {}).items():
            if not isinstance(c, LaurentQ):
                c = LaurentQ.const(c)
            if c:
                t[w] = t[w] + c if w in t else c
        self._terms = {w: c for w, c in t.items() if c}

    @classmethod
    def _raw(cls, basis, terms):
        obj = cls.__new__(cls)
        obj.basis, obj._terms = basis, terms
        return obj

    @classmethod
    def single(cls, basis: Basis, w: WedgeTerm, c: LaurentQ = ONE) -> "WedgeVector":
        return cls(basis, {w: c})

    def items(self):
        return self._terms.items()

    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __getitem__(self, w: WedgeTerm) -> LaurentQ:
        return self._terms.get(w, LaurentQ())

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "WedgeVector") -> "WedgeVector":
        acc = _Acc()
        for w, c in self._terms.items():
            acc.add(w, c)
        for w, c in other._terms.items():
            acc.add(w, c)
        return WedgeVector._raw(self.basis, acc.result())

    def __neg__(self):
        return self.scale(LaurentQ.const(-1))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WedgeVector":
        if isinstance(c, int):
            c = LaurentQ.const(c)
        if not c:
            return WedgeVector._raw(self.basis, {})
        return WedgeVector._raw(self.basis, {w: v * c for w, v in self._terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, WedgeVector):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def eval_q1(self) -> "WedgeVector":
        return WedgeVector(self.basis, {w: c.eval_q1() for w, c in self._terms.items()})

    def sorted_terms(self) -> list:
        """Deterministic order: lexicographically decreasing on (prefix, tail)."""
        return sorted(self._terms.items(), key=lambda kv: _term_key(kv[0]), reverse=True)

    def __repr__(self):
        from .textio import format_wedge_vector
        return f"WedgeVector({format_wedge_vector(self)!r})"


def _term_key(w: WedgeTerm):
    # slot-by-slot comparison, reading a few slots into the tail
    if w.tail is None:
        return w.prefix
    return w.as_tensor(len(w.prefix) + 4).prefix


# ---------------------------------------------------------------------------
# straightening
# ---------------------------------------------------------------------------

_MEMO: dict = {}


def _measure(seq) -> int:
    return sum(v * v for v in seq)


def _straighten_finite(n, seq: tuple) -> dict:
    memo = _MEMO.setdefault(n, {})
    hit = memo.get(seq)
    if hit is not None:
        return hit
    L = len(seq)
    for p in range(L - 1):
        if seq[p] == seq[p + 1]:
            memo[seq] = {}
            return memo[seq]
    for p in range(L - 1):
        if seq[p] < seq[p + 1]:
            break
    else:
        memo[seq] = {seq: ONE}
        return memo[seq]
    y = seq[:p] + (seq[p + 1], seq[p]) + seq[p + 2:]
    target = (seq[p], seq[p + 1])
    acts = pair_action(n, y[p], y[p + 1])
    cx = None
    for key, c in acts:
        if key == target:
            cx = c
    if cx is None or not cx.is_monomial():
        raise NonTerminating(f"swap coefficient for {target} is not a unit")
    inv = cx.inverse()
    acc = _Acc()
    for k, c in _straighten_finite(n, y).items():
        acc.add(k, c, _Q2 * inv)
    base = _measure(seq)
    for key, c in acts:
        if key == target:
            continue
        t = y[:p] + key + y[p + 2:]
        if _measure(t) >= base:
            raise NonTerminating(f"correction {t} does not lower the measure of {seq}")
        scale = -(c * inv)
        for k, c2 in _straighten_finite(n, t).items():
            acc.add(k, c2, scale)
    memo[seq] = acc.result()
    return memo[seq]


def clear_cache():
    _MEMO.clear()


def straighten_tensor(basis: Basis, prefix: Iterable[int], tail: int | None = None) -> WedgeVector:
    """Normal form of the q-antisymmetrization of one pure tensor."""
    seq = tuple(prefix)
    if tail is not None:
        lo = min(seq) if seq else tail + 1
        if lo <= tail:
            # unroll the tail until it sits strictly below every stored value
            seq = seq + tuple(range(tail, lo - 1, -1))
            tail = lo - 1
    raw = _straighten_finite(basis.n, seq)
    return WedgeVector._raw(basis, {WedgeTerm(k, tail): c for k, c in raw.items()}) \
        if tail is None else _collect(basis, ((WedgeTerm(k, tail), c) for k, c in raw.items()))


def _collect(basis, pairs) -> WedgeVector:
    acc = _Acc()
    for w, c in pairs:
        acc.add(w, c)
    return WedgeVector._raw(basis, acc.result())


def straighten(x) -> WedgeVector:
    """Normal form of A(x) for a TensorVector x (linear in x)."""
    if isinstance(x, PureTensor):
        raise TypeError("pass a TensorVector, or use straighten_tensor for one tensor")
    acc = _Acc()
    for key, c in x.items():
        for w, c2 in straighten_tensor(x.basis, key, x.tail).items():
            acc.add(w, c2, c)
    return WedgeVector._raw(x.basis, acc.result())


# ---------------------------------------------------------------------------
# truncated expansion and its inverse
# ---------------------------------------------------------------------------

def expand(basis: Basis, w: WedgeTerm, depth: int | None = None) -> TensorVector:
    """sum over S_depth of (w as a tensor) . T_sigma, the tail beyond depth frozen."""
    if w.tail is None:
        if depth not in (None, len(w.prefix)):
            raise TruncationTooShallow("a finite wedge expands at its own length")
        depth = len(w.prefix)
        x = TensorVector(basis, depth, None, {w.prefix: ONE})
    else:
        if depth is None:
            depth = len(w.prefix)
        if depth < len(w.prefix):
            raise BoundaryViolation(
                f"depth {depth} cannot hold a prefix of length {len(w.prefix)}",
                suggested_depth=len(w.prefix))
        t = w.as_tensor(depth)
        x = TensorVector(basis, depth, t.tail, {t.prefix: ONE})
    return antisymmetrize(x, depth) if depth > 1 else x


def expand_vector(v: WedgeVector, depth: int | None = None) -> TensorVector:
    total = None
    for w, c in v.items():
        e = expand(v.basis, w, depth).scale(c)
        total = e if total is None else total + e
    if total is None:
        raise ValueError("cannot expand the zero wedge vector without a shape")
    return total


def _is_normal(key: tuple, tail) -> bool:
    if any(key[k] <= key[k + 1] for k in range(len(key) - 1)):
        return False
    return tail is None or not key or key[-1] > tail


def recognize(x: TensorVector) -> WedgeVector:
    """Inverse of ``expand`` at the depth of x.

    Expansions are unitriangular: the defining tensor carries coefficient 1 and
    no other normally ordered tensor occurs.  Peeling off normally ordered
    tensors therefore solves the linear system exactly; anything left over means
    x is not in the span of truncated wedges.
    """
    result = {}
    rest = x
    guard = 0
    while not rest.is_zero():
        normal = [k for k in rest.keys() if _is_normal(k, rest.tail)]
        if not normal:
            raise RecognitionFailure("remainder contains no normally ordered tensor")
        key = max(normal)
        c = rest[key]
        w = WedgeTerm(key, rest.tail)
        result[w] = c
        rest = rest - expand(x.basis, w, x.depth).scale(c)
        guard += 1
        if guard > 100000:
            raise RecognitionFailure("peeling did not terminate")
    return WedgeVector(x.basis, result)


# ---------------------------------------------------------------------------
# Young diagrams
# ---------------------------------------------------------------------------

def young_from_wedge(w: WedgeTerm) -> tuple[tuple, int]:
    """(partition, charge) with lambda_j = m_j - (s - j + 1), s the charge."""
    if w.tail is None:
        raise ValueError("only semi-infinite wedges correspond to Young diagrams")
    s = w.charge
    parts = tuple(m - (s - j) for j, m in enumerate(w.prefix))
    return tuple(p for p in parts if p), s


def wedge_from_young(partition: Iterable[int], charge: int, depth: int | None = None) -> WedgeTerm:
    parts = tuple(p for p in partition if p)
    if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)) or any(p < 0 for p in parts):
        raise ValueError(f"{parts} is not a partition")
    if depth is not None and depth < len(parts):
        raise TruncationTooShallow(f"depth {depth} cannot hold {len(parts)} rows")
    prefix = tuple(lam + charge - j for j, lam in enumerate(parts))
    return WedgeTerm(prefix, charge - len(parts))


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

def flat_counts(prefix: Iterable[int], tail: int | None) -> dict:
    """h_j = #(factors equal to j) - #(factors equal to j+1), nonzero entries only.

    Grouping by flat index is what makes the count finite on semi-infinite
    tensors; only the top of the tail contributes (h_t = 1).
    """
    prefix = tuple(prefix)
    cand = set(prefix) | {v - 1 for v in prefix}
    if tail is not None:
        cand.add(tail)

    def cnt(v):
        return prefix.count(v) + (1 if tail is not None and v <= tail else 0)

    out = {}
    for j in cand:
        h = cnt(j) - cnt(j + 1)
        if h:
            out[j] = h
    return out


@dataclass
class Weight:
    graded: dict = field(default_factory=dict)    # (i, d) -> H_i(d), or i -> h_i
    total: dict = field(default_factory=dict)     # i -> H_i

    def level(self) -> int:
        return sum(self.total.values())


def weight(basis: Basis, w) -> Weight:
    """Weight of a wedge term or pure tensor.

    Affine: H_i(d) = h_j with j = i - n d (j = n - n d for i = 0), i.e. the
    pair z^d v_i, z^d v_{i+1} read through flat indices, v_0 meaning v_n.
    sl_infinity: h_i directly.
    """
    prefix, tail = (w.prefix, w.tail)
    h = flat_counts(prefix, tail)
    if basis.n is None:
        return Weight(dict(h), dict(h))
    n = basis.n
    graded = {}
    total = {i: 0 for i in range(n)}
    for j, v in h.items():
        i = j % n
        d = ((i or n) - j) // n
        graded[(i, d)] = v
        total[i] += v
    return Weight(graded, total)


def residue_weight(basis: Basis, values: Iterable[int], tail: int | None, i: int) -> int:
    """H_i (or h_i) of a sequence of factors followed by an optional vacuum tail."""
    r = basis.residue
    ri, ri1 = r(i), r(i + 1)
    h = 0
    for v in values:
        rv = r(v)
        if rv == ri:
            h += 1
        if rv == ri1:
            h -= 1
    if tail is not None and r(tail) == ri:
        h += 1
    return h


# ---------------------------------------------------------------------------
# stabilization probe
# ---------------------------------------------------------------------------

@dataclass
class ProbeReport:
    depths: tuple
    window: int
    compared: int
    stable: int
    unstable: list            # (tensor, coeff at L1, coeff at L2)
    lowest_unstable_degree: int | None

    def lines(self) -> list[str]:
        from .textio import format_tensor_key
        out = [f"depths {self.depths[0]} {self.depths[1]} window {self.window}",
               f"compared {self.compared} stable {self.stable} unstable {len(self.unstable)}",
               "lowest-unstable-degree "
               + ("none" if self.lowest_unstable_degree is None else str(self.lowest_unstable_degree))]
        for key, a, b in self.unstable:
            out.append(f"  {format_tensor_key(key)}: {a} | {b}")
        return out


def stability_probe(basis: Basis, w: WedgeTerm, L1: int, L2: int,
                    classical: bool = False) -> ProbeReport:
    """Compare expand(w, L1) with expand(w, L2) on tensors whose slots beyond
    L1 - margin already follow the vacuum tail (margin = n, or 1 for sl_infinity)."""
    if not L1 < L2:
        raise ValueError("need L1 < L2")
    margin = basis.n or 1
    window = L1 - margin
    a = expand(basis, w, L1).truncate(L2)
    b = expand(basis, w, L2)
    if classical:
        a, b = a.eval_q1(), b.eval_q1()
    keys = set()
    for k in list(a.keys()) + list(b.keys()):
        if PureTensor(k, b.tail).core_length() <= window:
            keys.add(k)
    unstable = []
    lowest = None
    for k in sorted(keys, reverse=True):
        ca, cb = a[k], b[k]
        if ca != cb:
            unstable.append((k, ca, cb))
            deg = (ca - cb).min_degree()
            lowest = deg if lowest is None else min(lowest, deg)
    return ProbeReport((L1, L2), window, len(keys), len(keys) - len(unstable), unstable, lowest)
