"""Exact check that the finite classical wedge polynomial solves the sl_n KZ system.

With W the signed antisymmetrization of v_n (x) ... (x) v_1 (x) z v_n (x) ... (x)
z^{N-1} v_1 and F = prod_{k<l} (z_k - z_l)^{-1/n} W, the KZ equation for F is
equivalent to R_i(W) = 0 where

    R_i(W) = d/dz_i W - 1/(n+1) sum_{j != i} (P_ij + 1) W / (z_i - z_j).

Two facts give the reduction: d/dz_i log prod (z_k - z_l)^{-1/n} equals
-1/n sum_{j != i} 1/(z_i - z_j), and t_ij/(n+1) + 1/n = (P_ij + 1)/(n+1) for
t_ij = P_ij - 1/n.  The fractional prefactor is never represented.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .coeff import PolyZ, RationalZ
from .errors import SizeCap
from .fock import Basis, TensorVector
from .hecke import antisymmetrize

MAX_SLOTS = 8


class KZVector:
    """Letter tuple (entries 1..n) -> PolyZ in z_1..z_m; zero values are dropped."""

    __slots__ = ("n", "m", "_t")

    def __init__(self, n: int, m: int, terms: dict | None = None):
        self.n, self.m = n, m
        self._t = {}
        for key, p in (terms or {}).items():
            self._add(tuple(key), p)

    def _add(self, key, p):
        cur = self._t.get(key)
        p = p if cur is None else cur + p
        if p:
            self._t[key] = p
        else:
            self._t.pop(key, None)

    def items(self):
        return self._t.items()

    def keys(self):
        return self._t.keys()

    def __getitem__(self, key) -> PolyZ:
        return self._t.get(tuple(key), PolyZ(self.m))

    def __len__(self):
        return len(self._t)

    def is_zero(self):
        return not self._t

    def __add__(self, other):
        out = KZVector(self.n, self.m, self._t)
        for k, p in other._t.items():
            out._add(k, p)
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "KZVector":
        """Multiply by a rational number or by a PolyZ."""
        return KZVector(self.n, self.m, {k: p * c for k, p in self._t.items()})

    def map_polys(self, fn) -> "KZVector":
        return KZVector(self.n, self.m, {k: fn(p) for k, p in self._t.items()})

    def __eq__(self, other):
        if not isinstance(other, KZVector):
            return NotImplemented
        return (self.n, self.m, self._t) == (other.n, other.m, other._t)

    __hash__ = None

    def __repr__(self):
        return f"KZVector(n={self.n}, terms={len(self._t)})"


def _base(n: int, N: int, shift: int = 0):
    letters = tuple(n - (p % n) for p in range(n * N))
    exps = tuple(p // n + shift for p in range(n * N))
    return letters, exps


def _check_size(n, N):
    if n < 2 or N < 1:
        raise ValueError("need n >= 2 and N >= 1")
    if n * N > MAX_SLOTS:
        raise SizeCap(f"nN = {n * N} exceeds the cap of {MAX_SLOTS}")


def finite_wedge_poly(n: int, N: int, shift: int = 0) -> KZVector:
    """sum over sigma of sgn(sigma) sigma(v_n (x) ... (x) z^{N-1} v_1), moving vectors and
    variables together.  ``shift`` raises every exponent (shift=1 is the second form)."""
    _check_size(n, N)
    m = n * N
    letters, exps = _base(n, N, shift)
    out = KZVector(n, m)
    for perm in itertools.permutations(range(m)):
        # factor p goes to slot perm[p]
        inv = sum(1 for a in range(m) for b in range(a + 1, m) if perm[a] > perm[b])
        key = [0] * m
        e = [0] * m
        for p in range(m):
            key[perm[p]] = letters[p]
            e[perm[p]] = exps[p]
        out._add(tuple(key), PolyZ.monomial(e, -1 if inv % 2 else 1))
    return out


def finite_wedge_poly_hecke(n: int, N: int, shift: int = 0) -> KZVector:
    """Same polynomial through the flat-index Hecke antisymmetrizer at q = 1."""
    _check_size(n, N)
    m = n * N
    basis = Basis(n)
    letters, exps = _base(n, N, shift)
    flat = tuple(basis.flatten(a, b) for a, b in zip(letters, exps))
    x = TensorVector(basis, m, None, {flat: 1})
    y = (antisymmetrize(x) if m > 1 else x).eval_q1()
    out = KZVector(n, m)
    for key, c in y.items():
        parts = [basis.unflatten(v) for v in key]
        out._add(tuple(a for a, _ in parts), PolyZ.monomial([b for _, b in parts], c.eval_q1()))
    return out


@dataclass(frozen=True)
class ExchangeOperator:
    """P_ij swaps the vectors (not the variables) in slots i, j; t_ij = P_ij - 1/n."""

    i: int
    j: int
    mode: str = "P"

    def __post_init__(self):
        if self.i == self.j or min(self.i, self.j) < 1:
            raise ValueError("exchange needs two distinct 1-based slots")
        if self.mode not in ("P", "t"):
            raise ValueError("mode is 'P' or 't'")


def apply_exchange(op: ExchangeOperator, x: KZVector) -> KZVector:
    if max(op.i, op.j) > x.m:
        raise ValueError(f"slot {max(op.i, op.j)} beyond {x.m}")
    a, b = op.i - 1, op.j - 1
    out = KZVector(x.n, x.m)
    for key, p in x.items():
        k = list(key)
        k[a], k[b] = k[b], k[a]
        out._add(tuple(k), p)
    if op.mode == "t":
        out = out - x.scale(Fraction(1, x.n))
    return out


def kz_residual(x: KZVector, n: int, i: int) -> dict:
    """Cleared residual prod_{j != i}(z_i - z_j) * R_i(x), per letter tuple.

    Every (P_ij + 1) x must be divisible by z_i - z_j; NotDivisible otherwise.
    An empty dict means the equation holds at slot i.
    """
    m = x.m
    if not 1 <= i <= m:
        raise ValueError(f"slot {i} outside 1..{m}")
    others = [j for j in range(1, m + 1) if j != i]
    clear = PolyZ.const(m)
    for j in others:
        clear = clear * PolyZ.difference(m, i, j)
    total = x.map_polys(lambda p: p.derivative(i) * clear)
    c = Fraction(1, n + 1)
    for j in others:
        sym = apply_exchange(ExchangeOperator(i, j), x) + x
        rest = PolyZ.const(m)
        for k in others:
            if k != j:
                rest = rest * PolyZ.difference(m, i, k)
        dij = PolyZ.difference(m, i, j)
        for p in sym._t.values():
            p.divide_exact(dij)     # raises NotDivisible
        total = total - sym.map_polys(lambda p: p * rest).scale(c)
    return dict(total.items())


def kz_residual_rational(x: KZVector, n: int, i: int) -> dict:
    """R_i(x) kept as exact rational functions (independent of the cleared route)."""
    m = x.m
    c = Fraction(1, n + 1)
    keys = set(x.keys())
    for j in range(1, m + 1):
        if j != i:
            keys |= set(apply_exchange(ExchangeOperator(i, j), x).keys())
    out = {}
    for key in keys:
        r = RationalZ(x[key].derivative(i))
        for j in range(1, m + 1):
            if j == i:
                continue
            sym = apply_exchange(ExchangeOperator(i, j), x)[key] + x[key]
            r = r - RationalZ(sym * c, {(i, j): 1})
        if not r.is_zero():
            out[key] = r
    return out


def slot_results(n: int, N: int) -> list:
    """[(slot, passed, first nonzero cleared polynomial or None)] for the wedge polynomial."""
    w = finite_wedge_poly(n, N)
    out = []
    for i in range(1, n * N + 1):
        res = kz_residual(w, n, i)
        first = None
        if res:
            key = min(res)
            first = (key, res[key])
        out.append((i, not res, first))
    return out


def monomial_all(m: int) -> PolyZ:
    return PolyZ.monomial([1] * m)
