"""Right action of the finite Hecke algebra H_d(q^2) on tensors of evaluation modules.

The generator T_i acts on slots i, i+1.  In flat coordinates the action is a
signed swap plus (q^2 - 1) times a short list of index pairs; those pairs are
obtained once per (a, b) by exact division of the two-variable numerators by
(z_i - z_{i+1}) and cached.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .coeff import LaurentQ, ONE, PolyZ, qpow
from .errors import BoundaryViolation, SizeCap
from .fock import Basis, TensorVector, _Acc

MAX_WIDTH = 9

_Q2_MINUS_1 = LaurentQ({2: 1, 0: -1})
_MINUS_Q = qpow(1, -1)
_MINUS_ONE = LaurentQ.const(-1)
_Z1_MINUS_Z2 = PolyZ.difference(2, 1, 2)


@lru_cache(maxsize=None)
def pair_action(n: int | None, a: int, b: int) -> tuple:
    """(v_a (x) v_b) . T as a tuple of ((a', b'), coefficient)."""
    basis = Basis(n)
    ca, j = basis.unflatten(a)
    cb, k = basis.unflatten(b)
    out = {(b, a): _MINUS_ONE if ca == cb else _MINUS_Q}
    if ca < cb:
        # (z_2 z^sigma - z_1 z) / (z_1 - z_2)
        num = PolyZ.monomial((k, j + 1)) - PolyZ.monomial((j + 1, k))
    else:
        # z_1 (z^sigma - z) / (z_1 - z_2)
        num = PolyZ.monomial((k + 1, j)) - PolyZ.monomial((j + 1, k))
    quotient = num.divide_exact(_Z1_MINUS_Z2)
    for (p, r), c in quotient.items():
        key = (basis.flatten(ca, p), basis.flatten(cb, r))
        term = _Q2_MINUS_1 * (-int(c))
        out[key] = out[key] + term if key in out else term
    return tuple((key, c) for key, c in out.items() if c)


def apply_Ti(x: TensorVector, i: int) -> TensorVector:
    """x . T_i, acting on the 1-based slots i and i+1."""
    if i < 1 or i + 1 > x.depth:
        raise BoundaryViolation(
            f"T_{i} needs slots {i}, {i + 1} but only {x.depth} are stored",
            suggested_depth=i + 1)
    n = x.basis.n
    k = i - 1
    acc = _Acc()
    for key, coeff in x.items():
        for (a2, b2), c in pair_action(n, key[k], key[k + 1]):
            acc.add(key[:k] + (a2, b2) + key[k + 2:], coeff, c)
    return TensorVector._raw(x.basis, x.depth, x.tail, acc.result())


class Permutation:
    """Element of S_d in one-line notation, acting on positions from the right:
    (x . w)[p] = x[w[p]].  ``word`` is a reduced word in adjacent transpositions
    (1-based), so T_w = T_{word[0]} T_{word[1]} ..."""

    __slots__ = ("oneline", "_word")

    def __init__(self, oneline: Sequence[int]):
        self.oneline = tuple(oneline)
        if sorted(self.oneline) != list(range(len(self.oneline))):
            raise ValueError("not a permutation of 0..d-1")
        self._word = None

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(d))

    @classmethod
    def from_word(cls, word: Iterable[int], d: int) -> "Permutation":
        w = list(range(d))
        for i in word:
            w[i - 1], w[i] = w[i], w[i - 1]
        return cls(w)

    @property
    def size(self) -> int:
        return len(self.oneline)

    @property
    def length(self) -> int:
        w = self.oneline
        return sum(1 for p in range(len(w)) for r in range(p + 1, len(w)) if w[p] > w[r])

    @property
    def word(self) -> tuple:
        if self._word is None:
            w = list(self.oneline)
            rev = []
            while True:
                for p in range(len(w) - 1):
                    if w[p] > w[p + 1]:
                        w[p], w[p + 1] = w[p + 1], w[p]
                        rev.append(p + 1)
                        break
                else:
                    break
            self._word = tuple(reversed(rev))
        return self._word

    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def act(self, seq: Sequence) -> tuple:
        return tuple(seq[p] for p in self.oneline) + tuple(seq[len(self.oneline):])

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.oneline == other.oneline

    def __hash__(self):
        return hash(self.oneline)

    def __repr__(self):
        return f"Permutation({self.oneline})"


def all_permutations(d: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(d))]


def apply_Tsigma(x: TensorVector, w) -> TensorVector:
    """x . T_w for a Permutation or an explicit (assumed reduced) word."""
    word = w.word if isinstance(w, Permutation) else tuple(w)
    for i in word:
        x = apply_Ti(x, i)
    return x


class HeckeElement:
    """Finite combination sum c_w T_w acting on tensors from the right."""

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def antisymmetrizer(cls, d: int) -> "HeckeElement":
        return cls({w: ONE for w in all_permutations(d)})

    def apply(self, x: TensorVector) -> TensorVector:
        total = TensorVector.zero(x.basis, x.depth, x.tail)
        for w, c in self.terms.items():
            total = total + apply_Tsigma(x, w).scale(c)
        return total


def _check_width(x: TensorVector, d: int):
    if d > MAX_WIDTH:
        raise SizeCap(f"width {d} exceeds the cap of {MAX_WIDTH}")
    if d > x.depth:
        raise BoundaryViolation(f"width {d} exceeds stored depth {x.depth}", suggested_depth=d)


def antisymmetrize(x: TensorVector, d: int | None = None) -> TensorVector:
    """sum over w in S_d of x . T_w, acting on the first d slots.

    Uses sum_{S_d} T_w = (sum_{S_{d-1}} T_u)(1 + T_{d-1} + T_{d-1}T_{d-2} + ...),
    a length-additive factorization into minimal coset representatives.
    """
    d = x.depth if d is None else d
    _check_width(x, d)
    y = x
    for m in range(2, d + 1):
        total = y
        z = y
        for i in range(m - 1, 0, -1):
            z = apply_Ti(z, i)
            total = total + z
        y = total
    return y


def signed_permutation_sum(x: TensorVector, d: int | None = None) -> TensorVector:
    """Classical antisymmetrization sum sgn(w) x.w (vectors and variables move together)."""
    d = x.depth if d is None else d
    _check_width(x, d)
    acc = _Acc()
    for w in all_permutations(d):
        s = LaurentQ.const(w.sign())
        for key, c in x.items():
            acc.add(w.act(key), c, s)
    return TensorVector._raw(x.basis, x.depth, x.tail, acc.result())


def coset_lemma_check(x: TensorVector, i: int, d: int | None = None) -> bool:
    """A(x . T_i) == q^2 A(x) for the width-d antisymmetrizer A."""
    d = x.depth if d is None else d
    if not 1 <= i < d:
        raise BoundaryViolation(f"T_{i} is not in H_{d}")
    lhs = antisymmetrize(apply_Ti(x, i), d)
    rhs = antisymmetrize(x, d).scale(qpow(2))
    return lhs == rhs
