"""Flat-index bookkeeping, pure tensors with vacuum tails, sparse tensor vectors.

Every basis vector z^j v_i of the evaluation module V(z) is stored as the single
integer m = i - n*j.  With ``n=None`` the same integers label the basis of
C^infinity directly (the U_q(sl_infinity) picture, no z-variables).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .coeff import LaurentQ, ONE
from .errors import LetterOutOfRange, TruncationTooShallow


@dataclass(frozen=True)
class Basis:
    """Rank context: ``n`` for U_q(sl^_n) evaluation modules, ``None`` for sl_infinity."""

    n: int | None = None

    def __post_init__(self):
        if self.n is not None and self.n < 2:
            raise ValueError("rank n must be at least 2")

    @property
    def affine(self) -> bool:
        return self.n is not None

    def letter(self, m: int) -> int:
        if self.n is None:
            return m
        return (m - 1) % self.n + 1

    def exponent(self, m: int) -> int:
        if self.n is None:
            return 0
        return (self.letter(m) - m) // self.n

    def unflatten(self, m: int) -> tuple[int, int]:
        return self.letter(m), self.exponent(m)

    def flatten(self, letter: int, exponent: int = 0) -> int:
        if self.n is None:
            if exponent:
                raise LetterOutOfRange("sl_infinity basis vectors carry no z-exponent")
            return letter
        if not 1 <= letter <= self.n:
            raise LetterOutOfRange(f"letter {letter} outside 1..{self.n}")
        return letter - self.n * exponent

    def residue(self, m: int) -> int:
        """Class used by generator actions: m mod n, or m itself for sl_infinity."""
        return m if self.n is None else m % self.n

    def vacuum_start(self, i: int) -> int:
        """Flat index of the first factor of the vacuum of class i.

        Affine: z v_i with i = 0 read as n, i.e. i - n.  sl_infinity: v_i.
        """
        if self.n is None:
            return i
        if not 0 <= i < self.n:
            raise ValueError(f"class {i} outside 0..{self.n - 1}")
        return (i or self.n) - self.n

    def charge_class(self, s: int) -> int:
        """Weight class of a vacuum starting at flat index s."""
        return s if self.n is None else s % self.n


SL_INF = Basis(None)


def flatten(letter: int, exponent: int, n: int) -> int:
    return Basis(n).flatten(letter, exponent)


def unflatten(m: int, n: int) -> tuple[int, int]:
    return Basis(n).unflatten(m)


@dataclass(frozen=True)
class PureTensor:
    """Stored prefix of flat indices; with ``tail=t`` the slots after the prefix
    hold t, t-1, t-2, ...  (``tail=None``: a finite tensor)."""

    prefix: tuple
    tail: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))

    @property
    def depth(self) -> int:
        return len(self.prefix)

    def slot(self, r: int) -> int:
        """Value in 1-based slot r, reading into the tail if needed."""
        if r <= len(self.prefix):
            return self.prefix[r - 1]
        if self.tail is None:
            raise IndexError(r)
        return self.tail - (r - len(self.prefix) - 1)

    def core_length(self) -> int:
        """Number of leading slots that cannot be absorbed into the tail."""
        if self.tail is None:
            return len(self.prefix)
        k = len(self.prefix)
        expected = self.tail + 1
        while k and self.prefix[k - 1] == expected:
            k -= 1
            expected += 1
        return k

    def truncate(self, depth: int) -> "PureTensor":
        """Unroll the tail to ``depth`` slots; stored slots are never dropped."""
        if depth < len(self.prefix):
            raise TruncationTooShallow(
                f"depth {depth} is below the {len(self.prefix)} stored slots")
        return PureTensor(*_retruncate(self.prefix, self.tail, depth))

    def canonical(self) -> "PureTensor":
        return PureTensor(*_retruncate(self.prefix, self.tail, self.core_length()))

    @property
    def charge(self) -> int:
        """Flat start of the vacuum this tensor agrees with eventually."""
        if self.tail is None:
            raise ValueError("finite tensor has no charge")
        return self.tail + len(self.prefix)


def _retruncate(prefix: tuple, tail, depth: int) -> tuple[tuple, int | None]:
    if tail is None:
        raise TruncationTooShallow("finite tensors have no tail to unroll")
    L = len(prefix)
    if depth >= L:
        return prefix + tuple(tail - k for k in range(depth - L)), tail - (depth - L)
    # cutting: the dropped slots must already follow the tail pattern
    for k in range(depth, L):
        if prefix[k] != tail + (L - k):
            raise TruncationTooShallow(
                f"slot {k + 1} differs from the vacuum tail; depth {depth} is too shallow")
    return prefix[:depth], tail + (L - depth)


def vacuum_tensor(basis: Basis, i: int, depth: int) -> PureTensor:
    if depth < 1:
        raise ValueError("depth must be at least 1")
    s = basis.vacuum_start(i)
    return PureTensor(tuple(s - k for k in range(depth)), s - depth)


class _Acc:
    """Accumulator of key -> Laurent coefficients as plain exponent dicts."""

    __slots__ = ("d",)

    def __init__(self):
        self.d: dict = {}

    def add(self, key, coeff: LaurentQ, scale: LaurentQ | None = None):
        slot = self.d.get(key)
        if slot is None:
            slot = self.d[key] = {}
        if scale is None:
            for e, c in coeff.items():
                slot[e] = slot.get(e, 0) + c
        else:
            for e1, c1 in coeff.items():
                for e2, c2 in scale.items():
                    e = e1 + e2
                    slot[e] = slot.get(e, 0) + c1 * c2

    def result(self) -> dict:
        out = {}
        for k, t in self.d.items():
            t = {e: c for e, c in t.items() if c}
            if t:
                out[k] = LaurentQ._raw(t)
        return out


class TensorVector:
    """Finite linear combination of pure tensors sharing one depth and tail."""

    __slots__ = ("basis", "depth", "tail", "_terms")

    def __init__(self, basis: Basis, depth: int, tail: int | None,
                 terms: Mapping[tuple, LaurentQ] | None = None):
        self.basis = basis
        self.depth = depth
        self.tail = tail
        t = {}
        for k, c in (terms or {}).items():
            k = tuple(k)
            if len(k) != depth:
                raise ValueError(f"tensor {k} does not have depth {depth}")
            if not isinstance(c, LaurentQ):
                c = LaurentQ.const(c)
            if c:
                t[k] = c
        self._terms = t

    @classmethod
    def _raw(cls, basis, depth, tail, terms):
        obj = cls.__new__(cls)
        obj.basis, obj.depth, obj.tail, obj._terms = basis, depth, tail, terms
        return obj

    @classmethod
    def from_pure(cls, basis: Basis, t: PureTensor, coeff: LaurentQ = ONE) -> "TensorVector":
        return cls(basis, t.depth, t.tail, {t.prefix: coeff})

    @classmethod
    def zero(cls, basis: Basis, depth: int, tail: int | None) -> "TensorVector":
        return cls._raw(basis, depth, tail, {})

    @classmethod
    def of(cls, basis: Basis, *prefixes, tail: int | None = None) -> "TensorVector":
        """Sum of the given pure tensors with coefficient 1 each."""
        depth = len(prefixes[0])
        acc = _Acc()
        for p in prefixes:
            acc.add(tuple(p), ONE)
        return cls._raw(basis, depth, tail, acc.result())

    # -- access -------------------------------------------------------------
    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._terms)

    def __getitem__(self, key) -> LaurentQ:
        return self._terms.get(tuple(key), LaurentQ())

    def is_zero(self) -> bool:
        return not self._terms

    def pure_tensors(self) -> Iterable[PureTensor]:
        for k in self._terms:
            yield PureTensor(k, self.tail)

    # -- algebra ------------------------------------------------------------
    def _compatible(self, other: "TensorVector") -> tuple["TensorVector", "TensorVector"]:
        if self.basis != other.basis:
            raise ValueError("tensor vectors over different bases")
        if self.tail is None or other.tail is None:
            if self.tail != other.tail or self.depth != other.depth:
                raise ValueError("finite tensor vectors of different shape")
            return self, other
        if self.charge_ok(other):
            d = max(self.depth, other.depth)
            return self.truncate(d), other.truncate(d)
        raise ValueError("tensor vectors with different tail classes")

    def charge_ok(self, other: "TensorVector") -> bool:
        return self.tail + self.depth == other.tail + other.depth

    def __add__(self, other: "TensorVector") -> "TensorVector":
        a, b = self._compatible(other)
        acc = _Acc()
        for k, c in a._terms.items():
            acc.add(k, c)
        for k, c in b._terms.items():
            acc.add(k, c)
        return TensorVector._raw(a.basis, a.depth, a.tail, acc.result())

    def __neg__(self):
        return self.scale(LaurentQ.const(-1))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorVector":
        if isinstance(c, int):
            c = LaurentQ.const(c)
        if not c:
            return TensorVector.zero(self.basis, self.depth, self.tail)
        return TensorVector._raw(self.basis, self.depth, self.tail,
                                 {k: v * c for k, v in self._terms.items()})

    __mul__ = scale

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        try:
            a, b = self._compatible(other)
        except ValueError:
            return self.is_zero() and other.is_zero()
        return a._terms == b._terms

    __hash__ = None

    def truncate(self, depth: int) -> "TensorVector":
        if depth == self.depth:
            return self
        if self.tail is None:
            raise TruncationTooShallow("finite tensors have no tail to unroll")
        terms = {}
        for k, c in self._terms.items():
            nk, _ = _retruncate(k, self.tail, depth)
            terms[nk] = c
        new_tail = self.tail + self.depth - depth
        return TensorVector._raw(self.basis, depth, new_tail, terms)

    def eval_q1(self) -> "TensorVector":
        """Classical specialization q = 1 (coefficients become constants)."""
        acc = {}
        for k, c in self._terms.items():
            v = c.eval_q1()
            if v:
                acc[k] = LaurentQ.const(v)
        return TensorVector._raw(self.basis, self.depth, self.tail, acc)

    def map_keys(self, fn) -> "TensorVector":
        acc = _Acc()
        for k, c in self._terms.items():
            acc.add(tuple(fn(k)), c)
        return TensorVector._raw(self.basis, self.depth, self.tail, acc.result())

    def __repr__(self):
        from .textio import format_tensor_vector
        return f"TensorVector({format_tensor_vector(self)!r})"
