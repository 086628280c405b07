"""Exact coefficient rings.

``LaurentQ`` is the Laurent polynomial ring Z[q, q^-1] used for every
coefficient in the Hecke and quantum-group code.  ``PolyZ`` is a sparse
multivariate Laurent polynomial in z_1..z_d over Q, and ``RationalZ`` a
quotient whose denominator is a product of (z_i - z_j) factors; both are only
needed by the KZ verification.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotDivisible, ParseError


class LaurentQ:
    """Immutable Laurent polynomial in q with integer coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = int(c)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "LaurentQ":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentQ":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> "LaurentQ":
        return cls.monomial(0, c)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def min_degree(self) -> int:
        return min(self._t)

    def max_degree(self) -> int:
        return max(self._t)

    def eval_q1(self) -> int:
        """Substitute q = 1."""
        return sum(self._t.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentQ.const(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentQ":
        if isinstance(x, LaurentQ):
            return x
        if isinstance(x, int):
            return LaurentQ.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentQ")

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LaurentQ._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentQ._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentQ._raw({})
            return LaurentQ._raw({e: c * other for e, c in self._t.items()})
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentQ._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentQ.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LaurentQ":
        """Inverse of a unit; only monomials with coefficient +-1 are units."""
        if len(self._t) != 1:
            raise ZeroDivisionError(f"{self} is not a unit in Z[q, q^-1]")
        (e, c), = self._t.items()
        if c not in (1, -1):
            raise ZeroDivisionError(f"{self} is not a unit in Z[q, q^-1]")
        return LaurentQ._raw({-e: c})

    def shift(self, k: int) -> "LaurentQ":
        """Multiply by q^k."""
        return LaurentQ._raw({e + k: c for e, c in self._t.items()})

    # -- text ---------------------------------------------------------------
    def _monomial_strings(self):
        for e in sorted(self._t, reverse=True):
            c = self._t[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            yield c < 0, body

    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = []
        for neg, body in self._monomial_strings():
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentQ({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentQ":
        return parse_laurent(text)


ZERO = LaurentQ()
ONE = LaurentQ.const(1)
Q = LaurentQ.monomial(1)


def qpow(k: int, coeff: int = 1) -> LaurentQ:
    return LaurentQ.monomial(k, coeff)


def quantum_int(m: int) -> LaurentQ:
    """[m]_q = (q^m - q^-m)/(q - q^-1), for any integer m."""
    if m == 0:
        return ZERO
    sign = 1 if m > 0 else -1
    m = abs(m)
    return LaurentQ({m - 1 - 2 * k: sign for k in range(m)})


def quantum_binomial(m: int, k: int) -> LaurentQ:
    """Gaussian binomial [m choose k]_q in the symmetric normalization."""
    if k < 0 or k > m:
        return ZERO
    num = ONE
    den = ONE
    for r in range(k):
        num = num * quantum_int(m - r)
        den = den * quantum_int(r + 1)
    return _exact_div_laurent(num, den)


def _exact_div_laurent(a: LaurentQ, b: LaurentQ) -> LaurentQ:
    # long division on Laurent polynomials, highest degree first
    if b.is_zero():
        raise ZeroDivisionError
    quot: dict = {}
    rem = a
    bmax = b.max_degree()
    bc = b._t[bmax]
    while rem:
        e = rem.max_degree()
        c = rem._t[e]
        if c % bc or e - bmax < a.min_degree() - b.min_degree():
            raise NotDivisible(f"{a} is not divisible by {b}")
        m = LaurentQ.monomial(e - bmax, c // bc)
        quot[e - bmax] = c // bc
        rem = rem - m * b
    return LaurentQ(quot)


_LQ_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*(q(?:\s*\^\s*(-?\d+))?)?\s*")


def parse_laurent(text: str) -> LaurentQ:
    """Parse the canonical text form, e.g. ``q^2 - 1`` or ``-3*q^-1 + q``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    pos = 0
    terms: dict = {}
    first = True
    while pos < len(s):
        m = _LQ_TERM.match(s, pos)
        sign, num, star, qpart, exp = m.groups()
        if not num and not qpart:
            raise ParseError(f"expected a q-monomial in {text!r}", pos)
        if star and not (num and qpart):
            raise ParseError(f"misplaced '*' in {text!r}", pos)
        if sign is None and not first:
            raise ParseError(f"expected '+' or '-' in {text!r}", pos)
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = 0
        if qpart:
            e = int(exp) if exp is not None else 1
        terms[e] = terms.get(e, 0) + c
        first = False
        pos = m.end()
    return LaurentQ(terms)


# ---------------------------------------------------------------------------
# Multivariate polynomials in z_1..z_d
# ---------------------------------------------------------------------------

def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class PolyZ:
    """Sparse Laurent polynomial in z_1..z_nvars with rational coefficients.

    Exponent vectors are tuples of length ``nvars``; variable ``i`` in the
    public API is 1-based, matching z_1, z_2, ...
    """

    __slots__ = ("nvars", "_t")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                c = _as_fraction(c)
                if c:
                    if len(e) != nvars:
                        raise ValueError("exponent vector has wrong length")
                    t[tuple(e)] = c
        self._t = t

    @classmethod
    def _raw(cls, nvars, t):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._t = t
        return obj

    @classmethod
    def const(cls, nvars: int, c=1) -> "PolyZ":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "PolyZ":
        e = [0] * nvars
        e[i - 1] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Iterable[int], c=1) -> "PolyZ":
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    @classmethod
    def difference(cls, nvars: int, i: int, j: int) -> "PolyZ":
        """z_i - z_j."""
        return cls.var(nvars, i) - cls.var(nvars, j)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyZ.const(self.nvars, other)
        if not isinstance(other, PolyZ):
            return NotImplemented
        return self.nvars == other.nvars and self._t == other._t

    def __hash__(self):
        return hash((self.nvars, frozenset(self._t.items())))

    def _check(self, other) -> "PolyZ":
        if isinstance(other, (int, Fraction)):
            return PolyZ.const(self.nvars, other)
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return PolyZ._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return PolyZ._raw(self.nvars, {e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if not other:
                return PolyZ._raw(self.nvars, {})
            return PolyZ._raw(self.nvars, {e: c * other for e, c in self._t.items()})
        other = self._check(other)
        t: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return PolyZ._raw(self.nvars, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def derivative(self, i: int) -> "PolyZ":
        """Formal partial derivative with respect to z_i (1-based)."""
        k = i - 1
        t = {}
        for e, c in self._t.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                t[tuple(ne)] = c * e[k]
        return PolyZ._raw(self.nvars, t)

    def substitute(self, i: int, j: int) -> "PolyZ":
        """Replace z_i by z_j."""
        t: dict = {}
        a, b = i - 1, j - 1
        for e, c in self._t.items():
            ne = list(e)
            ne[b] += ne[a]
            ne[a] = 0
            ne = tuple(ne)
            t[ne] = t.get(ne, 0) + c
        return PolyZ._raw(self.nvars, {e: c for e, c in t.items() if c})

    def permute_vars(self, perm: Mapping[int, int]) -> "PolyZ":
        """Rename z_i -> z_perm[i] (1-based, perm a bijection on its support)."""
        t = {}
        for e, c in self._t.items():
            ne = list(e)
            for src, dst in perm.items():
                ne[dst - 1] = e[src - 1]
            t[tuple(ne)] = c
        return PolyZ._raw(self.nvars, t)

    def _split_monomial(self):
        # self = z^lo * P with P a polynomial not divisible by any variable
        lo = [min(e[k] for e in self._t) for k in range(self.nvars)]
        poly = {tuple(a - b for a, b in zip(e, lo)): c for e, c in self._t.items()}
        return tuple(lo), poly

    def divide_exact(self, other: "PolyZ") -> "PolyZ":
        """Exact quotient; raises NotDivisible when a remainder is left."""
        other = self._check(other)
        if not other._t:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._t:
            return PolyZ._raw(self.nvars, {})
        lo_a, a = self._split_monomial()
        lo_b, b = other._split_monomial()
        # multivariate division in lex order on genuine polynomials
        lead_b = max(b)
        cb = b[lead_b]
        rem = dict(a)
        quot: dict = {}
        while rem:
            lead = max(rem)
            shift = tuple(x - y for x, y in zip(lead, lead_b))
            if any(s < 0 for s in shift):
                raise NotDivisible(f"{self} is not divisible by {other}")
            c = rem[lead] / cb
            quot[shift] = c
            for e, cc in b.items():
                ne = tuple(x + y for x, y in zip(e, shift))
                v = rem.get(ne, 0) - c * cc
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        off = tuple(x - y for x, y in zip(lo_a, lo_b))
        return PolyZ._raw(self.nvars, {tuple(x + y for x, y in zip(e, off)): c
                                       for e, c in quot.items()})

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for e in sorted(self._t, reverse=True):
            c = self._t[e]
            mono = "*".join(
                (f"z_{k + 1}" if p == 1 else f"z_{k + 1}^{p}")
                for k, p in enumerate(e) if p
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"PolyZ({self.nvars}, {str(self)!r})"


class RationalZ:
    """numerator / prod (z_i - z_j)^k, with i < j stored as the factor key."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyZ, den: Mapping[tuple, int] | None = None):
        self.num = num
        d = {}
        for (i, j), k in (den or {}).items():
            if i == j:
                raise ZeroDivisionError("factor z_i - z_i")
            if i > j:
                # (z_i - z_j) = -(z_j - z_i)
                if k % 2:
                    num = -num
                i, j = j, i
            d[(i, j)] = d.get((i, j), 0) + k
        self.num = num
        self.den = {f: k for f, k in d.items() if k}

    def _den_poly(self, den) -> PolyZ:
        p = PolyZ.const(self.num.nvars)
        for (i, j), k in den.items():
            for _ in range(k):
                p = p * PolyZ.difference(self.num.nvars, i, j)
        return p

    def __add__(self, other: "RationalZ") -> "RationalZ":
        common = dict(self.den)
        for f, k in other.den.items():
            common[f] = max(common.get(f, 0), k)
        a = self.num * self._den_poly({f: k - self.den.get(f, 0) for f, k in common.items()})
        b = other.num * self._den_poly({f: k - other.den.get(f, 0) for f, k in common.items()})
        return RationalZ(a + b, common)

    def __neg__(self):
        return RationalZ(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "RationalZ":
        return RationalZ(self.num * c, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalZ):
            return NotImplemented
        # cross-multiplication
        return (self.num * self._den_poly(other.den)) == (other.num * self._den_poly(self.den))

    def __hash__(self):
        raise TypeError("RationalZ is unhashable")
