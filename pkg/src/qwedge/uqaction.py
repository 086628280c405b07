"""Chevalley generators of U_q(sl_infinity) and U_q(sl^_n) acting on tensors and wedges.

Both algebras act on flat indices through one rule.  Let r be the residue map
(identity for sl_infinity, m mod n for the affine algebra).  Then

* E_i moves a factor m with r(m) = r(i+1) to m - 1, times q^{wt_i(factors after)};
* F_i moves a factor m with r(m) = r(i) to m + 1, times q^{-wt_i(factors before)};
* K_i multiplies by q^{wt_i(all factors)},

where wt_i counts residue i minus residue i+1 and a vacuum tail starting at t
contributes [r(t) = r(i)] (the finite residue of the tail, which is how the
infinite product of K's is evaluated).  Graded pieces E_i(d), F_i(d), H_i(d)
touch a single flat index each and so act finitely on semi-infinite tensors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .coeff import LaurentQ, ONE, qpow, quantum_binomial, quantum_int
from .errors import DivergentAction
from .fock import Basis, TensorVector, _Acc
from .wedge import WedgeVector, flat_counts, straighten

KINDS = ("E", "F", "K", "Kinv", "H")


@dataclass(frozen=True)
class Generator:
    """kind in E, F, K, Kinv, H; ``d`` selects a graded piece; ``sl_inf`` picks e_i, f_i, k_i."""

    kind: str
    i: int
    d: int | None = None
    sl_inf: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.d is not None and (self.sl_inf or self.kind not in ("E", "F", "H")):
            raise ValueError("graded pieces exist only for affine E, F, H")

    def __str__(self):
        name = self.kind.lower() if self.sl_inf else self.kind
        return f"{name}[{self.i}]" if self.d is None else f"{name}[{self.i};{self.d}]"


def e(i):
    return Generator("E", i, sl_inf=True)


def f(i):
    return Generator("F", i, sl_inf=True)


def k(i):
    return Generator("K", i, sl_inf=True)


def _residue(g: Generator, basis: Basis):
    if g.sl_inf:
        return lambda m: m
    if basis.n is None:
        raise ValueError(f"{g} needs a rank n")
    n = basis.n
    return lambda m: m % n


def _index(g: Generator, basis: Basis) -> int:
    return g.i if g.sl_inf else g.i % basis.n


def _wt(values, tail, r, i) -> int:
    ri, ri1 = r(i), r(i + 1)
    h = 0
    for v in values:
        rv = r(v)
        h += (rv == ri) - (rv == ri1)
    if tail is not None and r(tail) == ri:
        h += 1
    return h


def _graded_source(g: Generator, n: int) -> int:
    """Flat index touched by E_i(d), F_i(d) or H_i(d)."""
    i, d = g.i % n, g.d
    if g.kind == "E":
        return i + 1 - n * d
    return (i or n) - n * d


def _extend_for(x: TensorVector, value: int) -> TensorVector:
    # store enough slots that `value` is no longer hidden in the tail
    if x.tail is not None and value <= x.tail:
        return x.truncate(x.depth + (x.tail - value) + 1)
    return x


def act(g: Generator, x: TensorVector, tail: str = "strict", classical: bool = False) -> TensorVector:
    """Action of a generator on a tensor vector.

    ``tail`` governs ungraded affine E_i, F_i on semi-infinite tensors, where
    the honest action is an infinite sum: "strict" raises DivergentAction and
    "omit" keeps only the stored slots (the K-tail factor is still applied).
    ``classical`` evaluates every coefficient at q = 1.
    """
    basis = x.basis
    r = _residue(g, basis)
    i = _index(g, basis)
    if g.kind in ("K", "Kinv", "H") and g.d is None:
        return _diagonal(g, x, r, i, classical)
    if g.d is not None:
        n = basis.n
        src = _graded_source(g, n)
        if g.kind == "H":
            return _graded_h(x, src, i, n, classical)
        x = _extend_for(x, src)
        hit = lambda m: m == src
    else:
        target = r(i + 1) if g.kind == "E" else r(i)
        if x.tail is not None:
            if g.sl_inf:
                x = _extend_for(x, i)
            elif tail == "strict":
                raise DivergentAction(
                    f"{g} on a semi-infinite tensor is an infinite sum; use graded pieces or tail='omit'")
            elif tail != "omit":
                raise ValueError(f"unknown tail policy {tail!r}")
        hit = lambda m: r(m) == target
    step = -1 if g.kind == "E" else 1
    acc = _Acc()
    for key, c in x.items():
        for p, m in enumerate(key):
            if not hit(m):
                continue
            if g.kind == "E":
                w = _wt(key[p + 1:], x.tail, r, i)
            else:
                w = -_wt(key[:p], None, r, i)
            coeff = ONE if classical else qpow(w)
            acc.add(key[:p] + (m + step,) + key[p + 1:], c, coeff)
    return TensorVector._raw(basis, x.depth, x.tail, acc.result())


def _diagonal(g, x, r, i, classical) -> TensorVector:
    acc = _Acc()
    for key, c in x.items():
        h = _wt(key, x.tail, r, i)
        if g.kind == "H":
            s = LaurentQ.const(h)
        elif classical:
            s = ONE
        else:
            s = qpow(h if g.kind == "K" else -h)
        acc.add(key, c, s)
    return TensorVector._raw(x.basis, x.depth, x.tail, acc.result())


def _graded_h(x, j, i, n, classical) -> TensorVector:
    acc = _Acc()
    for key, c in x.items():
        h = flat_counts(key, x.tail).get(j, 0)
        acc.add(key, c, LaurentQ.const(h))
    return TensorVector._raw(x.basis, x.depth, x.tail, acc.result())


def weight_factor(g: Generator, x: TensorVector) -> int:
    """Integer H_i of a pure-weight tensor vector (raises if x mixes weights)."""
    r = _residue(g, x.basis)
    i = _index(g, x.basis)
    vals = {_wt(k, x.tail, r, i) for k in x.keys()}
    if len(vals) != 1:
        raise ValueError("tensor vector is not a weight vector")
    return vals.pop()


def act_on_wedge(g: Generator, w: WedgeVector, classical: bool = False) -> WedgeVector:
    """Act on the defining tensor of each wedge, then straighten.

    One tail slot is unrolled first.  Deeper tail slots contribute nothing:
    E or F applied there produces two equal adjacent factors.
    """
    total = WedgeVector(w.basis)
    for term, c in w.items():
        if term.tail is None:
            x = TensorVector(w.basis, len(term.prefix), None, {term.prefix: c})
        else:
            t = term.as_tensor(len(term.prefix) + 1)
            x = TensorVector(w.basis, t.depth, t.tail, {t.prefix: c})
        y = act(g, x, tail="omit", classical=classical)
        total = total + straighten(y)
    return total


def act_word(word, x: TensorVector, **kw) -> TensorVector:
    """Apply generators right to left: act_word([a, b], x) = a . (b . x)."""
    for g in reversed(list(word)):
        x = act(g, x, **kw)
    return x


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

def cartan(n: int | None, i: int, j: int) -> int:
    """Cartan matrix entry: sl_infinity when n is None, affine sl_n otherwise."""
    if n is None:
        return 2 if i == j else (-1 if abs(i - j) == 1 else 0)
    i, j = i % n, j % n
    if i == j:
        return 2
    if n == 2:
        return -2
    return -1 if (i - j) % n in (1, n - 1) else 0


def _qint_diag(g_i: int, x: TensorVector, r) -> TensorVector:
    # (K - K^-1)/(q - q^-1) acts on weight h by [h]
    acc = _Acc()
    for key, c in x.items():
        h = _wt(key, x.tail, r, g_i)
        acc.add(key, c, quantum_int(h))
    return TensorVector._raw(x.basis, x.depth, x.tail, acc.result())


def random_tensor(basis: Basis, width: int, rng: random.Random, lo: int = -4, hi: int = 4,
                  terms: int = 3) -> TensorVector:
    acc = _Acc()
    for _ in range(terms):
        key = tuple(rng.randint(lo, hi) for _ in range(width))
        acc.add(key, LaurentQ.monomial(rng.randint(-2, 2), rng.choice([-2, -1, 1, 3])))
    return TensorVector._raw(basis, width, None, acc.result())


def _pairs(basis: Basis, lo: int, hi: int):
    if basis.n is None:
        return [(i, j) for i in range(lo, hi + 1) for j in range(lo, hi + 1)]
    return [(i, j) for i in range(basis.n) for j in range(basis.n)]


def _gen(basis, kind, i):
    return Generator(kind, i, sl_inf=basis.n is None)


def check_on(relation: str, basis: Basis, x: TensorVector, i: int, j: int) -> bool:
    """One instance of a defining relation on one finite tensor vector."""
    E = lambda a: _gen(basis, "E", a)
    F = lambda a: _gen(basis, "F", a)
    K = lambda a: _gen(basis, "K", a)
    Ki = lambda a: _gen(basis, "Kinv", a)
    n = basis.n
    a = cartan(n, i, j)
    if relation == "KK":
        return act_word([K(i), K(j)], x) == act_word([K(j), K(i)], x)
    if relation == "KKinv":
        return act_word([K(i), Ki(i)], x) == x
    if relation == "KE":
        return act_word([K(i), E(j), Ki(i)], x) == act(E(j), x).scale(qpow(a))
    if relation == "KF":
        return act_word([K(i), F(j), Ki(i)], x) == act(F(j), x).scale(qpow(-a))
    if relation == "EF":
        lhs = act_word([E(i), F(j)], x) - act_word([F(j), E(i)], x)
        if i != j and (n is None or (i - j) % n):
            return lhs.is_zero()
        r = _residue(E(i), basis)
        return lhs == _qint_diag(_index(E(i), basis), x, r)
    if relation in ("serreE", "serreF"):
        if (i == j) if n is None else (i - j) % n == 0:
            return True
        G = E if relation == "serreE" else F
        m = 1 - a
        total = TensorVector.zero(basis, x.depth, x.tail)
        for s in range(m + 1):
            word = [G(i)] * (m - s) + [G(j)] + [G(i)] * s
            total = total + act_word(word, x).scale(quantum_binomial(m, s) * (-1) ** s)
        return total.is_zero()
    raise ValueError(f"unknown relation {relation!r}")


RELATIONS = ("KK", "KKinv", "KE", "KF", "EF", "serreE", "serreF")


def relation_check(relation: str, basis: Basis, width: int, trials: int = 50, seed: int = 0) -> bool:
    """True iff ``relation`` holds for all index pairs on ``trials`` random finite tensors.

    ``relation`` is one of RELATIONS, or "formal" for the graded commutator
    bookkeeping sum_{d', d''} [E_i(d'), F_i(d'')] = sum_d H_i(d) at q = 1 on
    random semi-infinite tensors.
    """
    rng = random.Random(seed)
    if relation == "formal":
        return _formal_check(basis, width, trials, rng)
    lo, hi = -3, 3
    for _ in range(trials):
        x = random_tensor(basis, width, rng, lo, hi)
        for i, j in _pairs(basis, lo - 1, hi):
            if not check_on(relation, basis, x, i, j):
                return False
    return True


def _formal_check(basis: Basis, width: int, trials: int, rng: random.Random) -> bool:
    n = basis.n
    if n is None:
        raise ValueError("the formal graded commutator concerns the affine algebra")
    for _ in range(trials):
        s = rng.randint(-n, n)
        key = tuple(rng.randint(s - width - 1, s + 3) for _ in range(width))
        x = TensorVector(basis, width, s - width, {key: ONE})
        vals = set(key) | {s - width}
        # grade window covering every stored flat index with room to spare;
        # below it the tail contributes canceling pairs only
        ds = range((-max(vals)) // n - 3, (-min(vals)) // n + 4)
        for i in range(n):
            lhs = TensorVector.zero(basis, x.depth, x.tail)
            for d1 in ds:
                for d2 in ds:
                    Ed, Fd = Generator("E", i, d1), Generator("F", i, d2)
                    ef = act(Ed, act(Fd, x, classical=True), classical=True)
                    fe = act(Fd, act(Ed, x, classical=True), classical=True)
                    lhs = lhs + ef - fe
            rhs = TensorVector.zero(basis, x.depth, x.tail)
            for d in ds:
                rhs = rhs + act(Generator("H", i, d), x)
            if lhs != rhs:
                return False
            # and the graded sum agrees with the ungraded H_i
            if rhs != act(Generator("H", i), x):
                return False
    return True
