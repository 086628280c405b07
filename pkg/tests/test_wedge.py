import random

import pytest
from hypothesis import given, settings, strategies as st

from qwedge.coeff import ONE, LaurentQ, qpow
from qwedge.errors import BoundaryViolation
from qwedge.fock import Basis, TensorVector
from qwedge.hecke import antisymmetrize, apply_Ti
from qwedge.uqaction import Generator, act_on_wedge
from qwedge.wedge import (WedgeTerm, WedgeVector, expand, recognize, stability_probe, straighten,
                          straighten_tensor, vacuum_wedge, wedge_from_young, weight, young_from_wedge)

Q = qpow(1)
BASES = [Basis(None), Basis(2), Basis(3)]


def tv(basis, key, c=ONE, tail=None):
    return TensorVector(basis, len(key), tail, {tuple(key): c})


def q2_factorial(L):
    out = ONE
    for k in range(1, L + 1):
        out = out * LaurentQ({2 * e: 1 for e in range(k)})
    return out


def test_wedge_term_is_canonical():
    assert WedgeTerm((3, 1, 0), -1) == WedgeTerm((3,), 1)
    with pytest.raises(ValueError):
        WedgeTerm((1, 3), None)
    assert WedgeTerm((3, 1), 0).charge == 2


def test_expand_vacuum_depth_two():
    b = Basis(2)
    x = expand(b, vacuum_wedge(b, 0), 2)
    want = TensorVector(b, 2, -2, {(0, -1): ONE, (-1, 0): -Q})
    assert x == want


def test_expand_needs_room_for_the_prefix():
    with pytest.raises(BoundaryViolation):
        expand(Basis(None), WedgeTerm((5, 3, 1), -2), 2)


def test_straighten_examples():
    s = Basis(None)
    assert straighten(tv(s, (1, 2))) == WedgeVector(s, {WedgeTerm((2, 1)): -Q})
    assert straighten(tv(s, (3, 3))).is_zero()
    b = Basis(2)
    for j in range(-2, 2):
        for gap in range(1, 5):
            k = j + gap
            key = (b.flatten(1, k), b.flatten(1, j))
            lhs = antisymmetrize(tv(b, key))
            rhs = TensorVector.zero(b, 2, None)
            for w, c in straighten(tv(b, key)).items():
                rhs = rhs + antisymmetrize(tv(b, w.prefix)).scale(c)
            assert lhs == rhs


@pytest.mark.parametrize("basis", BASES, ids=["slinf", "n2", "n3"])
def test_straighten_is_compatible_with_T(basis):
    rng = random.Random(3)
    for _ in range(40):
        key = tuple(rng.randint(-4, 4) for _ in range(3))
        x = tv(basis, key)
        for i in (1, 2):
            assert straighten(apply_Ti(x, i)) == straighten(x).scale(qpow(2))


@given(st.sampled_from(BASES), st.lists(st.integers(-3, 3), min_size=2, max_size=4))
@settings(max_examples=50, deadline=None)
def test_straighten_agrees_with_recognizing_the_antisymmetrizer(basis, key):
    x = tv(basis, key)
    assert recognize(antisymmetrize(x)) == straighten(x)


@pytest.mark.parametrize("basis", BASES, ids=["slinf", "n2", "n3"])
def test_expand_then_straighten_gives_q2_factorial(basis):
    for w in (vacuum_wedge(basis, 1), WedgeTerm((4, 1), -1), WedgeTerm((2,), -3)):
        for L in (len(w.prefix) + 1, len(w.prefix) + 2):
            x = expand(basis, w, L)
            assert straighten(x) == WedgeVector(basis, {w: q2_factorial(L)})
            assert recognize(x) == WedgeVector.single(basis, w)


def test_semi_infinite_straightening_unrolls_the_tail():
    s = Basis(None)
    # v0 sits inside the tail 1, 0, -1, ...: the wedge vanishes
    assert straighten_tensor(s, (0,), 1).is_zero()
    v = straighten_tensor(s, (0, 2), -1)
    assert v == WedgeVector(s, {WedgeTerm((2, 0), -1): -Q})


# -- Young diagrams -----------------------------------------------------------

def test_young_examples():
    for b in BASES:
        for i in range(b.n or 3):
            parts, _ = young_from_wedge(vacuum_wedge(b, i))
            assert parts == ()
    for n in (3, 4, 5):
        b = Basis(n)
        example = WedgeTerm((3, 1, b.flatten(n - 2, 1)), b.flatten(n - 2, 1) - 1)
        assert young_from_wedge(example) == ((3, 2), 0)
        assert wedge_from_young((3, 2), b.vacuum_start(0)) == example
        assert wedge_from_young((), b.vacuum_start(0)) == vacuum_wedge(b, 0)


def test_young_direct_formula():
    # v2 ^ v0 ^ v-2 ^ v-3 ^ ... has charge 0; lambda_j = m_j - (1 - j)
    w = WedgeTerm((2, 0), -2)
    m = w.values(4)
    assert tuple(x - (1 - j) for j, x in enumerate(m, start=1)) == (2, 1, 0, 0)
    assert young_from_wedge(w) == ((2, 1), 0)


partitions = st.lists(st.integers(1, 6), max_size=6).map(lambda l: tuple(sorted(l, reverse=True))) \
    .filter(lambda p: sum(p) <= 6)


@given(partitions, st.integers(-4, 4))
def test_young_round_trip(parts, charge):
    assert young_from_wedge(wedge_from_young(parts, charge)) == (parts, charge)


# -- weights ------------------------------------------------------------------

def test_vacuum_weights():
    b = Basis(2)
    assert weight(b, vacuum_wedge(b, 0)).total == {0: 1, 1: 0}
    for n in (2, 3, 4):
        b = Basis(n)
        for i in range(n):
            assert weight(b, vacuum_wedge(b, i)).total == {j: int(i == j) for j in range(n)}


def test_weight_after_f0():
    b = Basis(2)
    v = act_on_wedge(Generator("F", 0), WedgeVector.single(b, vacuum_wedge(b, 0)))
    (w, c), = v.items()
    assert c == ONE
    assert weight(b, w).total == {0: -1, 1: 2}
    assert weight(b, w).level() == 1


def test_sl_infinity_weight_is_a_delta():
    s = Basis(None)
    wt = weight(s, vacuum_wedge(s, 2))
    assert {i: h for i, h in wt.total.items() if h} == {2: 1}


# -- truncation probe ---------------------------------------------------------

def test_probe_vacuum_is_stable():
    b = Basis(2)
    rep = stability_probe(b, vacuum_wedge(b, 0), 4, 6)
    assert rep.compared > 0 and not rep.unstable


def test_probe_smoke_and_classical():
    b = Basis(2)
    w = WedgeTerm((3,), -1)
    rep = stability_probe(b, w, 5, 7)
    assert rep.lines()
    assert not stability_probe(b, w, 5, 7, classical=True).unstable
