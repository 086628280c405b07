import random

import pytest
from hypothesis import given, settings, strategies as st

from qwedge.coeff import ONE, qpow
from qwedge.errors import DivergentAction
from qwedge.fock import Basis, TensorVector, vacuum_tensor
from qwedge.uqaction import (RELATIONS, Generator, act, act_on_wedge, act_word, cartan, check_on, e,
                            f, k, relation_check)
from qwedge.wedge import WedgeTerm, WedgeVector, expand, vacuum_wedge

Q = qpow(1)


def tv(basis, key, c=ONE, tail=None):
    return TensorVector(basis, len(key), tail, {tuple(key): c})


def test_e_moves_a_single_factor():
    s = Basis(None)
    x = tv(s, (5,), tail=2)
    assert act(e(4), x) == tv(s, (4,), tail=2)


def test_f_on_sl_infinity_vacuum():
    s = Basis(None)
    v = act_on_wedge(f(0), WedgeVector.single(s, vacuum_wedge(s, 0)))
    assert v == WedgeVector(s, {WedgeTerm((1,), -1): ONE})


def test_k_counts_both_letters():
    s = Basis(None)
    assert act(k(3), tv(s, (3, 3, 4), tail=0)) == tv(s, (3, 3, 4), Q, tail=0)


@pytest.mark.parametrize("i", [0, 1])
def test_K_on_the_class_zero_vacuum_tensor(i):
    b = Basis(2)
    t = vacuum_tensor(b, 0, 4)
    x = TensorVector(b, 4, t.tail, {t.prefix: ONE})
    assert act(Generator("K", i), x) == x.scale(qpow(int(i == 0)))


def test_E0_on_z_v1():
    b = Basis(2)
    zv1 = b.flatten(1, 1)
    assert act(Generator("E", 0), tv(b, (zv1,))) == tv(b, (b.flatten(2, 2),))


def test_K_on_vacuum_wedges():
    for n in (2, 3):
        b = Basis(n)
        for i in range(n):
            w = WedgeVector.single(b, vacuum_wedge(b, i))
            assert act_on_wedge(Generator("K", i), w) == w.scale(Q)


def test_vacua_are_killed_by_E():
    for n in (2, 3):
        b = Basis(n)
        for i in range(n):
            w = WedgeVector.single(b, vacuum_wedge(b, i))
            for j in range(n):
                assert act_on_wedge(Generator("E", j), w).is_zero()


def test_strict_tail_policy():
    b = Basis(2)
    x = expand(b, vacuum_wedge(b, 0), 3)
    with pytest.raises(DivergentAction):
        act(Generator("F", 0), x)
    with pytest.raises(ValueError):
        act(Generator("F", 0), x, tail="sideways")


def test_graded_pieces_act_on_semi_infinite_tensors():
    b = Basis(2)
    x = TensorVector(b, 2, -2, {(0, -1): ONE})
    # F_0(1) touches flat 0 only
    assert act(Generator("F", 0, d=1), x) == TensorVector(b, 2, -2, {(1, -1): ONE})
    # H_0 at grade 1 reads the count of flat index 0 minus flat index 1
    assert act(Generator("H", 0, d=1), x) == x


def test_cartan_matrices():
    assert cartan(2, 0, 1) == -2
    assert cartan(3, 0, 2) == -1
    assert cartan(None, 4, 5) == -1
    assert cartan(None, 4, 7) == 0


def test_serre_width_three():
    s = Basis(None)
    for i in range(-2, 2):
        assert check_on("serreE", s, tv(s, (i + 1, i + 2, i + 1)), i, i + 1)


def test_serre_is_not_vacuous():
    s = Basis(None)
    x = tv(s, (1, 2, 1))
    # drop the middle term: the remainder is nonzero
    partial = act_word([e(0), e(0), e(1)], x) + act_word([e(1), e(0), e(0)], x)
    assert not partial.is_zero()


@pytest.mark.parametrize("relation", RELATIONS)
@pytest.mark.parametrize("n", [None, 2, 3])
def test_relations_on_random_tensors(relation, n):
    assert relation_check(relation, Basis(n), 3, trials=8, seed=11)


def test_E_F_commute_for_distinct_indices():
    b = Basis(3)
    rng = random.Random(2)
    for _ in range(10):
        x = tv(b, tuple(rng.randint(-3, 3) for _ in range(3)))
        assert check_on("EF", b, x, 0, 1)
        assert check_on("EF", b, x, 2, 2)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(-2, 2))
@settings(max_examples=60, deadline=None)
def test_commutator_on_sl_infinity(key, i):
    assert check_on("EF", Basis(None), tv(Basis(None), key), i, i)


def test_formal_graded_commutator():
    assert relation_check("formal", Basis(2), 3, trials=10)
    with pytest.raises(ValueError):
        relation_check("formal", Basis(None), 3, trials=1)


def test_classical_mode_drops_q():
    b = Basis(2)
    x = tv(b, (0, 1, -1))
    g = Generator("E", 1)
    assert act(g, x, classical=True) == act(g, x).eval_q1()
