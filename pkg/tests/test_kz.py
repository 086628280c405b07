from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qwedge.coeff import PolyZ
from qwedge.errors import NotDivisible, SizeCap
from qwedge.kz import (ExchangeOperator, KZVector, apply_exchange, finite_wedge_poly,
                       finite_wedge_poly_hecke, kz_residual, kz_residual_rational, monomial_all,
                       slot_results)


def test_two_slot_polynomial():
    w = finite_wedge_poly(2, 1)
    one = PolyZ.const(2)
    assert w == KZVector(2, 2, {(2, 1): one, (1, 2): -one})


def test_four_slot_polynomial():
    w = finite_wedge_poly(2, 2)
    assert sum(len(p._t) for _, p in w.items()) == 24
    assert w[(2, 1, 2, 1)]._t.get((0, 0, 1, 1)) == 1


@pytest.mark.parametrize("n,N", [(2, 1), (2, 2), (3, 1)])
def test_hecke_route_agrees(n, N):
    assert finite_wedge_poly_hecke(n, N) == finite_wedge_poly(n, N)


@pytest.mark.parametrize("n,N", [(2, 1), (2, 2), (3, 1)])
def test_residuals_vanish(n, N):
    w = finite_wedge_poly(n, N)
    for i in range(1, n * N + 1):
        assert kz_residual(w, n, i) == {}
        assert kz_residual_rational(w, n, i) == {}
    assert all(ok for _, ok, _ in slot_results(n, N))


def test_second_product_form():
    for n, N in ((2, 1), (2, 2), (3, 1)):
        assert finite_wedge_poly(n, N, shift=1) == finite_wedge_poly(n, N).scale(monomial_all(n * N))


def test_exchange_negates_antisymmetric_vector():
    w = finite_wedge_poly(2, 1)
    assert apply_exchange(ExchangeOperator(1, 2), w) == -w


def test_t_squared():
    w = finite_wedge_poly(3, 1)
    t = ExchangeOperator(1, 3, "t")
    P = ExchangeOperator(1, 3)
    lhs = apply_exchange(t, apply_exchange(t, w))
    # (P - 1/n)^2 = 1 - (2/n) P + 1/n^2
    rhs = w - apply_exchange(P, w).scale(Fraction(2, 3)) + w.scale(Fraction(1, 9))
    assert lhs == rhs


vectors = st.dictionaries(
    st.tuples(st.integers(1, 2), st.integers(1, 2), st.integers(1, 2)),
    st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
                    st.integers(-3, 3), max_size=3).map(lambda t: PolyZ(3, t)),
    max_size=4).map(lambda d: KZVector(2, 3, d))


@given(vectors, st.sampled_from([(1, 2), (1, 3), (2, 3)]))
@settings(max_examples=50)
def test_exchange_is_an_involution(x, pair):
    op = ExchangeOperator(*pair)
    assert apply_exchange(op, apply_exchange(op, x)) == x


def test_non_solution_is_detected():
    # the symmetric vector v1 (x) v2 + v2 (x) v1 is not a solution
    one = PolyZ.const(2)
    x = KZVector(2, 2, {(1, 2): one, (2, 1): one})
    with pytest.raises(NotDivisible):
        kz_residual(x, 2, 1)
    assert kz_residual_rational(x, 2, 1)


def test_size_cap():
    with pytest.raises(SizeCap):
        finite_wedge_poly(3, 3)
