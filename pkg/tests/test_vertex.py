import pytest

from qwedge.coeff import ONE, qpow
from qwedge.errors import TargetClassMismatch
from qwedge.fock import Basis, TensorVector
from qwedge.hecke import antisymmetrize, signed_permutation_sum
from qwedge.uqaction import Generator, act, act_on_wedge
from qwedge.vertex import compose, matrix_coefficient, shift_wedge, split_first
from qwedge.wedge import WedgeTerm, WedgeVector, vacuum_at, vacuum_wedge

L = 8


def vac(basis, i):
    return WedgeVector.single(basis, vacuum_wedge(basis, i))


@pytest.mark.parametrize("i", [-1, 0, 3])
def test_sl_infinity_split(i):
    s = Basis(None)
    exp = split_first(vac(s, i), L)
    for j in range(0, 5):
        rest = WedgeTerm(tuple(range(i, i - j, -1)), i - j - 1)
        assert exp.groups[i - j] == WedgeVector(s, {rest: qpow(j, (-1) ** j)})
        assert exp.coefficient(i - j, rest).eval_q1() == (-1) ** j
    assert exp.firsts()[0] == i


def test_n2_split_rows():
    b = Basis(2)
    exp = split_first(vac(b, 0), L)
    rows = [(first, c) for first, c, _ in exp.rows() if 1 <= b.exponent(first) <= 3]
    want = []
    for j in (1, 2, 3):
        want += [(b.flatten(2, j), qpow(3 * (j - 1))), (b.flatten(1, j), qpow(3 * (j - 1) + 1, -1))]
    assert rows == want


def test_n2_split_is_stable_in_depth():
    b = Basis(2)
    a, c = split_first(vac(b, 0), 6), split_first(vac(b, 0), 8)
    for first in (0, -1, -2, -3):
        assert a.groups[first] == c.groups[first]


def test_split_of_finite_wedge_reassembles():
    s = Basis(None)
    w = WedgeVector.single(s, WedgeTerm((3, 1, 0)))
    exp = split_first(w, 3)
    total = TensorVector.zero(s, 3, None)
    for first, rest in exp.groups.items():
        for r, c in rest.items():
            lower = antisymmetrize(TensorVector(s, 2, None, {r.prefix: ONE}))
            total = total + TensorVector(s, 3, None, {(first,) + k: v * c for k, v in lower.items()})
    assert total == antisymmetrize(TensorVector(s, 3, None, {(3, 1, 0): ONE}))


def _twisted(g, exp, basis):
    """Coproduct action on V (x) F: E (x) K + 1 (x) E and F (x) 1 + K^-1 (x) F."""
    out = {}

    def add(m, v):
        out[m] = out[m] + v if m in out else v

    K = Generator("K", g.i, sl_inf=g.sl_inf)
    Kinv = Generator("Kinv", g.i, sl_inf=g.sl_inf)
    for m, rest in exp.groups.items():
        single = TensorVector(basis, 1, None, {(m,): ONE})
        for (m2,), c in act(g, single).items():
            add(m2, (act_on_wedge(K, rest) if g.kind == "E" else rest).scale(c))
        scale = ONE if g.kind == "E" else act(Kinv, single)[(m,)]
        add(m, act_on_wedge(g, rest).scale(scale))
    return out


@pytest.mark.parametrize("n", [None, 2, 3])
def test_split_intertwines(n):
    b = Basis(n)
    zero = WedgeVector(b)
    for w in (vacuum_wedge(b, 0), WedgeTerm((2,), -1)):
        wv = WedgeVector.single(b, w)
        base = split_first(wv, L)
        for i in (range(-1, 2) if n is None else range(n)):
            for kind in ("E", "F"):
                g = Generator(kind, i, sl_inf=n is None)
                lhs = split_first(act_on_wedge(g, wv), L).groups
                rhs = _twisted(g, base, b)
                window = {m for m in set(lhs) | set(rhs) if m >= w.charge - L + 4}
                for m in window:
                    assert lhs.get(m, zero) == rhs.get(m, zero)


def test_compose_zero_steps_is_identity():
    s = Basis(None)
    assert compose(vac(s, 0), 0, L) == {(): vac(s, 0)}


@pytest.mark.parametrize("j", [1, 2, 3])
def test_sl_infinity_matrix_coefficient(j):
    s = Basis(None)
    mc = matrix_coefficient(compose(vac(s, 2), j, L), vacuum_at(2 - j), s)
    x = TensorVector(s, j, None, {tuple(range(2, 2 - j, -1)): ONE})
    assert mc == (antisymmetrize(x) if j > 1 else x)


def test_affine_matrix_coefficients():
    b = Basis(2)
    mc = matrix_coefficient(compose(vac(b, 0), 1, L), vacuum_wedge(b, 1), b)
    assert mc == TensorVector(b, 1, None, {(b.flatten(2, 1),): ONE})
    b3 = Basis(3)
    mc = matrix_coefficient(compose(vac(b3, 0), 2, L), vacuum_wedge(b3, 1), b3)
    x = TensorVector(b3, 2, None, {(b3.flatten(3, 1), b3.flatten(2, 1)): ONE})
    assert mc.eval_q1() == signed_permutation_sum(x)


def test_target_class_errors():
    b = Basis(3)
    groups = compose(vac(b, 0), 1, L)
    with pytest.raises(TargetClassMismatch):
        matrix_coefficient(groups, vacuum_wedge(b, 0), b)
    with pytest.raises(TargetClassMismatch):
        matrix_coefficient(groups, WedgeTerm((1, 0)), b)


def test_shift_wedge():
    assert shift_wedge(WedgeTerm((3, 1), -1), -2) == WedgeTerm((1, -1), -3)
