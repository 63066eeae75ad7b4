import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pseudofield import InstanceDescriptor, Mode, Reason, Undefined, adversarial, make_instance
from pseudofield.instances import KINDS, matrix_solve

from conftest import inst_of, q

small = st.fractions(min_value=-4, max_value=4, max_denominator=50)


def test_affine_operations(affine_q):
    assert affine_q.mul((q(2),), (q(3),)) == (q(6),)
    assert affine_q.inv((q(4),)) == (q(1, 4),)
    assert affine_q.inv((q(0),)) == Undefined(Reason.NOT_INVERTIBLE)
    assert affine_q.phi(2, (q(1, 4),)) == (q(3, 4),)
    assert affine_q.units == ((q(1),), (q(0),))


@given(small)
def test_affine_left_unit(x):
    inst = inst_of("affine2", mode=Mode.RATIONAL)
    assert inst.mul(inst.e, (q(x),)) == (q(x),)


def test_moebius_units_and_maps(moebius_q):
    assert moebius_q.units == ((q(1),), (q(0),), (q(-1),))
    assert moebius_q.phi(3, (q(2),)) == (q(-2),)
    # sigma_23 = phi_3 phi_2 phi_3 is -(1 + x)/(1 - 3x)
    assert moebius_q.sigma(2, 3, (q(2),)) == (q(3, 5),)
    assert moebius_q.inv((q(0),)) == Undefined(Reason.NOT_INVERTIBLE)
    assert moebius_q.inv((q(-1),)) == Undefined(Reason.NOT_INVERTIBLE)


def _psi(x):
    return 2 * x / (x + 1)


def _psi_inv(x):
    return x / (2 - x)


@given(small, small)
def test_moebius_is_psi_conjugate_of_real_product(x, y):
    # independent oracle: transport the product through psi(x) = 2x/(x+1)
    inst = inst_of("moebius3", mode=Mode.RATIONAL)
    x, y = q(x), q(y)
    assume(x != -1 and y != -1)
    p = _psi(x) * _psi(y)
    assume(p != 2)
    got = inst.mul((x,), (y,))
    assume(not isinstance(got, Undefined))
    assert got == (_psi_inv(p),)


@given(small)
def test_moebius_inverse_is_psi_conjugate(x):
    inst = inst_of("moebius3", mode=Mode.RATIONAL)
    x = q(x)
    assume(x not in (0, -1, q(1, 3)))
    assert inst.inv((x,)) == (_psi_inv(1 / _psi(x)),)


def test_semidirect_operations():
    inst = inst_of("semidirect", 3, Mode.RATIONAL)
    a = tuple(map(q, (2, 1, 0)))
    assert inst.mul(a, tuple(map(q, (3, 0, 5)))) == tuple(map(q, (6, 1, 10)))
    x = tuple(map(q, (2, 4, 6)))
    ix = inst.inv(x)
    assert ix == (q(1, 2), q(-2), q(-3))
    assert inst.mul(ix, x) == inst.e
    assert inst.sigma(2, 3, tuple(map(q, (5, 6, 7)))) == tuple(map(q, (5, 7, 6)))
    assert inst.sigma(2, 3, inst.e) == inst.e
    assert inst.unit(2) == (0, 1, 0)
    assert inst.inv((q(0), q(1), q(1))) == Undefined(Reason.NOT_INVERTIBLE)


def test_mikhailichenko_last_phi():
    inst = inst_of("mikhailichenko", 3)
    x = (0.2, 1.0, 5.0)
    y = inst.phi(3, x)
    assert y == pytest.approx((-0.2, 1.0, 5.0))
    assert inst.phi(3, y) == pytest.approx(x)
    assert inst.unit(3) == (0.0, 0.0, 0.0)
    assert inst.unit(2) == (0.0, 1.0, 0.0)


def test_reference_actions(affine_q, moebius_q):
    ys = ((q(3),), (q(5),))
    assert affine_q.reference_action((q(2),), ys) == (q(1),)
    ys3 = ((q(2),), (q(1, 2),), (q(-1),))
    assert moebius_q.reference_action((q(3),), ys3) == (q(5),)
    trip = ((q(7, 3),), (q(1, 5),), (q(-2),))
    assert moebius_q.reference_action((q(1),), trip) == trip[0]
    assert moebius_q.reference_action((q(-1),), trip) == trip[2]


def test_descriptor_validation():
    assert InstanceDescriptor("affine2").resolved_n() == 2
    assert InstanceDescriptor("moebius3").resolved_n() == 3
    assert InstanceDescriptor("semidirect", 4).resolved_n() == 4
    for bad in (InstanceDescriptor("semidirect"), InstanceDescriptor("mikhailichenko", 1),
                InstanceDescriptor("nope")):
        with pytest.raises(ValueError):
            make_instance(bad)
    assert set(KINDS) == {"affine2", "moebius3", "semidirect", "mikhailichenko"}


def test_adversarial_breaks_main_equation():
    inst = adversarial(Mode.RATIONAL)
    two = (q(2),)
    # phi(phi(2) phi(2)) = 2 but phi(2 phi(1/2)) 2 = -2
    assert inst.mul_i_conjugate(2, two, two) == (q(2),)
    assert inst.mul_i_translated(2, two, two) == (q(-2),)


def test_matrix_solve_modes():
    X = ((2.0, 0.0), (0.0, 1.0))
    Y = ((2.0, 3.0), (4.0, 5.0))
    assert matrix_solve(X, Y, Mode.FLOAT) == ((1.0, 1.5), (4.0, 5.0))
    Xq = tuple(tuple(map(q, r)) for r in X)
    Yq = tuple(tuple(map(q, r)) for r in Y)
    assert matrix_solve(Xq, Yq, Mode.RATIONAL) == ((1, q(3, 2)), (4, 5))
    singular = ((q(1), q(2)), (q(2), q(4)))
    assert isinstance(matrix_solve(singular, Yq, Mode.RATIONAL), Undefined)
    assert isinstance(matrix_solve(((1.0, 2.0), (2.0, 4.0)), Y, Mode.FLOAT), Undefined)
