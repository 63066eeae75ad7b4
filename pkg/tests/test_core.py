import math

import gmpy2
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudofield.core import (
    Mode,
    PseudofieldInstance,
    Reason,
    Undefined,
    close,
    divide,
    first_undefined,
    residual,
    scalar,
    undefined,
)

from conftest import inst_of, q


def test_scalar_coercion():
    assert scalar("2.5", Mode.RATIONAL) == q(5, 2)
    assert scalar("1/3", Mode.RATIONAL) == q(1, 3)
    assert isinstance(scalar(3, Mode.RATIONAL), type(q(1)))
    assert scalar("0.5", Mode.FLOAT) == 0.5
    # floats convert exactly in rational mode
    assert scalar(0.1, Mode.RATIONAL) == gmpy2.mpq(0.1)


def test_divide_guards():
    assert divide(q(1), q(0), Mode.RATIONAL) == Undefined(Reason.DIVISION_BY_ZERO)
    assert divide(q(1), q(1, 10**12), Mode.RATIONAL) == q(10**12)
    assert divide(1.0, 1e-10, Mode.FLOAT) == Undefined(Reason.SINGULAR_DENOMINATOR)
    assert divide(1.0, 0.0, Mode.FLOAT) == Undefined(Reason.DIVISION_BY_ZERO)
    assert divide(3.0, 2.0, Mode.FLOAT) == 1.5


def test_undefined_helpers():
    u = Undefined(Reason.OUT_OF_DOMAIN)
    assert undefined(u) and not undefined((1.0,))
    assert first_undefined((1,), u, Undefined(Reason.NOT_INVERTIBLE)) is u
    assert first_undefined((1,), (2,)) is None
    assert repr(u) == "Undefined(OutOfDomain)"


def test_residual_is_normwise_relative():
    assert residual((1.0,), (1.0,)) == 0.0
    assert residual((2.0,), (2.0 + 2e-9,)) == pytest.approx(1e-9, rel=1e-6)
    # small entries are judged against the largest one
    assert residual((100.0, 0.0), (100.0, 1e-8)) == pytest.approx(1e-10)
    assert residual((1.0,), (1.0, 2.0)) == math.inf
    assert residual((math.nan,), (1.0,)) == math.inf


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_residual_symmetric(a, b):
    assert residual((a,), (b,)) == residual((b,), (a,))


def test_close_modes():
    assert close((q(1, 3),), (q(1, 3),), Mode.RATIONAL)
    assert not close((q(1, 3),), (q(1, 3) + q(1, 10**30),), Mode.RATIONAL)
    assert close((1.0,), (1.0 + 1e-12,), Mode.FLOAT)


def test_phi_index_validated(affine_f):
    with pytest.raises(ValueError):
        affine_f.phi(3, (0.5,))
    with pytest.raises(ValueError):
        affine_f.phi(1, (0.5,))


def test_instance_rejects_bad_shape():
    with pytest.raises(ValueError):
        PseudofieldInstance("x", 1, 1, Mode.FLOAT, None, None, None, (1.0,))
    with pytest.raises(ValueError):
        PseudofieldInstance("x", 2, 2, Mode.FLOAT, None, None, None, (1.0,))


def test_operations_propagate_undefined(affine_f):
    u = Undefined(Reason.NOT_INVERTIBLE)
    assert affine_f.mul(u, (2.0,)) is u
    assert affine_f.mul((2.0,), u) is u
    assert affine_f.inv(u) is u
    assert affine_f.phi(2, u) is u


def test_element_checks_dimension():
    inst = inst_of("semidirect", 3)
    assert inst.element([1, 2, 3]) == (1.0, 2.0, 3.0)
    with pytest.raises(ValueError):
        inst.element([1, 2])


def test_derived_operations(affine_q):
    # a ._2 b = a + b - ab on the affine line
    assert affine_q.mul_i(2, (q(3),), (q(2),)) == (q(-1),)
    assert affine_q.mul_i(2, (q(1),), (q(1),)) == (q(1),)
    assert affine_q.mul_i_translated(2, (q(3),), (q(2),)) == (q(-1),)
    with pytest.raises(ValueError):
        affine_q.sigma(2, 2, (q(1),))


def test_second_product_units(affine_q):
    # e_2 is the left unit of ._2 and e_1 its left zero; e_2 is a left zero of the product
    for b in (q(3, 4), q(1), q(5, 4)):
        assert affine_q.mul_i(2, affine_q.unit(2), (b,)) == (b,)
        assert affine_q.mul_i(2, affine_q.unit(1), (b,)) == affine_q.unit(1)
        assert affine_q.mul(affine_q.unit(2), (b,)) == affine_q.unit(2)
