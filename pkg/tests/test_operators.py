import numpy as np
import pytest

from orbitlimit.algebra import AlgebraSpec
from orbitlimit.operators import (
    AbstractOperator,
    formal_adjoint,
    format_operator,
    is_abstractly_selfadjoint,
    monomial_decomposition,
    operator_from_matrix_element,
    scalar_operator,
)

SPEC = AlgebraSpec(3)


def gen(name):
    return operator_from_matrix_element(SPEC, name)


def random_operator(rng, max_terms=4, max_degree=3):
    op = AbstractOperator(SPEC, {})
    names = SPEC.generator_names
    for _ in range(rng.integers(1, max_terms + 1)):
        mono = tuple(names[i] for i in rng.integers(0, len(names), rng.integers(0, max_degree + 1)))
        coeff = complex(rng.standard_normal(), rng.standard_normal())
        op = op + AbstractOperator(SPEC, {mono: coeff})
    return op


def test_linear_structure():
    a, b = gen("E(1,2)"), gen("E(2,1)")
    s = a + b
    assert s.terms == {("E(1,2)",): 1.0, ("E(2,1)",): 1.0}
    assert (s - a).isclose(b)
    assert (2.0 * a).terms == {("E(1,2)",): 2.0}
    assert (a * 2.0).terms == {("E(1,2)",): 2.0}
    assert (a - a).is_zero


def test_multiplication_requires_scalar():
    a, b = gen("E(1,2)"), gen("E(2,1)")
    with pytest.raises(TypeError):
        a * b
    t = a.tensor(b)
    assert t.terms == {("E(1,2)", "E(2,1)"): 1.0}
    assert t.degree == 2


def test_tensor_distributes():
    a, b, c = gen("E(1,2)"), gen("E(2,1)"), gen("H(1)")
    left = (a + b).tensor(c)
    right = a.tensor(c) + b.tensor(c)
    assert left.isclose(right)


def test_scalar_part_and_degree():
    op = scalar_operator(SPEC, 2.0) + gen("H(1)").tensor(gen("H(2)"))
    assert op.scalar_part == 2.0
    assert op.degree == 2
    assert not op.is_degree_one()
    assert gen("E(1,3)").is_degree_one()


def test_adjoint_rules():
    a, b = gen("E(1,2)"), gen("H(1)")
    # dagger reverses tensor factors and transposes index pairs
    t = formal_adjoint(a.tensor(b))
    assert t.terms == {("H(1)", "E(2,1)"): 1.0}
    # coefficients conjugate
    c = (2 + 3j) * a
    assert formal_adjoint(c).terms == {("E(2,1)",): 2 - 3j}
    assert formal_adjoint(scalar_operator(SPEC, 1j)).scalar_part == -1j


def test_adjoint_involution_random():
    rng = np.random.default_rng(21)
    for _ in range(500):
        op = random_operator(rng)
        assert formal_adjoint(formal_adjoint(op)).isclose(op)


def test_adjoint_antimultiplicative():
    rng = np.random.default_rng(22)
    for _ in range(100):
        a, b = random_operator(rng, max_terms=2), random_operator(rng, max_terms=2)
        assert formal_adjoint(a.tensor(b)).isclose(formal_adjoint(b).tensor(formal_adjoint(a)))


def test_selfadjoint_detection():
    a = gen("E(1,2)")
    assert not is_abstractly_selfadjoint(a)
    assert is_abstractly_selfadjoint(a + gen("E(2,1)"))
    assert is_abstractly_selfadjoint(gen("H(2)"))
    h = a.tensor(gen("E(2,1)")) + gen("E(2,1)").tensor(a)
    assert is_abstractly_selfadjoint(h)
    assert is_abstractly_selfadjoint(1j * a - 1j * gen("E(2,1)"))


def test_monomial_decomposition_order():
    op = gen("H(1)").tensor(gen("H(1)")) + 3.0 * gen("E(1,2)") + scalar_operator(SPEC, 1.0)
    decomp = monomial_decomposition(op)
    # scalar first, then by degree, then catalog order
    assert decomp[0] == (1.0, ())
    assert decomp[1] == (3.0, ("E(1,2)",))
    assert decomp[2] == (1.0, ("H(1)", "H(1)"))


def test_format_round_trip_stability():
    op = gen("E(1,2)").tensor(gen("E(2,1)")) - 0.5 * gen("H(1)")
    text = format_operator(op)
    assert "ox" in text
    assert text == format_operator(op)


def test_zero_pruning():
    op = 0.0 * gen("E(1,2)")
    assert op.is_zero
    assert format_operator(op) == "0"
