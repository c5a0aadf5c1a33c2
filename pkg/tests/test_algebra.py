import numpy as np
import pytest

from orbitlimit.algebra import (
    AlgebraSpec,
    Weight,
    commutator,
    dominant_weights,
    parse_generator_name,
    random_special_unitary,
    su_orthonormal_basis,
    weight_of_cartan_action,
    weyl_dimension,
)


def test_generator_catalog_shape():
    spec = AlgebraSpec(3)
    assert spec.rank == 2
    assert spec.dim == 8
    assert len(spec.generator_names) == 8
    # all off-diagonal units plus the simple coroots
    assert "E(1,2)" in spec.generator_names
    assert "H(2)" in spec.generator_names
    e12 = spec.generator("E(1,2)")
    assert e12[0, 1] == 1.0
    assert np.count_nonzero(e12) == 1
    h1 = spec.generator("H(1)")
    assert np.allclose(np.diag(h1), [1, -1, 0])
    h2 = spec.generator("H(2)")
    assert np.allclose(np.diag(h2), [0, 1, -1])
    for name in spec.generator_names:
        assert abs(np.trace(spec.generator(name))) == 0


def test_generator_name_validation():
    with pytest.raises(KeyError):
        parse_generator_name("F(1,2)", 3)
    with pytest.raises(ValueError):
        parse_generator_name("E(1,1)", 3)
    with pytest.raises(ValueError):
        parse_generator_name("E(1,4)", 3)
    with pytest.raises(ValueError):
        parse_generator_name("H(3)", 3)
    assert parse_generator_name("E(2,1)", 3) == ("E", 2, 1)
    assert parse_generator_name("H(2)", 3) == ("H", 2, 0)


def test_adjoint_name():
    spec = AlgebraSpec(4)
    assert spec.adjoint_name("E(1,3)") == "E(3,1)"
    assert spec.adjoint_name("H(2)") == "H(2)"


def test_decompose_round_trip():
    rng = np.random.default_rng(3)
    spec = AlgebraSpec(4)
    for _ in range(50):
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        x -= np.trace(x) / 4 * np.eye(4)
        coeffs = spec.decompose(x)
        rebuilt = sum(c * spec.generator(name) for name, c in coeffs.items())
        assert np.abs(rebuilt - x).max() < 1e-12


def test_decompose_rejects_trace():
    spec = AlgebraSpec(3)
    with pytest.raises(ValueError):
        spec.decompose(np.eye(3))


def test_jacobi_identity():
    rng = np.random.default_rng(11)
    spec = AlgebraSpec(3)
    for _ in range(1000):
        a, b, c = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) for _ in range(3))
        total = (
            commutator(spec, a, commutator(spec, b, c))
            + commutator(spec, b, commutator(spec, c, a))
            + commutator(spec, c, commutator(spec, a, b))
        )
        assert np.abs(total).max() < 1e-12 * max(1.0, np.abs(a).max() * np.abs(b).max() * np.abs(c).max())


def test_commutator_bilinear():
    rng = np.random.default_rng(4)
    spec = AlgebraSpec(3)
    a, b = (rng.standard_normal((3, 3)) for _ in range(2))
    s = 2.5 - 1j
    assert np.allclose(commutator(spec, s * a, b), s * commutator(spec, a, b))
    assert np.allclose(commutator(spec, a, b), -commutator(spec, b, a))


def test_weight_partition():
    w = Weight((1, 1))
    assert w.M == 3
    assert w.partition == (2, 1, 0)
    assert Weight((3,)).partition == (3, 0)
    assert Weight((0, 2, 1)).partition == (3, 3, 1, 0)
    assert Weight((0, 0)).is_zero
    assert not Weight((1, 0)).is_regular
    assert Weight((1, 2)).is_regular
    assert Weight((1, 2)).scale(3) == Weight((3, 6))


def test_weyl_dimension_values():
    assert weyl_dimension(Weight((1, 0))) == 3
    assert weyl_dimension(Weight((0, 1))) == 3
    assert weyl_dimension(Weight((1, 1))) == 8
    assert weyl_dimension(Weight((2, 0))) == 6
    assert weyl_dimension(Weight((3, 0))) == 10
    assert weyl_dimension(Weight((2, 2))) == 27
    for n in range(7):
        assert weyl_dimension(Weight((n,))) == n + 1
    assert weyl_dimension(Weight((1, 0, 0))) == 4
    assert weyl_dimension(Weight((0, 1, 0))) == 6
    assert weyl_dimension(Weight((1, 1, 1))) == 64


def test_dominant_weights_enumeration():
    ws = dominant_weights(2, 2)
    assert Weight((0, 0)) not in ws
    assert Weight((2, 0)) in ws and Weight((1, 1)) in ws
    assert len(ws) == 5
    assert len(dominant_weights(2, 2, include_zero=True)) == 6


def test_weight_of_cartan_action():
    w = Weight((1, 1))
    d = np.diag([2.0, -1.0, -1.0])
    # sum of partition-weighted diagonal entries
    assert weight_of_cartan_action(w, d) == 2 * 2 + 1 * (-1)
    with pytest.raises(ValueError):
        weight_of_cartan_action(w, np.ones((3, 3)))


def test_su_basis_orthonormal():
    for M in (2, 3, 4):
        basis = su_orthonormal_basis(M)
        assert len(basis) == M * M - 1
        for i, (_, a) in enumerate(basis):
            assert np.abs(a + a.conj().T).max() < 1e-14
            assert abs(np.trace(a)) < 1e-14
            for j, (_, b) in enumerate(basis):
                pairing = -np.trace(a @ b).real
                assert abs(pairing - (1.0 if i == j else 0.0)) < 1e-12


def test_random_special_unitary():
    rng = np.random.default_rng(8)
    for M in (2, 3, 5):
        for _ in range(10):
            k = random_special_unitary(M, rng)
            assert np.abs(k @ k.conj().T - np.eye(M)).max() < 1e-12
            assert abs(np.linalg.det(k) - 1.0) < 1e-12
