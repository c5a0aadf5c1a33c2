import numpy as np
import pytest

from orbitlimit.algebra import AlgebraSpec, Weight, dominant_weights
from orbitlimit.irreps import cached_irrep
from orbitlimit.norms import (
    fundamental_norm,
    fundamental_norm_jet,
    jet_of_norm,
    norm_direct,
    norm_factorized,
)
from orbitlimit.orbit import OrbitPoint, lower_pairs, sample_points

P0 = OrbitPoint.of(3, {(2, 1): 0.5, (3, 1): -0.25, (3, 2): 1.0})


def test_reference_values():
    assert abs(fundamental_norm(1, P0) - 21.0 / 16.0) < 1e-15
    assert abs(fundamental_norm(2, P0) - 41.0 / 16.0) < 1e-15
    assert abs(norm_factorized(Weight((1, 1)), P0) - 21.0 * 41.0 / 256.0) < 1e-14
    assert abs(norm_factorized(Weight((2, 0)), P0) - (21.0 / 16.0) ** 2) < 1e-14


def test_norm_at_origin():
    origin = OrbitPoint.of(3, {})
    for k in (1, 2):
        assert fundamental_norm(k, origin) == 1.0
    assert norm_factorized(Weight((3, 2)), origin) == 1.0


def test_norm_lower_bound():
    pts = sample_points(Weight((1, 1, 1)), 30, seed=2, radius=2.0)
    for p in pts:
        for k in (1, 2, 3):
            assert fundamental_norm(k, p) >= 1.0


def test_su2_closed_form():
    w = 0.7 - 0.4j
    p = OrbitPoint.of(2, {(2, 1): w})
    assert abs(fundamental_norm(1, p) - (1 + abs(w) ** 2)) < 1e-14
    for n in (1, 2, 5):
        irrep = cached_irrep(2, (n,))
        assert abs(norm_direct(irrep, p) - (1 + abs(w) ** 2) ** n) < 1e-10 * 4**n


def test_factorized_matches_direct():
    for M in (2, 3):
        for weight in dominant_weights(M - 1, 3):
            irrep = cached_irrep(M, weight.fundamental)
            for pt in sample_points(weight, 5, seed=9):
                direct = norm_direct(irrep, pt)
                factorized = norm_factorized(weight, pt)
                assert abs(direct / factorized - 1.0) < 1e-10


def test_jet_value_matches_norm():
    for k in (1, 2):
        jet = fundamental_norm_jet(k, P0, 2)
        assert abs(jet.value - fundamental_norm(k, P0)) < 1e-14
    w = Weight((2, 1))
    jet = jet_of_norm(w, P0, 2)
    assert abs(jet.value - norm_factorized(w, P0)) < 1e-13


def test_jet_holomorphic_derivative():
    # circle-stencil Wirtinger derivative of N_k along each coordinate
    r = 1e-3
    roots = [np.exp(2j * np.pi * t / 4) for t in range(4)]
    for k in (1, 2):
        jet = fundamental_norm_jet(k, P0, 1)
        for idx, pair in enumerate(lower_pairs(3)):
            total = 0j
            for root in roots:
                moved = dict(P0.coords)
                moved[pair] = moved.get(pair, 0.0) + r * root
                total += fundamental_norm(k, OrbitPoint.of(3, moved)) * root.conjugate()
            stencil = total / (4 * r)
            exps = tuple(1 if t == idx else 0 for t in range(3))
            assert abs(stencil - jet.coefficient(*exps)) < 1e-6


def test_jet_multiplicative_in_weight():
    j1 = fundamental_norm_jet(1, P0, 2)
    j2 = fundamental_norm_jet(2, P0, 2)
    combined = jet_of_norm(Weight((2, 1)), P0, 2)
    assert combined.isclose(j1 * j1 * j2, tol=1e-12)


def test_index_validation():
    with pytest.raises(ValueError):
        fundamental_norm(3, P0)
    with pytest.raises(ValueError):
        fundamental_norm(0, P0)
    with pytest.raises(ValueError):
        norm_factorized(Weight((1,)), P0)
