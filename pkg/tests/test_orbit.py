import numpy as np
import pytest
from scipy.linalg import expm

from orbitlimit.algebra import AlgebraSpec, Weight
from orbitlimit.jets import Jet
from orbitlimit.orbit import (
    DecompositionOnClosedSet,
    OrbitPoint,
    active_pairs,
    apply_op,
    blocks_for_weight,
    conjugate_split,
    gauss_decompose,
    lower_pairs,
    r_tilde,
    sample_points,
)

P0 = OrbitPoint.of(3, {(2, 1): 0.5, (3, 1): -0.25, (3, 2): 1.0})


def test_lower_pairs_order():
    assert lower_pairs(3) == ((2, 1), (3, 1), (3, 2))
    assert lower_pairs(4) == ((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3))


def test_active_pairs_by_chart():
    # regular weight: every strictly lower pair moves
    assert active_pairs(Weight((1, 1))) == lower_pairs(3)
    # singular weights freeze the pairs inside a parabolic block
    assert active_pairs(Weight((1, 0))) == ((2, 1), (3, 1))
    assert active_pairs(Weight((0, 1))) == ((3, 1), (3, 2))
    assert blocks_for_weight(Weight((0, 1))) == (0, 0, 1)
    assert active_pairs(Weight((0, 1, 0))) == ((3, 1), (3, 2), (4, 1), (4, 2))


def test_orbit_point_basics():
    assert P0.get(2, 1) == 0.5
    assert P0.get(3, 2) == 1.0
    u = P0.matrix()
    assert np.allclose(np.diag(u), 1.0)
    assert u[2, 1] == 1.0
    assert np.abs(np.triu(u, 1)).max() == 0.0
    with pytest.raises(ValueError):
        OrbitPoint.of(3, {(1, 2): 1.0})
    with pytest.raises(ValueError):
        OrbitPoint.of(3, {(4, 1): 1.0})


def test_orbit_point_chart_membership():
    assert P0.on_chart(Weight((1, 1)))
    assert not P0.on_chart(Weight((1, 0)))
    thin = OrbitPoint.of(3, {(3, 1): 1j, (3, 2): 2.0})
    assert thin.on_chart(Weight((0, 1)))
    assert thin.on_chart(Weight((1, 1)))


def test_orbit_point_json_round_trip():
    d = P0.to_json_dict()
    assert d["x_2_1"] == [0.5, 0.0]
    clone = OrbitPoint.from_json_dict(3, d)
    assert clone == P0
    with pytest.raises(ValueError):
        OrbitPoint.from_json_dict(3, {"y_2_1": [0.0, 0.0]})


def test_sample_points_deterministic():
    a = sample_points(Weight((1, 1)), 10, seed=5)
    b = sample_points(Weight((1, 1)), 10, seed=5)
    assert a == b
    c = sample_points(Weight((1, 1)), 10, seed=6)
    assert a != c
    for p in a:
        assert all(abs(v) <= 1.0 + 1e-12 for v in p.coords.values())
    small = sample_points(Weight((1, 1)), 10, seed=5, radius=0.1)
    assert all(abs(v) <= 0.1 + 1e-12 for p in small for v in p.coords.values())


def test_sample_points_respect_chart():
    pts = sample_points(Weight((0, 1)), 20, seed=1)
    for p in pts:
        assert p.get(2, 1) == 0.0
        assert p.on_chart(Weight((0, 1)))


def test_gauss_reconstruction_random():
    rng = np.random.default_rng(12)
    for _ in range(200):
        M = int(rng.integers(2, 6))
        g = rng.standard_normal((M, M)) + 1j * rng.standard_normal((M, M)) + 3.0 * np.eye(M)
        lower, diag, upper = gauss_decompose(g)
        assert np.abs(lower @ diag @ upper - g).max() < 1e-12 * max(1.0, np.abs(g).max())
        assert np.allclose(np.diag(lower), 1.0)
        assert np.allclose(np.diag(upper), 1.0)
        assert np.abs(np.triu(lower, 1)).max() == 0.0
        assert np.abs(np.tril(upper, -1)).max() == 0.0
        assert np.abs(diag - np.diag(np.diag(diag))).max() == 0.0


def test_gauss_minor_ratio():
    rng = np.random.default_rng(13)
    g = rng.standard_normal((4, 4)) + 4.0 * np.eye(4)
    _, diag, _ = gauss_decompose(g)
    minors = [np.linalg.det(g[:k, :k]) for k in range(1, 5)]
    assert abs(diag[0, 0] - minors[0]) < 1e-12
    for k in range(1, 4):
        assert abs(diag[k, k] - minors[k] / minors[k - 1]) < 1e-10


def test_gauss_rejects_closed_set():
    g = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(DecompositionOnClosedSet):
        gauss_decompose(g)
    g = np.array([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(DecompositionOnClosedSet):
        gauss_decompose(g)


def test_gauss_worked_flow_example():
    # flow of E(1,2) from the reference point, closed forms of the factors
    spec = AlgebraSpec(3)
    t = 0.3
    x21, x31, x32 = 0.5, -0.25, 1.0
    g = expm(spec.generator("E(1,2)") * t) @ P0.matrix()
    lower, diag, _ = gauss_decompose(g)
    assert abs(diag[0, 0] - (1 + t * x21)) < 1e-12
    assert abs(diag[1, 1] - 1.0 / (1 + t * x21)) < 1e-12
    assert abs(diag[2, 2] - 1.0) < 1e-12
    assert abs(lower[1, 0] - x21 / (1 + t * x21)) < 1e-12
    assert abs(lower[2, 0] - x31 / (1 + t * x21)) < 1e-12
    assert abs(lower[2, 1] - (x32 + t * (x21 * x32 - x31))) < 1e-12


def test_conjugate_split_parts():
    spec = AlgebraSpec(3)
    xi = spec.generator("E(1,2)")
    low, diag, up = conjugate_split(xi, P0)
    u = P0.matrix()
    c = np.linalg.solve(u, xi @ u)
    assert np.abs(low + diag + up - c).max() < 1e-12
    assert np.abs(np.triu(low)).max() == 0.0
    assert np.abs(diag - np.diag(np.diag(diag))).max() == 0.0
    assert np.abs(np.tril(up)).max() == 0.0
    # name and matrix arguments agree
    low2, _, _ = conjugate_split("E(1,2)", P0)
    assert np.abs(low - low2).max() == 0.0


def test_flow_derivative_matches_split():
    # central difference of the Gauss factors along the flow vs the split
    spec = AlgebraSpec(3)
    h = 1e-4
    rng = np.random.default_rng(3)
    for name in ("E(1,2)", "E(2,1)", "E(1,3)", "H(1)", "H(2)"):
        xi = spec.generator(name)
        u = P0.matrix()
        op = r_tilde(name, P0, order=0)
        vec = op.vector_at_base()
        lp, _, _ = gauss_decompose(expm(xi * h) @ u)
        lm, _, _ = gauss_decompose(expm(-xi * h) @ u)
        fd = (lp - lm) / (2 * h)
        for (i, j), value in vec.items():
            assert abs(fd[i - 1, j - 1] - value) < 1e-6
        # diagonal log-derivative gives the weight-multiplication coefficients
        _, dp, _ = gauss_decompose(expm(xi * h) @ u)
        _, dm, _ = gauss_decompose(expm(-xi * h) @ u)
        dlog = (np.log(np.diag(dp).astype(complex)) - np.log(np.diag(dm).astype(complex))) / (2 * h)
        low, diag, up = conjugate_split(name, P0)
        assert np.abs(dlog - np.diag(diag)).max() < 1e-6


def test_r_tilde_golden_coefficients():
    rng = np.random.default_rng(31)
    points = [P0] + [
        OrbitPoint.of(
            3,
            {
                (2, 1): complex(rng.standard_normal(), rng.standard_normal()) / 2,
                (3, 1): complex(rng.standard_normal(), rng.standard_normal()) / 2,
                (3, 2): complex(rng.standard_normal(), rng.standard_normal()) / 2,
            },
        )
        for _ in range(20)
    ]
    for pt in points:
        x21, x31, x32 = pt.get(2, 1), pt.get(3, 1), pt.get(3, 2)
        op = r_tilde("E(1,2)", pt, order=0)
        vec = op.vector_at_base()
        assert abs(vec[(2, 1)] + x21 * x21) < 1e-12
        assert abs(vec[(3, 1)] + x21 * x31) < 1e-12
        assert abs(vec[(3, 2)] - (x21 * x32 - x31)) < 1e-12
        mult = op.mult_weight_coefficients_at_base()
        assert abs(mult[0] - x21) < 1e-12
        assert abs(mult[1]) < 1e-12


def test_r_tilde_jet_order_consistency():
    # the order-0 numpy fast path agrees with the jet path at the base point
    for name in ("E(1,2)", "E(3,1)", "H(2)"):
        fast = r_tilde(name, P0, order=0)
        jets = r_tilde(name, P0, order=2)
        vec_fast = fast.vector_at_base()
        vec_jets = jets.vector_at_base()
        for pair in vec_fast:
            assert abs(vec_fast[pair] - vec_jets[pair]) < 1e-12
        assert np.abs(fast.mult_weight_coefficients_at_base() - jets.mult_weight_coefficients_at_base()).max() < 1e-12


def test_apply_op_requires_bound_weight():
    op = r_tilde("E(1,2)", P0, order=1)
    f = Jet.constant(1.0, 3, 2)
    with pytest.raises(ValueError):
        apply_op(op, f)


def test_apply_op_order_guard():
    w = Weight((1, 1))
    op = r_tilde("E(1,2)", P0, w, order=0)
    f = Jet.constant(1.0, 3, 3)
    with pytest.raises(ValueError):
        apply_op(op, f)


def test_apply_op_is_derivation_plus_mult():
    # on a pure coordinate jet the operator returns vector coefficient + mult * coordinate
    w = Weight((1, 1))
    op = r_tilde("E(1,2)", P0, w, order=1)
    order = 2
    idx = 0  # coordinate x_2_1
    f = Jet.variable(idx, P0.get(2, 1), 3, order)
    out = apply_op(op, f)
    vec = op.vector_at_base()
    mult_jet = op.mult
    expected_value = vec[(2, 1)] + mult_jet.value * P0.get(2, 1)
    assert abs(out.value - expected_value) < 1e-12
