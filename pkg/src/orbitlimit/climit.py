"""Classical limits of polynomial operators on highest-weight orbits.

The momentum map of the projective orbit through a state x is

    mu^xi(x) = -2i <x, rho(xi) x> / <x, x>,

so cl(A) = mu^{iA}/2 = <x, A x>/<x, x> for hermitian A.  For a tensor
monomial the classical limit is the product of the factors' limits, and the
n-dependent approximants

    cl_n(alpha) = n^{-deg alpha} l_{n lambda}(alpha)

converge to it with O(1/n) error, where l_mu(alpha) = r(alpha) N_mu / N_mu
is the symbol produced by composing the first-order operators of the
factors on the norm function.  Everything below is organized around three
independent evaluation routes for l: holomorphic jets against the
factorized norm (production path), matrix elements in a constructed irrep
(degree-1 anchor), and central circle-stencil differences of the actual
Gauss flows against the irrep norm (cross-check path).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import product as iter_product

import numpy as np
from scipy.linalg import expm

from .algebra import Weight, su_orthonormal_basis
from .irreps import Irrep, group_apply, orbit_state, rep_of_matrix
from .jets import Jet
from .norms import fundamental_norm_jet, jet_of_norm
from .operators import AbstractOperator, is_abstractly_selfadjoint
from .orbit import OrbitPoint, apply_op, gauss_decompose, lower_pairs, r_tilde

# -- momentum map ----------------------------------------------------------------


def _rep_with_scalar_part(irrep: Irrep, mat) -> np.ndarray:
    """Image of a general M x M matrix: the trace part acts as a scalar."""
    if isinstance(mat, str):
        return irrep.matrices[mat]
    mat = np.asarray(mat, dtype=complex)
    trace = np.trace(mat) / irrep.spec.M
    out = rep_of_matrix(irrep, mat - trace * np.eye(irrep.spec.M))
    if trace != 0:
        out = out + trace * np.eye(irrep.dim)
    return out


def moment(irrep: Irrep, xi, x: np.ndarray) -> complex:
    """mu^xi(x) = -2i <x, rho(xi) x> / <x, x>."""
    x = np.asarray(x, dtype=complex)
    rho = _rep_with_scalar_part(irrep, xi)
    return complex(-2j * (x.conj() @ (rho @ x)) / (x.conj() @ x))


@dataclass
class MomentValue:
    """mu(x) over an orthonormal basis of su(M), with its matrix avatar.

    The matrix form sum_a mu^{xi_a} xi_a is skew-hermitian traceless and
    transports by conjugation under the group action (coadjoint action via
    the trace pairing).
    """

    labels: tuple[str, ...]
    values: np.ndarray
    matrix: np.ndarray


def moment_map(irrep: Irrep, x: np.ndarray, tol: float = 1e-8) -> MomentValue:
    basis = su_orthonormal_basis(irrep.spec.M)
    labels, values = [], []
    matrix = np.zeros((irrep.spec.M, irrep.spec.M), dtype=complex)
    for label, xi in basis:
        v = moment(irrep, xi, x)
        if abs(v.imag) > tol:
            raise AssertionError(f"moment value for {label} is not real: {v}")
        labels.append(label)
        values.append(v.real)
        matrix += v.real * xi
    return MomentValue(tuple(labels), np.array(values), matrix)


def cl_generator(irrep: Irrep, a, x: np.ndarray) -> complex:
    """cl(A)(x) = <x, rho(A) x>/<x, x>, the matrix-element oracle for symbols."""
    x = np.asarray(x, dtype=complex)
    rho = _rep_with_scalar_part(irrep, a)
    return complex((x.conj() @ (rho @ x)) / (x.conj() @ x))


# -- symbols ---------------------------------------------------------------------


def l_weight_gradient(gen: str, point: OrbitPoint) -> np.ndarray:
    """Coefficients g_k with l(gen) = sum_k lambda_k g_k (degree 1 is weight-linear)."""
    M = point.M
    op = r_tilde(gen, point, order=0)
    w = op.vector_at_base()
    s = op.mult_weight_coefficients_at_base()
    pairs = lower_pairs(M)
    out = np.zeros(M - 1, dtype=complex)
    for k in range(1, M):
        njet = fundamental_norm_jet(k, point, 1)
        directional = 0j
        for idx, pair in enumerate(pairs):
            exps = tuple(1 if t == idx else 0 for t in range(len(pairs)))
            directional += w[pair] * njet.coefficient(*exps)
        out[k - 1] = directional / njet.value + s[k - 1]
    return out


def l_symbol(
    weight: Weight,
    alpha,
    point: OrbitPoint,
    force_jets: bool = False,
    degree_cap: int = 6,
) -> complex:
    """l_lambda(alpha)(point) = [r(alpha_1) o ... o r(alpha_p)] N_lambda / N_lambda.

    The composition applies the rightmost factor first, mirroring how matrix
    products of represented monomials act on vectors.  Degree 1 avoids jet
    matrices entirely; higher degrees expand operator coefficients to order
    p-1 so the composed application on the order-p norm jet is exact.  The
    degree cap bounds jet width; raise it explicitly for wider monomials.
    """
    alpha = tuple(alpha)
    if weight.M != point.M:
        raise ValueError("weight and point have different M")
    p = len(alpha)
    if p > degree_cap:
        raise ValueError(f"monomial degree {p} exceeds the degree cap {degree_cap}")
    if p == 0:
        return 1.0 + 0j
    if p == 1 and not force_jets:
        grad = l_weight_gradient(alpha[0], point)
        return complex(sum(lam * g for lam, g in zip(weight.fundamental, grad)))
    njet = jet_of_norm(weight, point, p)
    nvalue = njet.value
    ops = [r_tilde(name, point, weight, order=p - 1) for name in alpha]
    cur = njet
    for op in reversed(ops):
        cur = apply_op(op, cur)
    return complex(cur.value / nvalue)


def l_symbol_jet(weight: Weight, alpha, point: OrbitPoint, order: int) -> Jet:
    """l_lambda(alpha) as a jet of the requested order around the point."""
    alpha = tuple(alpha)
    p = len(alpha)
    njet = jet_of_norm(weight, point, p + order)
    ops = [r_tilde(name, point, weight, order=p + order - 1) for name in alpha]
    cur = njet
    for op in reversed(ops):
        cur = apply_op(op, cur)
    return cur * jet_of_norm(weight, point, order).reciprocal()


def cl_monomial(weight: Weight, alpha, point: OrbitPoint) -> complex:
    """Classical limit of a tensor monomial: the product of its factors' limits."""
    value = 1.0 + 0j
    for name in alpha:
        grad = l_weight_gradient(name, point)
        value *= sum(lam * g for lam, g in zip(weight.fundamental, grad))
    return complex(value)


def cl_operator(weight: Weight, op: AbstractOperator, point: OrbitPoint) -> complex:
    """Classical limit of a polynomial operator, term by term."""
    return complex(sum(coeff * cl_monomial(weight, mono, point) for mono, coeff in op.terms.items()))


# -- flow cross-check path ---------------------------------------------------------


def l_symbol_flow(
    irrep: Irrep,
    alpha,
    point: OrbitPoint,
    radius: float = 0.02,
    points_per_axis: int = 4,
    refinements: int = 2,
) -> complex:
    """l(alpha) from finite differences of actual Gauss flows and the irrep norm.

    Evaluates F(t_1..t_p): flow by exp(alpha_1 t_1) from the point, collect
    the character of the diagonal factor, flow by alpha_2 from there, and so
    on; finish with |u_p . v_max|^2 inside the irrep.  The mixed first
    derivative at t = 0 is extracted with symmetric circle stencils (which
    isolate the holomorphic part; real-step differences cannot) and
    Richardson extrapolation over halved radii.  Independent of jets and of
    the minor-sum norm path.
    """
    alpha = tuple(alpha)
    spec = irrep.spec
    p = len(alpha)
    if p == 0:
        return 1.0 + 0j
    gens = [spec.generator(name) if isinstance(name, str) else np.asarray(name, complex) for name in alpha]
    m = irrep.weight.partition
    u0 = point.matrix()
    base_vec = orbit_state(irrep, u0)
    n0 = complex(base_vec.conj() @ base_vec)

    def evaluate(ts: tuple[complex, ...]) -> complex:
        u = u0
        chi = 1.0 + 0j
        for gen, t in zip(gens, ts):
            moved = expm(gen * t) @ u
            u, d, _ = gauss_decompose(moved)
            diag = np.diag(d)
            for mj, dj in zip(m, diag):
                if mj:
                    chi *= dj ** mj
        vec = orbit_state(irrep, u)
        return chi * complex(vec.conj() @ vec)

    mpt = points_per_axis
    roots = [np.exp(2j * np.pi * k / mpt) for k in range(mpt)]

    def stencil(r: float) -> complex:
        total = 0j
        for ks in iter_product(range(mpt), repeat=p):
            ts = tuple(r * roots[k] for k in ks)
            weight_factor = np.prod([roots[k].conjugate() for k in ks])
            total += evaluate(ts) * weight_factor
        return total / (mpt * r) ** p

    estimates = [stencil(radius / 2**j) for j in range(refinements + 1)]
    # circle-stencil error is a series in r^2: Richardson with factor 4 per level
    level = estimates
    factor = 4.0
    while len(level) > 1:
        level = [(factor * level[i + 1] - level[i]) / (factor - 1.0) for i in range(len(level) - 1)]
        factor *= 4.0
    return complex(level[0] / n0)


# -- convergence ---------------------------------------------------------------------


@dataclass
class ConvergenceReport:
    """cl_n table against the classical limit, with a log-log error fit."""

    n_values: tuple[int, ...]
    values: tuple[complex, ...]
    limit: complex
    errors: tuple[float, ...]
    exact: bool
    exponent: float | None
    fit_residual: float | None
    monotone: bool
    passed: bool
    exact_tol: float
    exponent_max: float
    exponent_min: float | None
    monotone_from: int


def cl_sequence(
    weight: Weight,
    op: AbstractOperator,
    point: OrbitPoint,
    n_values=(1, 2, 4, 8, 16, 32, 64),
    exact_tol: float = 1e-12,
    exponent_max: float = -0.7,
    exponent_min: float | None = None,
    monotone_from: int = 4,
) -> ConvergenceReport:
    """Evaluate cl_n(op) = sum_i coeff_i n^{-deg_i} l_{n lambda}(alpha_i) against cl(op)."""
    if weight.is_zero:
        raise ValueError("the zero weight labels a trivial (single-point) orbit; nothing to converge")
    n_values = tuple(int(n) for n in n_values)
    if any(n <= 0 for n in n_values) or any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("n values must be positive and strictly increasing")
    if not is_abstractly_selfadjoint(op):
        warnings.warn("operator is not abstractly selfadjoint; cl_n may not be real", stacklevel=2)

    limit = cl_operator(weight, op, point)
    values = []
    for n in n_values:
        scaled = weight.scale(n)
        total = 0j
        for mono, coeff in op.terms.items():
            total += coeff * l_symbol(scaled, mono, point) / n ** len(mono)
        values.append(total)
    errors = [abs(v - limit) for v in values]

    exact = all(e <= exact_tol for e in errors)
    exponent = None
    fit_residual = None
    usable = [(n, e) for n, e in zip(n_values, errors) if e > 0]
    if len(usable) >= 2:
        logs_n = np.log([n for n, _ in usable])
        logs_e = np.log([e for _, e in usable])
        coeffs, res, *_ = np.polyfit(logs_n, logs_e, 1, full=True)
        exponent = float(coeffs[0])
        fit_residual = float(np.sqrt(res[0] / len(usable))) if len(res) else 0.0

    tail = [(n, e) for n, e in zip(n_values, errors) if n >= monotone_from]
    monotone = all(b < a for (_, a), (_, b) in zip(tail, tail[1:]))

    if exact:
        passed = True
    else:
        passed = monotone and exponent is not None and exponent <= exponent_max
        if exponent_min is not None and exponent is not None:
            passed = passed and exponent >= exponent_min

    return ConvergenceReport(
        n_values=n_values,
        values=tuple(values),
        limit=limit,
        errors=tuple(errors),
        exact=exact,
        exponent=exponent,
        fit_residual=fit_residual,
        monotone=monotone,
        passed=passed,
        exact_tol=exact_tol,
        exponent_max=exponent_max,
        exponent_min=exponent_min,
        monotone_from=monotone_from,
    )


# -- Poisson structure ------------------------------------------------------------------


@dataclass
class PoissonCheck:
    residual: float
    fd_value: float
    exact_value: float


def _require_skew(xi: np.ndarray):
    if np.abs(xi + xi.conj().T).max() > 1e-10 * max(1.0, float(np.abs(xi).max())):
        raise ValueError("flow generator must be skew-hermitian (an element of the compact form)")


def poisson_check(irrep: Irrep, xi: np.ndarray, eta: np.ndarray, x: np.ndarray, h: float = 1e-4) -> PoissonCheck:
    """Central-difference realization of {mu^xi, mu^eta} = mu^{[xi, eta]}.

    The time derivative of mu^eta along the unitary flow exp(-xi t) equals
    mu^{[xi, eta]} exactly; the returned residual is the finite-difference
    defect, O(h^2) by symmetry of the stencil.
    """
    xi = np.asarray(xi, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    _require_skew(xi)
    _require_skew(eta)
    rho_xi = _rep_with_scalar_part(irrep, xi)
    forward = expm(-h * rho_xi) @ x
    backward = expm(h * rho_xi) @ x
    fd = (moment(irrep, eta, forward) - moment(irrep, eta, backward)) / (2.0 * h)
    exact = moment(irrep, xi @ eta - eta @ xi, x)
    return PoissonCheck(
        residual=float(abs(fd - exact)),
        fd_value=float(fd.real),
        exact_value=float(exact.real),
    )


def dirac_check(irrep: Irrep, a: np.ndarray, b: np.ndarray, x: np.ndarray, h: float = 1e-4) -> PoissonCheck:
    """Half-bracket relation {cl A, cl B} = cl(i[A, B])/2 for hermitian A, B.

    Realized as the flow derivative of cl(B) along exp(-iA t) against
    cl(i[A, B]); dividing the mu-identity by 4 gives exactly this.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    for mat in (a, b):
        if np.abs(mat - mat.conj().T).max() > 1e-10 * max(1.0, float(np.abs(mat).max())):
            raise ValueError("dirac_check expects hermitian arguments")
    rho = _rep_with_scalar_part(irrep, 1j * a)
    forward = expm(-h * rho) @ x
    backward = expm(h * rho) @ x
    fd = (cl_generator(irrep, b, forward) - cl_generator(irrep, b, backward)) / (2.0 * h)
    exact = cl_generator(irrep, 1j * (a @ b - b @ a), x)
    return PoissonCheck(
        residual=float(abs(fd - exact)),
        fd_value=float(fd.real),
        exact_value=float(exact.real),
    )


def equivariance_residual(irrep: Irrep, k: np.ndarray, x: np.ndarray) -> float:
    """Frobenius defect of mu(k.x) = Ad*(k) mu(x) (conjugation in matrix form)."""
    moved = group_apply(irrep, k) @ x
    m_moved = moment_map(irrep, moved).matrix
    m_base = moment_map(irrep, x).matrix
    transported = k @ m_base @ np.linalg.inv(k)
    return float(np.linalg.norm(m_moved - transported))


# -- polynomial structure in the weight (Theorem-3-style) ---------------------------------


@dataclass
class Theorem3Report:
    """Exact interpolation of lambda -> l_lambda(alpha)(x) on an integer grid.

    coefficients holds the interpolated polynomial in the monomial basis of
    the fundamental coordinates; leading is its top homogeneous slice.
    """

    degree: int
    anchor: tuple[int, ...]
    coefficients: dict[tuple[int, ...], complex]
    excess_difference: float
    held_out_residual: float
    leading: dict[tuple[int, ...], complex]
    expected_leading: dict[tuple[int, ...], complex]
    leading_deviation: float
    value_scale: float
    held_out_count: int

    def passed(self, tol: float = 1e-8) -> bool:
        return (
            self.excess_difference <= tol
            and self.held_out_residual <= tol
            and self.leading_deviation <= tol
        )


def default_theorem3_grid(rank: int, degree: int) -> list[Weight]:
    """Anchored simplex grid of side degree+1 plus held-out validation nodes.

    The anchor (degree+1, ..., degree+1) keeps every node (stencil and
    held-out alike) inside the hypothesis region: some lambda_i > degree.
    """
    anchor = (degree + 1,) * rank
    nodes = []
    for gamma in _multi_indices(rank, degree + 1):
        nodes.append(Weight(tuple(a + g for a, g in zip(anchor, gamma))))
    held = [tuple(degree + 2 if i == j else 0 for i in range(rank)) for j in range(rank)]
    held.append((degree + 2,) * rank)
    for offset in held:
        nodes.append(Weight(tuple(a + g for a, g in zip(anchor, offset))))
    return nodes


def _multi_indices(rank: int, max_total: int):
    """All exponent tuples with total degree <= max_total."""
    if rank == 0:
        yield ()
        return
    for head in range(max_total + 1):
        for tail in _multi_indices(rank - 1, max_total - head):
            yield (head,) + tail


def _binomial_difference(values: dict[tuple[int, ...], complex], beta: tuple[int, ...]) -> complex:
    """Forward difference Delta^beta at the anchor from tabulated simplex values."""
    total = 0j
    for gamma in iter_product(*[range(b + 1) for b in beta]):
        sign = (-1) ** (sum(beta) - sum(gamma))
        weight_factor = 1
        for b, g in zip(beta, gamma):
            weight_factor *= math.comb(b, g)
        total += sign * weight_factor * values[gamma]
    return total


def theorem3_structure(
    grid: list[Weight],
    alpha,
    point: OrbitPoint,
    enforce_hypothesis: bool = True,
) -> Theorem3Report:
    """Interpolate l_lambda(alpha)(point) over the grid and compare leading terms.

    The simplex nodes anchored at the componentwise minimum feed a Newton
    forward form (exact integer finite differences, no least squares); the
    remaining grid nodes are held out for validation.  Differences of total
    order degree+1 must vanish, the held-out evaluations must match, and the
    degree-p homogeneous part must equal the expanded product of the
    factors' degree-1 limits with unit constant.
    """
    alpha = tuple(alpha)
    p = len(alpha)
    if p == 0:
        raise ValueError("alpha must have positive degree")
    if not grid:
        raise ValueError("empty weight grid")
    rank = grid[0].rank
    if enforce_hypothesis:
        for wt in grid:
            if max(wt.fundamental) <= p:
                raise ValueError(
                    f"grid node {wt.fundamental} violates the hypothesis: needs some lambda_i > {p}"
                )
    anchor = tuple(min(wt.fundamental[i] for wt in grid) for i in range(rank))
    grid_set = {wt.fundamental for wt in grid}
    needed = list(_multi_indices(rank, p + 1))
    for gamma in needed:
        node = tuple(a + g for a, g in zip(anchor, gamma))
        if node not in grid_set:
            raise ValueError(f"grid is missing simplex node {node} required for interpolation")

    values: dict[tuple[int, ...], complex] = {}
    for gamma in needed:
        node = tuple(a + g for a, g in zip(anchor, gamma))
        values[gamma] = l_symbol(Weight(node), alpha, point)
    value_scale = max(1.0, max(abs(v) for v in values.values()))

    diffs = {beta: _binomial_difference(values, beta) for beta in needed}
    excess = max((abs(diffs[b]) for b in needed if sum(b) == p + 1), default=0.0)

    def newton_eval(node: tuple[int, ...]) -> complex:
        t = tuple(n - a for n, a in zip(node, anchor))
        total = 0j
        for beta, d in diffs.items():
            if sum(beta) > p:
                continue
            w = 1
            for ti, bi in zip(t, beta):
                w *= math.comb(ti, bi) if ti >= bi else _signed_comb(ti, bi)
            total += d * w
        return total

    held_nodes = [wt for wt in grid if tuple(g - a for g, a in zip(wt.fundamental, anchor)) not in set(needed)]
    held_residual = 0.0
    for wt in held_nodes:
        actual = l_symbol(wt, alpha, point)
        held_residual = max(held_residual, abs(actual - newton_eval(wt.fundamental)))
        value_scale = max(value_scale, abs(actual))

    monomial = _newton_to_monomial(diffs, anchor, p)
    leading = {beta: c for beta, c in monomial.items() if sum(beta) == p}
    expected = _expand_product_of_gradients(alpha, point, rank)
    keys = set(leading) | set(expected)
    leading_deviation = max(abs(leading.get(k, 0) - expected.get(k, 0)) for k in keys)
    lead_scale = max(1.0, max(abs(v) for v in expected.values()) if expected else 1.0)

    return Theorem3Report(
        degree=p,
        anchor=anchor,
        coefficients=monomial,
        excess_difference=excess / value_scale,
        held_out_residual=held_residual / value_scale,
        leading=leading,
        expected_leading=expected,
        leading_deviation=leading_deviation / lead_scale,
        value_scale=value_scale,
        held_out_count=len(held_nodes),
    )


def _signed_comb(t: int, b: int) -> int:
    """binomial(t, b) continued to integer t < b (falling factorial / b!)."""
    num = 1
    for j in range(b):
        num *= t - j
    return num // math.factorial(b)


def _axis_basis_poly(b: int, a: int) -> list[float]:
    """Ascending coefficients in lambda of binomial(lambda - a, b)."""
    poly = [1.0]
    for j in range(b):
        root = a + j
        new = [0.0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i] -= root * c
            new[i + 1] += c
        poly = new
    fact = math.factorial(b)
    return [c / fact for c in poly]


def _newton_to_monomial(
    diffs: dict[tuple[int, ...], complex], anchor: tuple[int, ...], degree: int
) -> dict[tuple[int, ...], complex]:
    """Convert the Newton forward form to monomial coefficients in lambda."""
    rank = len(anchor)
    out: dict[tuple[int, ...], complex] = {}
    for beta, d in diffs.items():
        if sum(beta) > degree or d == 0:
            continue
        axis_polys = [_axis_basis_poly(b, a) for b, a in zip(beta, anchor)]
        terms: dict[tuple[int, ...], complex] = {(0,) * rank: d}
        for axis, poly in enumerate(axis_polys):
            new: dict[tuple[int, ...], complex] = {}
            for exps, c in terms.items():
                for power, pc in enumerate(poly):
                    if pc == 0:
                        continue
                    key = exps[:axis] + (exps[axis] + power,) + exps[axis + 1:]
                    new[key] = new.get(key, 0) + c * pc
            terms = new
        for key, c in terms.items():
            out[key] = out.get(key, 0) + c
    return out


def _expand_product_of_gradients(alpha, point: OrbitPoint, rank: int) -> dict[tuple[int, ...], complex]:
    """Coefficients of prod_i (sum_k grad_k(alpha_i) lambda_k) over lambda monomials."""
    acc: dict[tuple[int, ...], complex] = {(0,) * rank: 1.0 + 0j}
    for name in alpha:
        grad = l_weight_gradient(name, point)
        new: dict[tuple[int, ...], complex] = {}
        for exps, c in acc.items():
            for k in range(rank):
                key = exps[:k] + (exps[k] + 1,) + exps[k + 1:]
                new[key] = new.get(key, 0) + c * grad[k]
        acc = new
    return {k: v for k, v in acc.items() if v != 0}
