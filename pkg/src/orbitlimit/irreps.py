"""Explicit highest-weight representations of sl(M, C) on concrete matrices.

Construction: the fundamental representation with highest weight omega_k is
the wedge power Lambda^k C^M with the derivation action.  For a dominant
weight lambda the ambient space is the tensor product of lambda_k copies of
each Lambda^k C^M, the highest vector is

    v_max = (x) over k of (e_1 ^ ... ^ e_k) tensored lambda_k times,

and V_lambda is the cyclic span of v_max under the simple lowering
generators E(k+1, k).  The span is orthonormalized in the ambient inner
product (wedge monomials over the standard basis are orthonormal), v_max
kept as the first basis vector, and every catalog generator is restricted
to the span.  Because v_max is a unit product vector, the norm-square of
u . v_max factorizes with constant exactly 1, which downstream norm checks
rely on.

The representation is unitarizable in this basis: the restricted matrix of
E(l, k) is the conjugate transpose of that of E(k, l), and H(k) images are
hermitian.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .algebra import AlgebraSpec, Weight, weyl_dimension

DIMENSION_CAP = 5000
_ORTHO_TOL = 1e-10


class DimensionCapExceeded(ValueError):
    pass


@dataclass
class Irrep:
    """A constructed irreducible representation with its ambient embedding."""

    spec: AlgebraSpec
    weight: Weight
    dim: int
    matrices: dict[str, np.ndarray]
    basis: np.ndarray  # ambient_dim x dim, orthonormal columns, column 0 = v_max
    factors: tuple[int, ...]  # wedge degrees of the ambient tensor factors, in order
    _wedge_cache: dict = field(default_factory=dict, repr=False)

    @property
    def v_max(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]


# -- wedge machinery ---------------------------------------------------------


@lru_cache(maxsize=None)
def _wedge_basis(M: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(M), k))


@lru_cache(maxsize=None)
def _wedge_index(M: int, k: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(_wedge_basis(M, k))}


def _sorted_with_sign(values: list[int]) -> tuple[tuple[int, ...], int]:
    """Sort by adjacent transpositions, tracking the permutation sign."""
    arr = list(values)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    return tuple(arr), sign


@lru_cache(maxsize=None)
def _wedge_unit_action(M: int, k: int, a: int, b: int) -> sp.csr_matrix:
    """Derivation action of the matrix unit e_ab on Lambda^k C^M (0-based a, b)."""
    basis = _wedge_basis(M, k)
    index = _wedge_index(M, k)
    rows, cols, vals = [], [], []
    for col, subset in enumerate(basis):
        if b not in subset:
            continue
        if a == b:
            rows.append(col)
            cols.append(col)
            vals.append(1.0)
            continue
        if a in subset:
            continue  # repeated factor: wedge collapses to zero
        replaced = [a if x == b else x for x in subset]
        target, sign = _sorted_with_sign(replaced)
        rows.append(index[target])
        cols.append(col)
        vals.append(float(sign))
    return sp.csr_matrix((vals, (rows, cols)), shape=(len(basis), len(basis)), dtype=complex)


def _wedge_matrix_action(M: int, k: int, x: np.ndarray) -> sp.csr_matrix:
    """Derivation action of an arbitrary M x M matrix on Lambda^k C^M."""
    acc = sp.csr_matrix((len(_wedge_basis(M, k)),) * 2, dtype=complex)
    for a in range(M):
        for b in range(M):
            if x[a, b] != 0:
                acc = acc + complex(x[a, b]) * _wedge_unit_action(M, k, a, b)
    return acc


def _wedge_group_matrix(M: int, k: int, g: np.ndarray) -> np.ndarray:
    """Lambda^k(g): entries are the k x k minors det(g[T, S])."""
    basis = _wedge_basis(M, k)
    n = len(basis)
    out = np.empty((n, n), dtype=complex)
    for j, S in enumerate(basis):
        block = g[:, S]
        for i, T in enumerate(basis):
            sub = block[T, :]
            out[i, j] = sub[0, 0] if k == 1 else np.linalg.det(sub)
    return out


# -- ambient tensor product ---------------------------------------------------


def _ambient_factors(weight: Weight) -> tuple[int, ...]:
    factors = []
    for k, mult in enumerate(weight.fundamental, start=1):
        factors.extend([k] * mult)
    return tuple(factors)


def _ambient_generator(M: int, factors: tuple[int, ...], x: np.ndarray) -> sp.csr_matrix:
    """Leibniz action of x across the tensor factors (sum of one-slot actions)."""
    dims = [len(_wedge_basis(M, k)) for k in factors]
    total = int(np.prod(dims)) if dims else 1
    acc = sp.csr_matrix((total, total), dtype=complex)
    for f, k in enumerate(factors):
        mat = _wedge_matrix_action(M, k, x)
        left = int(np.prod(dims[:f])) if f else 1
        right = int(np.prod(dims[f + 1:])) if f + 1 < len(dims) else 1
        term = sp.kron(sp.identity(left, format="csr"), sp.kron(mat, sp.identity(right, format="csr"), format="csr"), format="csr")
        acc = acc + term
    return acc.tocsr()


def _apply_factorwise(mats: list[np.ndarray], vecs: np.ndarray, dims: list[int]) -> np.ndarray:
    """Apply (x)_f mats[f] to a stack of ambient vectors (ambient_dim x m)."""
    m = vecs.shape[1]
    tensor = vecs.reshape(dims + [m])
    for f, mat in enumerate(mats):
        tensor = np.moveaxis(np.tensordot(mat, tensor, axes=(1, f)), 0, f)
    return tensor.reshape(-1, m)


# -- construction --------------------------------------------------------------


def build_irrep(spec: AlgebraSpec, weight: Weight, dimension_cap: int = DIMENSION_CAP) -> Irrep:
    """Construct V_lambda with orthonormal basis and restricted generator matrices."""
    if weight.M != spec.M:
        raise ValueError(f"weight rank {weight.rank} does not match M={spec.M}")
    target_dim = weyl_dimension(weight)
    if target_dim > dimension_cap:
        raise DimensionCapExceeded(
            f"dim V_lambda = {target_dim} exceeds the cap {dimension_cap}"
        )

    M = spec.M
    factors = _ambient_factors(weight)
    dims = [len(_wedge_basis(M, k)) for k in factors]
    ambient_dim = 1
    for d in dims:
        ambient_dim *= d
        if ambient_dim > 4_000_000:
            raise DimensionCapExceeded(
                "ambient tensor space of the cyclic construction exceeds 4e6 dimensions; "
                f"weight {weight.fundamental} is out of desk scale for this build route"
            )

    # v_max: product of the top wedge vectors e_1 ^ ... ^ e_k (index 0 in each factor).
    v = np.zeros(ambient_dim, dtype=complex)
    top = 0
    for k, d in zip(factors, dims):
        top = top * d + _wedge_index(M, k)[tuple(range(k))]
    v[top] = 1.0

    lowering = [
        _ambient_generator(M, factors, spec.generator(name)) for name in spec.lowering_names()
    ]

    basis_vectors = [v]
    frontier = [v]
    while frontier:
        new_frontier = []
        for vec in frontier:
            for low in lowering:
                w = low.dot(vec)
                nw = np.linalg.norm(w)
                if nw < 1e-14:
                    continue
                w = w / nw
                # modified Gram-Schmidt with one re-orthogonalization pass
                for _ in range(2):
                    for b in basis_vectors:
                        w = w - (b.conj() @ w) * b
                residual = np.linalg.norm(w)
                if residual > _ORTHO_TOL:
                    w = w / residual
                    basis_vectors.append(w)
                    new_frontier.append(w)
        frontier = new_frontier
        if len(basis_vectors) > target_dim:
            raise AssertionError(
                f"cyclic span exceeded the Weyl dimension {target_dim}; numerical breakdown"
            )
    if len(basis_vectors) != target_dim:
        raise AssertionError(
            f"cyclic span dimension {len(basis_vectors)} != Weyl dimension {target_dim}"
        )

    basis = np.column_stack(basis_vectors)
    matrices: dict[str, np.ndarray] = {}
    for name in spec.generator_names:
        amb = _ambient_generator(M, factors, spec.generator(name))
        matrices[name] = basis.conj().T @ amb.dot(basis)

    return Irrep(spec=spec, weight=weight, dim=target_dim, matrices=matrices, basis=basis, factors=factors)


@lru_cache(maxsize=64)
def cached_irrep(M: int, fundamental: tuple[int, ...]) -> Irrep:
    """Shared irrep builder for repeated (M, lambda) requests."""
    return build_irrep(AlgebraSpec(M), Weight(fundamental))


# -- actions -------------------------------------------------------------------


def rep_of_matrix(irrep: Irrep, x: np.ndarray) -> np.ndarray:
    """Image of an arbitrary traceless M x M matrix, by linearity over the catalog."""
    out = np.zeros((irrep.dim, irrep.dim), dtype=complex)
    for name, coeff in irrep.spec.decompose(np.asarray(x, dtype=complex)).items():
        out += coeff * irrep.matrices[name]
    return out


def rep_apply(irrep: Irrep, op) -> np.ndarray:
    """Image of an AbstractOperator: monomials map to matrix products in written order."""
    out = np.zeros((irrep.dim, irrep.dim), dtype=complex)
    eye = np.eye(irrep.dim, dtype=complex)
    for mono, coeff in op.terms.items():
        m = eye
        for name in mono:
            m = m @ irrep.matrices[name]
        out += coeff * m
    return out


def group_apply(irrep: Irrep, g: np.ndarray) -> np.ndarray:
    """Restricted action of g in SL(M): factorwise Lambda^k(g), then projection.

    Built from minors, deliberately not as a matrix exponential, so that
    exp-consistency with rep_apply is a nontrivial check.
    """
    g = np.asarray(g, dtype=complex)
    M = irrep.spec.M
    if g.shape != (M, M):
        raise ValueError(f"expected {M}x{M}, got {g.shape}")
    if abs(np.linalg.det(g) - 1.0) > 1e-10:
        raise ValueError("group element must have determinant 1")
    if not irrep.factors:
        return np.ones((1, 1), dtype=complex)
    key = ("wedge", g.tobytes())
    mats = irrep._wedge_cache.get(key)
    if mats is None:
        mats = [_wedge_group_matrix(M, k, g) for k in irrep.factors]
        irrep._wedge_cache = {key: mats}  # cache only the most recent element
    dims = [len(_wedge_basis(M, k)) for k in irrep.factors]
    moved = _apply_factorwise(mats, irrep.basis, dims)
    return irrep.basis.conj().T @ moved


def _unipotent_log(u: np.ndarray) -> np.ndarray:
    """log of a unipotent triangular matrix: finite Mercator series, exact."""
    M = u.shape[0]
    n = u - np.eye(M)
    term = n.copy()
    acc = n.copy()
    for k in range(2, M):
        term = term @ n
        acc += ((-1) ** (k + 1) / k) * term
    return acc


def orbit_state(irrep: Irrep, u: np.ndarray) -> np.ndarray:
    """Coordinates of u . v_max in the irrep basis, for unit lower-triangular u.

    Computed entirely inside the restricted representation: u = exp(Z) with
    Z = log(u) strictly lower, and exp(rho(Z)) v_max is a terminating series
    because rho(Z) is nilpotent.  No minors are involved, which keeps this
    path independent of the Cauchy-Binet norm formulas.
    """
    u = np.asarray(u, dtype=complex)
    M = irrep.spec.M
    scale = max(1.0, float(np.abs(u).max()))
    if np.abs(np.triu(u) - np.eye(M)).max() > 1e-12 * scale:
        raise ValueError("orbit_state expects a unit lower-triangular matrix")
    z = _unipotent_log(u)
    a = np.zeros((irrep.dim, irrep.dim), dtype=complex)
    for i in range(1, M):
        for j in range(i):
            if z[i, j] != 0:
                a += z[i, j] * irrep.matrices[f"E({i + 1},{j + 1})"]
    vec = irrep.v_max
    term = vec.copy()
    for k in range(1, irrep.dim + 1):
        term = a @ term / k
        norm = np.linalg.norm(term)
        if norm < 1e-300:
            break
        vec = vec + term
    return vec


# -- diagnostics ---------------------------------------------------------------


def weight_multiset(irrep: Irrep, digits: int = 6) -> list[tuple[int, ...]]:
    """Joint H-eigenvalue tuples converted to gl-style partition m-tuples.

    The commuting hermitian images of the H(k) are diagonalized through a
    random real combination; each joint eigenvalue (h_1..h_{M-1}) lifts to an
    m-tuple using the total tensor degree sum_k k lambda_k.  The multiset is
    Weyl-group (permutation) symmetric for a genuine V_lambda.
    """
    M = irrep.spec.M
    rng = np.random.default_rng(7)
    coeffs = rng.standard_normal(M - 1)
    combo = sum(c * irrep.matrices[f"H({k + 1})"] for k, c in enumerate(coeffs))
    _, vecs = np.linalg.eigh(combo)
    hvals = []
    for k in range(1, M):
        h = irrep.matrices[f"H({k})"]
        hvals.append(np.real(np.sum(vecs.conj() * (h @ vecs), axis=0)))
    total = sum(k * lam for k, lam in enumerate(irrep.weight.fundamental, start=1))
    out = []
    for col in range(irrep.dim):
        h = [round(float(hv[col])) for hv in hvals]
        # m_j - m_{j+1} = h_j and sum m_j = total degree
        tail = [0] * M
        for j in range(M - 2, -1, -1):
            tail[j] = tail[j + 1] + h[j]
        shift = (total - sum(tail)) // M
        out.append(tuple(int(t + shift) for t in tail))
    return sorted(out)


def highest_weight_space_dimension(irrep: Irrep, tol: float = 1e-8) -> int:
    """Dimension of the joint kernel of all raising operators and H(k) - lambda_k."""
    blocks = []
    for k in range(1, irrep.spec.M + 1):
        for l in range(k + 1, irrep.spec.M + 1):
            blocks.append(irrep.matrices[f"E({k},{l})"])
    eye = np.eye(irrep.dim)
    for k, lam in enumerate(irrep.weight.fundamental, start=1):
        blocks.append(irrep.matrices[f"H({k})"] - lam * eye)
    stacked = np.vstack(blocks)
    svals = np.linalg.svd(stacked, compute_uv=False)
    return int(np.sum(svals <= tol * max(1.0, svals[0] if len(svals) else 1.0)))


def commutation_residual(irrep: Irrep, pairs=None) -> float:
    """max over generator pairs of || [rho(a), rho(b)] - rho([a, b]) ||_max."""
    names = irrep.spec.generator_names
    worst = 0.0
    if pairs is None:
        pairs = [(a, b) for a in names for b in names]
    for a, b in pairs:
        ra, rb = irrep.matrices[a], irrep.matrices[b]
        bracket = irrep.spec.generator(a) @ irrep.spec.generator(b) - irrep.spec.generator(b) @ irrep.spec.generator(a)
        residual = ra @ rb - rb @ ra - rep_of_matrix(irrep, bracket)
        worst = max(worst, float(np.abs(residual).max()))
    return worst


def unitarity_residual(irrep: Irrep) -> float:
    """max deviation of rho(g)^dagger from rho(g^dagger) over the catalog."""
    worst = 0.0
    for name in irrep.spec.generator_names:
        other = irrep.spec.adjoint_name(name)
        worst = max(
            worst,
            float(np.abs(irrep.matrices[name].conj().T - irrep.matrices[other]).max()),
        )
    return worst


# -- serialization ---------------------------------------------------------------


def _complex_array_to_json(a: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(a)]


def _complex_array_from_json(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def irrep_to_json(irrep: Irrep) -> str:
    payload = {
        "M": irrep.spec.M,
        "lambda": list(irrep.weight.fundamental),
        "dim": irrep.dim,
        "matrices": {name: _complex_array_to_json(m) for name, m in sorted(irrep.matrices.items())},
        "basis": _complex_array_to_json(irrep.basis),
        "factors": list(irrep.factors),
    }
    return json.dumps(payload, sort_keys=True)


def irrep_from_json(text: str) -> Irrep:
    payload = json.loads(text)
    spec = AlgebraSpec(int(payload["M"]))
    weight = Weight(tuple(int(c) for c in payload["lambda"]))
    matrices = {name: _complex_array_from_json(rows) for name, rows in payload["matrices"].items()}
    basis = _complex_array_from_json(payload["basis"])
    return Irrep(
        spec=spec,
        weight=weight,
        dim=int(payload["dim"]),
        matrices=matrices,
        basis=basis,
        factors=tuple(int(k) for k in payload["factors"]),
    )
