"""Generator catalogs, weights, and scalar weight data for sl(M, C) / su(M).

The complexified algebra sl(M, C) is presented through its defining M x M
realization.  The catalog consists of the matrix units E(k, l) = e_kl for
k != l together with the Cartan generators H(k) = e_kk - e_{k+1,k+1}, all
indexed 1-based.  Dominant integral weights are stored in fundamental
coordinates lambda = (lambda_1, ..., lambda_{M-1}); the equivalent partition
coordinates m_j = sum_{k >= j} lambda_k (with m_M = 0) drive the Weyl
dimension formula and the torus character used downstream.

Everything here is exact at the level of small integer matrices; numerical
tolerance enters only in consumers of this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

_GEN_NAME = re.compile(r"^(?:E\((\d+),(\d+)\)|H\((\d+)\))$")


@dataclass(frozen=True)
class AlgebraSpec:
    """The algebra sl(M, C) with its generator catalog.

    Instances are value objects keyed by M; generator matrices are built on
    demand and returned as read-only arrays, so a spec can be shared freely.
    """

    M: int

    def __post_init__(self):
        if self.M < 2:
            raise ValueError(f"M must be >= 2, got {self.M}")

    @property
    def rank(self) -> int:
        return self.M - 1

    @property
    def dim(self) -> int:
        """Dimension of sl(M) as a complex Lie algebra."""
        return self.M * self.M - 1

    @property
    def generator_names(self) -> tuple[str, ...]:
        return _generator_names(self.M)

    def generator(self, name: str) -> np.ndarray:
        """Catalog matrix for a generator name such as 'E(1,2)' or 'H(1)'."""
        kind, i, j = parse_generator_name(name, self.M)
        return _generator_matrix(self.M, kind, i, j)

    def sort_index(self, name: str) -> int:
        """Position of a generator in the fixed catalog order."""
        return _generator_index(self.M)[name]

    def adjoint_name(self, name: str) -> str:
        """Name of the formal adjoint of a catalog generator.

        E(k,l)^dagger = E(l,k) and H(k)^dagger = H(k); this matches the
        conjugate transpose of the defining matrices.
        """
        kind, i, j = parse_generator_name(name, self.M)
        if kind == "E":
            return f"E({j},{i})"
        return name

    def lowering_names(self) -> tuple[str, ...]:
        """Simple lowering generators E(k+1, k), k = 1..M-1."""
        return tuple(f"E({k + 1},{k})" for k in range(1, self.M))

    def decompose(self, x: np.ndarray) -> dict[str, complex]:
        """Coefficients of a traceless matrix over the catalog basis.

        Off-diagonal entries map to E(k,l) coefficients directly; the
        traceless diagonal is resolved against the H(k) through partial sums.
        """
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.M, self.M):
            raise ValueError(f"expected a {self.M}x{self.M} matrix, got {x.shape}")
        if abs(np.trace(x)) > 1e-10 * max(1.0, float(np.abs(x).max())):
            raise ValueError("matrix is not traceless")
        coeffs: dict[str, complex] = {}
        for k in range(1, self.M + 1):
            for l in range(1, self.M + 1):
                if k != l and x[k - 1, l - 1] != 0:
                    coeffs[f"E({k},{l})"] = complex(x[k - 1, l - 1])
        # diag(d) = sum_k c_k H(k) solved by c_k = d_1 + ... + d_k.
        running = 0.0 + 0.0j
        for k in range(1, self.M):
            running += complex(x[k - 1, k - 1])
            if running != 0:
                coeffs[f"H({k})"] = running
        return coeffs


@dataclass(frozen=True)
class Weight:
    """A dominant integral weight in fundamental coordinates.

    All coordinates are non-negative integers.  The zero weight is legal and
    labels the trivial representation.
    """

    fundamental: tuple[int, ...]

    def __post_init__(self):
        if len(self.fundamental) == 0:
            raise ValueError("weight must have at least one coordinate (M >= 2)")
        for c in self.fundamental:
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"fundamental coordinates must be non-negative ints, got {self.fundamental}")

    @classmethod
    def of(cls, *coords: int) -> "Weight":
        return cls(tuple(int(c) for c in coords))

    @classmethod
    def weyl_vector(cls, rank: int) -> "Weight":
        """The Weyl vector: all fundamental coordinates equal to 1."""
        return cls((1,) * rank)

    @property
    def rank(self) -> int:
        return len(self.fundamental)

    @property
    def M(self) -> int:
        return len(self.fundamental) + 1

    @property
    def partition(self) -> tuple[int, ...]:
        """Partition coordinates m_j = sum_{k >= j} lambda_k, with m_M = 0."""
        m = []
        total = 0
        for c in reversed(self.fundamental):
            total += c
            m.append(total)
        m.reverse()
        return tuple(m) + (0,)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.fundamental)

    @property
    def is_regular(self) -> bool:
        """True when every lambda_k > 0 (all chart coordinates active)."""
        return all(c > 0 for c in self.fundamental)

    def scale(self, n: int) -> "Weight":
        if n < 0:
            raise ValueError("scale factor must be non-negative")
        return Weight(tuple(n * c for c in self.fundamental))


def parse_generator_name(name: str, M: int) -> tuple[str, int, int]:
    """Validate a generator name against a catalog of size M.

    Returns (kind, i, j) with kind in {'E', 'H'}; for 'H' the second index
    is 0.  Raises KeyError for unknown names and ValueError for indices out
    of range, so callers can distinguish the two failure modes.
    """
    m = _GEN_NAME.match(name)
    if not m:
        raise KeyError(f"unknown generator {name!r}")
    if m.group(1) is not None:
        i, j = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= M and 1 <= j <= M) or i == j:
            raise ValueError(f"generator {name!r} out of range for M={M}")
        return "E", i, j
    k = int(m.group(3))
    if not 1 <= k <= M - 1:
        raise ValueError(f"generator {name!r} out of range for M={M}")
    return "H", k, 0


@lru_cache(maxsize=None)
def _generator_names(M: int) -> tuple[str, ...]:
    names = [f"E({k},{l})" for k in range(1, M + 1) for l in range(1, M + 1) if k != l]
    names += [f"H({k})" for k in range(1, M)]
    return tuple(names)


@lru_cache(maxsize=None)
def _generator_index(M: int) -> dict[str, int]:
    return {name: i for i, name in enumerate(_generator_names(M))}


@lru_cache(maxsize=None)
def _generator_matrix(M: int, kind: str, i: int, j: int) -> np.ndarray:
    x = np.zeros((M, M), dtype=complex)
    if kind == "E":
        x[i - 1, j - 1] = 1.0
    else:
        x[i - 1, i - 1] = 1.0
        x[i, i] = -1.0
    x.setflags(write=False)
    return x


def commutator(spec: AlgebraSpec, a, b) -> np.ndarray:
    """Matrix commutator [a, b] = ab - ba in the defining realization.

    Arguments may be generator names or M x M arrays.
    """
    am = spec.generator(a) if isinstance(a, str) else np.asarray(a, dtype=complex)
    bm = spec.generator(b) if isinstance(b, str) else np.asarray(b, dtype=complex)
    return am @ bm - bm @ am


def weyl_dimension(weight: Weight) -> int:
    """dim V_lambda by the Weyl formula, in exact integer arithmetic.

    dim = prod_{1 <= i < j <= M} (m_i - m_j + j - i) / (j - i) over partition
    coordinates.  The product is assembled with Fractions and must come out
    integral; anything else indicates a programming error.
    """
    m = weight.partition
    M = weight.M
    value = Fraction(1)
    for i, j in combinations(range(1, M + 1), 2):
        value *= Fraction(m[i - 1] - m[j - 1] + j - i, j - i)
    if value.denominator != 1:
        raise AssertionError("Weyl dimension did not reduce to an integer")
    return int(value)


def dominant_weights(rank: int, max_total: int, include_zero: bool = False) -> list[Weight]:
    """All weights with sum of fundamental coordinates <= max_total, lexicographic."""
    out = []

    def rec(prefix: tuple[int, ...], budget: int):
        if len(prefix) == rank:
            if prefix != (0,) * rank or include_zero:
                out.append(Weight(prefix))
            return
        for c in range(budget + 1):
            rec(prefix + (c,), budget - c)

    rec((), max_total)
    return out


def weight_of_cartan_action(weight: Weight, d: np.ndarray) -> complex:
    """Eigenvalue of a diagonal traceless d on the highest-weight line.

    For d = diag(d_1..d_M) this is sum_j m_j d_jj in partition coordinates:
    linear in d and linear in the weight.  Accepts a full matrix (the
    off-diagonal part must vanish) or a length-M diagonal vector.
    """
    d = np.asarray(d, dtype=complex)
    if d.ndim == 2:
        scale = max(1.0, float(np.abs(d).max()))
        if np.abs(d - np.diag(np.diag(d))).max() > 1e-12 * scale:
            raise ValueError("matrix is not diagonal")
        d = np.diag(d)
    if d.shape != (weight.M,):
        raise ValueError(f"expected a diagonal of length {weight.M}, got {d.shape}")
    m = weight.partition
    return complex(sum(m[j] * d[j] for j in range(weight.M)))


def cartan_weight_coefficients(d: np.ndarray) -> np.ndarray:
    """Coefficients c_k with weight_of_cartan_action(lambda, d) = sum_k lambda_k c_k.

    c_k is the k-th partial sum of the diagonal; this is the same linear form
    re-expressed over fundamental coordinates, used where the weight is kept
    symbolic.
    """
    d = np.asarray(d, dtype=complex)
    if d.ndim == 2:
        d = np.diag(d)
    return np.cumsum(d)[:-1]


def su_orthonormal_basis(M: int) -> list[tuple[str, np.ndarray]]:
    """An orthonormal real basis of su(M) under <X, Y> = tr(X^dagger Y).

    Basis: antisymmetric pairs (e_kl - e_lk)/sqrt(2), symmetric-imaginary
    pairs i(e_kl + e_lk)/sqrt(2), and imaginary diagonal vectors
    i*diag(1..1,-j,0..)/sqrt(j(j+1)).  All are skew-hermitian and traceless.
    """
    out: list[tuple[str, np.ndarray]] = []
    for k in range(M):
        for l in range(k + 1, M):
            a = np.zeros((M, M), dtype=complex)
            a[k, l], a[l, k] = 1.0, -1.0
            out.append((f"A({k + 1},{l + 1})", a / np.sqrt(2.0)))
            b = np.zeros((M, M), dtype=complex)
            b[k, l] = b[l, k] = 1.0j
            out.append((f"B({k + 1},{l + 1})", b / np.sqrt(2.0)))
    for j in range(1, M):
        c = np.zeros((M, M), dtype=complex)
        for t in range(j):
            c[t, t] = 1.0j
        c[j, j] = -1.0j * j
        out.append((f"C({j})", c / np.sqrt(j * (j + 1))))
    return out


def random_special_unitary(M: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random SU(M) element: QR of a complex Gaussian, phases fixed."""
    z = rng.standard_normal((M, M)) + 1j * rng.standard_normal((M, M))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    q = q / np.linalg.det(q) ** (1.0 / M)
    return q
