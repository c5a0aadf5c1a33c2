"""Big-cell charts, Gauss decomposition, and the first-order symbol operators.

Points of the orbit chart are unit lower-triangular matrices u with strictly
lower coordinates x_ij (1-based, i > j).  For singular weights (some
lambda_k = 0) the chart of the orbit is the sub-unipotent group whose
coordinates couple different blocks of the parabolic pattern; the remaining
coordinates are frozen to 0 when sampling.  All jet calculus nevertheless
carries increments for every strictly lower coordinate: the flow of a
generator can move a frozen coordinate, and the norm functions feel that
motion through their full-coordinate form, so dropping those increments
would corrupt the symbol of lowering generators on singular charts.

The symbol operator of a generator xi comes from the triangular split of
u^-1 xi u = A_- + A_0 + A_+ for the flow exp(+xi t) u = u_-(t) l(t) u_+(t):

    velocity of u_-(t) at t=0   =  u A_-      (vector part),
    l'(0) = A_0, so the character contributes weight_of_cartan_action(lambda, A_0)
                                               (multiplication part),

a first-order differential operator acting on holomorphic slots only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import AlgebraSpec, Weight, cartan_weight_coefficients
from .jets import Jet


class DecompositionOnClosedSet(ValueError):
    """Gauss decomposition requested off the big cell (vanishing leading minor)."""


@lru_cache(maxsize=None)
def lower_pairs(M: int) -> tuple[tuple[int, int], ...]:
    """Strictly lower index pairs (i, j), i > j, in fixed row-major order."""
    return tuple((i, j) for i in range(2, M + 1) for j in range(1, i))


@lru_cache(maxsize=None)
def _pair_index(M: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(lower_pairs(M))}


def blocks_for_weight(weight: Weight) -> tuple[int, ...]:
    """Block label of each index 1..M under the parabolic pattern of zero lambda_k."""
    labels = []
    block = 0
    for k in range(1, weight.M + 1):
        labels.append(block)
        if k < weight.M and weight.fundamental[k - 1] > 0:
            block += 1
    return tuple(labels)


def active_pairs(weight: Weight) -> tuple[tuple[int, int], ...]:
    """Chart coordinates for the weight: pairs whose block-row differs from block-column."""
    blocks = blocks_for_weight(weight)
    return tuple((i, j) for i, j in lower_pairs(weight.M) if blocks[i - 1] != blocks[j - 1])


@dataclass(frozen=True)
class OrbitPoint:
    """A point of the unipotent chart: strictly lower coordinates of u.

    Unlisted pairs are zero.  Points are not forced onto a particular
    weight's chart; use on_chart/for sampling to restrict to active
    coordinates of a singular weight.
    """

    M: int
    values: tuple[tuple[tuple[int, int], complex], ...]

    @classmethod
    def of(cls, M: int, coords: dict[tuple[int, int], complex]) -> "OrbitPoint":
        pairs = set(lower_pairs(M))
        for p in coords:
            if p not in pairs:
                raise ValueError(f"{p} is not a strictly lower index pair for M={M}")
        items = tuple(sorted((p, complex(v)) for p, v in coords.items() if complex(v) != 0))
        return cls(M, items)

    def get(self, i: int, j: int) -> complex:
        for p, v in self.values:
            if p == (i, j):
                return v
        return 0j

    @property
    def coords(self) -> dict[tuple[int, int], complex]:
        return {p: v for p, v in self.values}

    def matrix(self) -> np.ndarray:
        u = np.eye(self.M, dtype=complex)
        for (i, j), v in self.values:
            u[i - 1, j - 1] = v
        return u

    def on_chart(self, weight: Weight, tol: float = 0.0) -> bool:
        active = set(active_pairs(weight))
        return all(p in active or abs(v) <= tol for p, v in self.values)

    def to_json_dict(self) -> dict:
        return {f"x_{i}_{j}": [v.real, v.imag] for (i, j), v in self.values}

    @classmethod
    def from_json_dict(cls, M: int, data: dict) -> "OrbitPoint":
        coords: dict[tuple[int, int], complex] = {}
        for key, pair in data.items():
            parts = key.split("_")
            if len(parts) != 3 or parts[0] != "x":
                raise ValueError(f"malformed coordinate key {key!r}")
            i, j = int(parts[1]), int(parts[2])
            coords[(i, j)] = complex(float(pair[0]), float(pair[1]))
        return cls.of(M, coords)


def sample_points(weight: Weight, count: int, seed: int, radius: float = 1.0) -> list[OrbitPoint]:
    """Seeded uniform sampling of the weight's active coordinates in a complex disc."""
    rng = np.random.default_rng(seed)
    active = active_pairs(weight)
    out = []
    for _ in range(count):
        coords = {}
        for p in active:
            r = radius * np.sqrt(rng.uniform())
            theta = rng.uniform(0.0, 2.0 * np.pi)
            coords[p] = r * np.exp(1j * theta)
        out.append(OrbitPoint.of(weight.M, coords))
    return out


# -- Gauss decomposition -------------------------------------------------------


def gauss_decompose(g: np.ndarray, tol: float = 1e-12):
    """g = u_minus . d . u_plus on the big cell (LDU without pivoting).

    d_kk equals the ratio of leading principal minors Delta_k / Delta_{k-1}.
    Raises DecompositionOnClosedSet when a leading principal minor falls
    below tol times the natural scale of a k x k minor.
    """
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    if g.shape != (n, n):
        raise ValueError("gauss_decompose expects a square matrix")
    scale = max(1.0, float(np.abs(g).max()))
    a = g.copy()
    lower = np.eye(n, dtype=complex)
    minor = 1.0 + 0j
    for k in range(n):
        pivot = a[k, k]
        minor = minor * pivot
        if abs(minor) < tol * scale ** (k + 1):
            raise DecompositionOnClosedSet(
                f"leading principal minor {k + 1} has magnitude {abs(minor):.3e}; "
                "point lies on (or too near) the closed complement of the big cell"
            )
        if k + 1 < n:
            mults = a[k + 1:, k] / pivot
            lower[k + 1:, k] = mults
            a[k + 1:, k:] -= np.outer(mults, a[k, k:])
    d = np.diag(a).copy()
    upper = a / d[:, None]
    upper = np.triu(upper)
    np.fill_diagonal(upper, 1.0)
    return lower, np.diag(d), upper


def conjugate_split(xi, point_or_u):
    """Triangular split of u^-1 xi u into (A_minus, A_zero, A_plus).

    xi may be a catalog generator name or an M x M matrix; the second
    argument an OrbitPoint or a unit lower-triangular matrix.  The pieces
    drive the flow exp(+xi t) u = u_-(t) l(t) u_+(t):

        u_-'(0) = u A_minus,   l'(0) = A_zero,   u_+'(0) = A_plus.
    """
    u = point_or_u.matrix() if isinstance(point_or_u, OrbitPoint) else np.asarray(point_or_u, dtype=complex)
    M = u.shape[0]
    if isinstance(xi, str):
        xi = AlgebraSpec(M).generator(xi)
    xi = np.asarray(xi, dtype=complex)
    c = np.linalg.solve(u, xi @ u)
    a_minus = np.tril(c, -1)
    a_zero = np.diag(np.diag(c))
    a_plus = np.triu(c, 1)
    return a_minus, a_zero, a_plus


# -- first-order symbol operators ------------------------------------------------


@dataclass
class FirstOrderOp:
    """r-tilde(xi): vector coefficients plus a weight-linear multiplication part.

    Coefficients are jets at the base point so that operator composition on
    jets is exact: applying to an order-q jet consumes one order and needs
    the coefficients to order q-1.  The multiplication part is kept as one
    jet per fundamental weight coordinate (it is linear homogeneous in
    lambda); binding a concrete weight collapses it to a single jet.
    """

    point: OrbitPoint
    order: int
    vector: dict[tuple[int, int], Jet]
    mult_lambda: tuple[Jet, ...]
    weight: Weight | None = None

    @property
    def nvars(self) -> int:
        return len(lower_pairs(self.point.M))

    @property
    def mult(self) -> Jet | None:
        if self.weight is None:
            return None
        acc = Jet.constant(0.0, self.nvars, self.order)
        for lam, jet in zip(self.weight.fundamental, self.mult_lambda):
            if lam:
                acc = acc + float(lam) * jet
        return acc

    def vector_at_base(self) -> dict[tuple[int, int], complex]:
        return {p: jet.value for p, jet in self.vector.items()}

    def mult_weight_coefficients_at_base(self) -> np.ndarray:
        return np.array([jet.value for jet in self.mult_lambda])


def _jet_matrix_of_point(point: OrbitPoint, order: int) -> list[list[Jet]]:
    M = point.M
    nvars = len(lower_pairs(M))
    idx = _pair_index(M)
    rows = []
    for i in range(1, M + 1):
        row = []
        for j in range(1, M + 1):
            if i == j:
                row.append(Jet.constant(1.0, nvars, order))
            elif i > j:
                row.append(Jet.variable(idx[(i, j)], point.get(i, j), nvars, order))
            else:
                row.append(Jet.constant(0.0, nvars, order))
        rows.append(row)
    return rows


def _jet_matmul(a: list[list[Jet]], b: list[list[Jet]]) -> list[list[Jet]]:
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), start=a[i][0] * 0.0) for j in range(n)]
        for i in range(n)
    ]


def _jet_unipotent_inverse(u: list[list[Jet]]) -> list[list[Jet]]:
    """(I + Z)^-1 = I - Z + Z^2 - ... for strictly lower Z; a finite series."""
    n = len(u)
    nvars = u[0][0].nvars
    order = u[0][0].order
    zero = Jet.constant(0.0, nvars, order)
    one = Jet.constant(1.0, nvars, order)
    z = [[u[i][j] if i > j else zero for j in range(n)] for i in range(n)]
    acc = [[one if i == j else zero for j in range(n)] for i in range(n)]
    power = [[one if i == j else zero for j in range(n)] for i in range(n)]
    sign = 1.0
    for _ in range(1, n):
        power = _jet_matmul(power, z)
        sign = -sign
        acc = [[acc[i][j] + sign * power[i][j] for j in range(n)] for i in range(n)]
    return acc


def r_tilde(xi, point: OrbitPoint, weight: Weight | None = None, order: int = 0) -> FirstOrderOp:
    """Symbol operator of a degree-1 generator at a chart point.

    order selects how far the coefficient functions are expanded; order 0 is
    enough to apply the operator once (plain numbers, computed with numpy),
    composing p operators needs order p-1 (jet-valued linear algebra).
    """
    M = point.M
    spec = AlgebraSpec(M)
    if isinstance(xi, str):
        xi = spec.generator(xi)
    xi = np.asarray(xi, dtype=complex)
    nvars = len(lower_pairs(M))
    pairs = lower_pairs(M)

    if order == 0:
        u = point.matrix()
        a_minus, a_zero, _ = conjugate_split(xi, u)
        w = u @ a_minus
        vector = {
            (i, j): Jet.constant(w[i - 1, j - 1], nvars, 0) for i, j in pairs
        }
        coeffs = cartan_weight_coefficients(np.diag(a_zero))
        mult_lambda = tuple(Jet.constant(c, nvars, 0) for c in coeffs)
        return FirstOrderOp(point, 0, vector, mult_lambda, weight)

    u = _jet_matrix_of_point(point, order)
    u_inv = _jet_unipotent_inverse(u)
    xi_u = [
        [sum((complex(xi[i, k]) * u[k][j] for k in range(M) if xi[i, k] != 0), start=u[0][0] * 0.0) for j in range(M)]
        for i in range(M)
    ]
    c = _jet_matmul(u_inv, xi_u)
    a_minus = [[c[i][j] if i > j else c[0][0] * 0.0 for j in range(M)] for i in range(M)]
    w = _jet_matmul(u, a_minus)
    vector = {(i, j): w[i - 1][j - 1] for i, j in pairs}
    # running partial sums of diag(C) are the lambda_k coefficients
    mult_lambda = []
    acc = c[0][0]
    mult_lambda.append(acc)
    for k in range(1, M - 1):
        acc = acc + c[k][k]
        mult_lambda.append(acc)
    return FirstOrderOp(point, order, vector, tuple(mult_lambda), weight)


def apply_op(op: FirstOrderOp, f: Jet) -> Jet:
    """Apply a first-order operator to a jet; the output order drops by one."""
    if op.weight is None:
        raise ValueError("operator must be bound to a weight before application")
    if f.order < 1:
        raise ValueError("cannot apply a first-order operator to an order-0 jet")
    if op.order < f.order - 1:
        raise ValueError(
            f"operator coefficients known to order {op.order}, need {f.order - 1}"
        )
    idx = _pair_index(op.point.M)
    out = (op.mult * f).truncate(f.order - 1)
    for pair, coeff in op.vector.items():
        df = f.derivative(idx[pair])
        out = out + (coeff * df).truncate(f.order - 1)
    return out
