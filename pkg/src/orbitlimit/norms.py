"""Norm functions of chart points and their holomorphic jets.

The k-th fundamental norm of a unit lower-triangular u is the Cauchy-Binet
minor sum

    N_k(u) = sum over row subsets S, |S| = k, of |det u[S, 1..k]|^2,

which is the norm-square of u . (e_1 ^ ... ^ e_k) in Lambda^k C^M.  The norm
of the full highest-weight state factorizes over the fundamental ones,

    N_lambda = prod_k N_k^{lambda_k},

with constant exactly 1 under the tensor-cyclic construction; norm_direct
recomputes the same value entirely inside a constructed irrep and is the
independent cross-check of that factorization.

Jets of these norms expand only the holomorphic slots: the conjugated minor
of each Cauchy-Binet term is evaluated at the base point and folded into the
coefficient, matching the convention of the symbol operators.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .algebra import Weight
from .irreps import Irrep, orbit_state
from .jets import Jet
from .orbit import OrbitPoint, _jet_matrix_of_point, lower_pairs


def fundamental_norm(k: int, point: OrbitPoint) -> float:
    """N_k(u) by direct minor enumeration (desk scale, M <= ~6)."""
    u = point.matrix()
    M = point.M
    if not 1 <= k <= M - 1:
        raise ValueError(f"fundamental index k={k} out of range for M={M}")
    total = 0.0
    for rows in combinations(range(M), k):
        sub = u[np.ix_(rows, range(k))]
        det = sub[0, 0] if k == 1 else np.linalg.det(sub)
        total += float(abs(det) ** 2)
    return total


def norm_factorized(weight: Weight, point: OrbitPoint) -> float:
    """N_lambda = prod_k N_k^{lambda_k}; empty product (lambda = 0) is 1."""
    if point.M != weight.M:
        raise ValueError("point and weight have different M")
    total = 1.0
    for k, lam in enumerate(weight.fundamental, start=1):
        if lam:
            total *= fundamental_norm(k, point) ** lam
    return total


def norm_direct(irrep: Irrep, point: OrbitPoint) -> float:
    """|u . v_max|^2 computed inside the irrep (nilpotent exponential route)."""
    if point.M != irrep.spec.M:
        raise ValueError("point and irrep have different M")
    vec = orbit_state(irrep, point.matrix())
    return float(np.real(vec.conj() @ vec))


def _jet_det(entries: list[list[Jet]]) -> Jet:
    """Determinant of a small jet-valued matrix by permutation expansion."""
    k = len(entries)
    if k == 1:
        return entries[0][0]
    acc = entries[0][0] * 0.0
    for perm in permutations(range(k)):
        sign = 1
        seen = list(perm)
        for i in range(1, k):
            j = i
            while j > 0 and seen[j - 1] > seen[j]:
                seen[j - 1], seen[j] = seen[j], seen[j - 1]
                sign = -sign
                j -= 1
        term = entries[0][perm[0]]
        for row in range(1, k):
            term = term * entries[row][perm[row]]
        acc = acc + float(sign) * term
    return acc


@lru_cache(maxsize=4096)
def fundamental_norm_jet(k: int, point: OrbitPoint, order: int) -> Jet:
    """Holomorphic jet of N_k at the point: minors expanded in x + dx, conjugates frozen.

    Cached per (k, point, order); jet arithmetic never mutates operands, so
    sharing the returned object is safe.
    """
    M = point.M
    if not 1 <= k <= M - 1:
        raise ValueError(f"fundamental index k={k} out of range for M={M}")
    u_jets = _jet_matrix_of_point(point, order)
    u_base = point.matrix()
    nvars = len(lower_pairs(M))
    acc = Jet.constant(0.0, nvars, order)
    for rows in combinations(range(M), k):
        hol = _jet_det([[u_jets[r][c] for c in range(k)] for r in rows])
        base = u_base[np.ix_(rows, range(k))]
        det_base = base[0, 0] if k == 1 else np.linalg.det(base)
        acc = acc + complex(det_base).conjugate() * hol
    return acc


def jet_of_norm(weight: Weight, point: OrbitPoint, order: int) -> Jet:
    """Holomorphic jet of N_lambda = prod_k N_k^{lambda_k} at the point."""
    if point.M != weight.M:
        raise ValueError("point and weight have different M")
    nvars = len(lower_pairs(point.M))
    acc = Jet.constant(1.0, nvars, order)
    for k, lam in enumerate(weight.fundamental, start=1):
        if lam:
            acc = acc * fundamental_norm_jet(k, point, order) ** lam
    return acc
