"""Built-in verification suites with measured residuals.

Each suite runs a family of property checks and reports the worst measured
residual against its tolerance.  Suites are deterministic given (M, seed,
count) and are the machine-checkable core behind the command-line `verify`
subcommand: norm (dual-path norm factorization), theorem3 (polynomial
structure of the symbol in the weight), poisson (bracket and equivariance
finite differences), golden-su3 (the closed-form rank-2 worked example).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Weight, dominant_weights, random_special_unitary
from .climit import (
    cl_generator,
    equivariance_residual,
    l_weight_gradient,
    poisson_check,
    theorem3_structure,
    default_theorem3_grid,
)
from .irreps import cached_irrep, orbit_state
from .norms import fundamental_norm, norm_direct, norm_factorized
from .orbit import OrbitPoint, r_tilde, sample_points

SUITES = ("norm", "theorem3", "poisson", "golden-su3")

GOLDEN_POINT = OrbitPoint.of(3, {(2, 1): 0.5, (3, 1): -0.25, (3, 2): 1.0})


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, residual: float, tolerance: float, detail: str = ""):
        self.checks.append(CheckResult(name, float(residual), tolerance, bool(residual <= tolerance), detail))


def run_suite(suite: str, m_values=None, seed: int = 0, count: int | None = None) -> list[SuiteResult]:
    """Run one named suite (or 'all'); returns one SuiteResult per suite run."""
    if suite == "all":
        out = []
        for name in SUITES:
            out.extend(run_suite(name, m_values=m_values, seed=seed, count=count))
        return out
    if suite == "norm":
        return [_norm_suite(m_values or (3,), seed, count or 5)]
    if suite == "theorem3":
        return [_theorem3_suite(seed)]
    if suite == "poisson":
        return [_poisson_suite(m_values or (2, 3), seed, count or 20)]
    if suite == "golden-su3":
        return [_golden_su3_suite(seed, count or 20)]
    raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)} or 'all'")


def _norm_suite(m_values, seed: int, points_per_weight: int) -> SuiteResult:
    """|norm_direct/norm_factorized - 1| over a weight sweep (dual-path check)."""
    result = SuiteResult("norm")
    for M in m_values:
        worst = 0.0
        worst_at = ""
        shortfall = 0.0
        for weight in dominant_weights(M - 1, 4):
            irrep = cached_irrep(M, weight.fundamental)
            points = sample_points(weight, points_per_weight, seed=seed)
            for point in points:
                ratio = norm_direct(irrep, point) / norm_factorized(weight, point)
                dev = abs(ratio - 1.0)
                if dev > worst:
                    worst, worst_at = dev, f"lambda={weight.fundamental}"
                # the leading principal minor contributes exactly 1 to every N_k
                for k in range(1, M):
                    shortfall = max(shortfall, 1.0 - fundamental_norm(k, point))
        result.add(f"factorization M={M}", worst, 1e-10, worst_at)
        result.add(f"N_k lower bound M={M}", shortfall, 1e-12, "max of 1 - N_k over sweep")
    return result


def _theorem3_suite(seed: int) -> SuiteResult:
    """Polynomial structure of lambda -> l_lambda(alpha) for degrees 1..3 over su(3)."""
    result = SuiteResult("theorem3")
    rng = np.random.default_rng(seed)
    point = _random_point(3, rng, radius=0.8)
    cases = [
        ("E(1,2)",),
        ("E(1,2)", "E(2,1)"),
        ("E(1,2)", "E(2,1)", "H(1)"),
    ]
    for alpha in cases:
        grid = default_theorem3_grid(2, len(alpha))
        report = theorem3_structure(grid, alpha, point)
        tag = " ox ".join(alpha)
        result.add(f"degree test [{tag}]", report.excess_difference, 1e-8)
        result.add(f"held-out interpolation [{tag}]", report.held_out_residual, 1e-8, f"{report.held_out_count} nodes")
        result.add(f"leading part = product of limits [{tag}]", report.leading_deviation, 1e-8)
    return result


def _poisson_suite(m_values, seed: int, count: int) -> SuiteResult:
    """Flow-derivative bracket residuals, step-halving order, equivariance transport."""
    result = SuiteResult("poisson")
    rng = np.random.default_rng(seed)
    for M in m_values:
        weight = Weight((1,) * (M - 1))
        irrep = cached_irrep(M, weight.fundamental)
        worst = 0.0
        ratios = []
        for _ in range(count):
            xi = _random_skew(M, rng)
            eta = _random_skew(M, rng)
            x = rng.standard_normal(irrep.dim) + 1j * rng.standard_normal(irrep.dim)
            worst = max(worst, poisson_check(irrep, xi, eta, x, h=1e-4).residual)
            coarse = poisson_check(irrep, xi, eta, x, h=1e-3).residual
            fine = poisson_check(irrep, xi, eta, x, h=5e-4).residual
            if fine > 1e-12:
                ratios.append(coarse / fine)
        result.add(f"bracket residual M={M}", worst, 1e-6, f"{count} triples, h=1e-4")
        if ratios:
            median = float(np.median(ratios))
            order_dev = abs(median - 4.0)
            result.add(f"step-halving order M={M}", order_dev, 1.5, f"median ratio {median:.3f} (expect 4)")
        worst_eq = 0.0
        for _ in range(count):
            k = random_special_unitary(M, rng)
            x = rng.standard_normal(irrep.dim) + 1j * rng.standard_normal(irrep.dim)
            worst_eq = max(worst_eq, equivariance_residual(irrep, k, x))
        result.add(f"equivariance M={M}", worst_eq, 1e-8, f"{count} group elements")
    return result


def _golden_su3_suite(seed: int, count: int) -> SuiteResult:
    """Closed-form rank-2 checks: r(E(1,2)) coefficients and the symbol formula."""
    result = SuiteResult("golden-su3")
    rng = np.random.default_rng(seed)
    points = [GOLDEN_POINT] + [_random_point(3, rng) for _ in range(count)]
    worst_vec = worst_mult = worst_l = 0.0
    for point in points:
        x21, x31, x32 = (point.get(2, 1), point.get(3, 1), point.get(3, 2))
        op = r_tilde("E(1,2)", point, order=0)
        vec = op.vector_at_base()
        expected = {(2, 1): -x21 * x21, (3, 1): -x21 * x31, (3, 2): x21 * x32 - x31}
        worst_vec = max(worst_vec, max(abs(vec[p] - expected[p]) for p in expected))
        mult = op.mult_weight_coefficients_at_base()
        worst_mult = max(worst_mult, abs(mult[0] - x21), abs(mult[1]))
        grad = l_weight_gradient("E(1,2)", point)
        n1 = fundamental_norm(1, point)
        n2 = fundamental_norm(2, point)
        expected_grad = (x21 / n1, np.conj(x32) * (x21 * x32 - x31) / n2)
        worst_l = max(worst_l, abs(grad[0] - expected_grad[0]), abs(grad[1] - expected_grad[1]))
    result.add("flow vector coefficients", worst_vec, 1e-12, f"{len(points)} points")
    result.add("multiplication term x21*lambda1", worst_mult, 1e-12)
    result.add("symbol weight gradient", worst_l, 1e-12)

    # frozen values at the reference point, hand-checked against both irreps
    grad0 = l_weight_gradient("E(1,2)", GOLDEN_POINT)
    result.add("reference value lambda1 term (8/21)", abs(grad0[0] - 8.0 / 21.0), 1e-12)
    result.add("reference value lambda2 term (12/41)", abs(grad0[1] - 12.0 / 41.0), 1e-12)
    for k, lam in ((1, (1, 0)), (2, (0, 1))):
        irrep = cached_irrep(3, lam)
        x = orbit_state(irrep, GOLDEN_POINT.matrix())
        mat = cl_generator(irrep, "E(1,2)", x)
        result.add(f"matrix element anchor lambda={lam}", abs(mat - grad0[k - 1]), 1e-12)
    return result


def _random_point(M: int, rng: np.random.Generator, radius: float = 1.0) -> OrbitPoint:
    values = {}
    for i in range(2, M + 1):
        for j in range(1, i):
            r = radius * np.sqrt(rng.uniform())
            phi = rng.uniform(0, 2 * np.pi)
            values[(i, j)] = r * np.exp(1j * phi)
    return OrbitPoint.of(M, values)


def _random_skew(M: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((M, M)) + 1j * rng.standard_normal((M, M))
    xi = (z - z.conj().T) / 2.0
    xi -= np.trace(xi) / M * np.eye(M)
    return xi
