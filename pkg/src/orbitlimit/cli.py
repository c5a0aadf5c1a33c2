"""Command-line front end: repinfo, limit, verify.

Flags mirror a JSON config file (CLI values win over config values, config
over defaults); outputs are deterministic given the merged config, with
floats serialized by shortest round-trip repr in JSON and 17 significant
digits in CSV.  When an output file is given, the report path also renders
a matplotlib figure next to it (suppress with --no-figure).

Exit codes: 0 success, 1 property failure, 2 parse error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .algebra import AlgebraSpec, Weight, weyl_dimension
from .climit import cl_sequence
from .irreps import (
    DimensionCapExceeded,
    build_irrep,
    commutation_residual,
    highest_weight_space_dimension,
    unitarity_residual,
    weight_multiset,
)
from .operators import format_operator
from .orbit import DecompositionOnClosedSet, OrbitPoint, sample_points
from .parsing import ParseError, parse_hamiltonian
from .verify import SUITES, run_suite

_LIMIT_DEFAULTS = {
    "seed": 0,
    "radius": 1.0,
    "n_schedule": "1,2,4,8,16,32,64",
    "format": "json",
    "exact_tol": 1e-12,
    "exponent_max": -0.7,
    "monotone_from": 4,
}

_VERIFY_DEFAULTS = {"suite": "all", "seed": 0}


def main(argv=None) -> int:
    threads = os.environ.get("ORBITLIMIT_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)

    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (DecompositionOnClosedSet, DimensionCapExceeded) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitlimit",
        description="Classical limits of polynomial operators on highest-weight orbits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    info = sub.add_parser("repinfo", help="construct an irrep and report its invariants")
    _common_flags(info)
    info.set_defaults(func=cmd_repinfo)

    limit = sub.add_parser("limit", help="tabulate cl_n against the classical limit")
    _common_flags(limit)
    limit.add_argument("--hamiltonian", help="inline operator expression")
    limit.add_argument("--hamiltonian-file", help="file containing the operator expression")
    limit.add_argument("--points-file", help="JSON file with a list of chart points")
    limit.add_argument("--sample", type=int, help="sample this many chart points instead")
    limit.add_argument("--seed", type=int, help="sampler seed (default 0)")
    limit.add_argument("--radius", type=float, help="sampler disc radius (default 1.0)")
    limit.add_argument("--n-schedule", help="comma-separated n values (default 1,2,4,...,64)")
    limit.add_argument("--format", choices=("json", "csv"), help="output format (default json)")
    limit.add_argument("--exact-tol", type=float, help="threshold for the exact-convergence verdict")
    limit.add_argument("--exponent-max", type=float, help="largest acceptable fitted decay exponent")
    limit.add_argument("--monotone-from", type=int, help="require monotone errors from this n on")
    limit.set_defaults(func=cmd_limit)

    verify = sub.add_parser("verify", help="run a built-in verification suite")
    _common_flags(verify)
    verify.add_argument("--suite", choices=SUITES + ("all",), help="suite name (default all)")
    verify.add_argument("--seed", type=int, help="suite rng seed (default 0)")
    verify.add_argument("--count", type=int, help="per-check sample count override")
    verify.set_defaults(func=cmd_verify)
    return parser


def _common_flags(p: argparse.ArgumentParser):
    p.add_argument("--M", type=int, help="group size M of SU(M)")
    p.add_argument("--weight", help="comma-separated fundamental coordinates, e.g. 1,1")
    p.add_argument("--config", help="JSON file whose keys mirror the flags")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--no-figure", action="store_true", help="skip the figure next to --output")


def _merge_config(args: argparse.Namespace):
    """Fill unset flags from --config; config keys use flag names with underscores."""
    if getattr(args, "config", None):
        with open(args.config) as fh:
            try:
                config = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(f"config file is not valid JSON: {exc}", 0)
        if not isinstance(config, dict):
            raise ParseError("config file must hold a JSON object", 0)
        for key, value in config.items():
            attr = key.replace("-", "_")
            if not hasattr(args, attr):
                raise ParseError(f"config key {key!r} does not match any flag", 0)
            if getattr(args, attr) in (None, False):
                setattr(args, attr, value)
    defaults = _LIMIT_DEFAULTS if args.func is cmd_limit else _VERIFY_DEFAULTS if args.func is cmd_verify else {}
    for key, value in defaults.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _require_weight(args) -> tuple[AlgebraSpec, Weight]:
    if args.M is None:
        raise ValueError("--M is required")
    if args.M < 2:
        raise ValueError("M must be at least 2")
    if args.weight is None:
        raise ValueError("--weight is required")
    if isinstance(args.weight, str):
        try:
            coords = tuple(int(c) for c in args.weight.split(","))
        except ValueError:
            raise ParseError(f"weight {args.weight!r} is not a comma-separated integer list", 0)
    else:
        coords = tuple(int(c) for c in args.weight)
    if len(coords) != args.M - 1:
        raise ValueError(f"weight needs {args.M - 1} coordinates for M={args.M}, got {len(coords)}")
    if any(c < 0 for c in coords):
        raise ValueError("weight coordinates must be nonnegative")
    return AlgebraSpec(args.M), Weight(coords)


def _emit(args, text: str, summary: str, figure=None):
    """Write the report to --output or stdout; render the figure alongside a file."""
    if args.output:
        Path(args.output).write_text(text)
        if figure is not None and not args.no_figure:
            fig_path = str(Path(args.output).with_suffix(".png"))
            figure(fig_path)
            print(f"{summary}; wrote {args.output} and {fig_path}")
        else:
            print(f"{summary}; wrote {args.output}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


# -- subcommands -------------------------------------------------------------------


def cmd_repinfo(args) -> int:
    spec, weight = _require_weight(args)
    irrep = build_irrep(spec, weight)
    weyl = weyl_dimension(weight)
    multiset = weight_multiset(irrep)
    counts: dict[tuple, int] = {}
    for m in multiset:
        counts[m] = counts.get(m, 0) + 1
    diagram = [[list(m), counts[m]] for m in sorted(counts, reverse=True)]
    checks = {
        "commutation_residual": float(commutation_residual(irrep)),
        "unitarity_residual": float(unitarity_residual(irrep)),
        "highest_weight_space_dimension": int(highest_weight_space_dimension(irrep)),
    }
    passed = (
        irrep.dim == weyl
        and checks["commutation_residual"] <= 1e-10
        and checks["unitarity_residual"] <= 1e-10
        and checks["highest_weight_space_dimension"] == 1
    )
    report = {
        "M": spec.M,
        "weight": list(weight.fundamental),
        "dimension": {"weyl": weyl, "constructed": irrep.dim, "ambient": irrep.ambient_dim},
        "weight_diagram": {"distinct": len(diagram), "multiplicities": diagram},
        "checks": checks,
        "passed": passed,
    }
    _emit(args, _json_text(report), f"dim {irrep.dim} ({'ok' if passed else 'FAILED'})")
    return 0 if passed else 1


def cmd_limit(args) -> int:
    spec, weight = _require_weight(args)
    if weight.is_zero:
        raise ValueError("weight 0 labels the trivial one-point orbit; nothing to tabulate")

    sources = [s for s in (args.hamiltonian, args.hamiltonian_file) if s]
    if len(sources) != 1:
        raise ValueError("provide exactly one of --hamiltonian / --hamiltonian-file")
    text = args.hamiltonian if args.hamiltonian else Path(args.hamiltonian_file).read_text()
    operator = parse_hamiltonian(text, spec)

    if (args.points_file is None) == (args.sample is None):
        raise ValueError("provide exactly one of --points-file / --sample")
    if args.points_file:
        raw = json.loads(Path(args.points_file).read_text())
        if isinstance(raw, dict) and "points" in raw:
            raw = raw["points"]
        if not isinstance(raw, list) or not raw:
            raise ValueError("points file must hold a nonempty JSON list of chart points")
        points = [OrbitPoint.from_json_dict(spec.M, d) for d in raw]
        for point in points:
            if not point.on_chart(weight):
                raise ValueError(
                    f"point {point.to_json_dict()} has nonzero coordinates outside the chart of {weight.fundamental}"
                )
    else:
        if args.sample <= 0:
            raise ValueError("--sample must be positive")
        points = sample_points(weight, args.sample, seed=args.seed, radius=args.radius)

    n_values = _parse_schedule(args.n_schedule)
    reports = [
        cl_sequence(
            weight,
            operator,
            point,
            n_values=n_values,
            exact_tol=args.exact_tol,
            exponent_max=args.exponent_max,
            monotone_from=args.monotone_from,
        )
        for point in points
    ]

    result = {
        "hamiltonian": format_operator(operator),
        "weight": list(weight.fundamental),
        "points": [p.to_json_dict() for p in points],
        "table": [
            {
                "n": n,
                "value": [_pair(r.values[i]) for r in reports],
                "error": [r.errors[i] for r in reports],
            }
            for i, n in enumerate(n_values)
        ],
        "limit": [_pair(r.limit) for r in reports],
        "fit": {
            "exponent": [r.exponent for r in reports],
            "residual": [r.fit_residual for r in reports],
        },
        "passed": [r.passed for r in reports],
    }
    all_passed = all(r.passed for r in reports)

    if args.format == "csv":
        text_out = _csv_table(n_values, reports)
    else:
        text_out = _json_text(result)

    def figure(path):
        from .plots import convergence_figure

        convergence_figure(n_values, [r.errors for r in reports], [r.exponent for r in reports], path)

    exponents = [r.exponent for r in reports if r.exponent is not None]
    summary = f"{len(points)} points, {'all passed' if all_passed else 'FAILURES'}"
    if exponents:
        summary += f", median exponent {sorted(exponents)[len(exponents) // 2]:.2f}"
    _emit(args, text_out, summary, figure)
    return 0 if all_passed else 1


def _parse_schedule(schedule) -> tuple[int, ...]:
    if isinstance(schedule, str):
        try:
            return tuple(int(c) for c in schedule.split(","))
        except ValueError:
            raise ParseError(f"n-schedule {schedule!r} is not a comma-separated integer list", 0)
    return tuple(int(c) for c in schedule)


def _csv_table(n_values, reports) -> str:
    lines = ["point,n,value_re,value_im,error"]
    for i, n in enumerate(n_values):
        for p, r in enumerate(reports):
            v = complex(r.values[i])
            lines.append(f"{p},{n},{v.real:.17g},{v.imag:.17g},{r.errors[i]:.17g}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    m_values = (args.M,) if args.M is not None else None
    suites = run_suite(args.suite, m_values=m_values, seed=args.seed, count=args.count)
    report = {
        "suites": [
            {
                "suite": s.suite,
                "passed": s.passed,
                "checks": [
                    {
                        "name": c.name,
                        "residual": c.residual,
                        "tolerance": c.tolerance,
                        "passed": c.passed,
                        "detail": c.detail,
                    }
                    for c in s.checks
                ],
            }
            for s in suites
        ],
        "passed": all(s.passed for s in suites),
    }

    def figure(path):
        from .plots import residual_figure

        residual_figure(suites, path)

    n_checks = sum(len(s.checks) for s in suites)
    status = "all passed" if report["passed"] else "FAILURES"
    _emit(args, _json_text(report), f"{n_checks} checks, {status}", figure)
    return 0 if report["passed"] else 1
