"""Command-line interface.

Subcommands ``reduce``, ``evaluate``, ``polytope`` and ``check-rho`` each
read a spec file, optionally overridden by flags, and emit a JSON report.
Exit codes: 0 success, 2 validation error, 3 quadrature did not converge,
4 parse error, 1 unexpected internal failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Dict, List, Optional, Tuple

from .errors import NonConvergenceError, TorusDiagError, ValidationError
from .geometry import (
    Contour,
    check_t_bounds,
    find_rho,
    map_polytope,
    newton_polytope,
    project_polytope,
    rho_in_E0,
    t_bounds,
)
from .laurent import LaurentPolynomial
from .parser import parse_expression
from .quadrature import MAX_ORIGINAL_DIM, converge, eval_original, eval_reduced, require_admissible
from .reduction import parameter_certificates, reduce, verify_reduction
from .report import (
    certificate_dict,
    complex_dict,
    dumps,
    representation_dict,
    verification_dict,
)
from .series import diagonal_partial_sum
from .specfile import (
    ProblemSpec,
    load_spec,
    parse_complex_list,
    parse_matrix_file,
    parse_rho,
    vertices_text,
)

log = logging.getLogger("torusdiag")

Report = Dict[str, object]


def _input_dict(spec: ProblemSpec) -> Report:
    return {
        "function": spec.function,
        "variables": list(spec.variables),
        "directions": [list(d) for d in spec.directions],
        "t": None if spec.t_values is None else [complex_dict(t) for t in spec.t_values],
        "rho": spec.rho if isinstance(spec.rho, str) else list(spec.rho),
        "matrix": None if spec.matrix_override is None else [list(r) for r in spec.matrix_override],
        "tol": spec.tol,
        "n_max": spec.n_max,
        "series_order": spec.series_order,
    }


def _polynomial_of_interest(spec: ProblemSpec) -> LaurentPolynomial:
    """The denominator of a rational input, or a bare polynomial input itself."""
    expr = parse_expression(spec.function, spec.variables)
    return expr if isinstance(expr, LaurentPolynomial) else expr.denominator


def _polytopes(spec: ProblemSpec, rep=None) -> List[Tuple[str, list]]:
    nq = newton_polytope(_polynomial_of_interest(spec))
    out = [("N_Q", nq.tolist())]
    if rep is not None:
        image = map_polytope(nq, rep.A_inv)
        out.append(("A_inv_N_Q", image.tolist()))
        if rep.p < rep.n:
            out.append(("N_prime", project_polytope(image, range(rep.p)).tolist()))
    return out


def cmd_reduce(spec: ProblemSpec) -> Report:
    f = spec.rational()
    diag = spec.diagonal()
    rep = reduce(f, diag, rho=spec.rho, matrix=spec.matrix())
    ver = verify_reduction(rep, diag)
    return {
        "command": "reduce",
        "input": _input_dict(spec),
        "reduction": representation_dict(rep),
        "certificates": {"Q": certificate_dict(rep.certificates["Q"])},
        "verification": verification_dict(ver),
        "polytopes": dict(_polytopes(spec, rep)),
    }


def _deltas(values: Dict[str, Optional[complex]]) -> Report:
    out = {}
    names = [k for k, v in values.items() if v is not None]
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            va, vb = values[a], values[b]
            diff = abs(va - vb)
            scale = max(abs(va), abs(vb))
            out[f"{a}-{b}"] = {"abs": diff, "rel": diff / scale if scale else 0.0}
    return out


def cmd_evaluate(spec: ProblemSpec) -> Tuple[Report, int]:
    if spec.t_values is None:
        raise ValidationError("evaluate needs t values (spec key 't' or --t)")
    f = spec.rational()
    diag = spec.diagonal()
    rep = reduce(f, diag, rho=spec.rho, matrix=spec.matrix())
    t = list(spec.t_values)
    require_admissible(rep.t_bounds, t)

    series = diagonal_partial_sum(f, diag, t, spec.series_order)
    reduced = converge(lambda N: eval_reduced(rep, t, N), spec.tol, spec.n_max)
    original = None
    if diag.ambient_dim <= MAX_ORIGINAL_DIM:
        original = converge(lambda N: eval_original(f, diag, t, rep.rho, N), spec.tol, spec.n_max)

    values = {
        "series": series.value,
        "original": None if original is None else original.value,
        "reduced": reduced.value,
    }
    numeric = {
        "series": {"value": complex_dict(series.value), "order": series.order, "last_shell": series.last_shell},
        "original": None if original is None else _quad_dict(original),
        "reduced": _quad_dict(reduced),
        "deltas": _deltas(values),
    }
    report = {
        "command": "evaluate",
        "input": _input_dict(spec),
        "reduction": representation_dict(rep),
        "certificates": {
            "Q": certificate_dict(rep.certificates["Q"]),
            **{k: certificate_dict(v) for k, v in parameter_certificates(rep, t).items()},
        },
        "advisories": dict(sorted(rep.advisories.items())),
        "numeric": numeric,
    }
    unconverged = [k for k, r in (("original", original), ("reduced", reduced)) if r is not None and not r.converged]
    if unconverged:
        report["error"] = NonConvergenceError(
            "quadrature did not reach the requested tolerance", which=unconverged
        ).to_dict()
        return report, NonConvergenceError.exit_code
    return report, 0


def _quad_dict(r) -> Report:
    return {
        "value": complex_dict(r.value),
        "nodes_per_dim": r.nodes_per_dim,
        "evaluations": r.evaluations,
        "est_error": r.est_error,
        "converged": r.converged,
    }


def cmd_polytope(spec: ProblemSpec) -> Report:
    rep = None
    if spec.directions:
        rep = reduce(spec.rational(), spec.diagonal(), rho=spec.rho, matrix=spec.matrix())
    return {
        "command": "polytope",
        "input": _input_dict(spec),
        "polytopes": dict(_polytopes(spec, rep)),
    }


def cmd_check_rho(spec: ProblemSpec) -> Report:
    q = _polynomial_of_interest(spec)
    contour = find_rho(q) if spec.rho == "auto" else Contour(spec.rho)
    out: Report = {
        "command": "check-rho",
        "input": _input_dict(spec),
        "rho": list(contour.rho),
        "certificate": certificate_dict(rho_in_E0(q, contour)),
    }
    if spec.directions:
        diag = spec.diagonal()
        out["t_bounds"] = list(t_bounds(diag, contour))
        if spec.t_values is not None:
            out["t_admissible"] = check_t_bounds(diag, contour, list(spec.t_values))
    return out


COMMANDS = {
    "reduce": cmd_reduce,
    "evaluate": cmd_evaluate,
    "polytope": cmd_polytope,
    "check-rho": cmd_check_rho,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusdiag", description="Reduced torus integrals for power-series diagonals.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--spec", required=True, help="problem spec file (key = value lines)")
        sp.add_argument("--t", help="comma-separated parameter values, e.g. 0.01,0.002")
        sp.add_argument("--rho", help="comma-separated log-radii or 'auto'")
        sp.add_argument("--matrix", help="file holding the completion matrix, one row per line")
        sp.add_argument("--tol", type=float)
        sp.add_argument("--n-max", type=int, dest="n_max")
        sp.add_argument("--json", dest="json_out", help="write the JSON report here instead of stdout")
        sp.add_argument("--plot-data", dest="plot_out", help="write polytope vertices as plain-text tuples")
    return parser


def run(argv=None) -> Tuple[Report, int, Optional[str]]:
    """Parse arguments and execute; returns (report, exit code, plot text)."""
    args = build_parser().parse_args(argv)
    report: Report = {"command": args.command}
    plot = None
    try:
        spec = load_spec(args.spec)
        matrix = None
        if args.matrix:
            with open(args.matrix, encoding="utf-8") as fh:
                matrix = parse_matrix_file(fh.read())
        spec = spec.with_overrides(
            t_values=parse_complex_list(args.t) if args.t else None,
            rho=parse_rho(args.rho) if args.rho else None,
            matrix_override=matrix,
            tol=args.tol,
            n_max=args.n_max,
        )
        result = COMMANDS[args.command](spec)
        report, code = result if isinstance(result, tuple) else (result, 0)
        if "polytopes" in report:
            plot = vertices_text(list(report["polytopes"].items()))
    except TorusDiagError as exc:
        report["error"] = exc.to_dict()
        code = exc.exit_code
    except OSError as exc:
        report["error"] = {"code": "cli.io", "message": str(exc)}
        code = 2
    except Exception as exc:  # no raw tracebacks past the CLI boundary
        log.debug("internal error", exc_info=True)
        report["error"] = {"code": "internal.error", "message": f"{type(exc).__name__}: {exc}"}
        code = 1
    return report, code, plot


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    report, code, plot = run(argv)
    text = dumps(report)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
        if "error" in report:
            print(f"error [{report['error']['code']}]: {report['error']['message']}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    if args.plot_out and plot is not None:
        with open(args.plot_out, "w", encoding="utf-8") as fh:
            fh.write(plot)
    return code


if __name__ == "__main__":
    sys.exit(main())
