"""Deterministic report construction and JSON output.

Key order is fixed by construction, floats are written with 17 significant
digits, and complex numbers become ``{"re": ..., "im": ...}``.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .geometry import AdmissibilityReport
from .laurent import LaurentPolynomial, RationalFunction
from .reduction import ReducedRepresentation, VerificationReport


def coefficient_text(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return repr(c)


def polynomial_terms(p: LaurentPolynomial):
    return [{"exponent": list(e), "coefficient": coefficient_text(c)} for e, c in p.items()]


def rational_dict(f: RationalFunction):
    return {
        "variables": list(f.var_names),
        "text": f.to_string(),
        "numerator_terms": polynomial_terms(f.numerator),
        "denominator_terms": polynomial_terms(f.denominator),
    }


def certificate_dict(cert: AdmissibilityReport):
    return None if cert is None else cert.to_dict()


def representation_dict(rep: ReducedRepresentation):
    return {
        "p": rep.p,
        "n": rep.n,
        "directions": [list(q) for q in rep.spec.directions],
        "A": rep.A.tolist(),
        "A_inv": rep.A_inv.tolist(),
        "integrand": rational_dict(rep.integrand),
        "rho": list(rep.rho.rho),
        "rho_prime": list(rep.rho_prime.rho),
        "t_bounds": list(rep.t_bounds),
    }


def verification_dict(v: VerificationReport):
    return {
        "passed": v.passed,
        "checks": dict(sorted(v.checks.items())),
        "advisories": dict(sorted(v.advisories.items())),
    }


def complex_dict(z: complex):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if "e" not in s and "." not in s and s not in ("0", "-0"):
        return s + ".0"
    if s in ("0", "-0"):
        return "0.0"
    return s


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return _emit(complex_dict(obj), indent, level)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj):
            return "[" + ", ".join(_emit(x, indent, level) for x in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    return _emit(obj, indent, 0) + "\n"
