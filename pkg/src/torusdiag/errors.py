"""Exception hierarchy.

Every error carries a module-tagged ``code`` and an ``exit_code`` so the CLI
can turn it into a structured report without guessing.
"""


class TorusDiagError(Exception):
    code = "torusdiag.error"
    exit_code = 2

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        out = {"code": self.code, "message": self.message}
        if self.details:
            out["details"] = {k: _plain(v) for k, v in sorted(self.details.items())}
        return out


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)


class DimensionError(TorusDiagError, ValueError):
    code = "lattice.dimension"


class NotCompletableError(TorusDiagError, ValueError):
    """Directions do not extend to a unimodular matrix."""

    code = "lattice.not_completable"

    def __init__(self, message, invariant_factor=None, **details):
        super().__init__(message, invariant_factor=invariant_factor, **details)
        self.invariant_factor = invariant_factor


class NonUnimodularError(TorusDiagError, ValueError):
    code = "lattice.non_unimodular"


class VariableMismatchError(TorusDiagError, ValueError):
    code = "laurent.variable_mismatch"


class EvaluationDomainError(TorusDiagError, ValueError):
    """Zero raised to a negative power."""

    code = "laurent.domain"


class ZeroPolynomialError(TorusDiagError, ValueError):
    code = "geometry.zero_polynomial"


class NotTaylorError(TorusDiagError, ValueError):
    """Q(0) == 0 or negative exponents where a Taylor expansion is required."""

    code = "geometry.not_taylor"


class RhoSearchError(TorusDiagError, RuntimeError):
    code = "geometry.rho_search_failed"


class UnsupportedDirectionError(TorusDiagError, ValueError):
    code = "series.unsupported_direction"


class InadmissibleParameterError(TorusDiagError, ValueError):
    """Some |t_i| is not strictly below its bound exp(<q_i, rho>)."""

    code = "quadrature.inadmissible_t"


class PoleOnContourError(TorusDiagError, ArithmeticError):
    code = "quadrature.pole_on_contour"


class NonConvergenceError(TorusDiagError, RuntimeError):
    code = "quadrature.not_converged"
    exit_code = 3


class ValidationError(TorusDiagError, ValueError):
    code = "cli.validation"


class ParseError(TorusDiagError, ValueError):
    code = "cli.parse"
    exit_code = 4

    def __init__(self, message, line=1, column=1, **details):
        super().__init__(f"{message} (line {line}, column {column})", line=line, column=column, **details)
        self.line = line
        self.column = column
