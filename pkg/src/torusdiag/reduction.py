"""Dimension-lowering reduction of a diagonal integral.

Given F = P/Q and directions q^(1..p), complete the directions to a
unimodular A, substitute ``z = w^(A^-1)`` so that ``z^(q^(i))`` becomes
``w_i``, and rename w_1..w_p to the parameters t_1..t_p.  The remaining
integral runs over the (n-p)-torus in w_{p+1}..w_n.

Log-radii transform with the transpose: ``log|w_j| = <q^(j), rho>``, which
is also what makes the parameter bound ``|t_i| < exp(<q^(i), rho>)`` line up
with the torus the Cauchy collapse removes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .errors import DimensionError, EvaluationDomainError, NotTaylorError, ValidationError
from .geometry import (
    AdmissibilityReport,
    Contour,
    dominance_report,
    find_rho,
    map_polytope,
    newton_polytope,
    rho_in_E0,
    t_bounds as _t_bounds,
)
from .lattice import DiagonalSpec, IntMatrix, complete_to_unimodular, det, inverse_unimodular
from .laurent import LaurentPolynomial, RationalFunction

AUTO = "auto"


@dataclass(frozen=True)
class ReducedRepresentation:
    """Everything needed to evaluate the reduced integral."""

    A: IntMatrix
    A_inv: IntMatrix
    spec: DiagonalSpec
    source: RationalFunction
    integrand: RationalFunction
    rho: Contour
    rho_prime: Contour
    t_bounds: Tuple[float, ...]
    certificates: Dict[str, AdmissibilityReport] = field(default_factory=dict)
    advisories: Dict[str, bool] = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.spec.rank

    @property
    def n(self) -> int:
        return self.spec.ambient_dim

    @property
    def param_names(self) -> Tuple[str, ...]:
        return self.integrand.var_names[: self.p]

    @property
    def torus_names(self) -> Tuple[str, ...]:
        return self.integrand.var_names[self.p:]

    def integrand_at(self, t: Sequence[complex]) -> RationalFunction:
        """The integrand with the parameters bound, a function of w_{p+1}..w_n only."""
        if len(t) != self.p:
            raise DimensionError("wrong number of parameters", expected=self.p, got=len(t))
        return self.integrand.specialize(dict(zip(self.param_names, t)))

    def q_prime(self, t: Sequence[complex]) -> LaurentPolynomial:
        return self.integrand_at(t).denominator


def _default_names(p: int, n: int) -> Tuple[str, ...]:
    return tuple(f"t{i + 1}" for i in range(p)) + tuple(f"w{j + 1}" for j in range(p, n))


def transported_contour(c: Contour, a: IntMatrix, p: int) -> Contour:
    """Log-radii of w_{p+1}..w_n on the image of ``Log^-1(rho)`` under ``w = z^A``."""
    if c.dim != a.n:
        raise DimensionError("contour does not match matrix size", rho=c.dim, n=a.n)
    if not 0 <= p <= a.n:
        raise DimensionError("p out of range", p=p, n=a.n)
    image = a.transpose().apply(c.rho)
    return Contour(image[p:])


def _check_override(matrix, spec: DiagonalSpec) -> IntMatrix:
    a = matrix if isinstance(matrix, IntMatrix) else IntMatrix(tuple(tuple(r) for r in matrix))
    if a.n != spec.ambient_dim:
        raise DimensionError("matrix override has the wrong size", expected=spec.ambient_dim, got=a.n)
    for i, q in enumerate(spec.directions):
        if a.column(i) != q:
            raise ValidationError(
                f"column {i + 1} of the matrix override must equal direction {i + 1}",
                column=list(a.column(i)),
                direction=list(q),
            )
    return a


def _require_taylor(f: RationalFunction):
    q = f.denominator
    if q.has_negative_exponents() or f.numerator.has_negative_exponents():
        raise NotTaylorError("the diagonal is defined for Taylor expansions; negative exponents found")
    if q.constant_term() == 0:
        raise NotTaylorError("Q(0) = 0, so the origin is not a vertex of the Newton polytope")


def reduce(
    f: RationalFunction,
    spec: DiagonalSpec,
    rho: Union[str, Contour, Sequence[float], None] = AUTO,
    matrix: Optional[Union[IntMatrix, Sequence[Sequence[int]]]] = None,
    names: Optional[Sequence[str]] = None,
) -> ReducedRepresentation:
    """Build the reduced (n-p)-dimensional representation of the q-diagonal of ``f``."""
    if f.nvars != spec.ambient_dim:
        raise DimensionError("directions do not match the number of variables", n=f.nvars, ambient=spec.ambient_dim)
    _require_taylor(f)
    a = complete_to_unimodular(spec) if matrix is None else _check_override(matrix, spec)
    a_inv = inverse_unimodular(a)
    p, n = spec.rank, spec.ambient_dim
    names = tuple(names) if names is not None else _default_names(p, n)
    if len(names) != n:
        raise DimensionError("need one name per variable", expected=n, got=len(names))
    integrand = f.monomial_substitute(a_inv, names)

    if rho is None or (isinstance(rho, str) and rho.lower() == AUTO):
        contour = find_rho(f.denominator)
    elif isinstance(rho, Contour):
        contour = rho
    else:
        contour = Contour(tuple(rho))
    if contour.dim != n:
        raise DimensionError("rho has the wrong length", expected=n, got=contour.dim)

    return ReducedRepresentation(
        A=a,
        A_inv=a_inv,
        spec=spec,
        source=f,
        integrand=integrand,
        rho=contour,
        rho_prime=transported_contour(contour, a, p),
        t_bounds=_t_bounds(spec, contour),
        certificates={"Q": rho_in_E0(f.denominator, contour)},
        advisories={"diagonal_cone_is_orthant": diagonal_cone_is_orthant(spec)},
    )


def parameter_certificates(rep: ReducedRepresentation, t: Sequence[complex]) -> Dict[str, Optional[AdmissibilityReport]]:
    """Dominance checks that depend on the parameter values.

    ``Q_prime``: the torus of radii exp(rho') sits in the order-0 component
    for Q'(t, .).  ``expansion_domain``: the full Laurent series of the
    substituted function converges absolutely on {|w_i| = |t_i|} x torus, so
    the reduced integral is a sum of lattice-diagonal coefficients.  The
    latter is undefined (None) when some t_i is 0, and so is the former when
    that t_i carries a negative exponent in Q'.
    """
    out: Dict[str, Optional[AdmissibilityReport]] = {}
    if rep.n > rep.p:
        try:
            out["Q_prime"] = dominance_report(rep.q_prime(t), rep.rho_prime.rho)
        except EvaluationDomainError:
            out["Q_prime"] = None
    if any(complex(x) == 0 for x in t):
        out["expansion_domain"] = None
    else:
        logs = tuple(math.log(abs(complex(x))) for x in t) + rep.rho_prime.rho
        # the z-space log point whose image under A^T is (log|t|, rho')
        point = rep.A_inv.transpose().apply(logs)
        out["expansion_domain"] = dominance_report(rep.source.denominator, point)
    return out


def _solve_exact(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
    """Unique solution of ``sum x_k columns[k] = target`` or None."""
    m = len(target)
    k = len(columns)
    rows = [[Fraction(columns[c][r]) for c in range(k)] + [Fraction(target[r])] for r in range(m)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            return None
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [x - fac * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, m)):
        return None
    return tuple(rows[i][k] for i in range(k))


def diagonal_cone_is_orthant(spec: DiagonalSpec) -> bool:
    """True iff ``sum l_i q^(i) >= 0`` forces ``l >= 0``.

    By duality this holds iff every unit vector e_i of R^p is a nonnegative
    combination of the coordinate rows ``(q^(1)_k, ..., q^(p)_k)``.  When it
    fails, lattice points with some negative l_i index genuine Taylor
    coefficients, and the reduced integral picks those up as well.
    """
    p = spec.rank
    rows = [tuple(q[k] for q in spec.directions) for k in range(spec.ambient_dim)]
    rows = [r for r in rows if any(r)]
    for i in range(p):
        target = tuple(int(j == i) for j in range(p))
        found = False
        for size in range(1, p + 1):
            for subset in itertools.combinations(rows, size):
                sol = _solve_exact(subset, target)
                if sol is not None and all(x >= 0 for x in sol):
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


@dataclass(frozen=True)
class VerificationReport:
    checks: Dict[str, bool]
    advisories: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self):
        return sorted(k for k, v in self.checks.items() if not v)


def verify_reduction(rep: ReducedRepresentation, spec: Optional[DiagonalSpec] = None) -> VerificationReport:
    """Exact consistency checks on a reduction; failures are reported, never raised."""
    spec = spec or rep.spec
    a, a_inv = rep.A, rep.A_inv
    p, n = spec.rank, spec.ambient_dim
    ident = IntMatrix.identity(n)
    checks: Dict[str, bool] = {}

    d = det(a)
    checks["det"] = d == 1 or (p == n and d == -1)
    checks["directions"] = all(a.column(i) == q for i, q in enumerate(spec.directions))
    checks["inverse"] = a @ a_inv == ident and a_inv @ a == ident
    checks["kronecker"] = all(
        sum(x * y for x, y in zip(a_inv.rows[i], a.column(j))) == int(i == j) for i in range(n) for j in range(n)
    )

    names = rep.integrand.var_names
    zvars = rep.source.var_names
    collapse = True
    for i, q in enumerate(spec.directions):
        image = LaurentPolynomial.monomial(q, zvars).monomial_substitute(a_inv, names)
        collapse &= image == LaurentPolynomial.variable(names[i], names)
    checks["monomial_collapse"] = collapse

    expected = rep.source.monomial_substitute(a_inv, names)
    checks["integrand"] = expected == rep.integrand
    try:
        image = map_polytope(newton_polytope(rep.source.denominator), a_inv)
        checks["polytope_image"] = image == newton_polytope(expected.denominator)
    except Exception:
        checks["polytope_image"] = False

    advisories = {"diagonal_cone_is_orthant": diagonal_cone_is_orthant(spec)}
    return VerificationReport(checks, advisories)
