"""Brute-force Taylor expansion and one-sided diagonal extraction.

Everything here is exact rational arithmetic; it serves as ground truth for
the contour integrals, so it deliberately shares no code path with them.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Sequence, Tuple

from .errors import NotTaylorError, UnsupportedDirectionError
from .lattice import DiagonalSpec
from .laurent import RationalFunction

Exponent = Tuple[int, ...]


@dataclass(frozen=True)
class CoefficientTable:
    """Taylor coefficients ``c_alpha`` for all ``|alpha| <= degree_bound``."""

    coeffs: Dict[Exponent, Fraction]
    degree_bound: int
    nvars: int

    def __getitem__(self, alpha: Sequence[int]) -> Fraction:
        alpha = tuple(alpha)
        if len(alpha) != self.nvars or min(alpha, default=0) < 0:
            raise KeyError(alpha)
        if sum(alpha) > self.degree_bound:
            raise KeyError(f"{alpha} exceeds the degree bound {self.degree_bound}")
        return self.coeffs.get(alpha, Fraction(0))

    def __len__(self):
        return len(self.coeffs)


def _exponents_of_degree(n: int, d: int) -> Iterator[Exponent]:
    # stars and bars, lexicographically decreasing in the first coordinate
    if n == 0:
        if d == 0:
            yield ()
        return
    for cuts in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        out = []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(d + n - 2 - prev)
        yield tuple(out)


def _check_taylor(f: RationalFunction):
    if f.numerator.has_negative_exponents() or f.denominator.has_negative_exponents():
        raise NotTaylorError("Taylor expansion needs nonnegative exponents")
    if not (f.numerator.is_exact() and f.denominator.is_exact()):
        raise NotTaylorError("the series oracle needs exact rational coefficients")
    if f.denominator.constant_term() == 0:
        raise NotTaylorError("Q(0) = 0, so the Taylor expansion at the origin does not exist")


def _integer_scaled(f: RationalFunction):
    # clear denominators so the recursion runs on Python ints
    fracs = [Fraction(c) for _, c in f.numerator.items()] + [Fraction(c) for _, c in f.denominator.items()]
    scale = math.lcm(*(x.denominator for x in fracs))
    p = {e: int(Fraction(c) * scale) for e, c in f.numerator.items()}
    q = {e: int(Fraction(c) * scale) for e, c in f.denominator.items()}
    return p, q


# biggest table built so far per function; smaller bounds are sliced from it
_largest: Dict[RationalFunction, CoefficientTable] = {}


@lru_cache(maxsize=16)
def _table(f: RationalFunction, degree_bound: int) -> CoefficientTable:
    # With integer P, Q and q0 = Q(0), g_alpha = c_alpha * q0^(|alpha|+1) obeys
    # g_alpha = P_alpha q0^|alpha| - sum_beta Q_beta q0^(|beta|-1) g_(alpha-beta).
    n = f.nvars
    p_terms, q_terms = _integer_scaled(f)
    zero = (0,) * n
    q0 = q_terms[zero]
    q_rest = [(e, c * q0 ** (sum(e) - 1)) for e, c in sorted(q_terms.items()) if e != zero]
    g: Dict[Exponent, int] = {}
    for d in range(degree_bound + 1):
        q0d = q0 ** d
        for alpha in _exponents_of_degree(n, d):
            acc = p_terms.get(alpha, 0) * q0d
            for beta, qb in q_rest:
                prev = tuple(a - b for a, b in zip(alpha, beta))
                c = g.get(prev)
                if c:
                    acc -= qb * c
            if acc:
                g[alpha] = acc
    coeffs = {e: Fraction(c, q0 ** (sum(e) + 1)) for e, c in g.items()}
    return CoefficientTable(coeffs, degree_bound, n)


def taylor_coefficients(f: RationalFunction, degree_bound: int) -> CoefficientTable:
    """Long division of power series, one total degree at a time."""
    _check_taylor(f)
    if degree_bound < 0:
        raise ValueError("degree_bound must be >= 0")
    degree_bound = int(degree_bound)
    largest = _largest.get(f)
    if largest is not None and largest.degree_bound > degree_bound:
        coeffs = {e: c for e, c in largest.coeffs.items() if sum(e) <= degree_bound}
        return CoefficientTable(coeffs, degree_bound, f.nvars)
    table = _table(f, degree_bound)
    if len(_largest) >= 16:
        _largest.pop(next(iter(_largest)))
    _largest[f] = table
    return table


def _check_directions(spec: DiagonalSpec, f: RationalFunction):
    if spec.ambient_dim != f.nvars:
        raise UnsupportedDirectionError(
            "directions do not match the number of variables", n=f.nvars, ambient=spec.ambient_dim
        )
    for q in spec.directions:
        if min(q) < 0:
            raise UnsupportedDirectionError("one-sided diagonals need nonnegative directions", direction=list(q))


def _multi_indices(p: int, order: int) -> Iterator[Exponent]:
    for total in range(order + 1):
        yield from _exponents_of_degree(p, total)


def diagonal_coefficients(f: RationalFunction, spec: DiagonalSpec, order: int) -> Dict[Exponent, Fraction]:
    """``c_{l_1 q^(1) + ... + l_p q^(p)}`` for every ``l >= 0`` with ``|l| <= order``."""
    _check_taylor(f)
    _check_directions(spec, f)
    bound = order * max(sum(q) for q in spec.directions)
    table = taylor_coefficients(f, bound)
    out = {}
    for l in _multi_indices(spec.rank, order):
        alpha = tuple(sum(li * q[k] for li, q in zip(l, spec.directions)) for k in range(spec.ambient_dim))
        out[l] = table[alpha]
    return out


@dataclass(frozen=True)
class DiagonalSum:
    value: complex
    last_shell: float
    order: int


def diagonal_partial_sum(f: RationalFunction, spec: DiagonalSpec, t: Sequence[complex], order: int) -> DiagonalSum:
    """Truncated one-sided diagonal ``sum_{|l| <= order} c_{lq} t^l``.

    ``last_shell`` is the sum of moduli of the ``|l| = order`` terms, a cheap
    proxy for the truncation error once the terms decay geometrically.
    """
    t = [complex(x) for x in t]
    if len(t) != spec.rank:
        raise ValueError(f"expected {spec.rank} parameters, got {len(t)}")
    coeffs = diagonal_coefficients(f, spec, order)
    terms = []
    shell = []
    for l, c in coeffs.items():
        if not c:
            continue
        term = complex(c) * math.prod(ti ** li for ti, li in zip(t, l))
        terms.append(term)
        if sum(l) == order:
            shell.append(abs(term))
    value = complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))
    return DiagonalSum(value, math.fsum(shell), order)
