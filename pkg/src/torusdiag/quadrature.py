"""Product trapezoid rules on real tori.

``(2 pi i)^-k \\int g dw_1/w_1 ... dw_k/w_k`` over ``|w_j| = r_j`` is the
mean of g over the torus, and the equally spaced rule converges
geometrically for integrands analytic near the torus.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DimensionError,
    InadmissibleParameterError,
    PoleOnContourError,
    ValidationError,
)
from .geometry import Contour, rho_in_E0, t_bounds
from .lattice import DiagonalSpec
from .laurent import RationalFunction
from .reduction import ReducedRepresentation

log = logging.getLogger(__name__)

MAX_ORIGINAL_DIM = 4
MAX_NODES = 256


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    nodes_per_dim: int
    est_error: float
    evaluations: int
    converged: Optional[bool] = None


def torus_mean(g: Callable, radii: Sequence[float], N: int) -> QuadratureResult:
    """Mean of ``g`` over the torus of the given radii on an N^k grid.

    ``g`` receives k numpy arrays in open-grid form (axis j varies along
    dimension j) and must broadcast.  ``est_error`` compares against the
    N/2 sub-grid, which reuses every other node.
    """
    k = len(radii)
    if N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N}")
    if k == 0:
        value = complex(g())
        if not np.isfinite(value):
            raise PoleOnContourError("integrand is not finite")
        return QuadratureResult(value, N, 0.0, 1)
    theta = 2.0 * np.pi * np.arange(N) / N
    nodes = []
    for j, r in enumerate(radii):
        shape = [1] * k
        shape[j] = N
        nodes.append((float(r) * np.exp(1j * theta)).reshape(shape))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = np.broadcast_to(np.asarray(g(*nodes), dtype=complex), (N,) * k)
    if not np.all(np.isfinite(vals)):
        raise PoleOnContourError("integrand is not finite at some quadrature node", radii=list(radii), N=N)
    value = complex(vals.mean())
    half = complex(vals[(slice(None, None, 2),) * k].mean())
    return QuadratureResult(value, N, abs(value - half), N ** k)


def converge(evaluator: Callable[[int], QuadratureResult], target_tol: float, N_max: int = MAX_NODES,
             N_start: int = 8) -> QuadratureResult:
    """Double N from ``N_start`` until ``est_error < target_tol`` or N exceeds ``N_max``."""
    if not target_tol > 0:
        raise ValueError("target_tol must be positive")
    N = N_start
    while True:
        res = evaluator(N)
        if res.est_error < target_tol:
            return replace(res, converged=True)
        N *= 2
        if N > N_max:
            return replace(res, converged=False)


def require_admissible(bounds: Sequence[float], t: Sequence[complex]):
    """Raise unless every |t_i| is strictly below its bound."""
    if len(t) != len(bounds):
        raise DimensionError("wrong number of parameters", expected=len(bounds), got=len(t))
    for i, (ti, b) in enumerate(zip(t, bounds)):
        if not abs(complex(ti)) < b:
            raise InadmissibleParameterError(
                f"|t_{i + 1}| = {abs(complex(ti)):.17g} is not below its bound {b:.17g}",
                index=i + 1,
                value=abs(complex(ti)),
                bound=b,
            )


def eval_original(f: RationalFunction, spec: DiagonalSpec, t: Sequence[complex], c: Contour, N: int,
                  enforce_bounds: bool = True, require_certificate: bool = True) -> QuadratureResult:
    """n-dimensional integral of ``F(z) prod z^q_i / (z^q_i - t_i)`` over ``Log^-1(rho)``."""
    n = spec.ambient_dim
    if f.nvars != n or c.dim != n:
        raise DimensionError("dimensions disagree", f=f.nvars, spec=n, rho=c.dim)
    if n > MAX_ORIGINAL_DIM or N > MAX_NODES:
        raise ValidationError(
            f"original integral is capped at n <= {MAX_ORIGINAL_DIM}, N <= {MAX_NODES}", n=n, N=N
        )
    t = [complex(x) for x in t]
    if enforce_bounds:
        require_admissible(t_bounds(spec, c), t)
    if require_certificate:
        cert = rho_in_E0(f.denominator, c)
        if not cert.passed:
            raise ValidationError(
                "rho is not certified by the dominance test; pass require_certificate=False to override",
                margin=cert.margin,
            )
    dirs = [np.asarray(q) for q in spec.directions]

    def g(*z):
        out = f.eval(z)
        for q, ti in zip(dirs, t):
            mono = 1
            for zk, e in zip(z, q):
                if e:
                    mono = mono * zk ** int(e)
            out = out * mono / (mono - ti)
        return out

    return torus_mean(g, c.radii, N)


def eval_reduced(rep: ReducedRepresentation, t: Sequence[complex], N: int,
                 enforce_bounds: bool = True) -> QuadratureResult:
    """(n-p)-dimensional integral of the reduced integrand over ``Log^-1(rho')``."""
    t = [complex(x) for x in t]
    if enforce_bounds:
        require_admissible(rep.t_bounds, t)
    if not rep.certificates.get("Q", None) or not rep.certificates["Q"].passed:
        log.warning("original contour is not dominance-certified; the reduced value may belong to another expansion")
    if rep.p == rep.n:
        value = complex(rep.integrand.eval(t))
        if not math.isfinite(abs(value)):
            raise PoleOnContourError("integrand is not finite at t")
        return QuadratureResult(value, N, 0.0, 1)
    tail = rep.integrand
    tvals = [np.asarray(x) for x in t]

    def g(*w):
        return tail.eval([*tvals, *w])

    return torus_mean(g, rep.rho_prime.radii, N)
