"""Newton polytopes and torus-contour admissibility.

Hulls are computed exactly over the integers.  The point set is first reduced
to its affine hull (a coordinate projection that is injective there), then a
point is reported as a vertex iff the outward normals of the facets through
it span the whole affine hull.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionError, NotTaylorError, RhoSearchError, ZeroPolynomialError
from .lattice import DiagonalSpec, IntMatrix, _det_rows
from .laurent import LaurentPolynomial

Point = Tuple[int, ...]

RHO_GRID = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)


def _rank(vectors: Sequence[Sequence[int]]) -> Tuple[int, List[int]]:
    """Rank of integer row vectors and the pivot columns (fraction-free elimination)."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                a, b = rows[r][c], rows[i][c]
                rows[i] = [a * x - b * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return r, pivots


def _normal(diffs: Sequence[Sequence[int]], d: int) -> Tuple[int, ...]:
    # generalized cross product of d-1 vectors in Z^d
    out = []
    for j in range(d):
        minor = [[v[c] for c in range(d) if c != j] for v in diffs]
        out.append((-1) ** j * _det_rows(minor))
    return tuple(out)


def hull_vertices(points: Iterable[Sequence[int]]) -> Tuple[Point, ...]:
    """Vertices of the convex hull of integer points, sorted lexicographically."""
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if len(pts) <= 2:
        return tuple(pts)
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    d, pivots = _rank(diffs)
    if d == 0:
        return (base,)
    # the projection onto the pivot coordinates is injective on the affine hull
    proj = [tuple(p[c] for c in pivots) for p in pts]
    if d == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i])
        hi = max(range(len(proj)), key=lambda i: proj[i])
        return tuple(sorted({pts[lo], pts[hi]}))

    facets = []
    seen = set()
    for combo in itertools.combinations(range(len(proj)), d):
        p0 = proj[combo[0]]
        vecs = [tuple(a - b for a, b in zip(proj[k], p0)) for k in combo[1:]]
        nrm = _normal(vecs, d)
        g = math.gcd(*nrm)
        if g == 0:
            continue
        nrm = tuple(x // g for x in nrm)
        level = sum(a * b for a, b in zip(nrm, p0))
        vals = [sum(a * b for a, b in zip(nrm, q)) for q in proj]
        if all(v <= level for v in vals):
            key = (nrm, level)
        elif all(v >= level for v in vals):
            key = (tuple(-x for x in nrm), -level)
        else:
            continue
        if key in seen:
            continue
        seen.add(key)
        facets.append((key[0], key[1]))

    vertices = []
    for i, q in enumerate(proj):
        normals = [nrm for nrm, level in facets if sum(a * b for a, b in zip(nrm, q)) == level]
        if len(normals) >= d and _rank(normals)[0] == d:
            vertices.append(pts[i])
    return tuple(sorted(vertices))


@dataclass(frozen=True)
class Polytope:
    """Convex lattice polytope given by its (irredundant) vertices."""

    vertices: Tuple[Point, ...]
    dim: int

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], dim: Optional[int] = None) -> "Polytope":
        pts = [tuple(int(x) for x in p) for p in points]
        if not pts:
            raise ZeroPolynomialError("polytope of an empty point set")
        if dim is None:
            dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise DimensionError("points have mismatched dimension", dim=dim)
        return cls(hull_vertices(pts), dim)

    def vertex_set(self):
        return frozenset(self.vertices)

    def contains_vertex(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.vertex_set()

    def tolist(self):
        return [list(v) for v in self.vertices]


def newton_polytope(p: LaurentPolynomial) -> Polytope:
    if p.is_zero():
        raise ZeroPolynomialError("Newton polytope of the zero polynomial")
    return Polytope.from_points(p.support(), p.nvars)


def map_polytope(poly: Polytope, b: IntMatrix) -> Polytope:
    if b.n != poly.dim:
        raise DimensionError("matrix does not match polytope dimension", dim=poly.dim, matrix=b.n)
    return Polytope.from_points([b.apply(v) for v in poly.vertices], poly.dim)


def project_polytope(poly: Polytope, drop_coords: Iterable[int]) -> Polytope:
    """Delete the listed (0-based) coordinates and take the hull of what remains."""
    drop = set(drop_coords)
    if any(not 0 <= k < poly.dim for k in drop):
        raise DimensionError("coordinate index out of range", drop=sorted(drop), dim=poly.dim)
    keep = [k for k in range(poly.dim) if k not in drop]
    return Polytope.from_points([tuple(v[k] for k in keep) for v in poly.vertices], len(keep))


@dataclass(frozen=True)
class Contour:
    """Real torus of log-radii ``rho``; radius k is ``exp(rho[k])``."""

    rho: Tuple[float, ...]

    def __post_init__(self):
        rho = tuple(float(r) for r in self.rho)
        if not all(math.isfinite(r) for r in rho):
            raise ValueError(f"contour log-radii must be finite, got {rho}")
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return len(self.rho)

    @property
    def radii(self) -> Tuple[float, ...]:
        return tuple(math.exp(r) for r in self.rho)


PASS = "PASS"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of the coefficient-dominance test.

    ``margin`` is ``|constant| - sum of the other terms' moduli on the torus``;
    PASS means the margin is positive.  A failed test is only INCONCLUSIVE.
    """

    status: str
    margin: float
    constant: float
    dominated_sum: float
    rho: Tuple[float, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self):
        return {
            "status": self.status,
            "margin": self.margin,
            "constant_modulus": self.constant,
            "dominated_sum": self.dominated_sum,
            "rho": list(self.rho),
        }


def dominance_report(p: LaurentPolynomial, rho: Sequence[float]) -> AdmissibilityReport:
    """Check whether the constant term of ``p`` dominates on the torus ``Log^-1(rho)``.

    When it does, ``p`` has no zeros on that torus and ``rho`` lies in the
    amoeba-complement component of order 0.  Negative exponents are allowed.
    """
    rho = tuple(float(r) for r in rho)
    if len(rho) != p.nvars:
        raise DimensionError("rho length does not match variable count", expected=p.nvars, got=len(rho))
    zero = (0,) * p.nvars
    const = abs(complex(p.coefficient(zero)))
    rest = math.fsum(
        abs(complex(c)) * math.exp(sum(a * r for a, r in zip(e, rho))) for e, c in p.items() if e != zero
    )
    margin = const - rest
    return AdmissibilityReport(PASS if margin > 0 else INCONCLUSIVE, margin, const, rest, rho)


def _require_taylor(q: LaurentPolynomial):
    if q.has_negative_exponents():
        raise NotTaylorError("denominator has negative exponents; a Taylor expansion is required")
    if q.constant_term() == 0:
        raise NotTaylorError("Q(0) = 0: the origin is not a vertex of the Newton polytope")


def rho_in_E0(q: LaurentPolynomial, c: Contour) -> AdmissibilityReport:
    """Sufficient test that the closed polydisc of radii ``exp(rho)`` holds no zero of ``q``.

    For nonnegative exponents the dominance sum grows monotonically with the
    radii, so dominance on the torus covers the whole closed polydisc.
    """
    _require_taylor(q)
    return dominance_report(q, c.rho)


def t_bounds(spec: DiagonalSpec, c: Contour) -> Tuple[float, ...]:
    """Radii ``exp(<q_i, rho>)`` that bound each |t_i|."""
    if c.dim != spec.ambient_dim:
        raise DimensionError("contour dimension does not match directions", rho=c.dim, n=spec.ambient_dim)
    return tuple(math.exp(sum(a * r for a, r in zip(q, c.rho))) for q in spec.directions)


def check_t_bounds(spec: DiagonalSpec, c: Contour, t: Sequence[complex]) -> bool:
    bounds = t_bounds(spec, c)
    if len(t) != len(bounds):
        raise DimensionError("t has the wrong length", expected=len(bounds), got=len(t))
    return all(abs(complex(ti)) < b for ti, b in zip(t, bounds))


def find_rho(q: LaurentPolynomial, grid: Sequence[float] = RHO_GRID) -> Contour:
    """First point ``-s*(1,...,1)`` along the grid that passes the dominance test."""
    _require_taylor(q)
    for s in grid:
        c = Contour((-s,) * q.nvars)
        if rho_in_E0(q, c).passed:
            return c
    raise RhoSearchError(
        "no contour on the diagonal ray passes the dominance test; supply rho explicitly",
        grid=list(grid),
    )
