"""Exact integer lattice operations.

Directions, completions and inverses are kept as Python ints so minors and
adjugates never overflow.  Matrices are stored row-wise but read column-wise
where the basis semantics matter: column ``j`` of ``A`` is the basis vector
``q^(j)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import DimensionError, NonUnimodularError, NotCompletableError

ExponentVector = Tuple[int, ...]


def as_vector(v: Iterable[int]) -> ExponentVector:
    out = tuple(int(x) for x in v)
    if not out:
        raise DimensionError("exponent vector must have length >= 1")
    return out


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix.  ``rows[i][j]`` is the entry in row i, column j."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionError("IntMatrix must be square and non-empty", shape=[len(r) for r in rows])
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        cols = [tuple(c) for c in columns]
        return cls(tuple(zip(*cols)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> ExponentVector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> Tuple[ExponentVector, ...]:
        return tuple(zip(*self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.columns())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError("matrix product of mismatched sizes", left=self.n, right=other.n)
        cols = other.columns()
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``M v``; works for int, Fraction or float entries."""
        if len(v) != self.n:
            raise DimensionError("vector length does not match matrix", expected=self.n, got=len(v))
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def tolist(self):
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class DiagonalSpec:
    """The diagonal directions q^(1..p) in Z^n."""

    directions: Tuple[ExponentVector, ...]

    def __post_init__(self):
        dirs = tuple(as_vector(d) for d in self.directions)
        if not dirs:
            raise DimensionError("a diagonal needs at least one direction")
        n = len(dirs[0])
        if any(len(d) != n for d in dirs):
            raise DimensionError("directions have mismatched lengths", lengths=[len(d) for d in dirs])
        if len(dirs) > n:
            raise DimensionError("more directions than variables", p=len(dirs), n=n)
        object.__setattr__(self, "directions", dirs)

    @property
    def ambient_dim(self) -> int:
        return len(self.directions[0])

    @property
    def rank(self) -> int:
        return len(self.directions)


def is_primitive(v: Sequence[int]) -> bool:
    v = as_vector(v)
    return math.gcd(*v) == 1


def det(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = [list(r) for r in m.rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _det_rows(rows) -> int:
    if not rows:
        return 1
    return det(IntMatrix(rows))


def invariant_factors(directions: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Smith invariant factors of the p x n direction matrix, via gcds of k x k minors.

    Only meant for the tiny matrices met here; the cost is combinatorial.
    """
    d = [as_vector(v) for v in directions]
    p, n = len(d), len(d[0])
    factors = []
    prev = 1
    for k in range(1, p + 1):
        g = 0
        for rsel in itertools.combinations(range(p), k):
            for csel in itertools.combinations(range(n), k):
                g = math.gcd(g, _det_rows([[d[r][c] for c in csel] for r in rsel]))
        if g == 0:
            factors.extend([0] * (p - k + 1))
            break
        factors.append(g // prev)
        prev = g
    return tuple(factors)


def _check_directions(directions) -> list:
    dirs = [as_vector(v) for v in directions]
    if not dirs:
        raise DimensionError("need at least one direction")
    n = len(dirs[0])
    if any(len(v) != n for v in dirs):
        raise DimensionError("directions have mismatched lengths", lengths=[len(v) for v in dirs])
    if len(dirs) > n:
        raise DimensionError("more directions than variables", p=len(dirs), n=n)
    return dirs


def validate_diagonal_basis(directions: Sequence[Sequence[int]]) -> bool:
    """True iff the p x p minors of the direction matrix have gcd 1."""
    dirs = _check_directions(directions)
    p, n = len(dirs), len(dirs[0])
    g = 0
    for csel in itertools.combinations(range(n), p):
        g = math.gcd(g, _det_rows([[v[c] for c in csel] for v in dirs]))
        if g == 1:
            return True
    return False


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    # returns (g, x, y) with x*a + y*b == g >= 0
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def complete_to_unimodular(spec: DiagonalSpec) -> IntMatrix:
    """Append integer columns to the directions so the result has det +1.

    Column operations bring the direction rows to ``[H | 0]`` with H lower
    triangular; the same operations, inverted, give a unimodular V with
    ``D = [H | 0] V``.  Rows p.. of V complete the basis.
    """
    if not isinstance(spec, DiagonalSpec):
        spec = DiagonalSpec(tuple(spec))
    dirs = [list(v) for v in spec.directions]
    p, n = spec.rank, spec.ambient_dim
    d = [row[:] for row in dirs]
    vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    for i in range(p):
        for j in range(i + 1, n):
            a, b = d[i][i], d[i][j]
            if b == 0:
                continue
            g, x, y = _ext_gcd(a, b)
            ag, bg = a // g, b // g
            for row in d:
                ci, cj = row[i], row[j]
                row[i], row[j] = x * ci + y * cj, -bg * ci + ag * cj
            ri, rj = vinv[i], vinv[j]
            vinv[i] = [ag * u + bg * v for u, v in zip(ri, rj)]
            vinv[j] = [-y * u + x * v for u, v in zip(ri, rj)]
        if d[i][i] < 0:
            for row in d:
                row[i] = -row[i]
            vinv[i] = [-u for u in vinv[i]]
        if d[i][i] != 1:
            factors = invariant_factors(spec.directions)
            bad = next((f for f in factors if f != 1), d[i][i])
            raise NotCompletableError(
                "directions cannot be completed to a unimodular matrix",
                invariant_factor=bad,
                invariant_factors=list(factors),
            )

    columns = [tuple(v) for v in dirs] + [tuple(vinv[k]) for k in range(p, n)]
    a = IntMatrix.from_columns(columns)
    dt = det(a)
    if dt == -1 and p < n:
        columns[-1] = tuple(-x for x in columns[-1])
        a = IntMatrix.from_columns(columns)
        dt = 1
    assert abs(dt) == 1, dt
    return a


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a det +-1 matrix through its adjugate."""
    dt = det(m)
    if abs(dt) != 1:
        raise NonUnimodularError("matrix is not unimodular", determinant=dt)
    n = m.n
    rows = m.rows
    if n == 1:
        return IntMatrix(((dt,),))
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            # adjugate is the transposed cofactor matrix
            inv[j][i] = (-1) ** (i + j) * _det_rows(minor) * dt
    return IntMatrix(tuple(tuple(r) for r in inv))
