"""Problem specification files.

A spec file is ``key = value`` lines; ``#`` starts a comment.  Recognised keys::

    function     = 1/(1+z1+z2+z3+z2*z3)
    variables    = z1, z2, z3
    directions   = 1 1 1; 1 2 2
    t            = 0.01, 0.002
    rho          = auto            # or a list of log-radii
    matrix       = 1 1 0; 1 2 0; 1 2 1
    tol          = 1e-10
    n_max        = 256
    series_order = 16

Vectors are separated by ``;``, entries by commas or whitespace; brackets
and parentheses are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple, Union

from .errors import ParseError, ValidationError
from .lattice import DiagonalSpec, IntMatrix
from .laurent import RationalFunction
from .parser import parse_rational

KEYS = ("function", "variables", "directions", "t", "rho", "matrix", "tol", "n_max", "series_order")

_SPLIT = re.compile(r"[,\s]+")


def _strip(text: str) -> str:
    return re.sub(r"[\[\]()]", " ", text).strip()


def parse_int_rows(text: str, line: int = 1) -> Tuple[Tuple[int, ...], ...]:
    rows = []
    for chunk in text.split(";"):
        chunk = _strip(chunk)
        if not chunk:
            continue
        try:
            rows.append(tuple(int(x) for x in _SPLIT.split(chunk) if x))
        except ValueError:
            raise ParseError(f"expected integers, got {chunk!r}", line, 1) from None
    return tuple(rows)


def parse_complex_list(text: str, line: int = 1) -> Tuple[complex, ...]:
    out = []
    for x in _SPLIT.split(_strip(text)):
        if not x:
            continue
        try:
            out.append(complex(x.replace("i", "j")))
        except ValueError:
            raise ParseError(f"expected a number, got {x!r}", line, 1) from None
    return tuple(out)


def parse_rho(text: str, line: int = 1) -> Union[str, Tuple[float, ...]]:
    if text.strip().lower() == "auto":
        return "auto"
    out = []
    for x in _SPLIT.split(_strip(text)):
        if not x:
            continue
        try:
            out.append(float(x))
        except ValueError:
            raise ParseError(f"expected a real number or 'auto', got {x!r}", line, 1) from None
    return tuple(out)


def parse_matrix_file(text: str) -> Tuple[Tuple[int, ...], ...]:
    """One matrix row per line (or ';'-separated rows on one line)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        raw = raw.split("#", 1)[0]
        rows.extend(parse_int_rows(raw, lineno))
    return tuple(rows)


@dataclass(frozen=True)
class ProblemSpec:
    function: str
    variables: Tuple[str, ...]
    directions: Tuple[Tuple[int, ...], ...] = ()
    t_values: Optional[Tuple[complex, ...]] = None
    rho: Union[str, Tuple[float, ...]] = "auto"
    matrix_override: Optional[Tuple[Tuple[int, ...], ...]] = None
    tol: float = 1e-10
    n_max: int = 256
    series_order: int = 16

    def validate(self) -> "ProblemSpec":
        n = len(self.variables)
        if n == 0:
            raise ValidationError("no variables given")
        if len(self.directions) > n:
            raise ValidationError("more directions than variables", p=len(self.directions), n=n)
        for d in self.directions:
            if len(d) != n:
                raise ValidationError("direction length does not match variable count", direction=list(d), n=n)
        if self.rho != "auto" and len(self.rho) != n:
            raise ValidationError("rho length does not match variable count", rho=list(self.rho), n=n)
        if self.matrix_override is not None and (
            len(self.matrix_override) != n or any(len(r) != n for r in self.matrix_override)
        ):
            raise ValidationError("matrix override must be n x n", n=n)
        if self.t_values is not None and self.directions and len(self.t_values) != len(self.directions):
            raise ValidationError("need one t value per direction", t=len(self.t_values), p=len(self.directions))
        if not self.tol > 0 or self.n_max < 8 or self.series_order < 0:
            raise ValidationError("tol must be > 0, n_max >= 8, series_order >= 0")
        return self

    def rational(self) -> RationalFunction:
        return parse_rational(self.function, self.variables)

    def diagonal(self) -> DiagonalSpec:
        if not self.directions:
            raise ValidationError("this command needs directions")
        return DiagonalSpec(self.directions)

    def matrix(self) -> Optional[IntMatrix]:
        return None if self.matrix_override is None else IntMatrix(self.matrix_override)

    def with_overrides(self, **kw) -> "ProblemSpec":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw).validate()


def parse_spec_text(text: str) -> ProblemSpec:
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        fields[key] = (value, lineno)

    if "function" not in fields:
        raise ValidationError("spec file has no 'function'")
    if "variables" not in fields:
        raise ValidationError("spec file has no 'variables'")
    kw = {
        "function": fields["function"][0],
        "variables": tuple(v for v in _SPLIT.split(_strip(fields["variables"][0])) if v),
    }
    if "directions" in fields:
        kw["directions"] = parse_int_rows(*fields["directions"])
    if "t" in fields:
        kw["t_values"] = parse_complex_list(*fields["t"])
    if "rho" in fields:
        kw["rho"] = parse_rho(*fields["rho"])
    if "matrix" in fields:
        kw["matrix_override"] = parse_int_rows(*fields["matrix"])
    try:
        if "tol" in fields:
            kw["tol"] = float(fields["tol"][0])
        if "n_max" in fields:
            kw["n_max"] = int(fields["n_max"][0])
        if "series_order" in fields:
            kw["series_order"] = int(fields["series_order"][0])
    except ValueError as exc:
        raise ParseError(f"bad numeric setting: {exc}", 1, 1) from None
    return ProblemSpec(**kw).validate()


def load_spec(path: str) -> ProblemSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec_text(fh.read())


def vertices_text(polytopes: Sequence[Tuple[str, Sequence[Sequence[int]]]]) -> str:
    """Plot data: a ``# name`` header per polytope, then one vertex tuple per line."""
    lines = []
    for name, verts in polytopes:
        lines.append(f"# {name}")
        lines.extend("(" + ", ".join(str(x) for x in v) + ")" for v in verts)
    return "\n".join(lines) + "\n"
