"""Sparse multivariate Laurent polynomials and rational functions.

Coefficients are exact ``Fraction`` values unless a caller binds a variable to
a float or complex number, in which case the affected coefficients become
inexact.  Floats otherwise appear only in :meth:`LaurentPolynomial.eval`.
"""
from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionError, EvaluationDomainError, VariableMismatchError
from .lattice import IntMatrix

Exponent = Tuple[int, ...]
Coefficient = Union[Fraction, float, complex]


def _coerce(c) -> Coefficient:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, numbers.Integral):
        return Fraction(int(c))
    if isinstance(c, numbers.Rational):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, numbers.Real):
        return float(c)
    if isinstance(c, numbers.Complex):
        c = complex(c)
        return c.real if c.imag == 0 else c
    raise TypeError(f"unsupported coefficient {c!r}")


class LaurentPolynomial:
    """Immutable map from exponent tuples to nonzero coefficients.

    Iteration order is lexicographic in the exponents so that printing and
    serialization are reproducible.
    """

    __slots__ = ("_terms", "_items", "var_names")

    def __init__(self, terms: Mapping[Sequence[int], object], var_names: Sequence[str]):
        names = tuple(var_names)
        if len(set(names)) != len(names):
            raise VariableMismatchError("duplicate variable names", names=list(names))
        n = len(names)
        acc: Dict[Exponent, Coefficient] = {}
        for exp, c in terms.items():
            e = tuple(int(x) for x in exp)
            if len(e) != n:
                raise DimensionError("exponent length does not match variable count", exponent=list(e), n=n)
            acc[e] = acc.get(e, 0) + _coerce(c)
        items = tuple(sorted((e, _coerce(c)) for e, c in acc.items() if c != 0))
        self._items = items
        self._terms = dict(items)
        self.var_names = names

    # construction helpers
    @classmethod
    def zero(cls, var_names: Sequence[str]) -> "LaurentPolynomial":
        return cls({}, var_names)

    @classmethod
    def constant(cls, c, var_names: Sequence[str]) -> "LaurentPolynomial":
        return cls({(0,) * len(tuple(var_names)): c}, var_names)

    @classmethod
    def monomial(cls, exponent: Sequence[int], var_names: Sequence[str], coeff=1) -> "LaurentPolynomial":
        return cls({tuple(exponent): coeff}, var_names)

    @classmethod
    def variable(cls, name: str, var_names: Sequence[str]) -> "LaurentPolynomial":
        names = tuple(var_names)
        if name not in names:
            raise VariableMismatchError(f"unknown variable {name!r}", names=list(names))
        return cls.monomial(tuple(int(v == name) for v in names), names)

    # basic accessors
    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @property
    def terms(self) -> Dict[Exponent, Coefficient]:
        return dict(self._terms)

    def items(self):
        return iter(self._items)

    def support(self) -> Tuple[Exponent, ...]:
        return tuple(e for e, _ in self._items)

    def coefficient(self, exponent: Sequence[int]) -> Coefficient:
        return self._terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Coefficient:
        return self.coefficient((0,) * self.nvars)

    def is_zero(self) -> bool:
        return not self._items

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for _, c in self._items)

    def has_negative_exponents(self) -> bool:
        return any(x < 0 for e, _ in self._items for x in e)

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.var_names == other.var_names and self._items == other._items
        if isinstance(other, numbers.Number):
            return self == LaurentPolynomial.constant(other, self.var_names)
        return NotImplemented

    def __hash__(self):
        return hash((self.var_names, self._items))

    def __repr__(self):
        return f"LaurentPolynomial({self.to_string()!r}, vars={list(self.var_names)})"

    def __str__(self):
        return self.to_string()

    # arithmetic
    def _lift(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.var_names != self.var_names:
                raise VariableMismatchError(
                    "variable sets differ", left=list(self.var_names), right=list(other.var_names)
                )
            return other
        if isinstance(other, numbers.Number):
            return LaurentPolynomial.constant(other, self.var_names)
        raise TypeError(f"cannot combine LaurentPolynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._items:
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc, self.var_names)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._items}, self.var_names)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        acc: Dict[Exponent, Coefficient] = {}
        for e1, c1 in self._items:
            for e2, c2 in other._items:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPolynomial(acc, self.var_names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, numbers.Integral):
            return NotImplemented
        k = int(k)
        if k < 0:
            if len(self._items) != 1:
                raise ValueError("negative powers are only defined for monomials")
            (e, c), = self._items
            return LaurentPolynomial({tuple(x * k for x in e): c ** k}, self.var_names)
        result = LaurentPolynomial.constant(1, self.var_names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # evaluation and substitution
    def eval(self, point: Sequence):
        """Evaluate at a point; coordinates may be scalars or broadcastable numpy arrays."""
        if len(point) != self.nvars:
            raise DimensionError("point length does not match variable count", expected=self.nvars, got=len(point))
        xs = [np.asarray(x, dtype=complex) for x in point]
        neg = {k for e, _ in self._items for k, x in enumerate(e) if x < 0}
        for k in neg:
            if np.any(xs[k] == 0):
                raise EvaluationDomainError(
                    f"variable {self.var_names[k]} is zero but appears with a negative exponent"
                )
        total = np.zeros(np.broadcast_shapes(*(x.shape for x in xs)) if xs else (), dtype=complex)
        for e, c in self._items:
            term = complex(c)
            for x, k in zip(xs, e):
                if k:
                    term = term * x ** k
            total = total + term
        return complex(total) if total.ndim == 0 else total

    def monomial_substitute(self, b: IntMatrix, new_names: Sequence[str]) -> "LaurentPolynomial":
        """Send ``z^alpha`` to ``w^(B alpha)``; colliding images are summed."""
        names = tuple(new_names)
        if b.n != self.nvars or len(names) != b.n:
            raise DimensionError("substitution matrix does not match variable count", n=self.nvars, matrix=b.n)
        acc: Dict[Exponent, Coefficient] = {}
        for e, c in self._items:
            img = b.apply(e)
            acc[img] = acc.get(img, 0) + c
        return LaurentPolynomial(acc, names)

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPolynomial":
        names = tuple(mapping.get(v, v) for v in self.var_names)
        return LaurentPolynomial(self._terms, names)

    def specialize(self, bindings: Mapping[str, object]) -> "LaurentPolynomial":
        """Bind variables to numbers (removing them) or to new names (renaming them)."""
        unknown = set(bindings) - set(self.var_names)
        if unknown:
            raise VariableMismatchError("binding unknown variables", unknown=sorted(unknown))
        keep = [k for k, v in enumerate(self.var_names) if isinstance(bindings.get(v, v), str)]
        names = tuple(bindings.get(self.var_names[k], self.var_names[k]) for k in keep)
        values = {k: _coerce(bindings[v]) for k, v in enumerate(self.var_names) if k not in keep}
        acc: Dict[Exponent, Coefficient] = {}
        for e, c in self._items:
            coeff = c
            for k, val in values.items():
                if e[k] == 0:
                    continue
                if val == 0:
                    if e[k] < 0:
                        raise EvaluationDomainError(
                            f"binding {self.var_names[k]}=0 but it appears with a negative exponent"
                        )
                    coeff = 0
                    break
                coeff = coeff * (val ** e[k])
            if coeff == 0:
                continue
            key = tuple(e[k] for k in keep)
            acc[key] = acc.get(key, 0) + coeff
        return LaurentPolynomial(acc, names)

    # printing
    def to_string(self) -> str:
        if not self._items:
            return "0"
        parts = []
        for e, c in self._items:
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.var_names, e) if k != 0
            )
            parts.append(_format_term(c, mono))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, complex):
        return f"({c.real!r}{c.imag:+}j)"
    return repr(c)


def _format_term(c, mono: str) -> str:
    if not mono:
        return _format_coeff(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    s = _format_coeff(c)
    return f"{s}*{mono}"


class RationalFunction:
    """Quotient of two Laurent polynomials in the same variables."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPolynomial, denominator: LaurentPolynomial = None):
        if denominator is None:
            denominator = LaurentPolynomial.constant(1, numerator.var_names)
        if numerator.var_names != denominator.var_names:
            raise VariableMismatchError(
                "numerator and denominator variables differ",
                numerator=list(numerator.var_names),
                denominator=list(denominator.var_names),
            )
        if denominator.is_zero():
            raise ZeroDivisionError("denominator of a rational function must be nonzero")
        self.numerator = numerator
        self.denominator = denominator

    @property
    def var_names(self):
        return self.numerator.var_names

    @property
    def nvars(self):
        return self.numerator.nvars

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"RationalFunction({self.to_string()!r}, vars={list(self.var_names)})"

    def eval(self, point):
        return self.numerator.eval(point) / self.denominator.eval(point)

    def monomial_substitute(self, b: IntMatrix, new_names) -> "RationalFunction":
        return RationalFunction(
            self.numerator.monomial_substitute(b, new_names), self.denominator.monomial_substitute(b, new_names)
        )

    def rename(self, mapping) -> "RationalFunction":
        return RationalFunction(self.numerator.rename(mapping), self.denominator.rename(mapping))

    def specialize(self, bindings) -> "RationalFunction":
        return RationalFunction(self.numerator.specialize(bindings), self.denominator.specialize(bindings))

    def to_string(self) -> str:
        num = self.numerator.to_string()
        den = self.denominator.to_string()
        if den == "1":
            return num
        return f"({num})/({den})"


# functional aliases matching the operation names used elsewhere


def add(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a + b


def mul(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a * b


def neg(a: LaurentPolynomial) -> LaurentPolynomial:
    return -a


def evaluate(p, point):
    return p.eval(point)


def monomial_substitute(p: LaurentPolynomial, b: IntMatrix, new_names: Iterable[str]) -> LaurentPolynomial:
    return p.monomial_substitute(b, tuple(new_names))


def substitute_rational(f: RationalFunction, b: IntMatrix, new_names: Iterable[str]) -> RationalFunction:
    return f.monomial_substitute(b, tuple(new_names))


def specialize(f, bindings: Mapping[str, object]):
    return f.specialize(bindings)
