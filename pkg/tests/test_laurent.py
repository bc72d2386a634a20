import cmath
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusdiag import IntMatrix, LaurentPolynomial, RationalFunction, inverse_unimodular, parse_rational
from torusdiag.errors import DimensionError, EvaluationDomainError, VariableMismatchError
from torusdiag.laurent import add, evaluate, monomial_substitute, mul, neg, specialize, substitute_rational

from conftest import WORKED_A, WORKED_A_INV
from helpers import random_unimodular

Z3 = ("z1", "z2", "z3")
W3 = ("w1", "w2", "w3")


def poly(terms, names):
    return LaurentPolynomial(terms, names)


def mono_image(point, b: IntMatrix):
    """(w^{b_1}, ..., w^{b_n}) with b_j the columns of b."""
    return [np.prod([w ** e for w, e in zip(point, col)]) for col in b.columns()]


small_polys = st.dictionaries(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=4,
).map(lambda d: LaurentPolynomial(d, ("x", "y")))


def test_arithmetic_examples():
    one = LaurentPolynomial.constant(1, ("z1",))
    z1 = LaurentPolynomial.variable("z1", ("z1",))
    assert mul(one + z1, one - z1) == poly({(0,): 1, (2,): -1}, ("z1",))
    p = poly({(1, 2): 3, (0, -1): Fraction(1, 2)}, ("a", "b"))
    assert add(p, neg(p)).is_zero()
    m = poly({(0, 1, 1): 1}, Z3)
    assert m * m == poly({(0, 2, 2): 1}, Z3)


def test_no_zero_terms_stored():
    p = poly({(1,): 1, (2,): 0}, ("x",))
    assert p.support() == ((1,),)
    assert (p - p).terms == {}


def test_variable_mismatch():
    with pytest.raises(VariableMismatchError):
        poly({(1,): 1}, ("x",)) + poly({(1,): 1}, ("y",))
    with pytest.raises(DimensionError):
        poly({(1, 2): 1}, ("x",))


def test_eval_examples():
    q = parse_rational("1+z1+z2+z3+z2*z3", Z3).numerator
    assert evaluate(q, [0, 0, 0]) == 1
    assert evaluate(poly({(1, -1): 1}, ("z1", "z2")), [6, 3]) == pytest.approx(2)
    p = poly({(1, 0): 3, (-2, 1): Fraction(-1, 3), (0, 0): 7}, ("x", "y"))
    assert evaluate(p, [1, 1]) == pytest.approx(float(3 - Fraction(1, 3) + 7))


def test_eval_domain_error():
    with pytest.raises(EvaluationDomainError):
        poly({(-1, 0): 1}, ("x", "y")).eval([0, 1])
    # a zero coordinate is fine when its exponent is nonnegative
    assert poly({(1, -1): 1}, ("x", "y")).eval([0, 2]) == 0


def test_eval_vectorized():
    p = poly({(1, 0): 1, (0, 2): 2}, ("x", "y"))
    xs = np.array([1.0, 2.0])[:, None]
    ys = np.array([1.0, 3.0])[None, :]
    assert np.allclose(p.eval([xs, ys]), xs + 2 * ys ** 2)


def test_monomial_substitute_worked():
    q = parse_rational("1+z1+z2+z3+z2*z3", Z3).numerator
    out = monomial_substitute(q, IntMatrix(WORKED_A_INV), W3)
    expected = poly({(0, 0, 0): 1, (2, -1, 0): 1, (-1, 1, -1): 1, (0, 0, 1): 1, (-1, 1, 0): 1}, W3)
    assert out == expected


def test_monomial_substitute_identity_and_directions():
    q = parse_rational("1+z1+z2^3*z3^-1", Z3).numerator
    assert q.monomial_substitute(IntMatrix.identity(3), Z3) == q
    a_inv = IntMatrix(WORKED_A_INV)
    for i, direction in enumerate(IntMatrix(WORKED_A).columns()):
        image = LaurentPolynomial.monomial(direction, Z3).monomial_substitute(a_inv, W3)
        assert image == LaurentPolynomial.variable(W3[i], W3)


def test_substitution_collisions_are_summed():
    p = poly({(1, 0): 2, (0, 1): 3}, ("x", "y"))
    b = IntMatrix(((1, 1), (1, 1)))
    assert p.monomial_substitute(b, ("u", "v")) == poly({(1, 1): 5}, ("u", "v"))
    cancel = poly({(1, 0): 1, (0, 1): -1}, ("x", "y"))
    assert cancel.monomial_substitute(b, ("u", "v")).is_zero()


def test_substitute_rational_examples(worked_f):
    out = substitute_rational(worked_f, IntMatrix(WORKED_A_INV), W3)
    assert out.numerator == LaurentPolynomial.constant(1, W3)
    assert out.denominator == parse_rational("1+w1^2*w2^-1+w1^-1*w2*w3^-1+w3+w1^-1*w2", W3).numerator
    assert substitute_rational(worked_f, IntMatrix.identity(3), Z3) == worked_f


def test_substitute_rational_binomial_eval_oracle(binomial_f):
    b = IntMatrix(((1, 0), (-1, 1)))
    out = substitute_rational(binomial_f, b, ("w1", "w2"))
    assert out == parse_rational("1/(1 - w1*w2^-1 - w2)", ("w1", "w2"))
    rng = np.random.default_rng(3)
    for _ in range(100):
        w = rng.uniform(0.2, 2.0, 2) * np.exp(1j * rng.uniform(0, 2 * np.pi, 2))
        z = mono_image(w, b)
        assert out.eval(list(w)) == pytest.approx(binomial_f.eval(z), rel=1e-10)


def test_specialize_examples(worked_f):
    sub = substitute_rational(worked_f, IntMatrix(WORKED_A_INV), W3)
    renamed = specialize(sub, {"w1": "t1", "w2": "t2"})
    names = ("t1", "t2", "w3")
    assert renamed.var_names == names
    assert renamed.denominator == parse_rational("1+t1^2*t2^-1+t1^-1*t2*w3^-1+w3+t1^-1*t2", names).numerator
    assert specialize(sub, {}) == sub
    f = parse_rational("1/(1-w1-w2)", ("w1", "w2"))
    bound = specialize(f, {"w1": Fraction(1, 4)})
    assert bound.var_names == ("w2",)
    assert bound.denominator == poly({(0,): Fraction(3, 4), (1,): -1}, ("w2",))


def test_specialize_zero_binding_rules():
    p = poly({(-1, 1): 1, (2, 0): 1, (0, 0): 5}, ("x", "y"))
    with pytest.raises(EvaluationDomainError):
        p.specialize({"x": 0})
    q = poly({(2, 0): 1, (0, 1): 5}, ("x", "y"))
    assert q.specialize({"x": 0}) == poly({(1,): 5}, ("y",))


def test_specialize_everything_leaves_a_constant():
    f = parse_rational("(1+x)/(2-y)", ("x", "y"))
    g = f.specialize({"x": Fraction(1, 2), "y": Fraction(1, 3)})
    assert g.var_names == ()
    assert g.eval([]) == pytest.approx(1.5 / (2 - 1 / 3))


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == LaurentPolynomial.zero(a.var_names)


@settings(max_examples=50, deadline=None)
@given(small_polys, st.integers(0, 10 ** 6))
def test_substitution_is_an_evaluation_homomorphism(p, seed):
    rng = random.Random(seed)
    b = random_unimodular(rng, 2, steps=4, bound=1)
    image = p.monomial_substitute(b, ("u", "v"))
    for _ in range(5):
        w = [cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(0, 6.28)) for _ in range(2)]
        lhs = image.eval(w)
        rhs = p.eval(mono_image(w, b))
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))
    # B then B^-1 is the identity on terms
    assert image.monomial_substitute(inverse_unimodular(b), ("x", "y")) == p


@settings(max_examples=50, deadline=None)
@given(small_polys, st.floats(0.3, 2.0), st.floats(0.3, 2.0), st.floats(0, 6.2))
def test_specialize_commutes_with_eval(p, x, y, phase):
    xv = cmath.rect(x, phase)
    bound = p.specialize({"x": xv})
    lhs = bound.eval([y])
    rhs = p.eval([xv, y])
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_rational_function_invariants():
    x = LaurentPolynomial.variable("x", ("x",))
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x, LaurentPolynomial.zero(("x",)))
    with pytest.raises(VariableMismatchError):
        RationalFunction(x, LaurentPolynomial.constant(1, ("y",)))


def test_negative_power_of_monomial():
    m = poly({(1, 2): Fraction(2, 3)}, ("x", "y"))
    assert m ** -2 == poly({(-2, -4): Fraction(9, 4)}, ("x", "y"))
    with pytest.raises(ValueError):
        (m + 1) ** -1
