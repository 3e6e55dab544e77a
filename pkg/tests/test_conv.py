import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nttpoly.conv import (
    Polynomial,
    cyclic_convolution,
    cyclic_convolution_by_reduction,
    linear_convolution,
    negacyclic_convolution,
)
from nttpoly.errors import LengthMismatch, ModulusMismatch, NttError

Q = 7681


def P(*c, q=Q):
    return Polynomial(tuple(c), q)


def test_polynomial_validation():
    with pytest.raises(NttError):
        Polynomial((), Q)
    with pytest.raises(NttError):
        Polynomial((Q,), Q)
    assert Polynomial.reduce([-1, Q + 2], Q).coeffs == (Q - 1, 2)


def test_linear_examples():
    assert linear_convolution(P(1, 2, 3, 4), P(5, 6, 7, 8)).coeffs == (5, 16, 34, 60, 61, 52, 32)
    g = P(9, 8, 7)
    assert linear_convolution(g, P(1)) == g
    assert linear_convolution(P(0, 0), P(3, 4)).coeffs == (0, 0, 0)


def test_cyclic_examples():
    assert cyclic_convolution(P(1, 2, 3, 4), P(5, 6, 7, 8)).coeffs == (66, 68, 66, 60)
    g = P(11, 22, 33, 44)
    assert cyclic_convolution(g, P(1, 0, 0, 0)) == g
    assert cyclic_convolution(P(0, 1, 0, 0), P(0, 1, 0, 0)).coeffs == (0, 0, 1, 0)


def test_negacyclic_examples():
    assert negacyclic_convolution(P(1, 2, 3, 4), P(5, 6, 7, 8)).coeffs == (7625, 7645, 2, 60)
    g = P(11, 22, 33, 44)
    assert negacyclic_convolution(g, P(1, 0, 0, 0)) == g
    assert negacyclic_convolution(P(0, 0, 0, 1), P(0, 0, 0, 1)).coeffs == (0, 0, 7680, 0)


def test_degenerate_length_one():
    assert cyclic_convolution(P(3), P(5)).coeffs == (15,)
    assert negacyclic_convolution(P(3), P(5)).coeffs == (15,)


def test_errors():
    with pytest.raises(ModulusMismatch):
        linear_convolution(P(1, 2), P(1, 2, q=17))
    with pytest.raises(LengthMismatch):
        cyclic_convolution(P(1, 2), P(1, 2, 3))
    with pytest.raises(LengthMismatch):
        negacyclic_convolution(P(1, 2), P(1, 2, 3))
    with pytest.raises(ModulusMismatch):
        negacyclic_convolution(P(1, 2), P(1, 2, q=17))


def _sympy_wrapped(g, h, sign):
    x = sympy.symbols("x")
    n, q = len(g), g.q
    gp = sympy.Poly(list(reversed(g.coeffs)), x, modulus=q)
    hp = sympy.Poly(list(reversed(h.coeffs)), x, modulus=q)
    r = (gp * hp).rem(sympy.Poly(x**n - sign, x, modulus=q))
    coeffs = [int(c) % q for c in reversed(r.all_coeffs())]
    return tuple(coeffs + [0] * (n - len(coeffs)))


polys = st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, Q - 1), min_size=n, max_size=n),
                        st.lists(st.integers(0, Q - 1), min_size=n, max_size=n)))


@settings(max_examples=60, deadline=None)
@given(polys)
def test_wrapped_forms_agree_with_polynomial_remainder(pair):
    g, h = Polynomial(tuple(pair[0]), Q), Polynomial(tuple(pair[1]), Q)
    cyc = cyclic_convolution(g, h)
    assert cyc == cyclic_convolution_by_reduction(g, h)
    assert cyc.coeffs == _sympy_wrapped(g, h, +1)
    assert negacyclic_convolution(g, h).coeffs == _sympy_wrapped(g, h, -1)


@settings(max_examples=60)
@given(polys)
def test_commutativity(pair):
    g, h = Polynomial(tuple(pair[0]), Q), Polynomial(tuple(pair[1]), Q)
    for conv in (linear_convolution, cyclic_convolution, negacyclic_convolution):
        assert conv(g, h) == conv(h, g)


@settings(max_examples=60)
@given(st.integers(1, 10).flatmap(
    lambda n: st.tuples(*[st.lists(st.integers(0, Q - 1), min_size=n, max_size=n)] * 3)),
    st.integers(0, Q - 1))
def test_linearity(triple, a):
    g1, g2, h = (Polynomial(tuple(c), Q) for c in triple)
    for conv in (linear_convolution, cyclic_convolution, negacyclic_convolution):
        assert conv(g1.scale(a) + g2, h) == conv(g1, h).scale(a) + conv(g2, h)
