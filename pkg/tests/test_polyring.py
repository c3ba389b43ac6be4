from fractions import Fraction

import pytest
from hypothesis import given, settings

from qvirasoro.polyring import (
    ONE,
    ZERO,
    DiffOperator,
    DiffTerm,
    OddPolynomial,
    apply_diff,
    differentiate,
    graded_component,
    graded_components,
    inner_product,
    make_monomial,
    t,
)
from qvirasoro.qcalc import Q, Q_of_sequence, q
from qvirasoro.virasoro import build_L

from conftest import polynomials


def literal_inner_product(F, G):
    """Substitute t_j -> (2/j) d_j in F, apply to G, set t = 0."""
    total = Fraction(0)
    for m, c in F.terms.items():
        g = G
        for j, e in m:
            g = differentiate(g, j, e).scale(Fraction(2, j) ** e)
        total += c * g.evaluate({})
    return total


def test_arithmetic_examples():
    assert t(1) * t(1) == t(1, 2)
    assert t(1, 2) - t(1, 2) == ZERO and (t(1, 2) - t(1, 2)).terms == {}
    assert (t(1, 2) * Fraction(1, 2)) * (t(3) * 2) == t(1, 2) * t(3)


def test_rejects_floats_and_even_indices():
    with pytest.raises(TypeError):
        OddPolynomial({(): 0.5})
    with pytest.raises(ValueError):
        t(2)


def test_differentiate_examples():
    assert differentiate(t(1, 2), 1) == t(1) * 2
    assert differentiate(t(1), 3) == ZERO
    assert differentiate(t(1) * t(3, 2), 3) == t(1) * t(3) * 2
    for bad in (2, 0, -1):
        with pytest.raises(ValueError):
            differentiate(t(1), bad)


def test_graded_component_examples():
    p = ONE + t(1) + t(1, 3) + t(3)
    assert graded_component(p, 3) == t(1, 3) + t(3)
    assert graded_component(p, -2) == ZERO
    assert graded_component(q(4), 4) == q(4)


def test_inner_product_examples():
    assert inner_product(t(1), t(1)) == 2
    assert inner_product(t(1), t(3)) == 0
    assert inner_product(Q((2, 1)), Q((3,))) == 0


def test_apply_diff_examples():
    euler = DiffOperator((DiffTerm(1, make_monomial({1: 1}), (1,)),))
    assert apply_diff(euler, t(1, 3)) == t(1, 3) * 3
    d11 = DiffOperator((DiffTerm(1, (), (1, 1)),))
    assert apply_diff(d11, t(1, 2)) == OddPolynomial.constant(2)
    # L_{-1} q_1 = 2 q_3 + 1/2 Q_{1,2} = 2 q_3 - 1/2 Q_{2,1}
    assert apply_diff(build_L(-1, 1), q(1)) == q(3) * 2 - Q((2, 1)) * Fraction(1, 2)
    assert apply_diff(build_L(-1, 1), q(1)) == q(3) * 2 + Q_of_sequence((1, 2)) * Fraction(1, 2)


def test_json_roundtrip_and_order():
    p = t(3) * Fraction(-2, 3) + t(1, 2) * 5
    data = p.to_json()
    assert data == [
        {"coeff": "5", "monomial": {"1": 2}},
        {"coeff": "-2/3", "monomial": {"3": 1}},
    ]
    assert OddPolynomial.from_json(data) == p


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == ZERO


@given(polynomials(), polynomials())
def test_leibniz(a, b):
    for j in (1, 3, 5):
        assert differentiate(a * b, j) == differentiate(a, j) * b + a * differentiate(b, j)


@given(polynomials())
def test_graded_decomposition(p):
    total = ZERO
    for comp in graded_components(p).values():
        assert comp.is_homogeneous()
        total = total + comp
    assert total == p


@settings(max_examples=60)
@given(polynomials(), polynomials())
def test_inner_product_matches_literal_substitution(F, G):
    assert inner_product(F, G) == literal_inner_product(F, G)
    assert inner_product(F, G) == inner_product(G, F)


@given(polynomials(), polynomials())
def test_inner_product_degree_mismatch(F, G):
    for n in range(0, 8):
        for m in range(0, 8):
            if n != m:
                assert inner_product(graded_component(F, n), graded_component(G, m)) == 0
