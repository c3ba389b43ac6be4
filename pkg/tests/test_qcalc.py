import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qvirasoro.partitions import StrictPartition, strict_partitions_of
from qvirasoro.polyring import ONE, ZERO, OddPolynomial, inner_product, t
from qvirasoro.qcalc import (
    Q,
    QExpansion,
    Q_of_sequence,
    alternating_matrix,
    check_lemma1,
    check_prop1,
    check_quadratic_relation,
    expand_in_Q,
    norm_squared,
    pfaffian,
    q,
    q_pair,
)

from conftest import homogeneous_polynomials


def q_by_enumeration(n):
    """Coefficient of u^n in prod_j exp(t_j u^j): sum over odd-part multiplicities."""
    out = ZERO
    odd = list(range(1, n + 1, 2))

    def rec(i, remaining, mono, denom):
        nonlocal out
        if remaining == 0:
            out = out + OddPolynomial.from_terms([(Fraction(1, denom), mono)])
            return
        if i == len(odd):
            return
        j = odd[i]
        for m in range(remaining // j + 1):
            rec(i + 1, remaining - m * j, {**mono, j: m}, denom * math.factorial(m))

    rec(0, n, {}, 1)
    return out


def pfaffian_by_matchings(mat):
    """Signed sum over F_2m, taken literally from the permutation definition."""
    n = len(mat)
    if n == 0:
        return 1
    total = 0
    for perm in itertools.permutations(range(n)):
        if any(perm[2 * i] > perm[2 * i + 1] for i in range(n // 2)):
            continue
        if any(perm[2 * i] > perm[2 * i + 2] for i in range(n // 2 - 1)):
            continue
        sign = 1
        for a, b in itertools.combinations(range(n), 2):
            if perm[a] > perm[b]:
                sign = -sign
        prod = 1
        for i in range(n // 2):
            prod = prod * mat[perm[2 * i]][perm[2 * i + 1]]
        total = total + sign * prod
    return total


def random_alternating(n, rnd):
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rnd.randint(-9, 9), rnd.randint(1, 5))
            mat[i][j], mat[j][i] = v, -v
    return mat


# -- q_n ---------------------------------------------------------------------


def test_q_small():
    assert q(0) == ONE
    assert q(1) == t(1)
    assert q(2) == t(1, 2) * Fraction(1, 2)
    assert q(3) == t(1, 3) * Fraction(1, 6) + t(3)
    assert q(4) == t(1, 4) * Fraction(1, 24) + t(1) * t(3)


def test_q3_consistent_with_t3_relation():
    # t_3 = (q_3 - Q_{2,1}) / 3 with Q_{2,1} = q_2 q_1 - 2 q_3
    assert (q(3) - Q((2, 1))) * Fraction(1, 3) == t(3)
    assert Q((2, 1)) == q(2) * q(1) - q(3) * 2
    assert (q(4) * 2 - Q((3, 1))) * Fraction(1, 3) == t(1) * t(3)


@pytest.mark.parametrize("n", range(13))
def test_q_matches_enumeration(n):
    assert q(n) == q_by_enumeration(n)
    assert q(n).degrees() <= {n}


# -- Q_ab --------------------------------------------------------------------


def test_q_pair_values():
    assert q_pair(2, 1) == t(1, 3) * Fraction(1, 6) - t(3) * 2
    assert q_pair(3, 1) == t(1, 4) * Fraction(1, 12) - t(1) * t(3)
    assert q_pair(3, 3) == ZERO
    assert q_pair(0, 0) == ZERO
    assert q_pair(4, 0) == q(4)
    assert q_pair(1, 2) == -q_pair(2, 1)
    with pytest.raises(ValueError):
        q_pair(2, -1)


# -- Pfaffian ---------------------------------------------------------------


def test_pfaffian_small():
    a = t(1) * 3
    assert pfaffian([[ZERO, a], [-a, ZERO]]) == a
    assert pfaffian([]) == ONE
    with pytest.raises(ValueError):
        pfaffian([[ZERO] * 3] * 3)


def test_pfaffian_of_Q_matrix_matches_matchings():
    mat = alternating_matrix((3, 2, 1, 0))
    assert pfaffian(mat) == pfaffian_by_matchings(mat)
    assert pfaffian(mat) == Q((3, 2, 1))


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("seed", range(5))
def test_pfaffian_random_rational(m, seed):
    mat = random_alternating(2 * m, random.Random(seed * 10 + m))
    assert pfaffian(mat) == pfaffian_by_matchings(mat)
    assert pfaffian(mat) ** 2 == _det(mat)


def _det(mat):
    # Leibniz formula, fine for n <= 6
    n = len(mat)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for a, b in itertools.combinations(range(n), 2):
            if perm[a] > perm[b]:
                sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= mat[i][perm[i]]
        total += sign * prod
    return total


# -- Q_lambda -------------------------------------------------------------------


def test_Q_examples():
    assert Q((1,)) == t(1)
    assert Q((3, 1)) == t(1, 4) * Fraction(1, 12) - t(1) * t(3)
    assert Q(()) == ONE
    assert Q((2, 1)).degrees() == {3}
    assert inner_product(Q((2, 1)), Q((3,))) == 0


def test_Q_of_sequence():
    assert Q_of_sequence((0, 2, 3, 0, 1)) == -Q((3, 2, 1))
    assert Q_of_sequence((2, 2)) == ZERO
    assert Q_of_sequence((1, 2)) == -Q((2, 1))
    assert Q_of_sequence((0, 0)) == ONE
    with pytest.raises(ValueError):
        Q_of_sequence((3, -3))


@pytest.mark.parametrize("n", range(11))
def test_homogeneity_and_orthogonality(n):
    basis = strict_partitions_of(n)
    for lam in basis:
        assert Q(lam).degrees() == {n}
        assert norm_squared(lam) != 0
    for lam, mu in itertools.combinations(basis, 2):
        assert inner_product(Q(lam), Q(mu)) == 0


def test_recorded_norms():
    # observed values, recorded rather than taken from a formula
    assert norm_squared(StrictPartition(())) == 1
    assert norm_squared(StrictPartition((1,))) == 2
    assert norm_squared(StrictPartition((2,))) == 2
    assert norm_squared(StrictPartition((2, 1))) == 4
    assert norm_squared(StrictPartition((3, 2, 1))) == 8


# -- expansions -----------------------------------------------------------------


def test_expand_examples():
    assert expand_in_Q(Q((3, 1))) == QExpansion({(3, 1): 1})
    # t1^3 = a Q_3 + b Q_21 solved by hand: a = 4, b = 2
    assert expand_in_Q(t(1, 3)) == QExpansion({(3,): 4, (2, 1): 2})
    assert expand_in_Q(ZERO) == QExpansion()


def test_qexpansion_json():
    e = QExpansion({(3,): 4, (2, 1): Fraction(-1, 2)})
    assert e.to_json() == [
        {"partition": [3], "coeff": "4"},
        {"partition": [2, 1], "coeff": "-1/2"},
    ]
    assert QExpansion.from_json(e.to_json()) == e


@pytest.mark.parametrize("n", range(11))
def test_expand_identity_on_basis(n):
    for lam in strict_partitions_of(n):
        assert expand_in_Q(Q(lam)) == QExpansion({lam: 1})


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10).flatmap(homogeneous_polynomials))
def test_expand_roundtrip(p):
    assert expand_in_Q(p).to_polynomial() == p


# -- identities -----------------------------------------------------------------


def test_quadratic_relation_examples():
    lhs = Q((3, 2, 1))
    rhs = q(3) * Q((2, 1)) - q(2) * Q((3, 1)) + q(1) * Q((3, 2))
    assert lhs == rhs
    assert check_quadratic_relation(StrictPartition((3, 2, 1)))
    assert check_quadratic_relation(StrictPartition((2, 1)))
    assert check_quadratic_relation(StrictPartition((4, 3, 2, 1)))


@pytest.mark.parametrize("n", range(10))
def test_quadratic_relations_exhaustive(n):
    for lam in strict_partitions_of(n):
        assert check_quadratic_relation(lam)


def test_lemma1_examples():
    assert check_lemma1(1, (3, 2, 1), 4)
    assert check_lemma1(4, (2, 1), 4, 3)
    assert check_lemma1(3, (1,), 0, 0)
    with pytest.raises(ValueError):
        check_lemma1(1, (2, 1), 3)
    with pytest.raises(ValueError):
        check_lemma1(4, (1,), 3, 2)


@given(
    st.sampled_from([1, 2, 3, 4]),
    st.lists(st.integers(0, 5), min_size=1, max_size=5),
    st.integers(0, 5),
    st.integers(0, 5),
)
@settings(max_examples=150, deadline=None)
def test_lemma1_random(case, alpha, x, y):
    if (len(alpha) % 2 == 1) != (case in (1, 3)):
        alpha = alpha[:-1] if len(alpha) > 1 else alpha + [0]
    if (len(alpha) % 2 == 1) != (case in (1, 3)):
        return
    assert check_lemma1(case, tuple(alpha), x, y)


def test_prop1_examples():
    assert check_prop1(1)
    # m = 2: 2 * 3 t1 t3 vs 2(2 Q_{4,0} - Q_{3,1})
    assert t(1) * t(3) * 6 == (q(4) * 2 - Q((3, 1))) * 2
    assert check_prop1(2)
    assert check_prop1(4)
