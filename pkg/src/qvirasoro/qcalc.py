"""Schur Q-functions as polynomials in t_1, t_3, ...: q_n, Q_ab, Q_lambda.

Also holds the Q-basis expansion and exact checkers for the Pfaffian
quadratic relations and their consequences.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence

from .partitions import StrictPartition, straighten, strict_partitions_of
from .polyring import ONE, ZERO, OddPolynomial, graded_components, inner_product, t


class ConsistencyError(RuntimeError):
    """An internal identity that must hold exactly did not."""


# -- q_n and Q_ab ---------------------------------------------------------


@lru_cache(maxsize=None)
def q(n: int) -> OddPolynomial:
    """Coefficient of u**n in exp(sum_{j odd} t_j u**j).

    Uses n q_n = sum_{j odd <= n} j t_j q_{n-j}.
    """
    if n < 0:
        return ZERO
    if n == 0:
        return ONE
    acc = ZERO
    for j in range(1, n + 1, 2):
        acc = acc + t(j) * q(n - j) * j
    return acc * Fraction(1, n)


@lru_cache(maxsize=None)
def q_pair(a: int, b: int) -> OddPolynomial:
    """The two-row function Q_ab, extended antisymmetrically (Q_aa = 0)."""
    if a < 0 or b < 0:
        raise ValueError(f"Q_ab needs non-negative indices, got ({a}, {b})")
    if a == b:
        return ZERO
    if a < b:
        return -q_pair(b, a)
    acc = q(a) * q(b)
    for i in range(1, b + 1):
        term = q(a + i) * q(b - i) * 2
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


# -- Pfaffian ---------------------------------------------------------------


def pfaffian(matrix: Sequence[Sequence]):
    """Pfaffian of an alternating matrix by Laplace expansion along the first row.

    Division free; subproblems are memoised on the set of remaining indices.
    Entries only need ``+``, ``-`` and ``*``.
    """
    n = len(matrix)
    if n % 2:
        raise ValueError(f"Pfaffian needs even dimension, got {n}")
    if n == 0:
        return ONE
    memo: dict[tuple[int, ...], object] = {}

    def pf(idx: tuple[int, ...]):
        if len(idx) == 2:
            return matrix[idx[0]][idx[1]]
        hit = memo.get(idx)
        if hit is not None:
            return hit
        first = idx[0]
        total = None
        for pos in range(1, len(idx)):
            entry = matrix[first][idx[pos]]
            if not entry:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = entry * pf(rest)
            # (-1)^i with the 1-based column i = pos + 1
            if pos % 2 == 0:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = matrix[idx[0]][idx[1]] * 0
        memo[idx] = total
        return total

    return pf(tuple(range(n)))


def alternating_matrix(labels: Sequence[int], entry: Callable[[int, int], OddPolynomial] = None):
    """The matrix (Q_{l_i l_j}); antisymmetric by construction."""
    entry = entry or q_pair
    n = len(labels)
    mat = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = entry(labels[i], labels[j])
            mat[i][j] = v
            mat[j][i] = -v
    return mat


@lru_cache(maxsize=None)
def _Q_parts(parts: tuple[int, ...]) -> OddPolynomial:
    labels = parts + (0,) if len(parts) % 2 else parts
    if len(labels) == 2:
        return q_pair(*labels)
    return pfaffian(alternating_matrix(labels))


def Q(lam: StrictPartition | Sequence[int]) -> OddPolynomial:
    """Q_lambda; an odd-length lambda gets a trailing 0 part."""
    if not isinstance(lam, StrictPartition):
        lam = StrictPartition(tuple(lam))
    return _Q_parts(lam.parts)


def Q_of_sequence(seq: Sequence[int]) -> OddPolynomial:
    """Q_alpha for a non-negative index sequence, via straightening."""
    if any(s < 0 for s in seq):
        raise ValueError(f"negative index in {tuple(seq)}; only straighten() handles those")
    res = straighten(seq)
    if res.is_zero:
        return ZERO
    return Q(res.partition).scale(res.coefficient)


# -- Q-basis expansions -----------------------------------------------------


class QExpansion:
    """Finite combination sum c_lambda Q_lambda with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[StrictPartition, Fraction] | None = None):
        clean = {}
        for lam, c in (terms or {}).items():
            if not isinstance(lam, StrictPartition):
                lam = StrictPartition(tuple(lam))
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "QExpansion") -> "QExpansion":
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + c
        return QExpansion(out)

    def scale(self, c) -> "QExpansion":
        return QExpansion({lam: v * c for lam, v in self.terms.items()})

    def items(self) -> list[tuple[StrictPartition, Fraction]]:
        """Terms in decreasing size, then decreasing lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0].size, kv[0].parts), reverse=True)

    def to_polynomial(self) -> OddPolynomial:
        acc = ZERO
        for lam, c in self.items():
            acc = acc + Q(lam).scale(c)
        return acc

    def to_json(self) -> list[dict]:
        return [{"partition": lam.to_json(), "coeff": str(c)} for lam, c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "QExpansion":
        return cls({StrictPartition(tuple(d["partition"])): Fraction(d["coeff"]) for d in data})

    def __repr__(self):
        return f"QExpansion({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})Q{lam}" for lam, c in self.items())


@lru_cache(maxsize=None)
def norm_squared(lam: StrictPartition) -> Fraction:
    """<Q_lambda, Q_lambda>, computed rather than assumed."""
    return inner_product(Q(lam), Q(lam))


def expand_in_Q(p: OddPolynomial, check: bool = True) -> QExpansion:
    """Coordinates of ``p`` in the orthogonal basis {Q_lambda}."""
    out: dict[StrictPartition, Fraction] = {}
    for n, comp in graded_components(p).items():
        for lam in strict_partitions_of(n):
            c = inner_product(comp, Q(lam))
            if c:
                out[lam] = c / norm_squared(lam)
    result = QExpansion(out)
    if check and result.to_polynomial() != p:
        raise ConsistencyError(f"Q-expansion of {p} does not reconstruct it")
    return result


# -- identity checkers ------------------------------------------------------


def _hat(seq: Sequence[int], i: int) -> tuple[int, ...]:
    """Drop the 1-based entry ``i``."""
    return tuple(seq[: i - 1]) + tuple(seq[i:])


def quadratic_relation_rhs(seq: Sequence[int]) -> OddPolynomial:
    """Right-hand side of the Pfaffian expansion of Q_seq (odd or even length)."""
    seq = tuple(seq)
    ell = len(seq)
    acc = ZERO
    if ell % 2:
        for i in range(1, ell + 1):
            term = q(seq[i - 1]) * Q_of_sequence(_hat(seq, i))
            acc = acc + term if i % 2 else acc - term
    else:
        for i in range(2, ell + 1):
            term = Q_of_sequence((seq[0], seq[i - 1])) * Q_of_sequence(_hat(_hat(seq, i), 1))
            acc = acc + term if i % 2 == 0 else acc - term
    return acc


def check_quadratic_relation(lam: StrictPartition | Sequence[int]) -> bool:
    parts = lam.parts if isinstance(lam, StrictPartition) else tuple(lam)
    if not parts:
        return True
    return Q_of_sequence(parts) == quadratic_relation_rhs(parts)


def lemma1_sides(case: int, alpha: Sequence[int], x: int, y: int = 0) -> tuple[OddPolynomial, OddPolynomial]:
    """Both sides of the four expansion identities for Q_{alpha x} / Q_{alpha x y}."""
    alpha = tuple(alpha)
    ell = len(alpha)
    if case not in (1, 2, 3, 4):
        raise ValueError(f"case must be 1..4, got {case}")
    want_odd = case in (1, 3)
    if (ell % 2 == 1) != want_odd:
        raise ValueError(f"case {case} needs {'odd' if want_odd else 'even'} length, got {ell}")
    if not want_odd and ell == 0:
        raise ValueError("even cases need a non-empty alpha")
    tail = (x,) if case in (1, 2) else (x, y)
    Qs = Q_of_sequence
    lhs = Qs(alpha + tail)
    lead = q(x) if case in (1, 2) else Qs((x, y))
    rhs = -(lead * Qs(alpha))
    if want_odd:
        for i in range(1, ell + 1):
            rest = _hat(alpha, i)
            a_i = alpha[i - 1]
            term = q(a_i) * Qs(rest + tail) + Qs((a_i,) + tail) * Qs(rest)
            rhs = rhs - term if i % 2 == 0 else rhs + term
    else:
        for i in range(2, ell + 1):
            rest = _hat(_hat(alpha, i), 1)
            pair = (alpha[0], alpha[i - 1])
            term = Qs(pair) * Qs(rest + tail) + Qs(pair + tail) * Qs(rest)
            rhs = rhs + term if i % 2 == 0 else rhs - term
    return lhs, rhs


def check_lemma1(case: int, alpha: Sequence[int], x: int, y: int = 0) -> bool:
    lhs, rhs = lemma1_sides(case, alpha, x, y)
    return lhs == rhs


def prop1_sides(m: int) -> tuple[OddPolynomial, OddPolynomial]:
    """sum (2i+1) t_{2i+1} (n-2i-1) t_{n-2i-1}  vs  2 sum (-1)^i (m-i) Q_{n-i,i}, n = 2m."""
    if m < 1:
        raise ValueError("m must be positive")
    n = 2 * m
    lhs = ZERO
    rhs = ZERO
    for i in range(m):
        a = 2 * i + 1
        lhs = lhs + t(a) * t(n - a) * (a * (n - a))
        term = Q_of_sequence((n - i, i)) * (2 * (m - i))
        rhs = rhs + term if i % 2 == 0 else rhs - term
    return lhs, rhs


def check_prop1(m: int) -> bool:
    lhs, rhs = prop1_sides(m)
    return lhs == rhs


def nonnegative_sequences(length: int, max_sum: int) -> Iterator[tuple[int, ...]]:
    """Every non-negative integer sequence of the given length with sum <= max_sum."""
    if length == 0:
        yield ()
        return
    for first in range(max_sum + 1):
        for rest in nonnegative_sequences(length - 1, max_sum - first):
            yield (first,) + rest
