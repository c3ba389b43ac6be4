"""The reduced Fock representation of the Virasoro algebra on V = Q[t_1, t_3, ...].

Two independent realisations of L_k:

* ``act_diff``: L_k built from the bosons a_j = sqrt(2) d_j, a_{-j} = (j/sqrt(2)) t_j
  as a normal-ordered differential operator;
* ``act_closed_lower`` / ``act_closed_raise``: closed-form rules on the Q-basis.

The normalisation is the one with [L_k, L_l] = 2(k-l) L_{k+l} + (k^3-k)/3 delta_{k+l,0}.
The standard central-charge-1 generators are ``VIRASORO_RESCALING * L_k``.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .partitions import StrictPartition, shift_part, straighten, strict_partitions_of
from .polyring import (
    DiffOperator,
    DiffTerm,
    OddPolynomial,
    ZERO,
    apply_diff,
    inner_product,
    make_monomial,
)
from .qcalc import Q, Q_of_sequence, QExpansion, expand_in_Q

VIRASORO_RESCALING = Fraction(1, 2)
L0_SHIFT = Fraction(1, 8)


def _boson_product(m: int, n: int) -> DiffTerm | None:
    """:a_m a_n: as a rational DiffTerm (the sqrt(2) factors pair up)."""
    if m < 0 and n < 0:
        return DiffTerm(Fraction(m * n, 2), make_monomial([(-m, 1), (-n, 1)]))
    if m > 0 and n > 0:
        return DiffTerm(Fraction(2), (), (m, n))
    neg, pos = (m, n) if m < 0 else (n, m)
    return DiffTerm(Fraction(-neg), make_monomial({-neg: 1}), (pos,))


@lru_cache(maxsize=None)
def build_L(k: int, degree_bound: int) -> DiffOperator:
    """L_k truncated so that it is exact on every V(m) with m <= degree_bound.

    Terms whose derivative index exceeds ``degree_bound`` annihilate such
    inputs and are dropped; everything else is kept.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    terms: list[DiffTerm] = []
    reach = degree_bound + 2 * abs(k) + 1
    for m in range(-reach, reach + 1):
        if m % 2 == 0:
            continue
        n = 2 * k - m
        if (m > 0 and m > degree_bound) or (n > 0 and n > degree_bound):
            continue
        term = _boson_product(m, n)
        terms.append(DiffTerm(term.coeff / 2, term.left, term.derivs))
    if k == 0:
        terms.append(DiffTerm(L0_SHIFT))
    return DiffOperator(tuple(terms))


def act_diff(k: int, p: OddPolynomial) -> OddPolynomial:
    """L_k p in the polynomial realisation."""
    if not p:
        return ZERO
    return apply_diff(build_L(k, max(p.degree(), 0)), p)


def _add_straightened(acc: dict, seq: Sequence[int], coeff: Fraction) -> None:
    if not coeff:
        return
    res = straighten(seq)
    if res.is_zero:
        return
    acc[res.partition] = acc.get(res.partition, 0) + coeff * res.coefficient


def act_closed_lower(k: int, e: QExpansion) -> QExpansion:
    """L_{-k} on a Q-expansion, k >= 1:

    L_{-k} Q_a = sum_i (a_i + k) Q_{a + 2k e_i} + 1/2 sum_{i<k} (-1)^i (k-i) Q_{a, 2k-i, i}.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    acc: dict[StrictPartition, Fraction] = {}
    for lam, c in e.terms.items():
        parts = lam.parts
        for i in range(1, len(parts) + 1):
            _add_straightened(acc, shift_part(parts, i, 2 * k), c * (parts[i - 1] + k))
        for i in range(k):
            sign = 1 if i % 2 == 0 else -1
            _add_straightened(acc, parts + (2 * k - i, i), c * Fraction(sign * (k - i), 2))
    return QExpansion(acc)


def act_closed_raise(k: int, e: QExpansion, pad: bool = False) -> QExpansion:
    """L_k on a Q-expansion, k >= 1:  L_k Q_lam = sum_i (lam_i - k) Q_{lam - 2k e_i}.

    The sum runs over the parts of lambda as given.  Negative labels are
    resolved by ``straighten`` (pair contraction, otherwise zero).  With
    ``pad=True`` an odd-length lambda first gets a trailing 0 slot; that
    variant disagrees with the differential action and is kept only so the
    disagreement stays testable.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    acc: dict[StrictPartition, Fraction] = {}
    for lam, c in e.terms.items():
        parts = lam.parts
        if pad and len(parts) % 2:
            parts = parts + (0,)
        for i in range(1, len(parts) + 1):
            _add_straightened(acc, shift_part(parts, i, -2 * k), c * (parts[i - 1] - k))
    return QExpansion(acc)


def act_closed(k: int, e: QExpansion) -> QExpansion:
    """Closed-form L_k for any integer k."""
    if k < 0:
        return act_closed_lower(-k, e)
    if k > 0:
        return act_closed_raise(k, e)
    return QExpansion({lam: c * (lam.size + L0_SHIFT) for lam, c in e.terms.items()})


# -- matrices -----------------------------------------------------------------


@dataclass(frozen=True)
class OperatorMatrix:
    """Entry (mu, lam) is the coefficient of Q_mu in L_k Q_lam."""

    k: int
    n: int
    rows: tuple[StrictPartition, ...]
    cols: tuple[StrictPartition, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "rows": [r.to_json() for r in self.rows],
            "cols": [c.to_json() for c in self.cols],
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OperatorMatrix":
        return cls(
            data["k"],
            data["n"],
            tuple(StrictPartition(tuple(r)) for r in data["rows"]),
            tuple(StrictPartition(tuple(c)) for c in data["cols"]),
            tuple(tuple(Fraction(x) for x in row) for row in data["entries"]),
        )


def _column(k: int, lam: StrictPartition, method: str) -> QExpansion:
    if method == "diff":
        return expand_in_Q(act_diff(k, Q(lam)))
    return act_closed(k, QExpansion({lam: 1}))


def matrix_of_L(k: int, n: int, method: str = "diff", jobs: int = 1) -> OperatorMatrix:
    """Matrix of L_k : V(n) -> V(n-2k) in the Q-bases (decreasing-lex order)."""
    if method not in ("diff", "closed"):
        raise ValueError(f"unknown method {method!r}")
    cols = tuple(strict_partitions_of(n))
    rows = tuple(strict_partitions_of(n - 2 * k))
    if jobs > 1 and len(cols) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            images = list(pool.map(_column, [k] * len(cols), cols, [method] * len(cols)))
    else:
        images = [_column(k, lam, method) for lam in cols]
    entries = tuple(
        tuple(img.terms.get(mu, Fraction(0)) for img in images) for mu in rows
    )
    return OperatorMatrix(k, n, rows, cols, entries)


def _matmul(a, b, inner: int, n_rows: int, n_cols: int):
    return [
        [sum((a[i][r] * b[r][j] for r in range(inner)), Fraction(0)) for j in range(n_cols)]
        for i in range(n_rows)
    ]


def bracket_sides(k: int, l: int, n: int) -> tuple[list, list]:
    """[L_k, L_l] and 2(k-l) L_{k+l} + (k^3-k)/3 delta_{k+l,0} as matrices on V(n)."""
    dim_src = len(strict_partitions_of(n))
    dim_dst = len(strict_partitions_of(n - 2 * (k + l)))
    Ml = matrix_of_L(l, n)
    Mk_after_l = matrix_of_L(k, n - 2 * l)
    Mk = matrix_of_L(k, n)
    Ml_after_k = matrix_of_L(l, n - 2 * k)
    kl = _matmul(Mk_after_l.entries, Ml.entries, Ml.shape[0], dim_dst, dim_src)
    lk = _matmul(Ml_after_k.entries, Mk.entries, Mk.shape[0], dim_dst, dim_src)
    lhs = [[kl[i][j] - lk[i][j] for j in range(dim_src)] for i in range(dim_dst)]
    Mkl = matrix_of_L(k + l, n)
    rhs = [[2 * (k - l) * Mkl.entries[i][j] for j in range(dim_src)] for i in range(dim_dst)]
    if k + l == 0:
        central = Fraction(k**3 - k, 3)
        for i in range(dim_src):
            rhs[i][i] += central
    return lhs, rhs


def check_virasoro_bracket(k: int, l: int, n: int) -> bool:
    lhs, rhs = bracket_sides(k, l, n)
    return lhs == rhs


def check_contravariance(k: int, n: int) -> bool:
    """<L_k Q_lam, Q_mu> == <Q_lam, L_{-k} Q_mu> for lam |- n, mu |- n-2k."""
    for lam in strict_partitions_of(n):
        left_img = act_diff(k, Q(lam))
        for mu in strict_partitions_of(n - 2 * k):
            if inner_product(left_img, Q(mu)) != inner_product(Q(lam), act_diff(-k, Q(mu))):
                return False
    return True


def check_even_invariance(n: int) -> bool:
    """L_{-1}, L_0, L_1 keep span{Q_lam : lam in ESP} inside itself (block test)."""
    for k in (-1, 0, 1):
        M = matrix_of_L(k, n)
        for j, lam in enumerate(M.cols):
            if not lam.is_even():
                continue
            for i, mu in enumerate(M.rows):
                if not mu.is_even() and M.entries[i][j]:
                    return False
    return True


def lowering_multiplier(k: int) -> OddPolynomial:
    """1/2 sum_{j<k} (-1)^j (k-j) Q_{2k-j, j}, the multiplication part of L_{-k}."""
    acc = ZERO
    for j in range(k):
        term = Q_of_sequence((2 * k - j, j)) * Fraction(k - j, 2)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def product_rule_sides(k: int, v: OddPolynomial, w: OddPolynomial) -> tuple[OddPolynomial, OddPolynomial]:
    """L_{-k}(vw)  vs  (L_{-k}v)w + v(L_{-k}w) - [multiplier] vw."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lhs = act_diff(-k, v * w)
    rhs = act_diff(-k, v) * w + v * act_diff(-k, w) - lowering_multiplier(k) * v * w
    return lhs, rhs


def check_product_rule(k: int, v: OddPolynomial, w: OddPolynomial) -> bool:
    lhs, rhs = product_rule_sides(k, v, w)
    return lhs == rhs


def lowered_q_formula(k: int, n: int) -> OddPolynomial:
    """Closed forms for L_{-1} q_n and L_{-2} q_n as polynomials."""
    from .qcalc import q

    if k == 1:
        return q(n + 2) * (n + 1) + Q_of_sequence((n, 2)) * Fraction(1, 2)
    if k == 2:
        return q(n + 4) * (n + 2) + Q_of_sequence((n, 4)) - Q_of_sequence((n, 3, 1)) * Fraction(1, 2)
    raise ValueError("closed forms exist here for k = 1, 2 only")


def oracle_agrees(k: int, lam: StrictPartition) -> bool:
    """Closed-form L_k Q_lam equals the Q-expansion of the differential action."""
    return expand_in_Q(act_diff(k, Q(lam))) == act_closed(k, QExpansion({lam: 1}))
