"""Exact polynomials in the odd-indexed variables t_1, t_3, t_5, ... .

A monomial is a sorted tuple of ``(j, e)`` pairs (odd ``j``, positive ``e``);
``deg t_j = j``.  Coefficients are ``fractions.Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple[tuple[int, int], ...]
Scalar = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _check_index(j: int) -> None:
    if j < 1 or j % 2 == 0:
        raise ValueError(f"variable index must be odd and positive, got {j}")


def make_monomial(exponents: Mapping[int, int] | Iterable[tuple[int, int]]) -> Monomial:
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    out: dict[int, int] = {}
    for j, e in items:
        j, e = int(j), int(e)
        _check_index(j)
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            out[j] = out.get(j, 0) + e
    return tuple(sorted(out.items()))


def monomial_degree(m: Monomial) -> int:
    return sum(j * e for j, e in m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for j, e in b:
        out[j] = out.get(j, 0) + e
    return tuple(sorted(out.items()))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


class OddPolynomial:
    """Sparse polynomial with exact rational coefficients; treated as immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "OddPolynomial":
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "OddPolynomial":
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def var(cls, j: int, power: int = 1) -> "OddPolynomial":
        return cls({make_monomial({j: power}): 1})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Scalar, Mapping[int, int]]]) -> "OddPolynomial":
        acc: dict[Monomial, Fraction] = {}
        for c, exps in pairs:
            m = make_monomial(exps)
            acc[m] = acc.get(m, Fraction(0)) + _as_fraction(c)
        return cls(acc)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, OddPolynomial):
            other = OddPolynomial.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return OddPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return OddPolynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, OddPolynomial):
            other = OddPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "OddPolynomial":
        c = _as_fraction(c)
        if not c:
            return OddPolynomial()
        return OddPolynomial._raw({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, OddPolynomial):
            return self.scale(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return OddPolynomial({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = OddPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # comparison

    def __eq__(self, other):
        if isinstance(other, OddPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == OddPolynomial.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # structure

    def degrees(self) -> set[int]:
        return {monomial_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Largest weighted degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def variables(self) -> set[int]:
        return {j for m in self.terms for j, _ in m}

    def evaluate(self, point: Mapping[int, Scalar]) -> Fraction:
        """Value at ``t_j = point[j]`` (missing variables count as 0)."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for j, e in m:
                v *= _as_fraction(point.get(j, 0)) ** e
                if not v:
                    break
            total += v
        return total

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        # lexicographic by variable index, then exponent
        return sorted(self.terms.items(), key=lambda mc: mc[0])

    def to_json(self) -> list[dict]:
        return [
            {"coeff": str(c), "monomial": {str(j): e for j, e in m}}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "OddPolynomial":
        return cls.from_terms(
            (Fraction(t["coeff"]), {int(j): int(e) for j, e in t["monomial"].items()})
            for t in data
        )

    def __repr__(self):
        return f"OddPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        items = sorted(self.terms.items(), key=lambda mc: (monomial_degree(mc[0]), mc[0]))
        for m, c in items:
            var = "".join(
                f"t{str(j).translate(_SUBSCRIPTS)}" + (str(e).translate(_SUPERSCRIPTS) if e > 1 else "")
                for j, e in m
            )
            mag = abs(c)
            if var and mag == 1:
                body = var
            elif var:
                body = f"({mag}){var}" if mag.denominator != 1 else f"{mag}{var}"
            else:
                body = str(mag)
            pieces.append(("-" if c < 0 else "+", body))
        head_sign, head = pieces[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in pieces[1:]:
            out += f" {s} {body}"
        return out


ZERO = OddPolynomial()
ONE = OddPolynomial.constant(1)


def t(j: int, power: int = 1) -> OddPolynomial:
    return OddPolynomial.var(j, power)


def differentiate(p: OddPolynomial, j: int, times: int = 1) -> OddPolynomial:
    """Formal partial derivative with respect to ``t_j``."""
    _check_index(j)
    out = p.terms
    for _ in range(times):
        nxt: dict[Monomial, Fraction] = {}
        for m, c in out.items():
            exps = dict(m)
            e = exps.get(j, 0)
            if not e:
                continue
            if e == 1:
                del exps[j]
            else:
                exps[j] = e - 1
            key = tuple(sorted(exps.items()))
            nxt[key] = nxt.get(key, 0) + c * e
        out = nxt
    return OddPolynomial(out)


def graded_component(p: OddPolynomial, n: int) -> OddPolynomial:
    return OddPolynomial._raw({m: c for m, c in p.terms.items() if monomial_degree(m) == n})


def graded_components(p: OddPolynomial) -> dict[int, OddPolynomial]:
    return {n: graded_component(p, n) for n in sorted(p.degrees())}


def monomial_norm(m: Monomial) -> Fraction:
    """<t^m, t^m>, i.e. prod_j (2/j)^e_j * e_j!."""
    out = Fraction(1)
    for j, e in m:
        out *= Fraction(2, j) ** e * math.factorial(e)
    return out


def inner_product(F: OddPolynomial, G: OddPolynomial) -> Fraction:
    """``F(2 d~) G |_{t=0}`` with ``2 d~ = (2 d_1, (2/3) d_3, (2/5) d_5, ...)``.

    Distinct monomials pair to zero, so only shared monomials contribute.
    """
    if len(F.terms) > len(G.terms):
        F, G = G, F
    total = Fraction(0)
    for m, c in F.terms.items():
        d = G.terms.get(m)
        if d is not None:
            total += c * d * monomial_norm(m)
    return total


@dataclass(frozen=True)
class DiffTerm:
    """``coeff * t^left * prod(d_j for j in derivs)``; t-factors to the left."""

    coeff: Fraction
    left: Monomial = ()
    derivs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeff", _as_fraction(self.coeff))
        object.__setattr__(self, "derivs", tuple(sorted(self.derivs)))
        for j in self.derivs:
            _check_index(j)

    @property
    def weight(self) -> int:
        """Change in weighted degree caused by this term."""
        return monomial_degree(self.left) - sum(self.derivs)


@dataclass(frozen=True)
class DiffOperator:
    """Finite sum of normal-ordered terms, like terms merged."""

    terms: tuple[DiffTerm, ...] = ()

    def __post_init__(self):
        acc: dict[tuple[Monomial, tuple[int, ...]], Fraction] = {}
        for term in self.terms:
            key = (term.left, term.derivs)
            acc[key] = acc.get(key, 0) + term.coeff
        merged = tuple(
            DiffTerm(c, left, derivs)
            for (left, derivs), c in sorted(acc.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            if c
        )
        object.__setattr__(self, "terms", merged)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator(self.terms + other.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for term in self.terms:
            left = str(OddPolynomial({term.left: term.coeff}))
            d = "".join(f"∂{str(j).translate(_SUBSCRIPTS)}" for j in term.derivs)
            parts.append(left + d)
        return " + ".join(parts)


def apply_diff(D: DiffOperator, p: OddPolynomial) -> OddPolynomial:
    """Apply a normal-ordered operator: derivatives first, then multiply."""
    derived: dict[tuple[int, ...], OddPolynomial] = {}
    acc: dict[Monomial, Fraction] = {}
    for term in D.terms:
        dp = derived.get(term.derivs)
        if dp is None:
            dp = p
            for j in term.derivs:
                dp = differentiate(dp, j)
                if not dp:
                    break
            derived[term.derivs] = dp
        for m, c in dp.terms.items():
            key = monomial_mul(term.left, m)
            acc[key] = acc.get(key, 0) + term.coeff * c
    return OddPolynomial(acc)
