"""Hirota bilinear operators on exponential-sum tau functions.

For exponentials, P(D~) e^eta . e^eta' = P(t) e^{eta+eta'} evaluated at
t_j = (a_j - a'_j)/j, where D~ = (D_1, D_3/3, D_5/5, ...).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .partitions import StrictPartition, strict_partitions_of
from .polyring import OddPolynomial
from .qcalc import Q

Exponent = tuple[tuple[int, Fraction], ...]


def _exponent(data) -> Exponent:
    items = data.items() if isinstance(data, dict) else data
    out = {}
    for j, a in items:
        j = int(j)
        if j < 1 or j % 2 == 0:
            raise ValueError(f"exponent index must be odd and positive, got {j}")
        a = Fraction(a)
        if a:
            out[j] = out.get(j, 0) + a
    return tuple(sorted((j, a) for j, a in out.items() if a))


@dataclass(frozen=True)
class ExponentialSum:
    """sum_i c_i exp(sum_j a_ij t_j).

    ``support`` is the largest odd time index the exponents are valid for;
    ``None`` means the sum is exact in every time.
    """

    terms: tuple[tuple[Fraction, Exponent], ...] = ()
    support: int | None = None

    def __post_init__(self):
        acc: dict[Exponent, Fraction] = {}
        for c, expo in self.terms:
            expo = _exponent(expo)
            acc[expo] = acc.get(expo, 0) + Fraction(c)
        merged = tuple((c, e) for e, c in sorted(acc.items()) if c)
        object.__setattr__(self, "terms", merged)

    @classmethod
    def constant(cls, c=1) -> "ExponentialSum":
        return cls(((Fraction(c), ()),))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def swap(self) -> "ExponentialSum":
        """Negate every exponent."""
        return ExponentialSum(tuple((c, tuple((j, -a) for j, a in e)) for c, e in self.terms), self.support)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for c, e in self.terms:
            if not e:
                out.append(str(c))
                continue
            arg = " + ".join(f"({a})t{j}" for j, a in e)
            out.append(f"({c})exp({arg})")
        return " + ".join(out)


@dataclass(frozen=True)
class HirotaPolynomial:
    """A polynomial P(t) read through t_j -> D_j / j."""

    base: OddPolynomial = field(default_factory=OddPolynomial)

    def coefficients_in_D(self) -> dict[tuple[tuple[int, int], ...], Fraction]:
        """Coefficients of the D-monomials D_1^e1 D_3^e3 ... ."""
        out = {}
        for m, c in self.base.terms.items():
            scale = Fraction(1)
            for j, e in m:
                scale /= Fraction(j) ** e
            out[m] = c * scale
        return out

    def __str__(self):
        sub = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
        sup = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
        coeffs = self.coefficients_in_D()
        if not coeffs:
            return "0"
        parts = []
        for m, c in sorted(coeffs.items(), key=lambda kv: (-len(kv[0]), kv[0])):
            mono = "".join(f"D{str(j).translate(sub)}" + (str(e).translate(sup) if e > 1 else "") for j, e in m)
            parts.append(f"({c}){mono}")
        return " + ".join(parts)


def to_hirota(lam: StrictPartition | Sequence[int]) -> HirotaPolynomial:
    return HirotaPolynomial(Q(lam))


def hirota_apply(P: HirotaPolynomial | OddPolynomial, f: ExponentialSum, g: ExponentialSum) -> ExponentialSum:
    """P(D~) f . g, extended bilinearly over the exponential terms."""
    poly = P.base if isinstance(P, HirotaPolynomial) else P
    acc: dict[Exponent, Fraction] = {}
    for c1, e1 in f.terms:
        a1 = dict(e1)
        for c2, e2 in g.terms:
            a2 = dict(e2)
            point = {j: (a1.get(j, 0) - a2.get(j, 0)) / j for j in set(a1) | set(a2)}
            val = poly.evaluate(point)
            if not val:
                continue
            total = dict(a1)
            for j, a in a2.items():
                total[j] = total.get(j, 0) + a
            key = _exponent(total)
            acc[key] = acc.get(key, 0) + c1 * c2 * val
    supports = [s for s in (f.support, g.support) if s is not None]
    return ExponentialSum(tuple((c, e) for e, c in acc.items()), min(supports) if supports else None)


def kdv_tau(params: Iterable[tuple], degree_support: int) -> ExponentialSum:
    """N-soliton KdV tau function truncated to the times t_j, j <= degree_support.

    ``params`` holds pairs ``(p_i, c_i)``.  Each soliton has phase
    eta_i = sum_{j odd} 2 p_i^j t_j and each pair interacts with
    ((p_i - p_k) / (p_i + p_k))^2.
    """
    params = [(Fraction(p), Fraction(c)) for p, c in params]
    if degree_support < 1 or degree_support % 2 == 0:
        raise ValueError("degree_support must be a positive odd integer")
    ps = [p for p, _ in params]
    for p in ps:
        if p == 0:
            raise ValueError("soliton parameters must be nonzero")
    for i, j in combinations(range(len(ps)), 2):
        if ps[i] == ps[j] or ps[i] + ps[j] == 0:
            raise ValueError(f"soliton parameters {ps[i]} and {ps[j]} collide")
    phases = [{j: 2 * p**j for j in range(1, degree_support + 1, 2)} for p in ps]
    terms = []
    n = len(params)
    for r in range(n + 1):
        for subset in combinations(range(n), r):
            coeff = Fraction(1)
            for i in subset:
                coeff *= params[i][1]
            for i, j in combinations(subset, 2):
                coeff *= ((ps[i] - ps[j]) / (ps[i] + ps[j])) ** 2
            expo: dict[int, Fraction] = {}
            for i in subset:
                for jj, a in phases[i].items():
                    expo[jj] = expo.get(jj, 0) + a
            terms.append((coeff, tuple(expo.items())))
    return ExponentialSum(tuple(terms), degree_support)


KDV_BILINEAR = HirotaPolynomial(Q((3, 1)) * 12)  # D_1^4 - 4 D_1 D_3


def check_kdv_bilinear(tau: ExponentialSum) -> bool:
    """The classical (D_1^4 - 4 D_1 D_3) tau . tau = 0."""
    return hirota_apply(KDV_BILINEAR, tau, tau).is_zero()


NORMALIZATION_NOTE = (
    "A nonzero residual for a partition outside ESP means the soliton "
    "normalisation (time scaling) is suspect before the conjecture is."
)


@dataclass(frozen=True)
class ProbeRecord:
    partition: StrictPartition
    in_esp: bool
    residual: ExponentialSum

    @property
    def is_zero(self) -> bool:
        return self.residual.is_zero()

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "in_esp": self.in_esp,
            "residual_terms": len(self.residual),
            "is_zero": self.is_zero,
        }


@dataclass(frozen=True)
class ProbeReport:
    records: tuple[ProbeRecord, ...]
    max_weight: int

    def nonzero_outside_esp(self) -> list[ProbeRecord]:
        return [r for r in self.records if not r.in_esp and not r.is_zero]

    def nonzero_in_esp(self) -> list[ProbeRecord]:
        return [r for r in self.records if r.in_esp and not r.is_zero]

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.records]

    def summary(self) -> str:
        bad = self.nonzero_outside_esp()
        lines = [
            f"partitions probed: {len(self.records)} (|lambda| <= {self.max_weight})",
            f"nonzero outside ESP: {len(bad)}",
            f"nonzero inside ESP: {len(self.nonzero_in_esp())}",
        ]
        if bad:
            lines.append("findings: " + ", ".join(str(r.partition) for r in bad))
            lines.append(NORMALIZATION_NOTE)
        return "\n".join(lines)


def conjecture_probe(tau: ExponentialSum, max_weight: int) -> ProbeReport:
    """Evaluate Q_lam(D~) tau . tau for every strict lam with 1 <= |lam| <= max_weight.

    Records results; never asserts.
    """
    if tau.support is not None and tau.support < max_weight:
        raise ValueError(
            f"tau is only valid for t_j with j <= {tau.support}; need {max_weight}"
        )
    records = []
    for n in range(1, max_weight + 1):
        for lam in strict_partitions_of(n):
            res = hirota_apply(to_hirota(lam), tau, tau)
            records.append(ProbeRecord(lam, lam.is_even(), res))
    return ProbeReport(tuple(records), max_weight)
