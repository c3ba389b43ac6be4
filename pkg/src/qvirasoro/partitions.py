"""Strict partitions, index sequences and the straightening calculus for Q-labels.

An index sequence is a plain tuple of integers.  ``straighten`` maps any such
sequence to ``sign * scalar * Q_lambda`` for a strict partition ``lambda``, or
to zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

IndexSequence = tuple[int, ...]


@dataclass(frozen=True, order=False)
class StrictPartition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be strictly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def is_even(self) -> bool:
        """True when every part is even (membership in ESP)."""
        return all(p % 2 == 0 for p in self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __lt__(self, other: "StrictPartition") -> bool:
        # plain tuple order; decreasing-lex listings sort with reverse=True
        return self.parts < other.parts

    def __repr__(self):
        return f"StrictPartition({self.parts})"

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "StrictPartition":
        return cls(tuple(data))


EMPTY = StrictPartition(())


@dataclass(frozen=True)
class StraightenResult:
    """Either zero, or ``sign * scalar * Q_partition``."""

    is_zero: bool
    sign: int = 0
    partition: StrictPartition | None = None
    scalar: Fraction = Fraction(0)

    @property
    def coefficient(self) -> Fraction:
        return self.sign * self.scalar

    @classmethod
    def zero(cls) -> "StraightenResult":
        return cls(True)


def _inversions(seq: Sequence[int]) -> int:
    # pairs out of decreasing order
    n = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] < seq[j]:
                n += 1
    return n


def straighten(seq: Sequence[int]) -> StraightenResult:
    """Normalise an arbitrary Q-index sequence.

    Steps, in order: a repeated positive entry gives zero; every pair
    ``{a, -a}`` is moved to the front as ``(a, -a)`` and contracted to the
    scalar ``(-1)**(a-1)``; any leftover negative entry gives zero; zeros
    are moved to the tail (keeping their order) and deleted; the rest is
    sorted decreasingly.  Each permutation contributes its sign.
    """
    seq = [int(s) for s in seq]
    positives = [s for s in seq if s > 0]
    if len(set(positives)) != len(positives):
        return StraightenResult.zero()

    sign = 1
    scalar = Fraction(1)
    while True:
        neg_pos = next((i for i, s in enumerate(seq) if s < 0), None)
        if neg_pos is None:
            break
        a = -seq[neg_pos]
        if a not in seq:
            return StraightenResult.zero()
        p = seq.index(a)
        # a to slot 0, then -a to slot 1
        if p:
            sign = -sign if p % 2 else sign
            seq.insert(0, seq.pop(p))
        r = seq.index(-a)
        if (r - 1) % 2:
            sign = -sign
        seq.pop(r)
        seq.pop(0)
        scalar *= -1 if a % 2 == 0 else 1

    nonzero_after = 0
    moves = 0
    for s in reversed(seq):
        if s == 0:
            moves += nonzero_after
        else:
            nonzero_after += 1
    if moves % 2:
        sign = -sign
    rest = [s for s in seq if s != 0]

    if _inversions(rest) % 2:
        sign = -sign
    return StraightenResult(False, sign, StrictPartition(tuple(sorted(rest, reverse=True))), scalar)


def shift_part(seq: Sequence[int], i: int, delta: int) -> IndexSequence:
    """Copy of ``seq`` with the 1-based entry ``i`` increased by ``delta``."""
    if not 1 <= i <= len(seq):
        raise IndexError(f"position {i} out of range for length {len(seq)}")
    out = list(seq)
    out[i - 1] += delta
    return tuple(out)


def _strict(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _strict(n - first, first - 1):
            yield (first,) + rest


def strict_partitions_of(n: int, even_only: bool = False) -> list[StrictPartition]:
    """All strict partitions of ``n`` in decreasing lexicographic order."""
    if n < 0:
        return []
    out = [StrictPartition(p) for p in _strict(n, n)]
    if even_only:
        out = [p for p in out if p.is_even()]
    return out
