"""Degrees: elements of N^k with the coordinatewise lattice structure."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator


class DegreeError(ValueError):
    pass


class Degree:
    """An element of N^k.

    Degrees are immutable and hashable.  ``<=`` is the coordinatewise partial
    order (like set inclusion, two degrees may be incomparable), ``+`` and
    ``-`` are coordinatewise, and ``|`` / ``&`` are join and meet.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[int]):
        values = tuple(int(c) for c in coords)
        if not values:
            raise DegreeError("a degree needs at least one coordinate")
        if any(c < 0 for c in values):
            raise DegreeError(f"negative coordinate in {values}")
        object.__setattr__(self, "coords", values)

    def __setattr__(self, name, value):
        raise AttributeError("Degree is immutable")

    @classmethod
    def zero(cls, rank: int) -> Degree:
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, color: int) -> Degree:
        """The basis vector e_color (colors are 1-based)."""
        if not 1 <= color <= rank:
            raise DegreeError(f"color {color} outside 1..{rank}")
        return cls(1 if i == color - 1 else 0 for i in range(rank))

    @classmethod
    def parse(cls, text: str) -> Degree:
        """Parse the comma-joined form used on the command line, e.g. ``"1,0"``."""
        try:
            return cls(int(part) for part in text.split(","))
        except ValueError as exc:
            raise DegreeError(f"malformed degree {text!r}") from exc

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def total(self) -> int:
        """The length |m| = m_1 + ... + m_k."""
        return sum(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> tuple[int, ...]:
        """Zero-based indices of the nonzero coordinates."""
        return tuple(i for i, c in enumerate(self.coords) if c)

    def _check(self, other: Degree) -> None:
        if not isinstance(other, Degree):
            raise TypeError(f"expected Degree, got {type(other).__name__}")
        if other.rank != self.rank:
            raise DegreeError(f"rank mismatch: {self} vs {other}")

    def join(self, other: Degree) -> Degree:
        self._check(other)
        return Degree(max(a, b) for a, b in zip(self.coords, other.coords))

    def meet(self, other: Degree) -> Degree:
        self._check(other)
        return Degree(min(a, b) for a, b in zip(self.coords, other.coords))

    __or__ = join
    __and__ = meet

    def __add__(self, other: Degree) -> Degree:
        self._check(other)
        return Degree(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: Degree) -> Degree:
        self._check(other)
        if not other <= self:
            raise DegreeError(f"{self} - {other} leaves N^k")
        return Degree(a - b for a, b in zip(self.coords, other.coords))

    def __mul__(self, factor: int) -> Degree:
        return Degree(factor * c for c in self.coords)

    __rmul__ = __mul__

    def __le__(self, other: Degree) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __ge__(self, other: Degree) -> bool:
        return other <= self

    def __lt__(self, other: Degree) -> bool:
        return self <= other and self != other

    def __gt__(self, other: Degree) -> bool:
        return other < self

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Degree) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(("Degree", self.coords))

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, index: int) -> int:
        return self.coords[index]

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)

    def __repr__(self) -> str:
        return f"Degree({self})"

    def sort_key(self) -> tuple:
        """Total order used for deterministic enumeration: length, then lexicographic."""
        return (self.total, self.coords)


def degree_join(m: Degree, n: Degree) -> Degree:
    return m.join(n)


def degree_meet(m: Degree, n: Degree) -> Degree:
    return m.meet(n)


def degree_le(m: Degree, n: Degree) -> bool:
    return m <= n


def degrees_upto(bound: Degree) -> list[Degree]:
    """All degrees ``p <= bound``, ordered by (|p|, lexicographic)."""
    ranges = [range(c + 1) for c in bound.coords]
    return sorted((Degree(p) for p in itertools.product(*ranges)), key=Degree.sort_key)


def degrees_between(low: Degree, high: Degree) -> list[Degree]:
    """All degrees ``low <= p <= high`` in enumeration order."""
    if not low <= high:
        return []
    return [low + p for p in degrees_upto(high - low)]
