"""The value group Z^k under lexicographic order, with an adjoined infinity.

Ranks 1 and 2 are what the rest of the toolkit uses: rank 1 covers every
discrete-valuation example, rank 2 exists to make a genuinely ramified
(non-finitely-generated) lattice reachable.  Infinity is a first-class
variant so that the value of zero is type-safe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, DomainError, ParseError

LT, EQ, GT = -1, 0, 1

SUPPORTED_RANKS = (1, 2)


@dataclass(frozen=True)
class GroupElement:
    """Element of Z^rank (coords a tuple), or infinity (coords None)."""

    rank: int
    coords: tuple[int, ...] | None

    def __post_init__(self):
        if self.rank not in SUPPORTED_RANKS:
            raise DimensionError(f"unsupported rank {self.rank}")
        if self.coords is not None:
            if len(self.coords) != self.rank:
                raise DimensionError(
                    f"{len(self.coords)} coordinates for rank {self.rank}"
                )
            object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: int) -> "GroupElement":
        return cls(len(coords), tuple(coords))

    @classmethod
    def zero(cls, rank: int) -> "GroupElement":
        return cls(rank, (0,) * rank)

    @classmethod
    def infinity(cls, rank: int) -> "GroupElement":
        return cls(rank, None)

    @classmethod
    def unit(cls, rank: int, axis: int) -> "GroupElement":
        coords = [0] * rank
        coords[axis] = 1
        return cls(rank, tuple(coords))

    @property
    def is_infinite(self) -> bool:
        return self.coords is None

    def __add__(self, other: "GroupElement") -> "GroupElement":
        _check_rank(self, other)
        if self.is_infinite or other.is_infinite:
            return GroupElement.infinity(self.rank)
        return GroupElement(
            self.rank, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroupElement":
        if self.is_infinite:
            raise DomainError("infinity has no negative")
        return GroupElement(self.rank, tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scaled(self, n: int) -> "GroupElement":
        if self.is_infinite:
            if n == 0:
                raise DomainError("0 * infinity is undefined")
            return self
        return GroupElement(self.rank, tuple(n * a for a in self.coords))

    def __lt__(self, other):
        return lex_compare(self, other) == LT

    def __le__(self, other):
        return lex_compare(self, other) != GT

    def __gt__(self, other):
        return lex_compare(self, other) == GT

    def __ge__(self, other):
        return lex_compare(self, other) != LT

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    @classmethod
    def parse(cls, text: str, rank: int) -> "GroupElement":
        """Parse the textual form "(a,b)" / "(a)" / "inf"."""
        s = text.strip()
        if s == "inf":
            return cls.infinity(rank)
        if not (s.startswith("(") and s.endswith(")")):
            raise ParseError(f"not a group element: {text!r}")
        body = s[1:-1]
        try:
            coords = tuple(int(part.strip()) for part in body.split(","))
        except ValueError:
            raise ParseError(f"not a group element: {text!r}") from None
        if len(coords) != rank:
            raise DimensionError(f"{len(coords)} coordinates for rank {rank}")
        return cls(rank, coords)


def _check_rank(a: GroupElement, b: GroupElement):
    if a.rank != b.rank:
        raise DimensionError(f"rank mismatch: {a.rank} vs {b.rank}")


def lex_compare(a: GroupElement, b: GroupElement) -> int:
    """Total order: lexicographic on coordinates, infinity on top.

    Returns LT, EQ or GT (-1, 0, 1).
    """
    _check_rank(a, b)
    if a.is_infinite:
        return EQ if b.is_infinite else GT
    if b.is_infinite:
        return LT
    if a.coords < b.coords:
        return LT
    if a.coords > b.coords:
        return GT
    return EQ


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def neg(a: GroupElement) -> GroupElement:
    return -a
