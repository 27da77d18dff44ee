"""Security levels and the operations of the security semiring.

A level is one point of the linear lattice

    unknown > private > traded_1 > ... > traded_n > public

stored canonically by rank: -1 for unknown, 0 for private, 1..n for the
traded levels and n+1 for public.  ``unknown`` means "nobody holds this
message", ``public`` means "everybody potentially does"; the more a message
travels, the larger its rank gets.

The two semiring operations are rank arithmetic:

    plus(a, b)  = level with rank min(rank(a), rank(b))   (the better one)
    times(a, b) = level with rank max(rank(a), rank(b))   (the worse one)

``plus`` is the lattice lub, ``times`` the glb, and ``leq`` is the induced
order: a <= b iff plus(a, b) == b, i.e. iff rank(a) >= rank(b).
"""

from __future__ import annotations

from dataclasses import dataclass


class SemiringMismatchError(ValueError):
    """Two levels built against different size parameters were combined."""


@dataclass(frozen=True)
class Level:
    """One security level of a lattice with ``n`` traded steps."""

    rank: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"lattice size must be positive, got n={self.n}")
        if not -1 <= self.rank <= self.n + 1:
            raise ValueError(
                f"rank {self.rank} outside [-1, {self.n + 1}] for n={self.n}"
            )

    @property
    def token(self) -> str:
        """Canonical textual form: unknown, private, traded_<i> or public."""
        if self.rank == -1:
            return "unknown"
        if self.rank == 0:
            return "private"
        if self.rank == self.n + 1:
            return "public"
        return f"traded_{self.rank}"

    @property
    def is_known(self) -> bool:
        """True iff the level is strictly below unknown."""
        return self.rank > -1

    def __repr__(self) -> str:
        return f"Level({self.token}, n={self.n})"

    def _check(self, other: "Level") -> None:
        if not isinstance(other, Level):
            raise TypeError(f"cannot compare Level with {type(other).__name__}")
        if self.n != other.n:
            raise SemiringMismatchError(
                f"levels built for n={self.n} and n={other.n} are not comparable"
            )

    # Rich comparisons implement the semiring order, so `v < unknown(n)`
    # reads as "v is strictly less secure than unknown".
    def __le__(self, other: "Level") -> bool:
        self._check(other)
        return self.rank >= other.rank

    def __lt__(self, other: "Level") -> bool:
        self._check(other)
        return self.rank > other.rank

    def __ge__(self, other: "Level") -> bool:
        self._check(other)
        return self.rank <= other.rank

    def __gt__(self, other: "Level") -> bool:
        self._check(other)
        return self.rank < other.rank


def unknown(n: int) -> Level:
    return Level(-1, n)


def private(n: int) -> Level:
    return Level(0, n)


def public(n: int) -> Level:
    return Level(n + 1, n)


def traded(i: int, n: int) -> Level:
    """The i-th traded level; i may take the alias ranks -1, 0 and n+1 too."""
    return Level(i, n)


def all_levels(n: int) -> list[Level]:
    """The full carrier, best (unknown) first."""
    return [Level(r, n) for r in range(-1, n + 2)]


def plus(a: Level, b: Level) -> Level:
    """Better of two levels: traded_i + traded_j = traded_min(i,j)."""
    a._check(b)
    return a if a.rank <= b.rank else b


def times(a: Level, b: Level) -> Level:
    """Worse of two levels: traded_i x traded_j = traded_max(i,j)."""
    a._check(b)
    return a if a.rank >= b.rank else b


def leq(a: Level, b: Level) -> bool:
    """Semiring order: true iff plus(a, b) == b."""
    return plus(a, b) == b


def parse_level(token: str, n: int) -> Level:
    """Parse one of the canonical tokens for a lattice of size n."""
    token = token.strip()
    if token == "unknown":
        return unknown(n)
    if token == "private":
        return private(n)
    if token == "public":
        return public(n)
    if token.startswith("traded_"):
        try:
            i = int(token[len("traded_"):])
        except ValueError:
            raise ValueError(f"malformed level token {token!r}") from None
        if not 1 <= i <= n:
            raise ValueError(f"traded index {i} outside 1..{n}")
        return traded(i, n)
    raise ValueError(f"unknown level token {token!r}")
