"""Generic c-semiring descriptions and an executable law checker.

The security instance drives protocol analysis; the fuzzy and boolean
instances exist so the constraint engine can be validated against small
known problems.  ``check_semiring_laws`` replaces a pencil proof: it tests
every c-semiring law exhaustively on a finite sample and returns the
violations it finds (an empty report means the laws hold on the sample).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import levels
from .levels import Level


@dataclass(frozen=True)
class SemiringSpec:
    """A semiring presented by its two operations and distinguished elements.

    ``plus`` must be commutative, associative and idempotent with ``zero``
    as unit and ``one`` absorbing; ``times`` must be commutative,
    associative, distribute over ``plus``, have ``one`` as unit and ``zero``
    absorbing.
    """

    name: str
    plus: Callable[[Any, Any], Any] = field(compare=False)
    times: Callable[[Any, Any], Any] = field(compare=False)
    zero: Any
    one: Any
    carrier: str = ""

    def plus_fold(self, values: Sequence[Any]) -> Any:
        acc = self.zero
        for v in values:
            acc = self.plus(acc, v)
        return acc

    def times_fold(self, values: Sequence[Any]) -> Any:
        acc = self.one
        for v in values:
            acc = self.times(acc, v)
        return acc


@dataclass(frozen=True)
class LawViolation:
    law: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.law} violated at {self.witness!r}"


FUZZY = SemiringSpec(
    name="fuzzy",
    plus=max,
    times=min,
    zero=0.0,
    one=1.0,
    carrier="[0, 1]",
)

BOOLEAN = SemiringSpec(
    name="boolean",
    plus=lambda a, b: a or b,
    times=lambda a, b: a and b,
    zero=False,
    one=True,
    carrier="{false, true}",
)


def security_semiring(n: int) -> SemiringSpec:
    """The security instance over the n-sized level lattice."""
    return SemiringSpec(
        name=f"security({n})",
        plus=levels.plus,
        times=levels.times,
        zero=levels.public(n),
        one=levels.unknown(n),
        carrier=f"levels with {n} traded steps",
    )


def security_carrier(n: int) -> list[Level]:
    return levels.all_levels(n)


def check_semiring_laws(spec: SemiringSpec, sample: Sequence[Any]) -> list[LawViolation]:
    """Exhaustively test the c-semiring laws on all pairs/triples of sample.

    Violations are returned as data, never raised; an empty list means the
    structure behaves as a c-semiring on the sample.
    """
    if not sample:
        raise ValueError("sample must be non-empty")
    out: list[LawViolation] = []
    p, t = spec.plus, spec.times

    for a in sample:
        if p(a, a) != a:
            out.append(LawViolation("plus-idempotence", (a,)))
        if p(spec.zero, a) != a:
            out.append(LawViolation("zero-unit-of-plus", (a,)))
        if p(spec.one, a) != spec.one:
            out.append(LawViolation("one-absorbs-plus", (a,)))
        if t(spec.one, a) != a:
            out.append(LawViolation("one-unit-of-times", (a,)))
        if t(spec.zero, a) != spec.zero:
            out.append(LawViolation("zero-absorbs-times", (a,)))

    for a in sample:
        for b in sample:
            if p(a, b) != p(b, a):
                out.append(LawViolation("plus-commutativity", (a, b)))
            if t(a, b) != t(b, a):
                out.append(LawViolation("times-commutativity", (a, b)))

    for a in sample:
        for b in sample:
            for c in sample:
                if p(p(a, b), c) != p(a, p(b, c)):
                    out.append(LawViolation("plus-associativity", (a, b, c)))
                if t(t(a, b), c) != t(a, t(b, c)):
                    out.append(LawViolation("times-associativity", (a, b, c)))
                if t(a, p(b, c)) != p(t(a, b), t(a, c)):
                    out.append(LawViolation("times-distributes-over-plus", (a, b, c)))
    return out
