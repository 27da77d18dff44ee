"""Risk assessment: how network exposure degrades a security level.

A risk function must be extensive (never improve a level) and monotone
(never swap the order of two levels).  The default steps a level one rank
down the lattice and leaves public fixed, which is the weakest useful
degradation: sending a message costs exactly one step of trust.

Risk is applied by the problem builders when a send event is processed,
never inside the entailment rules; folding it into the rules would make
the closure lower levels on every pass and destroy its idempotence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .levels import Level, all_levels, leq


@dataclass(frozen=True)
class RiskFunction:
    name: str
    apply: Callable[[Level], Level]

    def __call__(self, level: Level) -> Level:
        return self.apply(level)


def assess(level: Level) -> Level:
    """One step down the lattice; public is a fixed point."""
    if level.rank == level.n + 1:
        return level
    return Level(level.rank + 1, level.n)


DEFAULT_RISK = RiskFunction("step-down", assess)

IDENTITY_RISK = RiskFunction("identity", lambda level: level)


@dataclass(frozen=True)
class RiskViolation:
    prop: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.prop} violated at {self.witness!r}"


def validate_risk_function(f: RiskFunction, n: int) -> list[RiskViolation]:
    """Check extensivity and monotonicity exhaustively over the carrier."""
    out: list[RiskViolation] = []
    carrier = all_levels(n)
    for l1 in carrier:
        if not leq(f(l1), l1):
            out.append(RiskViolation("extensivity", (l1,)))
        for l2 in carrier:
            if leq(l1, l2) and not leq(f(l1), f(l2)):
                out.append(RiskViolation("monotonicity", (l1, l2)))
    return out
