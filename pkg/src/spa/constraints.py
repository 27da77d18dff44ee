"""Soft constraints over principals, and the problems built from them.

A constraint maps tuples of domain values (one per variable in ``con``) to
semiring values; tuples not listed explicitly take the ``default``.  The
generic operations — :func:`combine`, :func:`project`, :func:`solution` —
implement the textbook semantics by enumeration over the bounded domain and
are meant for small validation problems (the fuzzy instance).

Protocol analysis never combines whole problems.  It asks for one
principal's slice instead: :func:`principal_view` evaluates every
constraint with all other variables pinned to the empty message, which
makes a received binary constraint contribute its level to the receiver
while leaving the sender untouched.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

from .levels import Level, SemiringMismatchError
from .levels import unknown as level_unknown
from .messages import EMPTY, Message, MessageUniverse
from .semiring import SemiringSpec


class UnknownPrincipalError(KeyError):
    """A query named a principal the problem does not know about."""


@dataclass(frozen=True)
class Constraint:
    """A tuple-valued soft constraint.

    ``origin`` records which scenario step produced the constraint (for
    reports and tests); it does not affect the constraint's meaning.
    """

    con: tuple[str, ...]
    table: Mapping[tuple, Any]
    default: Any
    origin: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.con)

    def value(self, assignment: tuple) -> Any:
        if len(assignment) != self.arity:
            raise ValueError(
                f"tuple arity {len(assignment)} does not match con {self.con}"
            )
        return self.table.get(assignment, self.default)


def all_one_constraint(con: tuple[str, ...], semiring: SemiringSpec) -> Constraint:
    return Constraint(con=con, table={}, default=semiring.one)


@dataclass(frozen=True)
class SCSP:
    """A soft constraint problem with its variables of interest."""

    constraints: tuple[Constraint, ...]
    con: tuple[str, ...]
    variables: tuple[str, ...]
    domain: tuple
    semiring: SemiringSpec
    n: int | None = None
    universe: MessageUniverse | None = None
    agent_atoms: Mapping[str, str] = field(default_factory=dict)
    scenario_name: str = ""

    def __post_init__(self) -> None:
        missing = [v for v in self.con if v not in self.variables]
        if missing:
            raise ValueError(f"variables of interest {missing} not declared")
        for c in self.constraints:
            bad = [v for v in c.con if v not in self.variables]
            if bad:
                raise ValueError(f"constraint scope {bad} not declared")

    def with_constraint(self, c: Constraint) -> "SCSP":
        return SCSP(
            constraints=self.constraints + (c,),
            con=self.con,
            variables=self.variables,
            domain=self.domain,
            semiring=self.semiring,
            n=self.n,
            universe=self.universe,
            agent_atoms=self.agent_atoms,
            scenario_name=self.scenario_name,
        )

    def binary_constraints(self) -> list[Constraint]:
        return [c for c in self.constraints if c.arity == 2]


def _merge_con(con1: tuple[str, ...], con2: tuple[str, ...]) -> tuple[str, ...]:
    return con1 + tuple(v for v in con2 if v not in con1)


def combine(
    c1: Constraint, c2: Constraint, semiring: SemiringSpec, domain: Sequence
) -> Constraint:
    """Multiply two constraints into one over the union of their scopes.

    Enumerates the full domain product over the merged scope, then drops
    entries equal to the combined default; intended for small domains.
    """
    con = _merge_con(c1.con, c2.con)
    pos1 = [con.index(v) for v in c1.con]
    pos2 = [con.index(v) for v in c2.con]
    default = semiring.times(c1.default, c2.default)
    table: dict[tuple, Any] = {}
    for t in itertools.product(domain, repeat=len(con)):
        v = semiring.times(
            c1.value(tuple(t[i] for i in pos1)), c2.value(tuple(t[i] for i in pos2))
        )
        if v != default:
            table[t] = v
    return Constraint(con=con, table=table, default=default)


def project(
    c: Constraint, keep: Iterable[str], semiring: SemiringSpec, domain: Sequence
) -> Constraint:
    """Sum a constraint down to the variables in ``keep``.

    Each reduced tuple takes the plus-fold over all of its extensions; the
    sparse table stays exact because plus is idempotent, so the default only
    needs to join in once whenever some extension is implicit.
    """
    keep_set = set(keep)
    con = tuple(v for v in c.con if v in keep_set)
    dropped = [i for i, v in enumerate(c.con) if v not in keep_set]
    if not dropped:
        return Constraint(con=con, table=dict(c.table), default=c.default)
    keep_idx = [i for i, v in enumerate(c.con) if v in keep_set]

    groups: dict[tuple, list] = {}
    for t, v in c.table.items():
        reduced = tuple(t[i] for i in keep_idx)
        groups.setdefault(reduced, []).append(v)

    total_extensions = len(domain) ** len(dropped)
    table: dict[tuple, Any] = {}
    for reduced, values in groups.items():
        acc = values[0]
        for v in values[1:]:
            acc = semiring.plus(acc, v)
        if len(values) < total_extensions:
            acc = semiring.plus(acc, c.default)
        if acc != c.default:
            table[reduced] = acc
    return Constraint(con=con, table=table, default=c.default)


def solution(p: SCSP) -> Constraint:
    """Combine every constraint of the problem and project on its con."""
    if not p.constraints:
        return all_one_constraint(p.con, p.semiring)
    acc = p.constraints[0]
    for c in p.constraints[1:]:
        acc = combine(acc, c, p.semiring, p.domain)
    return project(acc, p.con, p.semiring, p.domain)


@dataclass(frozen=True)
class LevelMap:
    """One principal's security level for every message of the universe.

    Stored sparsely: messages without an entry sit at unknown.
    """

    owner: str
    universe: MessageUniverse
    n: int
    entries: Mapping[Message, Level] = field(default_factory=dict)

    def get(self, m: Message) -> Level:
        level = self.entries.get(m)
        return level if level is not None else level_unknown(self.n)

    def items(self) -> Iterable[tuple[Message, Level]]:
        for m in self.universe:
            yield m, self.get(m)

    def known_items(self) -> Iterable[tuple[Message, Level]]:
        for m, level in self.items():
            if level.is_known:
                yield m, level

    def replace(self, entries: Mapping[Message, Level]) -> "LevelMap":
        pruned = {m: v for m, v in entries.items() if v.is_known}
        return LevelMap(self.owner, self.universe, self.n, pruned)

    def pointwise_leq(self, other: "LevelMap") -> bool:
        """True iff this map sits at-or-below the other at every message."""
        self._check(other)
        for m in set(self.entries) | set(other.entries):
            if not self.get(m) <= other.get(m):
                return False
        return True

    def same_levels(self, other: "LevelMap") -> bool:
        self._check(other)
        mine = {m: v for m, v in self.entries.items() if v.is_known}
        theirs = {m: v for m, v in other.entries.items() if v.is_known}
        return mine == theirs

    def _check(self, other: "LevelMap") -> None:
        if self.n != other.n:
            raise SemiringMismatchError(
                f"level maps built for n={self.n} and n={other.n}"
            )
        if self.universe.messages != other.universe.messages:
            raise ValueError("level maps over different universes")


def principal_view(
    p: SCSP,
    principal: str,
    constraint_filter: Callable[[Constraint], bool] | None = None,
) -> LevelMap:
    """A principal's level map induced by the problem's constraints.

    For each universe message ``m``, evaluate every constraint at the
    assignment that maps the principal to ``m`` and every other variable to
    the empty message, and times-fold the results.  Unary constraints on the
    principal contribute their table entry for ``m``; binary constraints
    contribute their level exactly when the principal sits in the receiving
    coordinate; all other constraints are neutral.
    """
    if principal not in p.variables:
        raise UnknownPrincipalError(principal)
    if p.universe is None or p.n is None:
        raise ValueError("principal_view needs a protocol problem")
    sr = p.semiring
    entries: dict[Message, Level] = {}
    relevant = [
        c
        for c in p.constraints
        if principal in c.con and (constraint_filter is None or constraint_filter(c))
    ]
    for m in p.universe:
        acc = sr.one
        for c in relevant:
            assignment = tuple(m if v == principal else EMPTY for v in c.con)
            acc = sr.times(acc, c.value(assignment))
        if acc != sr.one:
            entries[m] = acc
    return LevelMap(principal, p.universe, p.n, entries)
