"""Protocol scenarios and the builders that turn them into SCSPs.

A scenario declares principals, atoms and initial assumptions, then two
event sequences: the policy run (the benign sessions the designers
prescribe) and the trace (an observed network history, which may add
interception and cryptanalysis).  Both sequences are folded over the same
initial problem by :func:`process_event`:

* an invent event appends a unary constraint giving the fresh atom level
  private for its creator;
* a send event computes the sender's settled view, degrades the sent
  message's level by the risk function and appends a binary constraint
  between the sender and whoever actually received the message (the
  interceptor when there is one);
* a cryptanalysis event appends a unary constraint giving the learnt
  message level private for the analyst.

The sender's own view is never changed by its send: the binary constraint
stores the level in the tuple whose sender coordinate is the empty message,
which only the receiver's slice can see.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .constraints import SCSP, Constraint, principal_view
from .entailment import HYBRID, RuleProfile, entail_closure, profile_from_name
from .levels import Level, private, public, unknown
from .messages import (
    EMPTY,
    Atom,
    Atomic,
    Message,
    MessageUniverse,
    format_message,
    is_subterm,
    subterm_closure,
)
from .risk import DEFAULT_RISK, RiskFunction
from .semiring import security_semiring


class ScenarioError(ValueError):
    """A scenario is internally inconsistent."""


class PolicyViolationError(ScenarioError):
    """An event asks a principal to do something it cannot."""


@dataclass(frozen=True)
class Invent:
    principal: str
    message: Message
    owners: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Send:
    sender: str
    addressee: str
    message: Message
    interceptor: str | None = None

    @property
    def receiver(self) -> str:
        """Who actually got the message."""
        return self.interceptor or self.addressee


@dataclass(frozen=True)
class Cryptanalyse:
    principal: str
    learned: Message
    source: Message


Event = Invent | Send | Cryptanalyse


@dataclass(frozen=True)
class Scenario:
    """A declarative protocol description.

    ``principals`` maps each principal to its agent atom name.  Assumption
    levels may only use public, private and unknown; traded levels appear
    only once events start degrading messages.
    """

    name: str
    principals: Mapping[str, str]
    atoms: Mapping[str, Atom]
    assumptions: tuple[tuple[str, Message, Level], ...] = ()
    policy_events: tuple[Event, ...] = ()
    trace_events: tuple[Event, ...] = ()
    n: int = 8
    profile: str = HYBRID.name

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", _with_invent_owners(self.atoms, self))
        _validate(self)

    @property
    def rule_profile(self) -> RuleProfile:
        return profile_from_name(self.profile)

    def agent_atom(self, principal: str) -> Atom:
        return self.atoms[self.principals[principal]]

    def events(self) -> Iterable[Event]:
        yield from self.policy_events
        yield from self.trace_events


def _with_invent_owners(
    atoms: Mapping[str, Atom], s: Scenario
) -> Mapping[str, Atom]:
    """Fold owner clauses of invent events into the atom table."""
    table = dict(atoms)
    for ev in tuple(s.policy_events) + tuple(s.trace_events):
        if isinstance(ev, Invent) and ev.owners and isinstance(ev.message, Atomic):
            atom = table[ev.message.atom.name]
            table[atom.name] = replace(atom, owners=atom.owners | ev.owners)
    return table


def _validate(s: Scenario) -> None:
    if not s.principals:
        raise ScenarioError("a scenario needs at least one principal")
    for principal, atom_name in s.principals.items():
        atom = s.atoms.get(atom_name)
        if atom is None or atom.kind != "agent":
            raise ScenarioError(
                f"principal {principal} needs a declared agent atom, got {atom_name!r}"
            )
    for atom in s.atoms.values():
        if atom.kind == "key" and not atom.symmetric:
            partner = s.atoms.get(atom.inverse_name or "")
            if partner is None or partner.inverse_name != atom.name:
                raise ScenarioError(
                    f"key {atom.name} and its inverse are not a declared pair"
                )
        for owner in atom.owners:
            if owner not in s.principals:
                raise ScenarioError(
                    f"atom {atom.name} owned by undeclared principal {owner!r}"
                )

    allowed = {unknown(s.n), private(s.n), public(s.n)}
    seen: set[tuple[str, Message]] = set()
    for principal, message, level in s.assumptions:
        if principal not in s.principals:
            raise ScenarioError(f"assumption for undeclared principal {principal!r}")
        if level not in allowed:
            raise ScenarioError(
                f"assumption level must be public, private or unknown, got {level.token}"
            )
        if (principal, message) in seen:
            raise ScenarioError(
                f"duplicate assumption for {principal} on {format_message(message)}"
            )
        seen.add((principal, message))

    for ev in s.policy_events:
        if isinstance(ev, Cryptanalyse):
            raise ScenarioError("cryptanalysis is not allowed in the policy run")
        if isinstance(ev, Send) and ev.interceptor is not None:
            raise ScenarioError("interception is not allowed in the policy run")
    _validate_events(s, s.policy_events, "policy")
    _validate_events(s, s.trace_events, "trace")


def _validate_events(s: Scenario, events: tuple[Event, ...], phase: str) -> None:
    assumed_known = {
        m.atom.name
        for _, m, level in s.assumptions
        if level.is_known and isinstance(m, Atomic)
    }
    invented: set[str] = set()
    for ev in events:
        for principal in _event_principals(ev):
            if principal not in s.principals:
                raise ScenarioError(
                    f"{phase} event names undeclared principal {principal!r}"
                )
        if isinstance(ev, Invent):
            if not isinstance(ev.message, Atomic):
                raise ScenarioError("only atoms can be invented")
            name = ev.message.atom.name
            if name in assumed_known or name in invented:
                raise ScenarioError(
                    f"{name} is already known and cannot be invented in the {phase} run"
                )
            invented.add(name)
        elif isinstance(ev, Send):
            if ev.sender == ev.addressee:
                raise ScenarioError(f"{ev.sender} cannot send to itself")
            if ev.interceptor in (ev.sender, ev.addressee):
                raise ScenarioError(
                    "the interceptor must differ from sender and addressee"
                )
        elif isinstance(ev, Cryptanalyse):
            if not is_subterm(ev.learned, ev.source):
                raise ScenarioError(
                    f"cryptanalysis must learn a subterm of its source, "
                    f"{format_message(ev.learned)} is not inside "
                    f"{format_message(ev.source)}"
                )


def _event_principals(ev: Event) -> tuple[str, ...]:
    if isinstance(ev, Invent):
        return (ev.principal,) + tuple(ev.owners)
    if isinstance(ev, Send):
        extra = (ev.interceptor,) if ev.interceptor else ()
        return (ev.sender, ev.addressee) + extra
    return (ev.principal,)


def event_messages(ev: Event) -> list[Message]:
    if isinstance(ev, Invent):
        return [ev.message]
    if isinstance(ev, Send):
        return [ev.message]
    return [ev.learned, ev.source]


def build_universe(s: Scenario) -> MessageUniverse:
    """The scenario's bounded domain: every term any event or assumption
    mentions, closed under subterms and key inversion."""
    seeds: list[Message] = [m for _, m, _ in s.assumptions]
    for ev in s.events():
        seeds.extend(event_messages(ev))
    return subterm_closure(s.atoms, seeds, provenance=s.name)


def build_initial_scsp(s: Scenario) -> SCSP:
    """One unary constraint per principal carrying its assumptions."""
    universe = build_universe(s)
    variables = tuple(s.principals)
    by_principal: dict[str, dict[tuple, Level]] = {p: {} for p in variables}
    for principal, message, level in s.assumptions:
        if level.is_known:
            by_principal[principal][(message,)] = level
    constraints = tuple(
        Constraint(
            con=(p,),
            table=by_principal[p],
            default=unknown(s.n),
            origin=("assume", p),
        )
        for p in variables
    )
    return SCSP(
        constraints=constraints,
        con=variables,
        variables=variables,
        domain=tuple(universe),
        semiring=security_semiring(s.n),
        n=s.n,
        universe=universe,
        agent_atoms=dict(s.principals),
        scenario_name=s.name,
    )


def process_event(
    p: SCSP,
    ev: Event,
    profile: RuleProfile = HYBRID,
    risk: RiskFunction = DEFAULT_RISK,
) -> SCSP:
    """Extend a problem with the constraint one event induces."""
    if p.n is None:
        raise ValueError("process_event needs a protocol problem")
    if isinstance(ev, Invent):
        c = Constraint(
            con=(ev.principal,),
            table={(ev.message,): private(p.n)},
            default=unknown(p.n),
            origin=("invent", ev.principal, ev.message),
        )
        return p.with_constraint(c)
    if isinstance(ev, Cryptanalyse):
        c = Constraint(
            con=(ev.principal,),
            table={(ev.learned,): private(p.n)},
            default=unknown(p.n),
            origin=("cryptanalyse", ev.principal, ev.learned, ev.source),
        )
        return p.with_constraint(c)

    view = entail_closure(principal_view(p, ev.sender), profile)
    level = view.get(ev.message)
    if not level.is_known:
        raise PolicyViolationError(
            f"{ev.sender} cannot send {format_message(ev.message)}: "
            f"its level is unknown to the sender"
        )
    newlevel = risk(level)
    c = Constraint(
        con=(ev.sender, ev.receiver),
        table={(EMPTY, ev.message): newlevel},
        default=unknown(p.n),
        origin=("send", ev.sender, ev.addressee, ev.message, ev.interceptor),
    )
    return p.with_constraint(c)


def _fold(
    s: Scenario,
    events: tuple[Event, ...],
    risk: RiskFunction,
    profile: RuleProfile | None,
) -> SCSP:
    p = build_initial_scsp(s)
    profile = profile if profile is not None else s.rule_profile
    for ev in events:
        p = process_event(p, ev, profile, risk)
    return p


def build_policy_scsp(
    s: Scenario,
    risk: RiskFunction = DEFAULT_RISK,
    profile: RuleProfile | None = None,
) -> SCSP:
    """The problem induced by the benign policy run."""
    return _fold(s, s.policy_events, risk, profile)


def build_imputable_scsp(
    s: Scenario,
    risk: RiskFunction = DEFAULT_RISK,
    profile: RuleProfile | None = None,
) -> SCSP:
    """The problem induced by the observed trace."""
    return _fold(s, s.trace_events, risk, profile)
