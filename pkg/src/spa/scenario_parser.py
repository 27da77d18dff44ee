"""Parser and printer for the scenario description language.

One directive per line; ``#`` starts a comment.  Identifiers must be
declared before use.  Example::

    levels 8
    profile hybrid

    principal A : a
    principal tgs

    atom T1 timestamp
    atom Na nonce
    atom Ktgs key owners tgs
    atom Ka key inverse Ka'          # asymmetric pair Ka / Ka'

    assume A : Ka' -> private
    assume * : a -> public           # one assumption per principal

    phase policy
    invent A Na
    send A -> tgs : (a, Na)

    phase trace
    send A -> tgs : (a, Na) intercepted C
    cryptanalyse C : Na from (a, Na)

The ``levels`` directive is mandatory and unique.  The policy phase must
precede the trace phase and may not contain interception or cryptanalysis.
"""

from __future__ import annotations

import re

from .entailment import profile_from_name
from .levels import Level, parse_level
from .messages import (
    Atom,
    Atomic,
    Message,
    MessageParseError,
    format_message,
    parse_message,
)
from .scenario import Cryptanalyse, Event, Invent, Scenario, ScenarioError, Send

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_+']*$")

RESERVED_WORDS = frozenset(
    {
        "levels",
        "profile",
        "principal",
        "atom",
        "assume",
        "phase",
        "policy",
        "trace",
        "invent",
        "send",
        "cryptanalyse",
        "intercepted",
        "owners",
        "inverse",
        "from",
        "key",
        "agent",
        "nonce",
        "timestamp",
    }
)


class ScenarioParseError(ValueError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class _State:
    def __init__(self, name: str):
        self.name = name
        self.n: int | None = None
        self.profile: str | None = None
        self.principals: dict[str, str] = {}
        self.atoms: dict[str, Atom] = {}
        self.assumptions: list[tuple[str, Message, Level]] = []
        self.policy_events: list[Event] = []
        self.trace_events: list[Event] = []
        self.phase: str | None = None


def _check_ident(state: _State, line_no: int, name: str, what: str) -> str:
    if not _IDENT_RE.match(name):
        raise ScenarioParseError(line_no, f"malformed {what} name {name!r}")
    if name in RESERVED_WORDS:
        raise ScenarioParseError(line_no, f"{name!r} is a reserved word")
    return name


def _declare_atom(state: _State, line_no: int, atom: Atom) -> None:
    if atom.name in state.atoms:
        raise ScenarioParseError(line_no, f"atom {atom.name!r} declared twice")
    state.atoms[atom.name] = atom


def _need_principal(state: _State, line_no: int, name: str) -> str:
    if name not in state.principals:
        raise ScenarioParseError(line_no, f"undeclared principal {name!r}")
    return name


def _parse_msg(state: _State, line_no: int, text: str) -> Message:
    try:
        return parse_message(text, state.atoms)
    except MessageParseError as exc:
        raise ScenarioParseError(line_no, str(exc)) from exc


def _directive_levels(state: _State, line_no: int, rest: str) -> None:
    if state.n is not None:
        raise ScenarioParseError(line_no, "duplicate levels directive")
    try:
        n = int(rest.strip())
    except ValueError:
        raise ScenarioParseError(line_no, f"levels wants an integer, got {rest!r}")
    if n < 1:
        raise ScenarioParseError(line_no, "levels must be at least 1")
    state.n = n


def _directive_profile(state: _State, line_no: int, rest: str) -> None:
    if state.profile is not None:
        raise ScenarioParseError(line_no, "duplicate profile directive")
    name = rest.strip()
    try:
        profile_from_name(name)
    except ValueError as exc:
        raise ScenarioParseError(line_no, str(exc)) from exc
    state.profile = name


def _directive_principal(state: _State, line_no: int, rest: str) -> None:
    if ":" in rest:
        name, _, agent = rest.partition(":")
        name, agent = name.strip(), agent.strip()
    else:
        name = agent = rest.strip()
    _check_ident(state, line_no, name, "principal")
    _check_ident(state, line_no, agent, "agent atom")
    if name in state.principals:
        raise ScenarioParseError(line_no, f"principal {name!r} declared twice")
    if agent not in state.atoms:
        _declare_atom(state, line_no, Atom(name=agent, kind="agent"))
    elif state.atoms[agent].kind != "agent":
        raise ScenarioParseError(line_no, f"{agent!r} is not an agent atom")
    state.principals[name] = agent


def _split_owners(
    state: _State, line_no: int, words: list[str]
) -> tuple[list[str], frozenset[str]]:
    if "owners" not in words:
        return words, frozenset()
    i = words.index("owners")
    owners = words[i + 1 :]
    if not owners:
        raise ScenarioParseError(line_no, "owners clause without principals")
    for owner in owners:
        _need_principal(state, line_no, owner)
    return words[:i], frozenset(owners)


def _directive_atom(state: _State, line_no: int, rest: str) -> None:
    words = rest.split()
    if len(words) < 2:
        raise ScenarioParseError(line_no, "atom wants a name and a kind")
    words, owners = _split_owners(state, line_no, words)
    name = _check_ident(state, line_no, words[0], "atom")
    kind = words[1]
    inverse_name: str | None = None
    if len(words) >= 3:
        if kind != "key" or words[2] != "inverse" or len(words) != 4:
            raise ScenarioParseError(line_no, f"malformed atom directive {rest!r}")
        inverse_name = _check_ident(state, line_no, words[3], "inverse key")
    try:
        if kind == "key" and inverse_name is not None:
            _declare_atom(
                state,
                line_no,
                Atom(name, "key", symmetric=False, inverse_name=inverse_name, owners=owners),
            )
            _declare_atom(
                state,
                line_no,
                Atom(inverse_name, "key", symmetric=False, inverse_name=name, owners=owners),
            )
        else:
            _declare_atom(state, line_no, Atom(name, kind, owners=owners))
    except ValueError as exc:
        raise ScenarioParseError(line_no, str(exc)) from exc


def _directive_assume(state: _State, line_no: int, rest: str) -> None:
    if state.phase is not None:
        raise ScenarioParseError(line_no, "assumptions must precede the phases")
    who, sep, tail = rest.partition(":")
    if not sep:
        raise ScenarioParseError(line_no, "assume wants 'principal : message -> level'")
    who = who.strip()
    msg_text, sep, level_text = tail.rpartition("->")
    if not sep:
        raise ScenarioParseError(line_no, "assume wants 'message -> level'")
    if state.n is None:
        raise ScenarioParseError(line_no, "the levels directive must come first")
    message = _parse_msg(state, line_no, msg_text.strip())
    try:
        level = parse_level(level_text.strip(), state.n)
    except ValueError as exc:
        raise ScenarioParseError(line_no, str(exc)) from exc
    principals = (
        list(state.principals) if who == "*" else [_need_principal(state, line_no, who)]
    )
    for principal in principals:
        state.assumptions.append((principal, message, level))


def _directive_phase(state: _State, line_no: int, rest: str) -> None:
    name = rest.strip()
    if name not in ("policy", "trace"):
        raise ScenarioParseError(line_no, f"unknown phase {name!r}")
    if name == "policy" and state.phase is not None:
        raise ScenarioParseError(line_no, "the policy phase must come first")
    if name == "trace" and state.phase == "trace":
        raise ScenarioParseError(line_no, "duplicate trace phase")
    state.phase = name


def _current_events(state: _State, line_no: int) -> list[Event]:
    if state.phase is None:
        raise ScenarioParseError(line_no, "events must appear inside a phase")
    return state.policy_events if state.phase == "policy" else state.trace_events


def _directive_invent(state: _State, line_no: int, rest: str) -> None:
    words = rest.split()
    if len(words) < 2:
        raise ScenarioParseError(line_no, "invent wants 'principal atom'")
    words, owners = _split_owners(state, line_no, words)
    if len(words) != 2:
        raise ScenarioParseError(line_no, f"malformed invent directive {rest!r}")
    principal = _need_principal(state, line_no, words[0])
    atom = state.atoms.get(words[1])
    if atom is None:
        raise ScenarioParseError(line_no, f"undeclared atom {words[1]!r}")
    _current_events(state, line_no).append(
        Invent(principal=principal, message=Atomic(atom), owners=owners)
    )


def _directive_send(state: _State, line_no: int, rest: str) -> None:
    head, sep, msg_text = rest.partition(":")
    if not sep:
        raise ScenarioParseError(line_no, "send wants 'A -> B : message'")
    sender, arrow, addressee = head.partition("->")
    if not arrow:
        raise ScenarioParseError(line_no, "send wants 'A -> B : message'")
    sender = _need_principal(state, line_no, sender.strip())
    addressee = _need_principal(state, line_no, addressee.strip())
    interceptor: str | None = None
    words = msg_text.split()
    if len(words) >= 2 and words[-2] == "intercepted":
        interceptor = _need_principal(state, line_no, words[-1])
        msg_text = msg_text.rsplit("intercepted", 1)[0]
    message = _parse_msg(state, line_no, msg_text.strip())
    _current_events(state, line_no).append(
        Send(sender=sender, addressee=addressee, message=message, interceptor=interceptor)
    )


def _directive_cryptanalyse(state: _State, line_no: int, rest: str) -> None:
    who, sep, tail = rest.partition(":")
    if not sep:
        raise ScenarioParseError(line_no, "cryptanalyse wants 'C : learned from source'")
    principal = _need_principal(state, line_no, who.strip())
    parts = re.split(r"\bfrom\b", tail, maxsplit=1)
    if len(parts) != 2:
        raise ScenarioParseError(line_no, "cryptanalyse wants 'learned from source'")
    learned = _parse_msg(state, line_no, parts[0].strip())
    source = _parse_msg(state, line_no, parts[1].strip())
    _current_events(state, line_no).append(
        Cryptanalyse(principal=principal, learned=learned, source=source)
    )


_DIRECTIVES = {
    "levels": _directive_levels,
    "profile": _directive_profile,
    "principal": _directive_principal,
    "atom": _directive_atom,
    "assume": _directive_assume,
    "phase": _directive_phase,
    "invent": _directive_invent,
    "send": _directive_send,
    "cryptanalyse": _directive_cryptanalyse,
}


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    state = _State(name)
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        handler = _DIRECTIVES.get(word)
        if handler is None:
            raise ScenarioParseError(line_no, f"unknown directive {word!r}")
        handler(state, line_no, rest)
    if state.n is None:
        raise ScenarioParseError(0, "missing mandatory levels directive")
    try:
        return Scenario(
            name=name,
            principals=state.principals,
            atoms=state.atoms,
            assumptions=tuple(state.assumptions),
            policy_events=tuple(state.policy_events),
            trace_events=tuple(state.trace_events),
            n=state.n,
            profile=state.profile or "hybrid",
        )
    except ScenarioError as exc:
        raise ScenarioParseError(0, str(exc)) from exc


def parse_scenario_file(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_scenario(text, name=path)


def _format_event(ev: Event) -> str:
    if isinstance(ev, Invent):
        owners = " owners " + " ".join(sorted(ev.owners)) if ev.owners else ""
        return f"invent {ev.principal} {format_message(ev.message)}{owners}"
    if isinstance(ev, Send):
        intercepted = f" intercepted {ev.interceptor}" if ev.interceptor else ""
        return (
            f"send {ev.sender} -> {ev.addressee} : "
            f"{format_message(ev.message)}{intercepted}"
        )
    return (
        f"cryptanalyse {ev.principal} : {format_message(ev.learned)} "
        f"from {format_message(ev.source)}"
    )


def format_scenario(s: Scenario) -> str:
    """Print a scenario back into the directive language; reparses equal."""
    lines = [f"levels {s.n}", f"profile {s.profile}", ""]
    for principal, agent in s.principals.items():
        lines.append(f"principal {principal} : {agent}")
    lines.append("")
    emitted_inverses: set[str] = set()
    for atom in s.atoms.values():
        if atom.name in emitted_inverses:
            continue
        if atom.kind == "agent" and atom.name in s.principals.values():
            continue
        owners = " owners " + " ".join(sorted(atom.owners)) if atom.owners else ""
        if atom.kind == "key" and not atom.symmetric:
            lines.append(f"atom {atom.name} key inverse {atom.inverse_name}{owners}")
            emitted_inverses.add(atom.inverse_name or "")
        else:
            lines.append(f"atom {atom.name} {atom.kind}{owners}")
    lines.append("")
    for principal, message, level in s.assumptions:
        lines.append(f"assume {principal} : {format_message(message)} -> {level.token}")
    lines.append("")
    lines.append("phase policy")
    lines.extend(_format_event(ev) for ev in s.policy_events)
    lines.append("")
    lines.append("phase trace")
    lines.extend(_format_event(ev) for ev in s.trace_events)
    return "\n".join(lines) + "\n"
