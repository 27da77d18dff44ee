"""Symbolic protocol messages: atoms, concatenation and encryption.

Terms are immutable and compared structurally.  Concatenation is stored
right-nested, so ``(a, b, c)`` and ``(a, (b, c))`` parse to the same term;
the printer flattens a nested concatenation back into one component list.

Grammar accepted by :func:`parse_message` (whitespace-insensitive)::

    msg   := ident | "(" msg ("," msg)+ ")" | "{|" msg ("," msg)* "|}" ident
    ident := [A-Za-z_][A-Za-z0-9_+']*

The encryption key must be a declared key atom; scenario keys are always
atomic.  Two printers exist: :func:`format_message` emits the grammar above
and round-trips through the parser, :func:`functional_message` emits the
``enk``/``pair`` style used by the checker report (``{| n_a, n_b |}Ka``
becomes ``enk(k(a),pair(n_a,n_b))``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping


class MessageError(ValueError):
    """A message was used in a way its structure does not permit."""


class MessageParseError(ValueError):
    """Syntax or scoping problem in a message text; carries a position."""

    def __init__(self, text: str, pos: int, reason: str):
        self.pos = pos
        self.reason = reason
        super().__init__(f"{reason} at column {pos + 1} in {text!r}")


ATOM_KINDS = ("agent", "nonce", "timestamp", "key")


@dataclass(frozen=True)
class Atom:
    """A named atomic message.

    Keys carry their inversion metadata: a symmetric key is its own inverse,
    an asymmetric key names its partner atom.  ``owners`` lists the
    principals a key is associated with and feeds the speaks-about test.
    """

    name: str
    kind: str
    symmetric: bool = True
    inverse_name: str | None = None
    owners: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.kind not in ATOM_KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == "key":
            if self.symmetric and self.inverse_name not in (None, self.name):
                raise ValueError(f"symmetric key {self.name} cannot name an inverse")
            if not self.symmetric and not self.inverse_name:
                raise ValueError(f"asymmetric key {self.name} must name an inverse")
        elif self.inverse_name is not None:
            raise ValueError(f"{self.kind} atom {self.name} cannot carry an inverse")


class Message:
    """Base class for message terms; subclasses are frozen dataclasses."""

    __slots__ = ()

    def subterms(self) -> Iterator["Message"]:
        """Pre-order traversal: the term itself, then its components."""
        yield self

    def atoms(self) -> Iterator[Atom]:
        for sub in self.subterms():
            if isinstance(sub, Atomic):
                yield sub.atom


@dataclass(frozen=True)
class Empty(Message):
    """The empty message, used only as the idle coordinate of a constraint."""

    __slots__ = ()


@dataclass(frozen=True)
class Atomic(Message):
    atom: Atom

    __slots__ = ("atom",)


@dataclass(frozen=True)
class Concat(Message):
    left: Message
    right: Message

    __slots__ = ("left", "right")

    def subterms(self) -> Iterator[Message]:
        yield self
        yield from self.left.subterms()
        yield from self.right.subterms()


@dataclass(frozen=True)
class Encrypt(Message):
    body: Message
    key: Message

    __slots__ = ("body", "key")

    def subterms(self) -> Iterator[Message]:
        yield self
        yield from self.body.subterms()
        yield from self.key.subterms()


EMPTY = Empty()

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_+']*")


def concat_list(parts: list[Message]) -> Message:
    """Right-nest a component list into a single term."""
    if not parts:
        return EMPTY
    msg = parts[-1]
    for part in reversed(parts[:-1]):
        msg = Concat(part, msg)
    return msg


def concat_parts(m: Message) -> list[Message]:
    """Flatten right-nested concatenation back into its component list."""
    parts: list[Message] = []
    while isinstance(m, Concat):
        parts.append(m.left)
        m = m.right
    parts.append(m)
    return parts


def split_pairs(m: Message) -> list[tuple[Message, Message]]:
    """Head/tail decompositions of a concatenation; empty for other terms."""
    if isinstance(m, Concat):
        return [(m.left, m.right)]
    return []


def is_subterm(needle: Message, hay: Message) -> bool:
    return any(sub == needle for sub in hay.subterms())


def inverse(key: Message, atoms: Mapping[str, Atom]) -> Message:
    """The decryption partner of an atomic key: itself when symmetric."""
    if not isinstance(key, Atomic) or key.atom.kind != "key":
        raise MessageError(f"inverse of a non-key term: {format_message(key)}")
    if key.atom.symmetric:
        return key
    partner = atoms.get(key.atom.inverse_name or "")
    if partner is None:
        raise MessageError(
            f"key {key.atom.name} names undeclared inverse {key.atom.inverse_name!r}"
        )
    return Atomic(partner)


class _Parser:
    def __init__(self, text: str, atoms: Mapping[str, Atom]):
        self.text = text
        self.atoms = atoms
        self.pos = 0

    def error(self, reason: str, pos: int | None = None) -> MessageParseError:
        return MessageParseError(self.text, self.pos if pos is None else pos, reason)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def expect(self, token: str, reason: str) -> None:
        if not self.peek(token):
            raise self.error(reason)
        self.pos += len(token)

    def ident(self) -> tuple[str, int]:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an identifier")
        self.pos = m.end()
        return m.group(), m.start()

    def atom_ref(self) -> Atomic:
        name, start = self.ident()
        atom = self.atoms.get(name)
        if atom is None:
            raise self.error(f"unknown identifier {name!r}", start)
        return Atomic(atom)

    def message(self) -> Message:
        if self.peek("{|"):
            self.pos += 2
            parts = [self.message()]
            while self.peek(","):
                self.pos += 1
                parts.append(self.message())
            self.expect("|}", "unbalanced encryption braces, expected '|}'")
            start = self.pos
            name, start = self.ident()
            atom = self.atoms.get(name)
            if atom is None:
                raise self.error(f"unknown identifier {name!r}", start)
            if atom.kind != "key":
                raise self.error(
                    f"encryption under non-key atom {name!r} ({atom.kind})", start
                )
            return Encrypt(concat_list(parts), Atomic(atom))
        if self.peek("("):
            self.pos += 1
            parts = [self.message()]
            while self.peek(","):
                self.pos += 1
                parts.append(self.message())
            self.expect(")", "unbalanced parentheses, expected ')'")
            if len(parts) < 2:
                raise self.error("a component list needs at least two components")
            return concat_list(parts)
        return self.atom_ref()


def parse_message(text: str, atoms: Mapping[str, Atom]) -> Message:
    """Parse a message against a table of declared atoms."""
    parser = _Parser(text, atoms)
    msg = parser.message()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input after message")
    return msg


def format_message(m: Message) -> str:
    """Canonical printing in the scenario grammar; parses back to ``m``."""
    if isinstance(m, Empty):
        return "<>"
    if isinstance(m, Atomic):
        return m.atom.name
    if isinstance(m, Concat):
        return "(" + ", ".join(format_message(p) for p in concat_parts(m)) + ")"
    if isinstance(m, Encrypt):
        body = ", ".join(format_message(p) for p in concat_parts(m.body))
        if not isinstance(m.key, Atomic):
            raise MessageError("cannot print encryption under a compound key")
        return "{| " + body + " |}" + m.key.atom.name
    raise TypeError(f"not a message: {m!r}")


def _functional_atom(atom: Atom) -> str:
    if atom.kind == "key" and len(atom.name) > 1 and atom.name[0] == "K":
        return f"k({atom.name[1:]})"
    return atom.name


def functional_message(m: Message) -> str:
    """Checker-style rendering: enk(kx, body), pair(l, r), bare atom names."""
    if isinstance(m, Empty):
        return "nil"
    if isinstance(m, Atomic):
        return _functional_atom(m.atom)
    if isinstance(m, Concat):
        return f"pair({functional_message(m.left)},{functional_message(m.right)})"
    if isinstance(m, Encrypt):
        return f"enk({functional_message(m.key)},{functional_message(m.body)})"
    raise TypeError(f"not a message: {m!r}")


@dataclass(frozen=True)
class MessageUniverse:
    """The bounded, subterm-closed message domain of one scenario."""

    messages: tuple[Message, ...]
    provenance: str = ""
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        self._index.update({m: i for i, m in enumerate(self.messages)})

    def __contains__(self, m: Message) -> bool:
        return m in self._index

    def __iter__(self) -> Iterator[Message]:
        return iter(self.messages)

    def __len__(self) -> int:
        return len(self.messages)

    def index(self, m: Message) -> int:
        return self._index[m]

    def atom_table(self) -> dict[str, Atom]:
        table: dict[str, Atom] = {}
        for m in self.messages:
            if isinstance(m, Atomic):
                table[m.atom.name] = m.atom
        return table

    def is_subterm_closed(self) -> bool:
        return all(sub in self for m in self.messages for sub in m.subterms())


def subterm_closure(
    atoms: Mapping[str, Atom], seeds: list[Message], provenance: str = ""
) -> MessageUniverse:
    """Close seed messages under immediate subterms and key inversion.

    The universe always contains the empty message and every declared atom;
    insertion order is deterministic (empty, atoms in declaration order,
    then each seed in pre-order).
    """
    ordered: dict[Message, None] = {EMPTY: None}

    def add(m: Message) -> None:
        for sub in m.subterms():
            ordered.setdefault(sub, None)

    for atom in atoms.values():
        add(Atomic(atom))
        if atom.kind == "key":
            add(inverse(Atomic(atom), atoms))
    for seed in seeds:
        add(seed)
    return MessageUniverse(tuple(ordered), provenance)
