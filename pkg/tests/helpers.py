"""Independent oracles and small builders shared by the tests.

Everything here recomputes results by a different route than the library:
the brute-force solver enumerates complete assignments, and the one-rule
interpreter applies a single named rule instance at a time.  Tests compare
library output against these, so a bug would have to be made twice to slip
through.
"""

from __future__ import annotations

import itertools

from spa.constraints import SCSP, LevelMap
from spa.levels import Level, plus, times, unknown
from spa.messages import (
    Atom,
    Atomic,
    Concat,
    Encrypt,
    Message,
    inverse,
    subterm_closure,
)


def brute_force_solution(p: SCSP) -> dict[tuple, object]:
    """Solution table by enumerating every complete assignment."""
    sr = p.semiring
    table: dict[tuple, object] = {}
    variables = p.variables
    for assignment in itertools.product(p.domain, repeat=len(variables)):
        env = dict(zip(variables, assignment))
        value = sr.one
        for c in p.constraints:
            value = sr.times(value, c.value(tuple(env[v] for v in c.con)))
        reduced = tuple(env[v] for v in p.con)
        if reduced in table:
            table[reduced] = sr.plus(table[reduced], value)
        else:
            table[reduced] = value
    return table


def apply_one_rule(levels: LevelMap, rule: str, target: Message) -> LevelMap:
    """Apply a single rule instance, nothing else.

    ``rule`` is one of encryption-literal, encryption-key, concatenation,
    decryption, splitting; ``target`` is the compound term the rule reads.
    """
    n = levels.n
    atoms = levels.universe.atom_table()
    out = dict(levels.entries)

    def get(m: Message) -> Level:
        return out.get(m, unknown(n))

    def put(m: Message, level: Level) -> None:
        out[m] = level

    if rule in ("encryption-literal", "encryption-key", "decryption"):
        assert isinstance(target, Encrypt)
        v1, v2, v3 = get(target.body), get(target.key), get(target)
        if rule == "encryption-literal":
            put(target, times(plus(v1, v2), v3))
        elif rule == "encryption-key":
            if v1.is_known:
                put(target, times(v2, v3))
        else:
            inv = get(inverse(target.key, atoms))
            if inv.is_known and v3.is_known:
                put(target.body, times(times(v1, inv), v3))
    elif rule == "concatenation":
        assert isinstance(target, Concat)
        put(target, times(plus(get(target.left), get(target.right)), get(target)))
    elif rule == "splitting":
        assert isinstance(target, Concat)
        v3 = get(target)
        put(target.left, times(get(target.left), v3))
        put(target.right, times(get(target.right), v3))
    else:
        raise ValueError(rule)
    return levels.replace(out)


def tiny_atoms() -> dict[str, Atom]:
    """A small atom table: two agents, a nonce, a timestamp, two keys."""
    atoms = {
        "x": Atom("x", "agent"),
        "y": Atom("y", "agent"),
        "Nx": Atom("Nx", "nonce"),
        "Tx": Atom("Tx", "timestamp"),
        "Kxy": Atom("Kxy", "key"),
        "Kpub": Atom("Kpub", "key", symmetric=False, inverse_name="Kpriv"),
        "Kpriv": Atom("Kpriv", "key", symmetric=False, inverse_name="Kpub"),
    }
    return atoms


def tiny_universe(extra: list[Message] | None = None):
    atoms = tiny_atoms()
    a = {name: Atomic(atom) for name, atom in atoms.items()}
    seeds: list[Message] = [
        Encrypt(Concat(a["x"], a["Nx"]), a["Kxy"]),
        Encrypt(a["Nx"], a["Kpub"]),
        Concat(a["Tx"], Concat(a["x"], a["y"])),
    ]
    seeds.extend(extra or [])
    return subterm_closure(atoms, seeds, provenance="tiny")


def level_map(
    universe, n: int, owner: str = "x", extra=None, **named_levels: int
) -> LevelMap:
    """Build a LevelMap from atom-name -> rank pairs plus message entries."""
    entries = {}
    by_name = {m.atom.name: m for m in universe if isinstance(m, Atomic)}
    for name, rank in named_levels.items():
        entries[by_name[name]] = Level(rank, n)
    if extra:
        entries.update(extra)
    return LevelMap(owner, universe, n, entries)
