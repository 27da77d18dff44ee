"""Level-computation rules and their reflexive-transitive closure.

Four rules rewrite a principal's level map over the subterm-closed
universe.  With v1, v2, v3 the current levels of the parts and of the
compound term:

    encryption     {m1}_m2   gets  (v1 + v2) x v3        (profile-dependent)
    concatenation  (m1, m2)  gets  (v1 + v2) x v3
    decryption     m1        gets  v1 x v2 x v3    if v2, v3 < unknown,
                                                   v2 the inverse key level
    splitting      m1, m2    get   v1 x v3,  v2 x v3

Every rule multiplies the target's current level in, so a pass can only
lower levels; over a finite universe the closure is a small fixpoint.

Encryption profiles
-------------------
``literal``       uses (v1 + v2) x v3 unchanged.  The formula is inert
                  whenever body or key is unknown, because + picks the
                  better operand.
``key-tracking``  gives the ciphertext the key's level, v2 x v3, provided
                  the body is known.  The body guard matters: without it a
                  known key would conjure a "known" ciphertext around a body
                  the principal has never seen, and decryption would then
                  leak the body from nothing.
``hybrid``        (default) key-tracking under a symmetric (shared-secret)
                  key, literal under an asymmetric one, so sealed packages
                  track the shared key while public-key ciphertexts track
                  their body.  The branch switches on the key atom's
                  declared symmetry, not on its current level: a level-based
                  switch would flip branches as a key degrades to public and
                  destroy the monotonicity of the closure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import LevelMap
from .levels import Level, plus, times
from .messages import Atom, Atomic, Concat, Encrypt, Message, inverse


@dataclass(frozen=True)
class RuleProfile:
    """Selects how the encryption rule combines the key and body levels."""

    name: str


LITERAL = RuleProfile("literal")
KEY_TRACKING = RuleProfile("key-tracking")
HYBRID = RuleProfile("hybrid")

_PROFILES = {p.name: p for p in (LITERAL, KEY_TRACKING, HYBRID)}


def profile_from_name(name: str) -> RuleProfile:
    try:
        return _PROFILES[name]
    except KeyError:
        raise ValueError(
            f"unknown rule profile {name!r}; pick one of {sorted(_PROFILES)}"
        ) from None


def encryption_candidate(
    profile: RuleProfile,
    v1: Level,
    v2: Level,
    v3: Level,
    symmetric_key: bool = True,
) -> Level:
    """New level for a ciphertext from body level v1, key level v2, own v3."""
    if profile == LITERAL or (profile == HYBRID and not symmetric_key):
        return times(plus(v1, v2), v3)
    return times(v2, v3) if v1.is_known else v3


def _symmetric(key: Message) -> bool:
    if isinstance(key, Atomic) and key.atom.kind == "key":
        return key.atom.symmetric
    return False


def _sweep(
    levels: LevelMap, profile: RuleProfile | None, atoms: dict[str, Atom]
) -> LevelMap:
    """One deterministic pass over the universe; compounds before parts.

    ``profile`` None runs only the decomposition rules (decryption and
    splitting), which is how grounded views are computed for reporting.
    """
    n = levels.n
    out: dict[Message, Level] = dict(levels.entries)

    def get(m: Message) -> Level:
        level = out.get(m)
        return level if level is not None else Level(-1, n)

    def put(m: Message, level: Level) -> None:
        if level.is_known:
            out[m] = level

    for m in levels.universe:
        if isinstance(m, Encrypt):
            v3 = get(m)
            if profile is not None:
                put(
                    m,
                    encryption_candidate(
                        profile, get(m.body), get(m.key), v3, _symmetric(m.key)
                    ),
                )
            if isinstance(m.key, Atomic) and m.key.atom.kind == "key":
                v2 = get(inverse(m.key, atoms))
                v3 = get(m)
                if v2.is_known and v3.is_known:
                    put(m.body, times(times(get(m.body), v2), v3))
        elif isinstance(m, Concat):
            if profile is not None:
                put(m, times(plus(get(m.left), get(m.right)), get(m)))
            v3 = get(m)
            put(m.left, times(get(m.left), v3))
            put(m.right, times(get(m.right), v3))
    return levels.replace(out)


def apply_rules_once(levels: LevelMap, profile: RuleProfile = HYBRID) -> LevelMap:
    """Apply all four rules once across the universe; never raises a level."""
    return _sweep(levels, profile, levels.universe.atom_table())


def _closure(levels: LevelMap, profile: RuleProfile | None) -> LevelMap:
    atoms = levels.universe.atom_table()
    bound = len(levels.universe) * (levels.n + 3) + 1
    current = levels
    for _ in range(bound):
        nxt = _sweep(current, profile, atoms)
        if nxt.same_levels(current):
            return current
        current = nxt
    raise AssertionError("entailment closure failed to stabilise within its bound")


def entail_closure(levels: LevelMap, profile: RuleProfile = HYBRID) -> LevelMap:
    """Least fixpoint of the four rules: the principal's settled level map."""
    return _closure(levels, profile)


def decomposition_closure(levels: LevelMap) -> LevelMap:
    """Fixpoint of decryption and splitting alone.

    This is what a principal provably extracted from material it holds, as
    opposed to terms it could merely assemble; reports use it to tell the
    two apart.
    """
    return _closure(levels, None)


def entails(c1: LevelMap, c2: LevelMap, profile: RuleProfile = HYBRID) -> bool:
    """True iff c2 is reachable from c1 by zero or more rule applications.

    Decided as: closure(c1) <= c2 <= c1 pointwise, which characterises
    reachability because rules only ever lower levels toward the fixpoint.
    """
    if c1.owner != c2.owner:
        raise ValueError(f"maps owned by {c1.owner!r} and {c2.owner!r}")
    c1._check(c2)
    return entail_closure(c1, profile).pointwise_leq(c2) and c2.pointwise_leq(c1)
