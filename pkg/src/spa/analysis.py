"""Graded confidentiality and authentication over built problems.

Confidentiality of a message for a principal is simply the principal's
settled level on it; an attack is any message whose level in the trace
problem sits strictly below its level in the policy problem.

Authentication of B with A holds at level l when A holds, at level l,
evidence that speaks about B.  Evidence means material A extracted from
traffic B actually sent (or holds initially): the verifier's side is the
decomposition closure of A's unary constraints plus the binary constraints
B sent to A.  Counting everything A could assemble instead would let any
principal "authenticate" a peer from messages it is able to forge itself,
so constructive knowledge is deliberately excluded on the verifier's side,
while the authenticated party's side uses the full closure (it only needs
to know the message, however it got it).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

from .constraints import SCSP, Constraint, LevelMap, principal_view
from .entailment import (
    HYBRID,
    RuleProfile,
    decomposition_closure,
    entail_closure,
)
from .levels import Level, plus
from .messages import Atomic, Encrypt, Message, MessageUniverse, format_message


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class SpeaksAboutConfig:
    """Which rules connect a message to a principal.

    ``name_occurrence``: the principal's agent atom occurs somewhere in the
    term.  ``key_association``: some encryption in the term uses a key whose
    owners include the principal.
    """

    name_occurrence: bool = True
    key_association: bool = True

    def __post_init__(self) -> None:
        if not (self.name_occurrence or self.key_association):
            raise ValueError("at least one speaks-about rule must be enabled")


DEFAULT_SPEAKS_ABOUT = SpeaksAboutConfig()


@dataclass(frozen=True)
class AttackReport:
    """A strict level drop between the policy and the observed problem."""

    goal: str
    principal: str
    message: Message
    policy_level: Level
    attack_level: Level
    peer: str | None = None

    def __post_init__(self) -> None:
        if self.goal not in ("confidentiality", "authentication"):
            raise ValueError(f"unknown goal {self.goal!r}")
        if not self.attack_level < self.policy_level:
            raise ValueError(
                f"not an attack: {self.attack_level.token} does not drop below "
                f"{self.policy_level.token}"
            )

    def __str__(self) -> str:
        who = self.principal if self.peer is None else f"{self.peer} with {self.principal}"
        return (
            f"{self.goal} attack [{who}] on {format_message(self.message)}: "
            f"{self.policy_level.token} -> {self.attack_level.token}"
        )


def speaks_about(
    m: Message,
    principal: str,
    agent_atoms: dict[str, str],
    cfg: SpeaksAboutConfig = DEFAULT_SPEAKS_ABOUT,
) -> bool:
    """True iff some enabled rule links the term (or a subterm) to the
    principal."""
    agent_name = agent_atoms.get(principal)
    for sub in m.subterms():
        if cfg.name_occurrence and isinstance(sub, Atomic):
            if agent_name is not None and sub.atom.name == agent_name:
                return True
        if cfg.key_association and isinstance(sub, Encrypt):
            if isinstance(sub.key, Atomic) and principal in sub.key.atom.owners:
                return True
    return False


def closed_view(p: SCSP, principal: str, profile: RuleProfile = HYBRID) -> LevelMap:
    return entail_closure(principal_view(p, principal), profile)


def grounded_view(p: SCSP, principal: str) -> LevelMap:
    """What the principal provably extracted: received or initially held
    material closed under decryption and splitting only."""
    return decomposition_closure(principal_view(p, principal))


def confidentiality_level(
    p: SCSP, principal: str, m: Message, profile: RuleProfile = HYBRID
) -> Level:
    if p.universe is None or m not in p.universe:
        raise AnalysisError(f"message {format_message(m)} outside the universe")
    return closed_view(p, principal, profile).get(m)


def _check_same_universe(policy: SCSP, imputable: SCSP) -> MessageUniverse:
    if (
        policy.universe is None
        or imputable.universe is None
        or policy.universe.messages != imputable.universe.messages
    ):
        raise AnalysisError("policy and trace problems must share one universe")
    return policy.universe


def confidentiality_attacks(
    policy: SCSP, imputable: SCSP, principal: str, profile: RuleProfile = HYBRID
) -> list[AttackReport]:
    """Every message whose settled level dropped, in universe order."""
    universe = _check_same_universe(policy, imputable)
    before = closed_view(policy, principal, profile)
    after = closed_view(imputable, principal, profile)
    out = []
    for m in universe:
        if after.get(m) < before.get(m):
            out.append(
                AttackReport(
                    goal="confidentiality",
                    principal=principal,
                    message=m,
                    policy_level=before.get(m),
                    attack_level=after.get(m),
                )
            )
    return out


def compare_attacks(r1: AttackReport, r2: AttackReport) -> int:
    """Worse-than ordering: positive iff r1 is the worse attack.

    A drop on a more valuable target (higher policy level) outranks any
    drop on a lesser one; on the same target value, the deeper fall is
    worse.
    """
    if r1.goal != r2.goal:
        raise AnalysisError(f"cannot compare {r1.goal} with {r2.goal} attacks")
    if r1.policy_level != r2.policy_level:
        return 1 if r1.policy_level > r2.policy_level else -1
    if r1.attack_level != r2.attack_level:
        return 1 if r1.attack_level < r2.attack_level else -1
    return 0


def sort_worst_first(reports: list[AttackReport]) -> list[AttackReport]:
    return sorted(reports, key=cmp_to_key(compare_attacks), reverse=True)


def _sent_by(peer: str, receiver: str):
    def keep(c: Constraint) -> bool:
        if c.arity == 1:
            return c.con == (receiver,)
        return c.con == (peer, receiver)

    return keep


def authentication_facts(
    p: SCSP,
    verifier: str,
    peer: str,
    profile: RuleProfile = HYBRID,
    cfg: SpeaksAboutConfig = DEFAULT_SPEAKS_ABOUT,
) -> list[tuple[Message, Level]]:
    """Messages authenticating ``peer`` with ``verifier``, with the
    verifier's level on each.

    A message qualifies when it speaks about the peer, the peer knows it
    (full closure below unknown) and the verifier extracted it from the
    peer's own traffic or holds it initially (grounded view below unknown).
    """
    if verifier == peer:
        raise AnalysisError("a principal does not authenticate itself")
    if p.universe is None:
        raise AnalysisError("authentication needs a protocol problem")
    agents = dict(p.agent_atoms)
    evidence = decomposition_closure(
        principal_view(p, verifier, _sent_by(peer, verifier))
    )
    peer_levels = closed_view(p, peer, profile)
    facts = []
    for m in p.universe:
        level = evidence.get(m)
        if not level.is_known:
            continue
        if not speaks_about(m, peer, agents, cfg):
            continue
        if not peer_levels.get(m).is_known:
            continue
        facts.append((m, level))
    return facts


def authentication_level(
    p: SCSP,
    verifier: str,
    peer: str,
    profile: RuleProfile = HYBRID,
    cfg: SpeaksAboutConfig = DEFAULT_SPEAKS_ABOUT,
) -> Level | None:
    """Headline level: the best level among the authentication facts."""
    facts = authentication_facts(p, verifier, peer, profile, cfg)
    if not facts:
        return None
    best = facts[0][1]
    for _, level in facts[1:]:
        best = plus(best, level)
    return best


def authentication_attacks(
    policy: SCSP,
    imputable: SCSP,
    verifier: str,
    peer: str,
    profile: RuleProfile = HYBRID,
    cfg: SpeaksAboutConfig = DEFAULT_SPEAKS_ABOUT,
) -> list[AttackReport]:
    """Per-message drops between the two problems' authentication facts."""
    universe = _check_same_universe(policy, imputable)
    before = dict(authentication_facts(policy, verifier, peer, profile, cfg))
    after = dict(authentication_facts(imputable, verifier, peer, profile, cfg))
    out = []
    for m in universe:
        if m in before and m in after and after[m] < before[m]:
            out.append(
                AttackReport(
                    goal="authentication",
                    principal=verifier,
                    peer=peer,
                    message=m,
                    policy_level=before[m],
                    attack_level=after[m],
                )
            )
    return out
