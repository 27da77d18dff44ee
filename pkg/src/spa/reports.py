"""Attack checking and report rendering.

The library-level attack queries return every level drop over the whole
universe.  The checker narrows that to the drops an auditor acts on, using
a fixed, documented policy; each rule removes a class of noise while every
surviving line remains a genuine drop:

* only atoms and ciphertexts are listed: concatenations are transport
  packaging, and any drop they suffer is already visible on their parts;
* a principal's own inventions are skipped: a fresh secret moving from
  unknown to private is creation, not an attack on oneself (cryptanalysed
  secrets do count);
* whole wire payloads are skipped, except in the hands of an interceptor
  that cannot open them: an addressee is supposed to hold what it was sent,
  a decrypting interceptor is reported through the contents it extracts,
  but an opaque stolen blob has nothing else to show up as;
* terms the principal can only assemble, never extracted, are skipped
  (constructive phantoms), and so are drops on trace-only terms that the
  principal could already assemble during the policy run.

Two formats render the result: the ``checker`` format, one block per
principal with one attack line per drop, and an aligned ``table``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .analysis import (
    DEFAULT_SPEAKS_ABOUT,
    AttackReport,
    SpeaksAboutConfig,
    authentication_attacks,
    authentication_level,
    closed_view,
    confidentiality_attacks,
    grounded_view,
)
from .constraints import SCSP, LevelMap
from .entailment import RuleProfile
from .messages import (
    Atomic,
    Encrypt,
    Message,
    format_message,
    functional_message,
    inverse,
    subterm_closure,
)
from .scenario import (
    Invent,
    Scenario,
    Send,
    build_imputable_scsp,
    build_policy_scsp,
    event_messages,
)


@dataclass(frozen=True)
class PrincipalBlock:
    principal: str
    agent: str
    confidentiality: tuple[AttackReport, ...] = ()
    authentication: tuple[AttackReport, ...] = ()

    @property
    def attack_count(self) -> int:
        return len(self.confidentiality) + len(self.authentication)


@dataclass(frozen=True)
class CheckerReport:
    scenario: str
    blocks: tuple[PrincipalBlock, ...]
    agents: Mapping[str, str] = field(default_factory=dict)

    @property
    def attack_found(self) -> bool:
        return any(b.attack_count for b in self.blocks)

    def agent_of(self, principal: str | None) -> str:
        if principal is None:
            return "?"
        return self.agents.get(principal, principal)


def _policy_terms(s: Scenario) -> set[Message]:
    seeds = [m for _, m, _ in s.assumptions]
    for ev in s.policy_events:
        seeds.extend(event_messages(ev))
    return set(subterm_closure(s.atoms, seeds))


def _can_open(view: LevelMap, m: Encrypt, atoms) -> bool:
    if not (isinstance(m.key, Atomic) and m.key.atom.kind == "key"):
        return False
    return view.get(inverse(m.key, atoms)).is_known


def reportable_confidentiality_attacks(
    s: Scenario,
    policy: SCSP,
    imputable: SCSP,
    principal: str,
    profile: RuleProfile | None = None,
) -> list[AttackReport]:
    """The filtered attack list for one principal (see module docstring)."""
    profile = profile if profile is not None else s.rule_profile
    attacks = confidentiality_attacks(policy, imputable, principal, profile)
    if not attacks:
        return []
    atoms = s.atoms
    invented = {
        ev.message
        for ev in s.events()
        if isinstance(ev, Invent) and ev.principal == principal
    }
    payload_receptions: dict[Message, list[Send]] = {}
    for ev in s.events():
        if isinstance(ev, Send):
            payload_receptions.setdefault(ev.message, []).append(ev)
    extracted = grounded_view(imputable, principal)
    full_imp = closed_view(imputable, principal, profile)
    full_pol = closed_view(policy, principal, profile)
    policy_terms = _policy_terms(s)

    kept = []
    for report in attacks:
        m = report.message
        if not isinstance(m, (Atomic, Encrypt)):
            continue
        if m in invented:
            continue
        sends = payload_receptions.get(m)
        if sends is not None:
            stolen_blob = any(ev.interceptor == principal for ev in sends) and not (
                isinstance(m, Encrypt) and _can_open(full_imp, m, atoms)
            )
            if not stolen_blob:
                continue
        if not extracted.get(m).is_known:
            continue
        if m not in policy_terms and full_pol.get(m).is_known:
            continue
        kept.append(report)
    return kept


def _auth_reports(
    s: Scenario,
    policy: SCSP,
    imputable: SCSP,
    verifier: str,
    profile: RuleProfile,
    cfg: SpeaksAboutConfig,
) -> tuple[AttackReport, ...]:
    out: list[AttackReport] = []
    for peer in s.principals:
        if peer == verifier:
            continue
        out.extend(
            authentication_attacks(policy, imputable, verifier, peer, profile, cfg)
        )
    return tuple(out)


def run_check(
    s: Scenario,
    goal: str = "confidentiality",
    principal: str | None = None,
    profile: RuleProfile | None = None,
    cfg: SpeaksAboutConfig = DEFAULT_SPEAKS_ABOUT,
) -> CheckerReport:
    """Build both problems and collect the filtered attack blocks."""
    if not s.trace_events:
        raise ValueError("the scenario has no trace phase to check")
    if principal is not None and principal not in s.principals:
        raise ValueError(f"unknown principal {principal!r}")
    profile = profile if profile is not None else s.rule_profile
    policy = build_policy_scsp(s, profile=profile)
    imputable = build_imputable_scsp(s, profile=profile)
    blocks = []
    for name, agent in s.principals.items():
        if principal is not None and name != principal:
            continue
        conf: tuple[AttackReport, ...] = ()
        auth: tuple[AttackReport, ...] = ()
        if goal in ("confidentiality", "all"):
            conf = tuple(
                reportable_confidentiality_attacks(s, policy, imputable, name, profile)
            )
        if goal in ("authentication", "all"):
            auth = _auth_reports(s, policy, imputable, name, profile, cfg)
        blocks.append(
            PrincipalBlock(
                principal=name, agent=agent, confidentiality=conf, authentication=auth
            )
        )
    return CheckerReport(
        scenario=s.name, blocks=tuple(blocks), agents=dict(s.principals)
    )


def render_checker(report: CheckerReport) -> str:
    """The classic checker shape: per-principal blocks of attack lines."""
    lines = []
    for block in report.blocks:
        lines.append(f"checking(agent({block.agent}))")
        for r in block.confidentiality:
            lines.append(
                f"   attack({functional_message(r.message)}, "
                f"policy_level({r.policy_level.token}), "
                f"attack_level({r.attack_level.token}))"
            )
        for r in block.authentication:
            lines.append(
                f"   auth_attack({report.agent_of(r.peer)}, "
                f"{functional_message(r.message)}, "
                f"policy_level({r.policy_level.token}), "
                f"attack_level({r.attack_level.token}))"
            )
    return "\n".join(lines) + "\n"


def render_table(report: CheckerReport) -> str:
    rows = [("principal", "goal", "message", "policy", "attack")]
    for block in report.blocks:
        for r in block.confidentiality:
            rows.append(
                (
                    block.principal,
                    "confidentiality",
                    format_message(r.message),
                    r.policy_level.token,
                    r.attack_level.token,
                )
            )
        for r in block.authentication:
            rows.append(
                (
                    block.principal,
                    f"authentication of {r.peer}",
                    format_message(r.message),
                    r.policy_level.token,
                    r.attack_level.token,
                )
            )
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    lines = []
    for idx, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def run_policy_report(
    s: Scenario,
    goal: str = "confidentiality",
    principal: str | None = None,
    full: bool = False,
    profile: RuleProfile | None = None,
    cfg: SpeaksAboutConfig = DEFAULT_SPEAKS_ABOUT,
) -> str:
    """Settled per-principal level tables for the policy run.

    Unknown rows are suppressed unless ``full`` is set.  With the
    authentication goal, headline levels for every ordered principal pair
    are appended.
    """
    if principal is not None and principal not in s.principals:
        raise ValueError(f"unknown principal {principal!r}")
    profile = profile if profile is not None else s.rule_profile
    policy = build_policy_scsp(s, profile=profile)
    lines = [f"policy levels for {s.name} (n={s.n}, profile={profile.name})"]
    selected = [p for p in s.principals if principal is None or p == principal]
    if goal in ("confidentiality", "all"):
        for name in selected:
            view = closed_view(policy, name, profile)
            lines.append("")
            lines.append(f"principal {name}")
            shown = 0
            for m, level in view.items():
                if level.is_known or full:
                    lines.append(f"  {format_message(m)} : {level.token}")
                    shown += 1
            if not shown:
                lines.append("  (no known messages)")
    if goal in ("authentication", "all"):
        lines.append("")
        lines.append("authentication headline levels")
        for verifier, peer in itertools.permutations(s.principals, 2):
            if principal is not None and principal not in (verifier, peer):
                continue
            level = authentication_level(policy, verifier, peer, profile, cfg)
            token = level.token if level is not None else "none"
            lines.append(f"  ({peer} with {verifier}) : {token}")
    return "\n".join(lines) + "\n"
