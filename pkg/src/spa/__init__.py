"""Semiring-based soft-constraint analysis of security protocols.

Build a problem from a declarative scenario (policy run and observed
trace), compute each principal's security levels by entailment closure,
and grade confidentiality and authentication attacks as level drops.
"""

from .analysis import (
    AttackReport,
    SpeaksAboutConfig,
    authentication_attacks,
    authentication_facts,
    authentication_level,
    compare_attacks,
    confidentiality_attacks,
    confidentiality_level,
    speaks_about,
)
from .constraints import SCSP, Constraint, LevelMap, combine, principal_view, project, solution
from .entailment import (
    HYBRID,
    KEY_TRACKING,
    LITERAL,
    RuleProfile,
    apply_rules_once,
    entail_closure,
    entails,
)
from .levels import Level, leq, parse_level, plus, private, public, times, traded, unknown
from .messages import (
    Atom,
    Atomic,
    Concat,
    EMPTY,
    Encrypt,
    Message,
    MessageUniverse,
    format_message,
    functional_message,
    inverse,
    parse_message,
    split_pairs,
)
from .risk import DEFAULT_RISK, RiskFunction, assess, validate_risk_function
from .scenario import (
    Cryptanalyse,
    Invent,
    PolicyViolationError,
    Scenario,
    ScenarioError,
    Send,
    build_imputable_scsp,
    build_initial_scsp,
    build_policy_scsp,
    build_universe,
    process_event,
)
from .scenario_parser import format_scenario, parse_scenario, parse_scenario_file
from .semiring import BOOLEAN, FUZZY, SemiringSpec, check_semiring_laws, security_semiring

__version__ = "0.1.0"

__all__ = [
    "AttackReport",
    "Atom",
    "Atomic",
    "BOOLEAN",
    "Concat",
    "Constraint",
    "Cryptanalyse",
    "DEFAULT_RISK",
    "EMPTY",
    "Encrypt",
    "FUZZY",
    "HYBRID",
    "Invent",
    "KEY_TRACKING",
    "LITERAL",
    "Level",
    "LevelMap",
    "Message",
    "MessageUniverse",
    "PolicyViolationError",
    "RiskFunction",
    "RuleProfile",
    "SCSP",
    "Scenario",
    "ScenarioError",
    "SemiringSpec",
    "Send",
    "SpeaksAboutConfig",
    "apply_rules_once",
    "assess",
    "authentication_attacks",
    "authentication_facts",
    "authentication_level",
    "build_imputable_scsp",
    "build_initial_scsp",
    "build_policy_scsp",
    "build_universe",
    "check_semiring_laws",
    "combine",
    "compare_attacks",
    "confidentiality_attacks",
    "confidentiality_level",
    "entail_closure",
    "entails",
    "format_message",
    "format_scenario",
    "functional_message",
    "inverse",
    "leq",
    "parse_level",
    "parse_message",
    "parse_scenario",
    "parse_scenario_file",
    "plus",
    "principal_view",
    "private",
    "process_event",
    "project",
    "public",
    "security_semiring",
    "solution",
    "speaks_about",
    "split_pairs",
    "times",
    "traded",
    "unknown",
]
