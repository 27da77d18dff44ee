import pytest

from spa.messages import Atomic, Encrypt
from spa.scenario import Cryptanalyse, Invent, Send
from spa.scenario_parser import (
    ScenarioParseError,
    format_scenario,
    parse_scenario,
)

MINIMAL = """
levels 2
principal A : a
"""

SMALL = """
levels 4
profile literal

principal A : a
principal B : b
principal E : e

atom Nb nonce
atom Kab key owners A B
atom Kb key inverse Kb' owners B

assume * : a -> public
assume * : b -> public
assume A : Kab -> private
assume B : Kab -> private
assume B : Kb' -> private

phase policy
invent B Nb
send B -> A : {| Nb, b |}Kab

phase trace
invent B Nb
send B -> A : {| Nb, b |}Kab intercepted E
cryptanalyse E : Nb from {| Nb, b |}Kab
"""


def test_minimal_file_parses_to_an_empty_scenario():
    s = parse_scenario(MINIMAL)
    assert s.n == 2
    assert list(s.principals) == ["A"]
    assert s.policy_events == () and s.trace_events == ()
    assert s.profile == "hybrid"


def test_small_file_structure():
    s = parse_scenario(SMALL)
    assert s.n == 4
    assert s.profile == "literal"
    assert list(s.principals) == ["A", "B", "E"]
    assert isinstance(s.policy_events[0], Invent)
    send = s.policy_events[1]
    assert isinstance(send, Send)
    assert (send.sender, send.addressee, send.interceptor) == ("B", "A", None)
    assert isinstance(send.message, Encrypt)
    traced = s.trace_events[1]
    assert traced.interceptor == "E"
    crypt = s.trace_events[2]
    assert isinstance(crypt, Cryptanalyse)
    assert crypt.learned == Atomic(s.atoms["Nb"])


def test_star_assumption_expands_per_principal():
    s = parse_scenario(SMALL)
    holders = {p for p, m, _ in s.assumptions if m == Atomic(s.atoms["a"])}
    assert holders == {"A", "B", "E"}


def test_asymmetric_pair_declared_together():
    s = parse_scenario(SMALL)
    kb, kb_inv = s.atoms["Kb"], s.atoms["Kb'"]
    assert not kb.symmetric and kb.inverse_name == "Kb'"
    assert kb_inv.inverse_name == "Kb"
    assert kb.owners == frozenset({"B"})


def test_round_trip_small():
    s = parse_scenario(SMALL)
    assert parse_scenario(format_scenario(s)) == s


def test_round_trip_bundled(kerberos, ns_lowe):
    for s in (kerberos, ns_lowe):
        reparsed = parse_scenario(format_scenario(s), name=s.name)
        assert reparsed == s


def test_kerberos_shape(kerberos):
    assert kerberos.n == 8
    assert kerberos.profile == "hybrid"
    assert len(kerberos.principals) == 6
    sends = [ev for ev in kerberos.policy_events if isinstance(ev, Send)]
    assert len(sends) == 6
    interceptions = [
        ev
        for ev in kerberos.trace_events
        if isinstance(ev, Send) and ev.interceptor is not None
    ]
    crypt = [ev for ev in kerberos.trace_events if isinstance(ev, Cryptanalyse)]
    assert len(crypt) == 1
    assert len(interceptions) == 3
    malicious_sends = [
        ev
        for ev in kerberos.trace_events
        if isinstance(ev, Send) and ev.sender in ("C", "D")
    ]
    assert len(malicious_sends) == 4


@pytest.mark.parametrize(
    "snippet,complaint",
    [
        ("levels 4\nlevels 4\n", "duplicate levels"),
        ("principal A : a\n", "missing mandatory levels"),
        ("levels 4\nprincipal A : a\nassume A : zz -> public\n", "unknown identifier"),
        ("levels 4\nprincipal A : a\nassume A : a -> traded_1\n", "public, private or unknown"),
        ("levels 4\nwormhole A\n", "unknown directive"),
        ("levels 4\nprincipal A : a\nprincipal A : a\n", "declared twice"),
        ("levels 4\nprincipal A : a\natom a nonce\n", "declared twice"),
        ("levels 4\nprincipal A : a\nphase trace\nphase policy\n", "policy phase must come first"),
        ("levels 4\nprincipal A : a\nsend A -> A : a\n", "inside a phase"),
        ("levels 4\nprincipal A : a\nphase policy\nsend A -> Z : a\n", "undeclared principal"),
        ("levels 4\nprincipal A : a\natom from nonce\n", "reserved word"),
        ("levels 0\n", "at least 1"),
    ],
)
def test_parse_diagnostics(snippet, complaint):
    with pytest.raises(ScenarioParseError, match=complaint):
        parse_scenario(snippet)


def test_encryption_under_agent_atom_diagnosed():
    text = (
        "levels 4\nprincipal A : a\nprincipal B : b\n"
        "phase policy\nsend A -> B : {| b |}a\n"
    )
    with pytest.raises(ScenarioParseError, match="non-key"):
        parse_scenario(text)


def test_line_numbers_in_diagnostics():
    text = "levels 4\nprincipal A : a\nassume A : zz -> public\n"
    with pytest.raises(ScenarioParseError) as err:
        parse_scenario(text)
    assert err.value.line_no == 3


def test_comments_and_blank_lines_ignored():
    text = "# prologue\n\nlevels 4   # four steps\nprincipal A : a\n"
    s = parse_scenario(text)
    assert s.n == 4
