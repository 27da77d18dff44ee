import pytest

from spa.levels import all_levels, leq, plus, times
from spa.semiring import (
    BOOLEAN,
    FUZZY,
    SemiringSpec,
    check_semiring_laws,
    security_semiring,
)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_security_semiring_laws_hold_exhaustively(n):
    spec = security_semiring(n)
    assert check_semiring_laws(spec, all_levels(n)) == []


def test_fuzzy_laws_hold_on_sample():
    assert check_semiring_laws(FUZZY, [0.0, 0.2, 0.5, 0.8, 1.0]) == []


def test_boolean_laws_hold():
    assert check_semiring_laws(BOOLEAN, [False, True]) == []


def test_broken_times_is_reported_with_witness():
    broken = SemiringSpec(
        name="broken",
        plus=max,
        times=lambda a, b: a,  # first projection: not commutative
        zero=0.0,
        one=1.0,
    )
    report = check_semiring_laws(broken, [0.0, 0.3, 1.0])
    laws = {v.law for v in report}
    assert "times-commutativity" in laws
    witness = next(v.witness for v in report if v.law == "times-commutativity")
    assert len(witness) == 2


def test_empty_sample_rejected():
    with pytest.raises(ValueError):
        check_semiring_laws(FUZZY, [])


@pytest.mark.parametrize("n", [2, 4, 6])
def test_times_idempotent_and_plus_distributes_over_times(n):
    carrier = all_levels(n)
    for a in carrier:
        assert times(a, a) == a
        for b in carrier:
            for c in carrier:
                assert plus(a, times(b, c)) == times(plus(a, b), plus(a, c))


def test_zero_one_identification():
    spec = security_semiring(5)
    assert spec.zero.token == "public"
    assert spec.one.token == "unknown"
    assert leq(spec.zero, spec.one)
