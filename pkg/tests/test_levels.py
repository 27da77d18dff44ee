import pytest

from spa.levels import (
    Level,
    SemiringMismatchError,
    all_levels,
    leq,
    parse_level,
    plus,
    private,
    public,
    times,
    traded,
    unknown,
)

N = 4


def test_plus_picks_the_better_traded_level():
    assert plus(traded(1, N), traded(3, N)) == traded(1, N)


def test_plus_unknown_absorbs():
    assert plus(unknown(N), public(N)) == unknown(N)


def test_plus_idempotent():
    assert plus(private(N), private(N)) == private(N)


def test_times_picks_the_worse_traded_level():
    assert times(traded(1, N), traded(3, N)) == traded(3, N)


def test_times_unknown_is_unit():
    assert times(unknown(N), traded(2, N)) == traded(2, N)


def test_times_public_absorbs():
    assert times(public(N), private(N)) == public(N)


def test_leq_public_is_minimum():
    assert leq(public(N), traded(2, N))
    assert all(leq(public(N), l) for l in all_levels(N))


def test_leq_reflexive():
    for l in all_levels(N):
        assert leq(l, l)


def test_leq_strict_between_traded():
    # traded_1 + traded_3 = traded_1 != traded_3
    assert not leq(traded(1, N), traded(3, N))
    assert leq(traded(3, N), traded(1, N))


def test_leq_total_order():
    carrier = all_levels(N)
    for a in carrier:
        for b in carrier:
            assert leq(a, b) or leq(b, a)
            if leq(a, b) and leq(b, a):
                assert a == b


def test_plus_is_lub_times_is_glb():
    carrier = all_levels(N)
    for a in carrier:
        for b in carrier:
            lub, glb = plus(a, b), times(a, b)
            assert leq(a, lub) and leq(b, lub)
            assert leq(glb, a) and leq(glb, b)
            for c in carrier:
                if leq(a, c) and leq(b, c):
                    assert leq(lub, c)
                if leq(c, a) and leq(c, b):
                    assert leq(c, glb)


def test_monotonicity():
    carrier = all_levels(N)
    for a in carrier:
        for b in carrier:
            if not leq(a, b):
                continue
            for c in carrier:
                assert leq(plus(a, c), plus(b, c))
                assert leq(times(a, c), times(b, c))


def test_double_naming_aliases():
    assert unknown(N) == traded(-1, N)
    assert private(N) == traded(0, N)
    assert public(N) == traded(N + 1, N)


def test_mismatched_n_rejected():
    with pytest.raises(SemiringMismatchError):
        plus(unknown(3), unknown(4))
    with pytest.raises(SemiringMismatchError):
        times(private(3), private(4))
    with pytest.raises(SemiringMismatchError):
        leq(public(3), public(4))


def test_rank_bounds_enforced():
    with pytest.raises(ValueError):
        Level(N + 2, N)
    with pytest.raises(ValueError):
        Level(-2, N)


def test_tokens_round_trip():
    for l in all_levels(N):
        assert parse_level(l.token, N) == l
    assert unknown(N).token == "unknown"
    assert private(N).token == "private"
    assert public(N).token == "public"
    assert traded(2, N).token == "traded_2"


def test_parse_level_rejects_bad_tokens():
    with pytest.raises(ValueError):
        parse_level("traded_0", N)  # alias ranks are not surface tokens
    with pytest.raises(ValueError):
        parse_level("traded_9", N)
    with pytest.raises(ValueError):
        parse_level("secret", N)


def test_comparison_operators_follow_the_lattice():
    assert public(N) < traded(2, N) < private(N) < unknown(N)
    assert unknown(N) > public(N)
    assert traded(2, N) <= traded(2, N)
    assert traded(3, N) < traded(1, N)


def test_is_known():
    assert not unknown(N).is_known
    assert private(N).is_known
    assert public(N).is_known
