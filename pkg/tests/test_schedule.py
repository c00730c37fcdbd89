"""Shift schedule tests: closed forms, monotonicity, sublinearity witnesses."""

import pytest

from epscut import EpsilonSchedule, eps_at, parse_schedule


def test_harmonic_values():
    s = EpsilonSchedule.harmonic(0.1, 1.0)
    assert eps_at(s, 0) == 0.1
    assert eps_at(s, 3) == pytest.approx(0.025, abs=0)


def test_harmonic_ratio_approaches_one():
    s = EpsilonSchedule.harmonic(0.1, 1.0)
    for i in (1000, 10_000):
        ratio = eps_at(s, i + 1) / eps_at(s, i)
        assert ratio > 0.999
    assert eps_at(s, 10_001) / eps_at(s, 10_000) == pytest.approx(0.9999, abs=1e-7)


@pytest.mark.parametrize(
    "schedule",
    [
        EpsilonSchedule.harmonic(0.1, 1.0),
        EpsilonSchedule.harmonic(2.0, 0.5),
        EpsilonSchedule.logarithmic(0.1),
    ],
)
def test_strictly_decreasing_and_positive(schedule):
    indices = [2**k for k in range(21)] + [0, 1, 10**6]
    for i in sorted(set(indices)):
        assert eps_at(schedule, i) > 0.0
        assert eps_at(schedule, i + 1) < eps_at(schedule, i)


@pytest.mark.parametrize(
    "schedule",
    [EpsilonSchedule.harmonic(0.1, 1.0), EpsilonSchedule.logarithmic(0.1)],
)
@pytest.mark.parametrize("r", [0.9, 0.99])
def test_sublinearity_witness(schedule, r):
    found = any(
        eps_at(schedule, i + 1) / eps_at(schedule, i) > r
        for i in [2**k for k in range(21)]
    )
    assert found


def test_harmonic_ratio_nondecreasing():
    s = EpsilonSchedule.harmonic(0.1, 1.0)
    ratios = [eps_at(s, i + 1) / eps_at(s, i) for i in range(0, 2000, 37)]
    assert all(b >= a for a, b in zip(ratios, ratios[1:]))


def test_constant_kind_is_constant():
    s = EpsilonSchedule.constant_for_testing(0.25)
    assert [eps_at(s, i) for i in (0, 5, 500)] == [0.25, 0.25, 0.25]


def test_validation():
    with pytest.raises(ValueError):
        EpsilonSchedule.harmonic(0.0)
    with pytest.raises(ValueError):
        EpsilonSchedule.harmonic(0.1, 1.5)
    with pytest.raises(ValueError):
        EpsilonSchedule("quadratic", 0.1)
    with pytest.raises(ValueError):
        eps_at(EpsilonSchedule.harmonic(0.1), -1)


def test_parse_descriptors():
    assert parse_schedule("harmonic:p=0.5", 0.2) == EpsilonSchedule.harmonic(0.2, 0.5)
    assert parse_schedule("harmonic", 0.2) == EpsilonSchedule.harmonic(0.2, 1.0)
    assert parse_schedule("log", 1.0) == EpsilonSchedule.logarithmic(1.0)
    assert parse_schedule("const", 1.0) == EpsilonSchedule.constant_for_testing(1.0)
    with pytest.raises(ValueError):
        parse_schedule("harmonic:q=2", 0.1)
    with pytest.raises(ValueError):
        parse_schedule("geometric", 0.1)
