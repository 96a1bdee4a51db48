"""Report serialization and the shift-set generators."""

import json

import pytest

from gpylab import sequences
from gpylab.errors import DomainError
from gpylab.report import ExperimentReport


def test_report_json_round_trip():
    rep = ExperimentReport(
        experiment="demo",
        params={"N": 100},
        empirical=2.5,
        predicted_mid=2.0,
        predicted_rad=0.1,
        runtime_seconds=0.5,
        seed=7,
        extra={"note": "x"},
    )
    back = ExperimentReport.from_json(rep.to_json())
    assert back == rep


def test_report_ratio_and_stable_mode():
    rep = ExperimentReport(experiment="demo", empirical=3.0, predicted_mid=2.0,
                           runtime_seconds=1.0)
    assert rep.ratio == pytest.approx(1.5)
    stable = json.loads(rep.to_json(stable=True))
    assert "runtime_seconds" not in stable
    loose = json.loads(rep.to_json())
    assert loose["runtime_seconds"] == 1.0


def test_report_ratio_none_when_unpredicted():
    assert ExperimentReport(experiment="x", empirical=1.0).ratio is None


def test_interval_sequence():
    assert sequences.generate_sequence("interval", 100, h=5) == [1, 2, 3, 4, 5]
    assert sequences.generate_sequence("interval", 3, h=10) == [1, 2, 3]


def test_power_sequence():
    assert sequences.generate_sequence("powers_k", 100, k=3) == [3, 9, 27, 81]


def test_sum_two_squares_exponents():
    # Exponents x^2 + y^2 with x, y >= 1: 2, 5, 8, ...
    vals = sequences.generate_sequence("powers_k_sum_two_squares", 2**9, k=2)
    assert vals == [4, 32, 256]


def test_custom_exponents_and_empty_result():
    vals = sequences.generate_sequence("custom_exponents", 100, k=2, exponents=[3, 5, 9])
    assert vals == [8, 32]
    assert sequences.generate_sequence("powers_k", 1, k=2) == []


def test_sequence_errors():
    with pytest.raises(DomainError):
        sequences.generate_sequence("nope", 100)
    with pytest.raises(DomainError):
        sequences.generate_sequence("custom_exponents", 100, exponents=[])
    with pytest.raises(DomainError):
        sequences.as_tuple([])


def test_density_threshold_monotone():
    assert sequences.density_threshold(10**6) > sequences.density_threshold(10**3)
