import os
from fractions import Fraction
from pathlib import Path

import pytest

import brdkit

CASES = Path(os.environ.get("BRDKIT_CASES_DIR", Path(__file__).resolve().parents[2] / "cases"))


def test_gatecrasher_posterior_is_exact():
    assert brdkit.gatecrasher_analytic(1000) == "999/1000"
    case = brdkit.gatecrasher_case(10, "v1")
    assert case.credence("g1") == "9/10"


def test_evaluate_alibi():
    report = brdkit.evaluate(brdkit.load(CASES / "alibi.json"))
    assert report["beyond_reasonable_doubt"]["status"] == "FAIL"
    assert [n["id"] for n in report["narrations"]] == brdkit.load(CASES / "alibi.json").narrations


def test_round_trip_and_determinism():
    case = brdkit.load(CASES / "two_accusers.json")
    again = brdkit.Case.from_json(case.to_json())
    assert again.to_json() == case.to_json()
    assert case.evaluate("text") == again.evaluate("text")


def test_label_credence_is_undefined_by_default():
    case = brdkit.load(CASES / "open_and_shut.json")
    assert brdkit.as_fraction(case.credence("N2(confession)")) is None
    assert case.credence("E(confession)") == "1/1"
    assert brdkit.as_fraction(case.credence("culprit", "full")) == Fraction(99, 100)


def test_errors_surface_as_value_errors():
    with pytest.raises(brdkit.BrdkitError):
        brdkit.parse_formula("a & & b")
    with pytest.raises(ValueError):
        brdkit.Case.from_json('{"atoms": ["a"], "thresholds": {"a": "1/2"}}')


def test_bullet_closure():
    closed = brdkit.gatecrasher_case(4, "v2").commitment_closure("accusation")
    assert len(closed) == 5
