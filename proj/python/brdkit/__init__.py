"""Exact partial-credence evaluation of legal narrations."""

import json
from fractions import Fraction

from ._core import (
    BrdkitError,
    Case,
    gatecrasher_analytic,
    gatecrasher_case,
    gatecrasher_suite,
    parse_formula,
)

__all__ = [
    "BrdkitError",
    "Case",
    "as_fraction",
    "evaluate",
    "gatecrasher_analytic",
    "gatecrasher_case",
    "gatecrasher_suite",
    "load",
    "parse_formula",
]


def load(path):
    """Read and validate a case document."""
    return Case.from_file(str(path))


def evaluate(case):
    """Full evaluation report as a dict."""
    return json.loads(case.evaluate("json"))


def as_fraction(value):
    """Fraction for a "p/q" credence string, None for undefined ones."""
    if value.startswith("undefined"):
        return None
    return Fraction(value)
