"""Exact Chow stability and Donaldson-Futaki computations for weighted points on P^n.

Rationals cross the boundary as "p/q" strings; the helpers here turn them into
Fractions.
"""

import json
from fractions import Fraction

from . import _core
from ._core import Error, InputError, VerificationError, balance_flow, classify, fat_point_length, h0_with_vanishing

__all__ = [
    "Error",
    "InputError",
    "VerificationError",
    "balance_flow",
    "chow_weight",
    "classify",
    "df_invariant",
    "fat_point_length",
    "futaki_from_coeffs",
    "h0_with_vanishing",
    "mumford_weight",
    "run",
]


def _pts(points):
    return [([str(c) for c in coords], int(mult)) for coords, mult in points]


def mumford_weight(coords, weights):
    return Fraction(_core.mumford_weight([str(c) for c in coords], list(weights)))


def chow_weight(n, points, weights):
    return Fraction(_core.chow_weight(n, _pts(points), list(weights)))


def futaki_from_coeffs(c0, c1, b0, b1):
    return Fraction(_core.futaki_from_coeffs(str(c0), str(c1), str(b0), str(b1)))


def df_invariant(n, points, weights, gamma, r_samples=()):
    return Fraction(_core.df_invariant(n, _pts(points), list(weights), gamma, list(r_samples)))


def run(command, document, **options):
    """Run a CLI job; returns (exit_code, parsed JSON report)."""
    if not isinstance(document, str):
        document = json.dumps(document)
    flat = []
    for key, value in options.items():
        flat += [key, str(value)]
    code, out = _core.run(command, document, flat)
    return code, json.loads(out)
