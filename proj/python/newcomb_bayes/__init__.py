"""Exact solvers for the two-box prediction problem modelled as extended games
over Bayes nets.

Probabilities go in as ``fractions.Fraction``, ints, or ``"num/den"`` strings
and come back as ``Fraction``. Everything else is plain dicts and lists.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence, Union

from . import _core
from ._core import NewcombError

__all__ = [
    "NewcombError",
    "canonical_scenario",
    "check_consistency",
    "check_net_consistency",
    "feasible",
    "run_cli",
    "simulate",
    "solve",
    "time_reverse",
]

__version__ = _core.__version__

Rat = Union[Fraction, int, str]
Scenario = Optional[dict]

_RATIONAL = re.compile(r"^-?\d+/\d+$")


def _rat(x: Rat) -> str:
    if isinstance(x, bool):
        raise TypeError("expected a rational, got bool")
    if isinstance(x, (Fraction, int)):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    if isinstance(x, str):
        return x
    raise TypeError(f"expected Fraction, int or 'num/den' string, got {type(x).__name__}")


def _rats(xs: Optional[Iterable[Rat]]) -> Optional[list]:
    return None if xs is None else [_rat(x) for x in xs]


def _decode(value: Any) -> Any:
    if isinstance(value, str) and _RATIONAL.match(value):
        return Fraction(value)
    if isinstance(value, list):
        return [_decode(v) for v in value]
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    return value


def _encode_scenario(scenario: Scenario) -> str:
    if scenario is None:
        return _core.canonical_scenario()
    return json.dumps(scenario, default=lambda f: _rat(f))


def _call(text: str) -> Any:
    return _decode(json.loads(text))


def canonical_scenario() -> dict:
    """The standard two-box scenario: perfect predictor, uniform P(g)."""
    return _call(_core.canonical_scenario())


def time_reverse(scenario: Scenario = None) -> dict:
    return _call(_core.time_reverse(_encode_scenario(scenario)))


def solve(game: str, *, alpha: Optional[Rat] = None, pg: Optional[Sequence[Rat]] = None,
          scenario: Scenario = None) -> dict:
    """Best response in ``"fearful"``, ``"realist"``, ``"combined"`` or ``"variant"``."""
    return _call(_core.solve(game, _encode_scenario(scenario),
                             None if alpha is None else _rat(alpha), _rats(pg)))


def feasible(alpha: Optional[Rat] = None, *, oracle_grid: Optional[int] = None,
             scenario: Scenario = None) -> dict:
    """g-independent choices left feasible by an alpha-accurate predictor."""
    return _call(_core.feasible(_encode_scenario(scenario),
                                None if alpha is None else _rat(alpha), oracle_grid))


def check_consistency(*, alpha: Optional[Rat] = None, py: Optional[Sequence[Rat]] = None,
                      pg: Optional[Sequence[Rat]] = None, h: Optional[Sequence[Rat]] = None,
                      scenario: Scenario = None) -> dict:
    """Compare the choice-first and prediction-first joints for one profile."""
    return _call(_core.consistency(_encode_scenario(scenario),
                                   None if alpha is None else _rat(alpha),
                                   _rats(py), _rats(pg), _rats(h)))


def check_net_consistency(documents: Sequence[dict]) -> dict:
    """Compare arbitrary nets given as net/profile documents."""
    encoded = [json.dumps(d, default=lambda f: _rat(f)) for d in documents]
    return _call(_core.consistency_nets(encoded))


def simulate(net: str, n: int, seed: int, *, alpha: Optional[Rat] = None,
             py: Optional[Sequence[Rat]] = None, pg: Optional[Sequence[Rat]] = None,
             h: Optional[Sequence[Rat]] = None, scenario: Scenario = None) -> dict:
    """Seeded sample of n (g, y) pairs from the chosen net."""
    return _call(_core.simulate(_encode_scenario(scenario), net, n, seed,
                                None if alpha is None else _rat(alpha),
                                _rats(py), _rats(pg), _rats(h)))


def run_cli(*args: str) -> tuple:
    """Run the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return tuple(_core.run_cli(list(args)))
