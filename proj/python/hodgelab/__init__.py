"""Python access to the hodge-lab numerical core."""

import json

from . import _core
from ._core import (
    NumericalError,
    ValidationError,
    command_names,
    hitchin_map_point,
    moduli_dimensions,
    nilpotent_commutator_bound,
    octagon_generators,
    oper_maximality,
    principal_embedding,
    trivial_oper_monodromy,
)

__version__ = _core.__version__


def default_parameters(command):
    return json.loads(_core.default_parameters(command))


def run(command, **params):
    """Runs a command; returns (report dict, csv text or None)."""
    report, csv = _core.run_command(command, json.dumps(params) if params else "")
    return json.loads(report), csv


def suite(level="smoke", seed=7):
    return json.loads(_core.run_suite(level, seed))


__all__ = [
    "NumericalError",
    "ValidationError",
    "command_names",
    "default_parameters",
    "hitchin_map_point",
    "moduli_dimensions",
    "nilpotent_commutator_bound",
    "octagon_generators",
    "oper_maximality",
    "principal_embedding",
    "run",
    "suite",
    "trivial_oper_monodromy",
]
