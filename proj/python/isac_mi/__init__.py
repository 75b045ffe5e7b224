"""Mutual-information evaluation of ISAC and FDSAC systems.

Scenario arguments accept either a dict or JSON text in the CLI config format.
"""

import json as _json

from . import _isac_mi
from ._isac_mi import (
    ConfigError,
    ConvergenceError,
    DegenerateNoiseError,
    DomainError,
    InfeasibleFrameError,
    IsacError,
    UnreliableRegimeError,
    comm_mi,
    contains,
    convexify,
    dpc_rates,
    mac_to_bc_transform,
    mmse_sic_user_rates,
    pareto_frontier,
    sensing_mi,
    sr_optimal_covariance,
    sum_power_iwf,
    synthesize_waveform,
    validate,
    water_fill,
)


def _text(scenario):
    return scenario if isinstance(scenario, str) else _json.dumps(scenario)


def default_scenario(kind):
    return _json.loads(_isac_mi.default_scenario(kind))


def normalize_scenario(scenario):
    return _json.loads(_isac_mi.normalize_scenario(_text(scenario)))


def region(scenario, mode):
    return _isac_mi.region(_text(scenario), mode)


def rate_curves(scenario, powers):
    return _isac_mi.rate_curves(_text(scenario), list(powers))


def slopes(scenario):
    return _isac_mi.slopes(_text(scenario))


__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DegenerateNoiseError",
    "DomainError",
    "InfeasibleFrameError",
    "IsacError",
    "UnreliableRegimeError",
    "comm_mi",
    "contains",
    "convexify",
    "default_scenario",
    "dpc_rates",
    "mac_to_bc_transform",
    "mmse_sic_user_rates",
    "normalize_scenario",
    "pareto_frontier",
    "rate_curves",
    "region",
    "sensing_mi",
    "slopes",
    "sr_optimal_covariance",
    "sum_power_iwf",
    "synthesize_waveform",
    "validate",
    "water_fill",
]
