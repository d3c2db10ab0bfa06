"""Equivariant L-functions of abelian extensions of F_q(t) and Fitting-ideal checks.

Configs are dicts with the same fields as the CLI's JSON config:
``{"kind": "carlitz", "q": 3, "m": "t", "S0": ["inf", "t"], "T0": ["t+1"]}``.
S0 defaults to infinity plus the ramified places.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from . import _equitheta
from ._equitheta import (
    CapExceeded,
    ConsistencyError,
    EquithetaError,
    NumericFailure,
    PreconditionError,
    StabilizationFailure,
)

__all__ = [
    "theta",
    "special_values",
    "predict_h2",
    "fitlab",
    "properties",
    "run_cli",
    "EquithetaError",
    "PreconditionError",
    "CapExceeded",
    "StabilizationFailure",
    "NumericFailure",
    "ConsistencyError",
]


def theta(config: dict[str, Any]) -> dict[str, Any]:
    """Theta_{S0,T0}(u), or the per-character rational functions when T0 is empty."""
    return json.loads(_equitheta.theta(json.dumps(config)))


def special_values(config: dict[str, Any], n: int) -> dict[str, Any]:
    """Theta at u = q^(n-1), and the twisted projection when T0 is nonempty."""
    return json.loads(_equitheta.special_values(json.dumps(config), n))


def predict_h2(config: dict[str, Any], n: int, ell: int, k: int, witnesses: Sequence[Sequence[Any]]) -> dict[str, Any]:
    """Predicted Fit(H^2) over (Z/ell^k)[G] from the given T0 witnesses."""
    return json.loads(_equitheta.predict_h2(json.dumps(config), n, ell, k, json.dumps(witnesses)))


def fitlab(prop: str, seed: int = 42, count: int = 100) -> list[dict[str, Any]]:
    """Seeded random instances of one Fitting-ideal property."""
    return json.loads(_equitheta.fitlab(prop, seed, count))


def properties() -> list[str]:
    return list(_equitheta.properties())


def run_cli(args: Sequence[str]) -> tuple[int, str, str]:
    """Runs the command-line tool in-process; returns (exit code, stdout, stderr)."""
    return _equitheta.run_cli(list(args))
