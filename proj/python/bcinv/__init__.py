"""Python front end for the bcinv C++ library."""

import json

from . import _core
from ._core import (
    Error,
    bc_inverse,
    corner_v,
    integral,
    limit,
    perturbation_bound,
    series,
    spectral_radius,
)

__all__ = [
    "Error",
    "bc_inverse",
    "corner_v",
    "integral",
    "limit",
    "perturbation_bound",
    "run",
    "series",
    "spectral_radius",
    "to_csv",
]


def run(job):
    """Run a job (dict or JSON text). Returns (status, report dict)."""
    text = job if isinstance(job, str) else json.dumps(job)
    status, report = _core.run_job(text)
    return status, json.loads(report)


def to_csv(report):
    return _core.csv(json.dumps(report))
