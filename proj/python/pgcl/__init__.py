"""p-group capability toolkit: Schur multipliers, epicenters, classification."""

import json

from ._pgcl import (
    DEFAULT_HOMOLOGY_BOUND,
    MAX_HOMOLOGY_BOUND,
    SCHEMA,
    Error,
    ParseError,
    canonical,
    multiplier,
    order,
)
from . import _pgcl

__all__ = [
    "DEFAULT_HOMOLOGY_BOUND",
    "MAX_HOMOLOGY_BOUND",
    "SCHEMA",
    "Error",
    "ParseError",
    "build",
    "canonical",
    "is_capable",
    "multiplier",
    "order",
    "report",
    "sweep",
]


def report(expr, homology_bound=DEFAULT_HOMOLOGY_BOUND, max_order=128, strict=False):
    """Full report for one group expression, as a dict."""
    return json.loads(_pgcl.report_json(expr, homology_bound, max_order, strict))


def is_capable(expr, homology_bound=DEFAULT_HOMOLOGY_BOUND):
    return report(expr, homology_bound)["capability"]["capable"]


def build(expr, max_order=128):
    """Multiplication table document for the group."""
    return json.loads(_pgcl.group_json(expr, max_order))


def sweep(primes, max_order=64, homology_bound=DEFAULT_HOMOLOGY_BOUND, workers=1):
    """Returns (csv_text, summary_dict, exit_code)."""
    csv, summary, code = _pgcl.sweep(list(primes), max_order, homology_bound, workers)
    return csv, json.loads(summary), code
