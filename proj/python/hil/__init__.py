"""Invariant subspace checks for composition operators on Hardy spaces."""

import json as _json

from ._hil import (
    AdmissiblePair,
    DiskSelfMap,
    HilError,
    InnerFunction,
    schema_version,
)
from . import _hil

__all__ = [
    "AdmissiblePair",
    "DiskSelfMap",
    "HilError",
    "InnerFunction",
    "check_Hab",
    "check_beurling",
    "check_zn_Hab_monomial",
    "run",
    "schema_version",
]


def _truncation(overrides):
    return _json.dumps(overrides) if overrides else ""


def check_beurling(theta, phi, **truncation):
    """Verdict dictionary for invariance of theta H^p under C_phi."""
    return _json.loads(_hil.check_beurling(theta, phi, _truncation(truncation)))


def check_Hab(phi, pair, **truncation):
    """Verdict dictionary for invariance of H^p_{alpha,beta} under C_phi."""
    return _json.loads(_hil.check_Hab(phi, pair, _truncation(truncation)))


def check_zn_Hab_monomial(n, k, pair, **truncation):
    """Verdict dictionary for invariance of z^n H^p_{alpha,beta} under z^k."""
    return _json.loads(_hil.check_zn_Hab_monomial(n, k, pair, _truncation(truncation)))


def run(command, job, timing=False):
    """Run a CLI job (dict) in-process; returns (report dict, exit code)."""
    text, code = _hil.run_job(command, _json.dumps(job), timing)
    return _json.loads(text), code
