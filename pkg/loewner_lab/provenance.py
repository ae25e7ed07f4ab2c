#!/usr/bin/env python3
"""
provenance.py — the build stamp carried by every suite report.

Two runs of the suite compare link by link only when the eigen-solver stack and the
verdict policy (Loewner tolerance, marginal retry window) match, so both are recorded.
There is no timestamp; a report is a pure function of (config, seed).
"""
from __future__ import annotations

import numpy as np
import scipy

from .chains import MARGINAL_FACTOR
from .linalg import DEFAULT_RTOL

TOOL_NAME = "loewner-lab"
# Chains, instance generators or the marginal policy changed in a way that moves gaps.
TOOL_VERSION = "1.1.0"
# JSON/CSV report and dump layout.
SCHEMA_VERSION = "1.0"


def build_provenance() -> dict:
    return {
        "tool": TOOL_NAME,
        "tool_version": TOOL_VERSION,
        "schema_version": SCHEMA_VERSION,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "default_rtol": DEFAULT_RTOL,
        "marginal_factor": MARGINAL_FACTOR,
    }
