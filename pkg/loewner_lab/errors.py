#!/usr/bin/env python3
"""
errors.py — the one exception hierarchy every loewner_lab module raises from.

Everything derives from LoewnerLabError so the CLI can catch the library's failures
without swallowing genuine bugs. Value-shaped errors also subclass ValueError and
arithmetic ones ArithmeticError, so plain `except ValueError` callers keep working.
"""
from __future__ import annotations


class LoewnerLabError(Exception):
    """Base for every error raised by loewner_lab."""


# -- linear algebra ----------------------------------------------------------------------

class NotHermitian(LoewnerLabError, ValueError):
    """Matrix fails the hermiticity tolerance 1e-12·max(1, ‖A‖_F)."""


class SpectrumOutOfDomain(LoewnerLabError, ValueError):
    """An eigenvalue lies outside the clamp window of [m, M]."""


class FunctionDomainError(LoewnerLabError, ValueError):
    """A scalar function is undefined (or non-finite) at a requested point."""


class DimensionMismatch(LoewnerLabError, ValueError):
    pass


class NotPositiveDefinite(LoewnerLabError, ValueError):
    pass


class DecompositionError(LoewnerLabError, ArithmeticError):
    """Eigendecomposition residual or unitarity post-check failed."""


# -- scalar functions --------------------------------------------------------------------

class InvalidParams(LoewnerLabError, ValueError):
    pass


class ZeroDerivative(LoewnerLabError, ArithmeticError):
    pass


class NotMonotone(LoewnerLabError, ValueError):
    """Derivative changes sign on [m, M] (or a_f·f'(t0) ≤ 0)."""


class NoRoot(LoewnerLabError, ArithmeticError):
    """Bisection bracket has equal signs at both ends."""


class PoleError(LoewnerLabError, ArithmeticError):
    pass


# -- maps --------------------------------------------------------------------------------

class InvalidSpec(LoewnerLabError, ValueError):
    """A map spec violates the condition named in the message."""


# -- config and io -----------------------------------------------------------------------

class ConfigError(LoewnerLabError, ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


class ReportIoError(LoewnerLabError, OSError):
    """Writing or reading a report or dump file failed."""


IoError = ReportIoError
