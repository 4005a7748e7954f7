"""
errors.py — Exception hierarchy for the homological algebra engine

Every error raised by src.* derives from HomAlgError so callers (the CLI in
particular) can map failures to exit codes in one place.

Usage:
  from src.errors import LiftFailed, HypothesisFailed
"""

from typing import Optional


class HomAlgError(Exception):
    """Base class for all engine errors."""


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------

class NoSolution(HomAlgError):
    pass


class DimensionMismatch(HomAlgError):
    pass


class NotContained(HomAlgError):
    pass


class NotWellDefined(HomAlgError):
    pass


# ---------------------------------------------------------------------------
# Algebras, modules, Hopf structure
# ---------------------------------------------------------------------------

class InvalidStructure(HomAlgError):
    """An algebra, module, complex or group table failed an axiom."""


class SubalgebraNotUnital(HomAlgError):
    pass


class NotStable(HomAlgError):
    pass


class NotNilpotent(HomAlgError):
    pass


class NotLocal(HomAlgError):
    pass


class ActionNotWellDefined(HomAlgError):
    pass


class InverseCheckFailed(HomAlgError):
    pass


class NotNormal(HomAlgError):
    pass


# ---------------------------------------------------------------------------
# Complexes and resolutions
# ---------------------------------------------------------------------------

class NotShortExact(HomAlgError):
    pass


class SignCheckFailed(HomAlgError):
    pass


class ProviderFailure(HomAlgError):
    pass


class LiftFailed(HomAlgError):
    pass


class BudgetExceeded(HomAlgError):
    pass


# ---------------------------------------------------------------------------
# Spectral sequences and comparisons
# ---------------------------------------------------------------------------

class NotComparable(HomAlgError):
    pass


class UntrustedRegionRequested(HomAlgError):
    pass


class HypothesisFailed(HomAlgError):
    """A theorem hypothesis did not validate; `condition` names it."""

    def __init__(self, condition: str, detail: Optional[str] = None):
        self.condition = condition
        self.detail = detail
        message = f"hypothesis {condition} failed"
        if detail:
            message += f": {detail}"
        super().__init__(message)
