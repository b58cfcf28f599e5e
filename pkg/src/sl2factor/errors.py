"""Shared exception types.

The CLI maps these onto exit codes: PreconditionError -> 2,
VerificationError (and subclasses) -> 3, I/O problems -> 4.
"""

from __future__ import annotations


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


class VerificationError(RuntimeError):
    """A computed result failed its own consistency check."""


class InadequateSamplingError(VerificationError):
    """Loop samples too coarse: some angular step reached pi/2."""


class SamplingBudgetError(VerificationError):
    """Random drawing hit a degenerate streak and ran out of retries."""
