"""Shared exception taxonomy (mapped to CLI exit codes)."""


class DataError(Exception):
    """Invalid or inconsistent input data (exit code 2)."""


class CoefficientBudgetError(Exception):
    """Not enough Fourier coefficients to decide (exit code 3)."""

    def __init__(self, needed, have, context=""):
        self.needed = needed
        self.have = have
        super().__init__(
            f"need coefficients up to the Sturm bound {needed} but only {have} are available"
            + (f" ({context})" if context else ""))


class InternalError(Exception):
    """An internal invariant failed (exit code 4)."""


class IntegralityError(Exception):
    """A reduction was requested for a non-integral element (distinct from
    a congruence simply failing)."""
