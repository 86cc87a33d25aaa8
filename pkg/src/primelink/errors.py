"""Exception types shared across the package.

Plain ValueError / TypeError mean malformed input (wrong type, not a prime,
out of supported range). The classes below carry meaning beyond that:
well-formed input on which a conditional statement's hypotheses fail, or a
bounded computation that gave up.
"""

from __future__ import annotations


class HypothesisError(ValueError):
    """Input is well formed but a required hypothesis does not hold.

    Examples: a quartic symbol of a non-residue, a Redei triple whose
    linking parities do not vanish, a non-split prime passed to the Gold
    test. Command line tools map this to exit status 1.
    """


class SearchExhausted(RuntimeError):
    """A bounded search hit its work cap before finding what must exist.

    Distinct from insolvability: callers raising this believe a solution
    exists (or cannot rule it out) but refuse to search further.
    """


class NormalizationError(RuntimeError):
    """No admissible normalization was found at the configured precision.

    Raised by the Redei conic machinery when no candidate generator passes
    the 2-adic admissibility test over the inspected conic points.
    """


class NotImplementedVariant(NotImplementedError):
    """A data shape the model accepts but no computation supports yet."""
