"""Shared exception types.

The command-line front end maps these onto exit codes: parse errors exit 1,
domain errors exit 2, inconclusive verdicts exit 3.
"""


class QuasinvError(Exception):
    pass


class ParseError(QuasinvError):
    """Malformed group spec, multiplicity string or polynomial expression."""


class DomainError(QuasinvError):
    """Input violates a mathematical precondition (e.g. p not quasi-invariant)."""


class InconclusiveError(QuasinvError):
    """The requested bound was too small to decide the question."""


class ReconstructionError(InconclusiveError):
    """Degree bound too small to reconstruct a rational generating function."""
