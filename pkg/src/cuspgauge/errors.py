"""Exception hierarchy.

Every error carries the CLI exit code it maps to: 2 for bad input,
1 for a valid run whose answer is negative, 3 for numerical trouble.
"""


class CuspGaugeError(Exception):
    exit_code = 2


class InvalidInput(CuspGaugeError, ValueError):
    exit_code = 2


class InvalidSlope(InvalidInput):
    pass


class InvalidLattice(InvalidInput):
    pass


class DegeneratePair(InvalidInput):
    pass


class PreconditionError(InvalidInput):
    """An admissibility or hypothesis check failed; the message names it."""


class CatalogError(InvalidInput):
    pass


class Infeasible(CuspGaugeError):
    """A construction has no solution for the requested parameters."""

    exit_code = 1


class NoCertificate(CuspGaugeError):
    exit_code = 1


class NumericalInconsistency(CuspGaugeError):
    exit_code = 3
