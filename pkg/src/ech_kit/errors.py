"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`EchKitError`.
:class:`PreconditionError` covers bad input (CLI exit code 3) and
:class:`NumericError` covers solver or resolution trouble (CLI exit code 4).
"""


class EchKitError(Exception):
    pass


class PreconditionError(EchKitError, ValueError):
    pass


class NumericError(EchKitError, ArithmeticError):
    pass


class ResolutionError(PreconditionError, KeyError):
    """A name does not resolve in the ambient Reeb datum."""

    def __init__(self, name, where="Reeb datum"):
        self.name = name
        super().__init__(f"unknown name {name!r} in {where}")

    def __str__(self):
        return self.args[0]


class NotHalfIntegral(PreconditionError):
    pass


class ConventionError(PreconditionError):
    pass


class ChordParityError(PreconditionError):
    pass


class NonDegeneracyError(PreconditionError):
    pass


class DegeneracyError(PreconditionError):
    """A rotation number hits an integer at some iterate."""

    def __init__(self, theta, i):
        self.theta = theta
        self.i = i
        super().__init__(f"degenerate rotation number {theta}: {i}*theta is an integer")


class CoverError(PreconditionError):
    pass


class CapabilityError(PreconditionError):
    pass


class GenericityError(PreconditionError):
    pass


class DisjointnessError(PreconditionError):
    pass


class ConsistencyError(PreconditionError):
    pass


class PositivityError(PreconditionError):
    pass


class InputError(PreconditionError):
    pass


class ResolutionLimitError(NumericError):
    """Sampling too coarse to decide a winding or separation."""


class SolverError(NumericError):
    pass
