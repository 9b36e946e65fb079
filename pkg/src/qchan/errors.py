"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`QchanError`; input problems additionally derive from
:class:`ValueError` so generic callers can catch them the usual way.
"""


class QchanError(Exception):
    pass


class InputError(QchanError, ValueError):
    pass


class NotSelfAdjoint(InputError):
    pass


class NotHermitian(InputError):
    pass


class NotTracePreserving(InputError):
    pass


class NotARotation(InputError):
    pass


class NotPSD(InputError):
    pass


class NotCP(InputError):
    pass


class SlotPositivityViolated(InputError):
    """|t3| + |lambda3| > 1: the map is not even positivity preserving."""


class NotExtremeForm(InputError):
    pass


class TooManyOperators(InputError):
    pass


class NotAContraction(InputError):
    pass


class BoundaryDegenerate(QchanError):
    pass


class NotOnClosure(QchanError):
    """No image point of the channel reaches the Bloch sphere."""


class NoSolution(InputError):
    pass


class OutOfRange(InputError):
    pass


class EmptySection(InputError):
    pass


class DomainError(InputError):
    pass


class NotTypeIC(InputError):
    pass


class NotTypeIA(InputError):
    pass


class DocumentError(InputError):
    """A channel document failed to parse or validate."""


class ConvergenceFailure(QchanError, RuntimeError):
    pass


class DecompositionCheckFailed(QchanError):
    """A constructed decomposition failed its own post-condition check."""
