"""Exception hierarchy.

Every error raised for bad input derives from :class:`InvalidInput`
(a ``ValueError``); failures of a computation on valid input derive from
:class:`ComputationError`.  The CLI maps the two families onto exit codes
2 and 1 respectively.
"""


class NormPlaneError(Exception):
    pass


class InvalidInput(NormPlaneError, ValueError):
    pass


class ComputationError(NormPlaneError, RuntimeError):
    pass


class NonConvex(InvalidInput):
    pass


class ZeroVertex(InvalidInput):
    pass


class DuplicateDirection(InvalidInput):
    pass


class TooFewVertices(InvalidInput):
    pass


class NotPolyhedral(InvalidInput):
    pass


class InvalidEpsilon(InvalidInput):
    pass


class InvalidLambda(InvalidInput):
    pass


class ZeroVector(InvalidInput):
    pass


class NonPositiveRadius(InvalidInput):
    pass


class DegeneratePair(InvalidInput):
    pass


class NotOnSphere(InvalidInput):
    pass


class NotExact(InvalidInput):
    """Irrational or floating data handed to the exact kernel."""


class BracketError(ComputationError):
    """A bisection bracket did not show the expected sign change."""
