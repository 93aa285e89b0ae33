"""Exception hierarchy.  Every error raised by gvsm derives from GVSMError."""


class GVSMError(Exception):
    pass


class ShapeError(GVSMError, ValueError):
    pass


class NonFiniteError(GVSMError, ValueError):
    pass


class SingularMatrixError(GVSMError, ValueError):
    pass


class PreconditionError(GVSMError, ValueError):
    """An input violates a documented precondition (asymmetry, non-unit vector...)."""


class NotDiagonalizableError(GVSMError, ValueError):
    """Raised by :func:`gvsm.linalg.diagonalize`.

    ``reason`` is ``"complex"`` when some eigenvalue is not real and
    ``"defective"`` when the real eigenvectors span fewer than n dimensions.
    """

    def __init__(self, reason, message):
        super().__init__(message)
        self.reason = reason


class ConvergenceError(GVSMError, RuntimeError):
    pass


class ClassificationError(GVSMError, ValueError):
    """A matrix does not belong to the group it was claimed to belong to."""


class InvalidPermutationError(GVSMError, ValueError):
    pass


class KindError(GVSMError, ValueError):
    pass


class EmptyCorpusError(GVSMError, ValueError):
    pass


class EmptyQueryError(GVSMError, ValueError):
    pass


class ZeroVectorError(GVSMError, ValueError):
    pass


class MissingCostError(GVSMError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class BasisMismatchError(GVSMError, ValueError):
    pass


class FormatError(GVSMError, ValueError):
    """Malformed matrix, transform, index or cost file."""
