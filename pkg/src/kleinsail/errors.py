"""Exception types shared across the library."""


class KleinSailError(Exception):
    """Base class for all library errors."""


class SingularMatrix(KleinSailError):
    pass


class ReduciblePolynomial(KleinSailError):
    pass


class UnsupportedDimension(KleinSailError):
    pass


class NotSquarefree(KleinSailError):
    pass


class DivisionByZero(KleinSailError):
    pass


class RankDeficient(KleinSailError):
    pass


class PerfectSquareD(KleinSailError):
    pass


class RationalCone(KleinSailError):
    pass


class NotHyperbolic(KleinSailError):
    pass


class FirstCoordinateZero(KleinSailError):
    pass


class OnBoundary(KleinSailError):
    pass


class EmptyPatch(KleinSailError):
    pass


class NotASymmetry(KleinSailError):
    """Raised with the failing commutator attached."""

    def __init__(self, message, commutator=None):
        super().__init__(message)
        self.commutator = commutator


class NonGaloisObstruction(KleinSailError):
    pass


class InsufficientDepth(KleinSailError):
    pass


class NotAUnit(KleinSailError):
    pass


class ConditionViolated(KleinSailError):
    pass


class NotGalois(KleinSailError):
    pass


class NoUnitFound(KleinSailError):
    pass


class StructureViolation(KleinSailError):
    """An identity that must hold by construction failed; indicates a bug upstream."""
