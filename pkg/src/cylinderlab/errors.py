"""Exception hierarchy shared by every module."""


class CylinderLabError(ValueError):
    pass


class InvalidModulus(CylinderLabError):
    pass


class InvalidDirection(CylinderLabError):
    pass


class DegenerateLine(CylinderLabError):
    pass


class ModulusMismatch(CylinderLabError):
    pass


class InvalidCylinderSpec(CylinderLabError):
    pass


class DegreeTooHigh(CylinderLabError):
    pass


class NotRepresentable(CylinderLabError):
    pass


class DegeneratePair(CylinderLabError):
    pass


class PreconditionViolated(CylinderLabError):
    """Raised when an input fails a mathematical precondition.

    ``witness`` carries whatever object demonstrates the failure, typically a
    ``(Plane, sum)`` pair for a non-divisible weight.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeViolation(PreconditionViolated):
    pass


class NotAMultiset(PreconditionViolated):
    pass


class LiftObstruction(CylinderLabError):
    """The negative-value repair loop could not find a point to borrow from."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class InvalidBijection(CylinderLabError):
    pass


class ScaleRefused(CylinderLabError):
    pass
