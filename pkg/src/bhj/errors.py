"""Exception hierarchy shared by every module."""


class BHJError(Exception):
    """Base class for all library errors."""


class ValidationError(BHJError, ValueError):
    """Input data violates a structural hypothesis."""


class NotInCone(BHJError, ValueError):
    pass


class UnboundedRegion(BHJError, ValueError):
    pass


class DegenerateCone(ValidationError):
    pass


class ExclusionViolation(ValidationError):
    """A torsion order shares a prime with the residue-characteristic exclusion set."""


class IndexOutOfRange(BHJError, IndexError):
    pass


class NotContractible(BHJError, ValueError):
    pass


class NotStrict(BHJError, ValueError):
    pass


class InconsistentData(ValidationError):
    pass


class InconsistentRamification(ValidationError):
    pass


class SecondaryRamPresent(BHJError, ValueError):
    pass


class UnsupportedPrime(BHJError, ValueError):
    pass


class UnsupportedConfig(BHJError, ValueError):
    pass


class NotTerminalInput(BHJError, ValueError):
    pass


class StuckState(BHJError, RuntimeError):
    pass


class SingularIntersectionMatrix(BHJError, ArithmeticError):
    pass


class TerminalityViolation(BHJError, RuntimeError):
    """An intermediate contraction state failed its terminality check."""
