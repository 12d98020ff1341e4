"""Exception types raised by cyclehom."""


class CyclehomError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(CyclehomError, ValueError):
    pass


class NotAComplex(CyclehomError, ValueError):
    """A composite of consecutive differentials is nonzero."""


class SimplicialIdentityViolation(CyclehomError, ValueError):
    pass


class NotADoubleComplex(CyclehomError, ValueError):
    pass


class InvalidGroup(CyclehomError, ValueError):
    """A multiplication table fails one of the group axioms."""

    def __init__(self, axiom, detail=""):
        self.axiom = axiom
        msg = axiom if not detail else f"{axiom}: {detail}"
        super().__init__(msg)


class NotAnAutomorphism(CyclehomError, ValueError):
    pass


class NotAHomomorphism(CyclehomError, ValueError):
    pass


class TruncationTooSmall(CyclehomError, ValueError):
    pass


class CompositeModulus(CyclehomError, ValueError):
    pass
