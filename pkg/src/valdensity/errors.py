"""Exception types shared across the package."""


class ValDensityError(Exception):
    """Base class for all library errors."""


class UnknownElement(ValDensityError):
    pass


class ClosureTooLarge(ValDensityError):
    pass


class CarrierTooLarge(ValDensityError):
    pass


class NotInLattice(ValDensityError):
    pass


class NotInAlgebra(ValDensityError):
    pass


class SpaceMismatch(ValDensityError):
    pass


class AxiomViolation(ValDensityError):
    """A set function fails strictness, monotonicity or modularity.

    ``kind`` is one of ``"strict"``, ``"monotone"``, ``"modular"``; ``witness``
    holds the offending lattice members as bit masks.
    """

    def __init__(self, kind: str, witness: tuple[int, ...], message: str = "") -> None:
        self.kind = kind
        self.witness = witness
        super().__init__(message or f"{kind} axiom violated at {witness}")


class UnboundedInput(ValDensityError):
    pass


class UnboundedValuation(ValDensityError):
    pass


class NotSigmaFinite(ValDensityError):
    pass


class NotMorphism(ValDensityError):
    def __init__(self, target_set: int, message: str = "") -> None:
        self.target_set = target_set
        super().__init__(message or f"preimage of target set {target_set:#b} is not in the source lattice")


class NotLinear(ValDensityError):
    pass


class NotLsc(ValDensityError):
    """Raised when a point map has a strict upper level set outside the lattice."""

    def __init__(self, threshold, level_set: int, message: str = "") -> None:
        self.threshold = threshold
        self.level_set = level_set
        super().__init__(message or f"level set above {threshold} ({level_set:#b}) is not in the lattice")


class ValidationFailure(ValDensityError):
    """An input object is malformed; ``what`` names the object."""

    def __init__(self, what: str, why: str) -> None:
        self.what = what
        self.why = why
        super().__init__(f"{what}: {why}")
