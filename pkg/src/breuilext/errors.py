"""Exception hierarchy shared by all modules.

``DomainError`` marks violations of documented preconditions (bad user
input); ``InternalInconsistency`` marks failures of internal consistency
checks and always indicates a bug, never bad input.
"""


class DomainError(ValueError):
    """A documented precondition was violated by the caller."""


class RangeViolation(DomainError):
    """A tuple entry lies outside its permitted interval."""


class RecurrenceViolation(DomainError):
    """Descent exponents fail the defining recurrence c_{i+1} = p(c_i + r_i)."""


class NonIntegralAlpha(DomainError):
    """The filtration invariants alpha_i are not integers (unreachable here)."""


class PreconditionViolation(DomainError):
    """A stated hypothesis of an operation does not hold for the inputs."""


class EmptyModelSet(DomainError):
    """No model of the requested type and generic fibre exists."""


class HypothesisViolation(DomainError):
    """A named hypothesis bullet fails; ``bullet`` says which."""

    def __init__(self, bullet, message=None):
        self.bullet = bullet
        super().__init__(message or f"hypothesis violated: {bullet}")


class NotGeneric(DomainError):
    """The character quotient fails the genericity digit band."""

    def __init__(self, index=None, message=None):
        self.index = index
        if message is None:
            if index is None:
                message = "empty genericity band: 2e' > p-1"
            else:
                message = f"digit at embedding {index} outside the band [e', p-1-e']"
        super().__init__(message)


class IllegalFlag(DomainError):
    """A flag was passed in a configuration where it is not meaningful."""


class SizeLimit(DomainError):
    """Problem size exceeds the brute-force solver cap."""


class NonIntegralMultiplicity(Exception):
    """Brauer decomposition produced a non-integral multiplicity (a bug)."""


class InconsistentInvariants(Exception):
    """Derived invariants disagree across embeddings (a bug)."""


class InternalInconsistency(Exception):
    """A cross-check between two internal computations failed (a bug)."""
