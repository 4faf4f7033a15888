"""Exception hierarchy shared by every module of the toolkit."""


class ContactDualError(Exception):
    """Base class for all toolkit errors."""


class BoundExceeded(ContactDualError):
    pass


class ShapeMismatch(ContactDualError):
    pass


class InternalContradiction(ContactDualError):
    """A verified mathematical statement failed on concrete data."""


class NotATopology(ContactDualError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotContinuous(ContactDualError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotOpen(ContactDualError):
    pass


class NotEquivalence(ContactDualError):
    pass


class NotStone(ContactDualError):
    pass


class NotDiscrete(ContactDualError):
    pass


class NotSurjective(ContactDualError):
    pass


class PreconditionFailed(ContactDualError):
    def __init__(self, message, failed=None):
        super().__init__(message)
        self.failed = failed


class DegenerateAlgebra(ContactDualError):
    pass


class NotReflexive(ContactDualError):
    pass


class NotSymmetric(ContactDualError):
    pass


class NotContact(ContactDualError):
    pass


class NotNormal(ContactDualError):
    pass


class NotDVMorphism(ContactDualError):
    pass


class NotComposable(ContactDualError):
    pass


class ConditionFFailed(ContactDualError):
    pass


class NotWellDefined(ContactDualError):
    pass


class RigidityRequired(ContactDualError):
    pass


class LawViolation(ContactDualError):
    """A category, functor or natural transformation law failed.

    ``kind`` is one of ``associativity``, ``identity``, ``functoriality``,
    ``naturality`` or ``shape``; ``witness`` names the offending data.
    """

    def __init__(self, kind, witness, message=""):
        super().__init__(message or f"{kind} violated at {witness!r}")
        self.kind = kind
        self.witness = witness


class FixtureSyntaxError(ContactDualError):
    pass
