"""Exception hierarchy shared by every module of the package."""


class CrosscutError(Exception):
    """Base class for all errors raised by this package."""


class DuplicateLabel(CrosscutError):
    pass


class UnknownLabel(CrosscutError):
    pass


class CycleDetected(CrosscutError):
    """The reflexive-transitive closure of the input relations is not antisymmetric."""


class EmptySubset(CrosscutError):
    pass


class GuardExceeded(CrosscutError):
    """An exhaustive enumeration would exceed its configured size guard."""


class SizeGuard(GuardExceeded):
    """A simplex or carrier count exceeded its cap."""


class NotASimplex(CrosscutError):
    pass


class NotConnected(CrosscutError):
    pass


class EmptyGammaB(CrosscutError):
    pass


class HypothesisViolated(CrosscutError):
    """A precondition stated by a theorem does not hold for the given input.

    ``witness`` carries whatever evidence the caller computed (a chain, a
    subset, a carrier, ...), so reports can show why.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoMaximum(HypothesisViolated):
    """Some carrier of the crosscut poset has no maximum element."""


class Inconclusive(CrosscutError):
    """A certificate needed by a verifier came back as unknown."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FormatError(CrosscutError):
    """Malformed poset or complex text. ``line`` is 1-based, or None."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
