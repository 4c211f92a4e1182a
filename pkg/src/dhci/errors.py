"""Exception hierarchy shared by all dhci modules."""


class DhciError(Exception):
    """Base class for every error raised by this package."""


class RangeError(DhciError, ValueError):
    """An index or value lies outside its admissible range."""


class CapacityError(DhciError):
    """A size exceeds what the analysis code is documented to handle."""


class ContractError(DhciError):
    """Inputs violate an operation's precondition."""


class StructuralError(ContractError):
    """A decomposed host does not describe a valid partition."""


class PreconditionError(ContractError):
    pass


class GenerationError(DhciError):
    def __init__(self, message, tries):
        super().__init__(message)
        self.tries = tries


class FormatError(DhciError, ValueError):
    """A file on disk does not follow the expected layout."""
