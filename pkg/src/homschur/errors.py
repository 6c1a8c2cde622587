"""Exception hierarchy shared by every module of the package."""


class HomschurError(ValueError):
    """Base class for all mathematical and structural errors raised here."""


class AmbientMismatch(HomschurError):
    pass


class ComplexInvalid(HomschurError):
    pass


class UnknownObject(HomschurError):
    pass


class CompositionMismatch(HomschurError):
    pass


class TruncationOverflow(HomschurError):
    """A composite path is longer than the category's truncation bound."""


class IndexMismatch(HomschurError):
    pass


class ModuleUndefined(HomschurError):
    pass


class ModuleInvalid(HomschurError):
    pass


class NotHomogeneous(HomschurError):
    pass


class ArityMismatch(HomschurError):
    pass


class ConventionMismatch(HomschurError):
    pass


class SymArityExceeded(HomschurError):
    """m! enumeration requested above the configured cap."""


class ParityViolation(HomschurError):
    pass


class ConfigInvalid(HomschurError):
    pass
