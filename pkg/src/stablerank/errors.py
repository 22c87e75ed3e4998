"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class SymbolUndefined(DomainError):
    """A power residue symbol was requested for non-coprime arguments."""


class PreconditionError(DomainError):
    """A named precondition of a pipeline step failed.

    ``name`` is a short machine-readable tag, ``detail`` carries any
    supporting object (e.g. an obstruction record).
    """

    def __init__(self, name, message, detail=None):
        super().__init__(message)
        self.name = name
        self.detail = detail
