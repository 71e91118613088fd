class InputError(ValueError):
    """Malformed or out-of-domain input."""


class ResourceLimitError(RuntimeError):
    """A configured size limit would be exceeded."""


class IncoherentAssessmentError(InputError):
    """An operation that needs a coherent assessment received an incoherent one."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
