"""Exception hierarchy.

Every domain failure derives from :class:`DomainError` so the CLI can map it
to exit code 1 with a machine-readable record.
"""


class DomainError(Exception):
    code = "DomainError"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def record(self):
        return {"error": self.code, "message": str(self), **{k: str(v) for k, v in self.details.items()}}


class ParseError(DomainError):
    code = "ParseError"


class InvalidFront(DomainError):
    code = "InvalidFront"


class Inconsistent(DomainError):
    """No Z/2 Maslov potential exists (odd cusp cycle)."""
    code = "Inconsistent"


MaslovInconsistent = Inconsistent


class DegenerateCover(DomainError):
    code = "DegenerateCover"


class DegenerateEndpoints(DomainError):
    code = "DegenerateEndpoints"


class UnknownName(DomainError):
    code = "UnknownName"


class InvalidSite(DomainError):
    code = "InvalidSite"


class NotNormal(DomainError):
    code = "NotNormal"


class ContinuationError(DomainError):
    """Zero or several characteristic continuations were found."""
    code = "ContinuationError"


class NotACrossing(DomainError):
    code = "NotACrossing"


class NotShort(DomainError):
    code = "NotShort"


class CutHitsFront(DomainError):
    code = "CutHitsFront"


class NotNilpotent(DomainError):
    code = "NotNilpotent"


class NonNilpotentCohomology(DomainError):
    code = "NonNilpotentCohomology"


class BadParams(DomainError):
    code = "BadParams"
