"""Exception hierarchy shared by every module."""


class SegstabError(Exception):
    """Base class for all library errors."""


class DimensionError(SegstabError, ValueError):
    pass


class InvalidMatrixError(SegstabError, ValueError):
    pass


class IllConditioned(SegstabError):
    """Raised when a factorized solve is numerically unreliable."""

    def __init__(self, estimate, limit, what="matrix"):
        self.estimate = float(estimate)
        self.limit = float(limit)
        super().__init__(
            f"{what} is ill-conditioned: condition estimate {self.estimate:.3e} "
            f"exceeds {self.limit:.3e}"
        )


class EigenSolverError(SegstabError):
    pass


class PreconditionViolated(SegstabError, ValueError):
    pass


class NotRankOneStructured(SegstabError, ValueError):
    """Raised when vertex differences are not rank one with a shared factor."""

    def __init__(self, message, pair=None, ratio=None):
        self.pair = pair
        self.ratio = ratio
        super().__init__(message)


class StructureCheckFailed(SegstabError):
    pass


class VerificationError(SegstabError):
    pass
