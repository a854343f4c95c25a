class TsurfError(Exception):
    """Base class for library errors."""


class InvalidParameter(TsurfError, ValueError):
    pass


class InvalidGenus(InvalidParameter):
    pass


class ValidationFailed(TsurfError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("surface failed validation: " + "; ".join(map(str, self.violations)))


class InconsistentSurface(TsurfError):
    pass


class TriangulationFailure(TsurfError):
    pass


class NoConePoints(TsurfError):
    pass


class RefinementFailure(TsurfError):
    pass


class BudgetExceeded(TsurfError):
    """Development budget hit; ``partial`` holds whatever was found before."""

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)
        self.partial_result = True


class ParseError(TsurfError, ValueError):
    pass
