"""Typed errors raised across the library."""


class PingPongError(Exception):
    """Base class for library errors."""


class DegeneratePoints(PingPongError):
    pass


class OverlapError(PingPongError):
    pass


class NotHyperbolic(PingPongError):
    pass


class CompositionNotHyperbolic(PingPongError):
    pass


class SharedFixedPoint(PingPongError):
    pass


class Commuting(PingPongError):
    pass


class PreconditionViolated(PingPongError):
    pass


class CommutatorNotHyperbolic(PingPongError):
    pass


class FactorNotAbelian(PingPongError):
    pass


class NotDense(PingPongError):
    pass


class SeedChainViolation(PingPongError):
    pass


class ChainViolation(PingPongError):
    pass


class CoverageFailure(PingPongError):
    pass


class ParseError(PingPongError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class ValidationError(PingPongError):
    pass


class ActionMismatch(PingPongError):
    pass


class InconsistentGapData(PingPongError):
    pass
