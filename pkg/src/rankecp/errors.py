"""Exception types raised by rankecp."""


class RankECPError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(RankECPError, ValueError):
    """Arguments violate an operation's preconditions."""


class UnsupportedParameterError(ParameterError):
    pass


class ReducibleModulusError(ParameterError):
    pass


class SizeError(RankECPError):
    """A brute-force computation would exceed the enumeration budget."""


class PreconditionError(ParameterError):
    pass


class InconsistentInputError(RankECPError):
    """A linear system that was promised to be solvable has no solution."""


class SearchError(RankECPError):
    pass


class DecodingFailure(RankECPError):
    """The received word is outside what the pair can handle."""
