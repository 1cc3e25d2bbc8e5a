"""Exception hierarchy shared by every module."""


class CharlierError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(CharlierError, ValueError):
    """Input lies outside the domain of the requested operation."""


class BranchError(DomainError):
    """Point sits on a branch cut the formula excludes."""


class PoleError(CharlierError):
    """Gamma function evaluated at a non-positive integer."""


class IndeterminateError(CharlierError):
    """Both Gamma arguments of a ratio sit at poles."""


class PrecisionExhaustedError(CharlierError):
    """Adaptive precision escalation hit the hard cap without stabilising."""


class CapabilityError(CharlierError):
    """Requested size exceeds what this evaluation route supports."""


class TailInsufficientError(CharlierError):
    def __init__(self, message, suggested_k_max):
        super().__init__(message)
        self.suggested_k_max = suggested_k_max


class LadderBreakdownError(CharlierError):
    """Some w_k vanished, so the product ladder cannot continue."""


class OutOfNeighborhoodError(DomainError):
    """Point is outside the neighbourhood where a turning-point formula is used."""


class AmbiguousDominanceError(DomainError):
    """Neither Airy term dominates; the one-sided form is not applicable."""


class IncompleteScanError(CharlierError):
    def __init__(self, message, found):
        super().__init__(message)
        self.found = found
