"""
Error taxonomy for germcalc.

Every failure raised by the library derives from GermcalcError and carries a
machine-readable code. The CLI maps exit_code straight to the process status.
"""

from __future__ import annotations

from typing import Any


class GermcalcError(Exception):
    """Base class for all germcalc errors"""

    code = "error"
    exit_code = 1

    def __init__(self, message: str = "", **details: Any):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"code": self.code, "message": self.message}
        if self.details:
            data["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return data


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


class UsageError(GermcalcError):
    """Malformed command line or configuration input"""

    code = "usage_error"
    exit_code = 2


class TermSyntaxError(GermcalcError):
    """Expression text does not match the term grammar"""

    code = "syntax_error"
    exit_code = 2

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}", position=position)
        self.position = position


class ArityError(TermSyntaxError):
    """Function application with a missing or extra argument"""

    code = "arity_error"


class DomainError(GermcalcError):
    """A Log/Pow argument is not eventually positive, or a division by the zero germ"""

    code = "domain_error"


class PositivityError(DomainError):
    """An operation that requires an eventually positive germ received another one"""

    code = "positivity_error"


class Undecided(GermcalcError):
    """The zero-equivalence heuristic or the expansion budget ran out"""

    code = "undecided"


class DepthExceeded(GermcalcError):
    """A recursion guard tripped"""

    code = "depth_exceeded"


class Undecomposable(GermcalcError):
    code = "undecomposable"


class NotStandardDomain(GermcalcError):
    code = "not_standard_domain"


class NotInfinitelyIncreasing(GermcalcError):
    code = "not_infinitely_increasing"


class BranchCollision(GermcalcError):
    """An Add node passed through zero, or halving could not keep the lift continuous"""

    code = "branch_collision"


class DomainViolation(GermcalcError):
    """A Log node left the region where the log-chart applies"""

    code = "domain_violation"


class PrecisionExhausted(GermcalcError):
    code = "precision_exhausted"


class EvaluationError(GermcalcError):
    """A term cannot be evaluated as a real number at the requested point"""

    code = "evaluation_error"


class NoSandwichFound(GermcalcError):
    code = "no_sandwich_found"


class SelftestFailed(GermcalcError):
    """At least one acceptance case failed; carries the full report"""

    code = "selftest_failed"

    def __init__(self, message: str, payload: dict[str, Any]):
        super().__init__(message, failed=payload.get("failed"))
        self.payload = payload
