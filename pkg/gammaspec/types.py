from dataclasses import dataclass
from typing import Any, Literal, Optional, Tuple

ElementId = int
Table = Tuple[Tuple[int, ...], ...]

OUTPUT_FORMAT = Literal["text", "json", "dot", "csv"]
CHECK_STATUS = Literal["pass", "fail", "skipped"]


class GammaSpecError(Exception):
    pass


class StructureError(GammaSpecError, ValueError):
    """Tables or input documents are malformed (ragged, unknown names, out-of-range indices)."""


class CapacityError(GammaSpecError):
    """An exhaustive search was refused because the input is above the configured cap."""


class PreconditionError(GammaSpecError, ValueError):
    """The arguments do not satisfy the precondition of the operation."""


class NumericalError(GammaSpecError):
    """An iterative numerical routine did not converge."""


class ConsistencyError(GammaSpecError):
    """Two computations that must agree did not.

    This never describes bad input: it means the implementation is wrong.
    """

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Verdict:
    """Result of a finite-instance verification: whether it holds and, if not, a witness."""

    holds: bool
    witness: Optional[Any] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds
