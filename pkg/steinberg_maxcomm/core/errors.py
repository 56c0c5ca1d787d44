"""
Exception hierarchy for the Steinberg toolkit
"""

from typing import Any, Optional, Tuple


class SteinbergError(Exception):
    """Base class for every rejection raised by the toolkit"""


class InvalidGroupoidError(SteinbergError, ValueError):
    """Constructor input does not describe a groupoid"""


class InvalidSliceError(SteinbergError, ValueError):
    """Subset on which dom or ran is not injective"""

    def __init__(self, message: str, pair: Optional[Tuple[Any, Any]] = None):
        super().__init__(message)
        self.pair = pair


class CarrierMismatchError(SteinbergError, ValueError):
    """Operands live over different groupoids or graphs"""


class InvalidPartitionError(SteinbergError, ValueError):
    pass


class InvalidGraphError(SteinbergError, ValueError):
    pass


class InvalidPathError(SteinbergError, ValueError):
    pass


class HypothesisViolation(SteinbergError):
    """A theorem precondition (primeness, acyclicity, path conditions) fails"""

    def __init__(self, message: str, violations: Optional[list] = None):
        super().__init__(message)
        self.violations = list(violations or [])


class NonCommutativeError(SteinbergError):
    """Candidate span is not commutative"""

    def __init__(self, message: str, pair: Tuple[Any, Any]):
        super().__init__(message)
        self.pair = pair


class DocumentError(SteinbergError):
    """Malformed interchange document"""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
