"""
Error hierarchy for the layout toolkit

Every error carries the CLI exit code and the HTTP status it maps to.
"""

from typing import List, Optional, Tuple


class LayoutToolkitError(Exception):
    exit_code = 2
    status_code = 400


# ==================== INPUT ERRORS (exit 2) ====================
class InvalidParameterError(LayoutToolkitError):
    status_code = 422


class InvalidBuildError(InvalidParameterError):
    pass


class InvalidEdgeError(InvalidParameterError):
    pass


class GraphFormatError(LayoutToolkitError):
    pass


class MalformedLayoutError(LayoutToolkitError):
    pass


# ==================== INVALID LAYOUT (exit 1) ====================
class InvalidLayoutError(LayoutToolkitError):
    exit_code = 1
    status_code = 422


# ==================== INAPPLICABLE ALGORITHM (exit 3) ====================
class InvalidInputError(LayoutToolkitError):
    exit_code = 3
    status_code = 422


class NotOuterplanarError(InvalidInputError):
    def __init__(self, message: str, crossing_pair: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None):
        super().__init__(message)
        self.crossing_pair = crossing_pair


class NotTwoPageEmbeddableError(InvalidInputError):
    def __init__(self, message: str, odd_cycle: List[Tuple[int, int]]):
        super().__init__(message)
        self.odd_cycle = odd_cycle


class InvalidEmbeddingError(InvalidInputError):
    pass


# ==================== SIZE LIMIT (exit 4) ====================
class SizeLimitError(LayoutToolkitError):
    exit_code = 4
    status_code = 413


# ==================== CONTRACT ERRORS (exit 5) ====================
class PipelineContractError(LayoutToolkitError):
    exit_code = 5
    status_code = 500


class TheoremViolationError(PipelineContractError):
    pass


class MonotonicityViolationError(PipelineContractError):
    pass
