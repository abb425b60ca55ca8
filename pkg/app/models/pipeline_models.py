from pydantic import BaseModel, Field
from typing import List, Optional, Tuple
from enum import Enum

from app.models.layout_models import Witness


class GridColor(str, Enum):
    RED = "red"
    BLUE = "blue"


class PairRelation(str, Enum):
    CROSSING = "crossing"
    SEPARATED = "separated"


class CaseTag(str, Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    INSUFFICIENT = "insufficient"


class RamseyMode(str, Enum):
    EXACT_SMALL = "exact_small"
    UPPER = "upper"


class ProductOrderKind(str, Enum):
    IDENTITY = "identity"
    GRID_MAJOR = "grid-major"


PairMatrix = List[List[Optional[PairRelation]]]


# ==================== PARAMETERS ====================
class PipelineParams(BaseModel):
    """Parameter chain for a target stack bound s; a itself is only reported as log2(a)"""

    s: int = Field(..., ge=1)
    n: int
    c: int
    d: int
    ramsey_args: Tuple[int, int]
    b: int
    exponent: int
    log2_a: float


# ==================== PROOF TRACE ====================
class ProofTrace(BaseModel):
    a: int
    n: int
    c: int
    d: int
    leaf_subsequence: List[int]
    guaranteed_length: int
    grid_coloring: List[GridColor]
    mono_path: List[int] = []
    path_color: Optional[GridColor] = None
    leaf_order_reversed: bool = False
    pair_matrix: PairMatrix = []
    case_tag: CaseTag
    subcase: Optional[str] = None
    homogeneous_paths: List[int] = []
    twist: Optional[Witness] = None
    stack_lower_bound: int = 0
    insufficiency: Optional[str] = None


# ==================== REQUESTS ====================
class PipelineRequest(BaseModel):
    a: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    c: int = Field(3, ge=2)
    d: int = Field(3, ge=2)
    order: ProductOrderKind = ProductOrderKind.IDENTITY
    custom_order: Optional[List[int]] = None
