from pydantic import BaseModel, Field, PrivateAttr, field_validator, model_validator
from typing import Dict, List, Optional, Tuple
from enum import Enum

from app.models.graph_models import Edge, Graph, normalize_edge


class LayoutKind(str, Enum):
    STACK = "stack"
    QUEUE = "queue"


class WitnessKind(str, Enum):
    TWIST = "twist"
    RAINBOW = "rainbow"


class SolveMode(str, Enum):
    EXACT = "exact"
    GREEDY = "greedy"


class ViolationReason(str, Enum):
    CROSSING = "crossing"
    NESTING = "nesting"
    STRICT = "strict"


class LayoutAlgorithm(str, Enum):
    TREE_STACK = "tree-stack"
    TREE_QUEUE = "tree-queue"
    COMPLETE_STACK = "complete-stack"
    COMPLETE_QUEUE = "complete-queue"
    COMPLETE_BIPARTITE_QUEUE = "complete-bipartite-queue"
    X_TREE_STACK = "x-tree-stack"
    X_TREE_QUEUE = "x-tree-queue"
    UNICYCLIC_QUEUE = "unicyclic-queue"
    K_TREE_STACK = "k-tree-stack"
    OUTERPLANAR_STACK = "outerplanar-stack"
    ONE_STACK_TWO_QUEUE = "one-stack-two-queue"
    TWO_STACK_HAMILTONIAN = "two-stack-hamiltonian"
    HEX_STRICT_QUEUE = "hex-strict-queue"
    MAX_RAINBOW = "max-rainbow"
    MIN_STACKS = "min-stacks"
    VERTEX_COVER_STACK = "vertex-cover-stack"
    THREE_STACK_SUBDIVISION = "three-stack-subdivision"


# ==================== LINEAR ORDER ====================
class LinearOrder(BaseModel):
    """Vertices listed left to right along the spine"""

    vertices: Tuple[int, ...]

    _positions: List[int] = PrivateAttr(default_factory=list)

    @model_validator(mode="after")
    def check_bijection(self):
        if sorted(self.vertices) != list(range(len(self.vertices))):
            raise ValueError("order must list every vertex 0..n-1 exactly once")
        positions = [0] * len(self.vertices)
        for rank, vertex in enumerate(self.vertices):
            positions[vertex] = rank
        self._positions = positions
        return self

    @classmethod
    def identity(cls, n: int) -> "LinearOrder":
        return cls(vertices=tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def positions(self) -> List[int]:
        return self._positions

    def position(self, v: int) -> int:
        return self._positions[v]

    def reversed(self) -> "LinearOrder":
        return LinearOrder(vertices=tuple(reversed(self.vertices)))

    def oriented(self, edge: Edge) -> Tuple[int, int]:
        """Positions of the edge endpoints, left first"""
        a, b = self._positions[edge[0]], self._positions[edge[1]]
        return (a, b) if a < b else (b, a)


# ==================== LAYOUT ====================
class Layout(BaseModel):
    kind: LayoutKind
    order: LinearOrder
    pages: Dict[Edge, int]
    k: int = Field(..., ge=0)
    strict: bool = False

    @field_validator("pages", mode="before")
    @classmethod
    def normalize_pages(cls, value):
        return {normalize_edge(*edge): page for edge, page in dict(value).items()}

    @model_validator(mode="after")
    def check_strict_kind(self):
        if self.strict and self.kind != LayoutKind.QUEUE:
            raise ValueError("only queue layouts can be strict")
        return self

    def page_of(self, edge: Edge) -> int:
        return self.pages[normalize_edge(*edge)]

    def page_edges(self) -> Dict[int, List[Edge]]:
        """Page id -> sorted edges, for every page 1..k"""
        grouped: Dict[int, List[Edge]] = {page: [] for page in range(1, self.k + 1)}
        for edge in sorted(self.pages):
            grouped.setdefault(self.pages[edge], []).append(edge)
        return grouped

    def used_pages(self) -> int:
        return len(set(self.pages.values()))


class PageAssignment(BaseModel):
    u: int
    v: int
    page: int


class LayoutDocument(BaseModel):
    """Canonical JSON form of a layout: fields in this order, edges sorted"""

    kind: LayoutKind
    strict: bool = False
    order: List[int]
    k: int
    pages: List[PageAssignment]

    @classmethod
    def from_layout(cls, layout: Layout) -> "LayoutDocument":
        return cls(
            kind=layout.kind,
            strict=layout.strict,
            order=list(layout.order.vertices),
            k=layout.k,
            pages=[PageAssignment(u=u, v=v, page=layout.pages[(u, v)]) for u, v in sorted(layout.pages)],
        )

    def to_layout(self) -> Layout:
        return Layout(
            kind=self.kind,
            strict=self.strict,
            order=LinearOrder(vertices=tuple(self.order)),
            k=self.k,
            pages={(item.u, item.v): item.page for item in self.pages},
        )


# ==================== WITNESS ====================
class Witness(BaseModel):
    kind: WitnessKind
    edges: Tuple[Edge, ...]
    order: LinearOrder

    @field_validator("edges", mode="before")
    @classmethod
    def normalize_edges(cls, value):
        return tuple(normalize_edge(*edge) for edge in value)

    @property
    def size(self) -> int:
        return len(self.edges)


# ==================== LEVELED EMBEDDING ====================
class LeveledEmbedding(BaseModel):
    """Levels V_1..V_m, each listed bottom to top, plus the arches inside levels"""

    levels: Tuple[Tuple[int, ...], ...]
    arches: Tuple[Edge, ...] = ()

    @field_validator("arches", mode="before")
    @classmethod
    def normalize_arches(cls, value):
        return tuple(sorted(normalize_edge(*edge) for edge in value))

    def level_index(self) -> Dict[int, int]:
        return {v: i for i, level in enumerate(self.levels) for v in level}


# ==================== VALIDATION REPORT ====================
class Violation(BaseModel):
    first: Edge
    second: Edge
    page: int
    reason: ViolationReason


class ValidationReport(BaseModel):
    valid: bool
    kind: LayoutKind
    strict: bool
    k: int
    violation_count: int
    violations: List[Violation] = []
    truncated: bool = False


class EdgeDivisions(BaseModel):
    u: int
    v: int
    divisions: int


# ==================== REQUESTS / RESPONSES ====================
class ValidateRequest(BaseModel):
    graph: Graph
    layout: LayoutDocument


class ConstructRequest(BaseModel):
    graph: Graph
    algorithm: LayoutAlgorithm
    root: Optional[int] = None
    boundary: Optional[List[int]] = None
    order: Optional[List[int]] = None
    mode: SolveMode = SolveMode.EXACT
    k: Optional[int] = None


class ConstructionResult(BaseModel):
    """Engine-side result of a construction; responses carry the layout as a document"""

    layout: Layout
    graph: Optional[Graph] = None
    embedding: Optional[LeveledEmbedding] = None
    divisions: Optional[List[EdgeDivisions]] = None


class ConstructResponse(BaseModel):
    layout: LayoutDocument
    graph: Optional[Graph] = None
    embedding: Optional[LeveledEmbedding] = None
    divisions: Optional[List[EdgeDivisions]] = None


class WitnessRequest(BaseModel):
    graph: Graph
    kind: WitnessKind
    order: Optional[List[int]] = None
    mode: SolveMode = SolveMode.EXACT


class ExactResponse(BaseModel):
    kind: str
    k: int
    layout: Optional[LayoutDocument] = None
