from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator
from typing import Annotated, Iterator, List, Literal, Optional, Tuple, Union
from enum import Enum


Edge = Tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class GraphFamily(str, Enum):
    COMPLETE = "complete"
    COMPLETE_BIPARTITE = "complete-bipartite"
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    X_TREE = "xtree"
    HEX_DUAL = "hexdual"
    FAN = "fan"
    K_TREE = "ktree"
    RANDOM_TREE = "random-tree"
    RANDOM_UNICYCLIC = "random-unicyclic"
    POLYGON_TRIANGULATION = "polygon-triangulation"


# ==================== LABELS ====================
class PlainLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["plain"] = "plain"
    id: int


class GridLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["grid"] = "grid"
    row: int = Field(..., ge=0)
    col: int = Field(..., ge=0)


class ProductLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["product"] = "product"
    left: "Label"
    right: "Label"


class DivisionLabel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["division"] = "division"
    edge: Edge
    index: int = Field(..., ge=1)


Label = Annotated[
    Union[PlainLabel, GridLabel, ProductLabel, DivisionLabel],
    Field(discriminator="kind"),
]

ProductLabel.model_rebuild()


def grid_labels(label: "Label") -> Iterator[GridLabel]:
    """Grid labels inside a label, product factors included"""
    if isinstance(label, GridLabel):
        yield label
    elif isinstance(label, ProductLabel):
        yield from grid_labels(label.left)
        yield from grid_labels(label.right)


# ==================== GRAPH ====================
class Graph(BaseModel):
    """Simple undirected graph on vertices 0..n-1, edges stored as sorted (u, v) with u < v"""

    n: int = Field(..., ge=0)
    edges: Tuple[Edge, ...] = ()
    labels: Optional[Tuple[Label, ...]] = None

    _adjacency: List[List[int]] = PrivateAttr(default_factory=list)
    _edge_set: frozenset = PrivateAttr(default_factory=frozenset)

    @field_validator("edges", mode="before")
    @classmethod
    def normalize_edges(cls, value):
        try:
            return tuple(sorted(tuple(sorted(edge)) for edge in value))
        except TypeError as exc:
            raise ValueError(f"edges must be pairs of vertex ids: {exc}")

    @model_validator(mode="after")
    def check_invariants(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u < 0 or v >= self.n:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        edge_set = frozenset(self.edges)
        if len(edge_set) != len(self.edges):
            raise ValueError("duplicate edges")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise ValueError(f"{len(self.labels)} labels for {self.n} vertices")
            if len(set(self.labels)) != self.n:
                raise ValueError("labels are not unique")
            # coordinates stay within 0..n for a graph on n vertices
            for label in self.labels:
                for grid in grid_labels(label):
                    if grid.row > self.n or grid.col > self.n:
                        raise ValueError(f"grid label ({grid.row}, {grid.col}) outside 0..{self.n}")

        adjacency: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        for neighbours in adjacency:
            neighbours.sort()
        self._adjacency = adjacency
        self._edge_set = edge_set
        return self

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> List[List[int]]:
        return self._adjacency

    def neighbours(self, v: int) -> List[int]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self._edge_set

    def label_of(self, v: int) -> "Label":
        """Label of v, with Plain(v) standing in when the graph carries none"""
        if self.labels is None:
            return PlainLabel(id=v)
        return self.labels[v]


# ==================== K-TREE BUILD ====================
class KTreeBuild(BaseModel):
    k: int
    attachments: Tuple[Tuple[int, ...], ...] = ()

    @field_validator("attachments", mode="before")
    @classmethod
    def sort_attachments(cls, value):
        return tuple(tuple(sorted(attachment)) for attachment in value)

    @property
    def vertex_count(self) -> int:
        return self.k + len(self.attachments)


# ==================== REQUESTS / RESPONSES ====================
class GraphGenerateRequest(BaseModel):
    family: GraphFamily
    params: List[int] = []
    seed: Optional[int] = None
    attachments: int = Field(0, ge=0)


class ProductRequest(BaseModel):
    left: Graph
    right: Graph


class SubdivideRequest(BaseModel):
    graph: Graph
    k: int = Field(..., ge=0)


class GraphRequest(BaseModel):
    graph: Graph


class ComponentsResponse(BaseModel):
    components: List[List[int]]
    edges: List[List[Edge]]


class VertexCoverResponse(BaseModel):
    cover: List[int]
    size: int
