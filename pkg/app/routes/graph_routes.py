"""
Graph API Routes - Generation, Products, Subdivision, Decomposition
"""

from fastapi import APIRouter

from app.engine.graph_core import GraphFamilies, GraphOperations
from app.models.graph_models import (
    ComponentsResponse,
    Graph,
    GraphGenerateRequest,
    GraphRequest,
    ProductRequest,
    SubdivideRequest,
    VertexCoverResponse,
)
from app.routes.common import toolkit_errors


# ==================== GRAPHS ROUTER ====================
graphs_router = APIRouter(prefix="/graphs", tags=["Graphs"])


@graphs_router.post("/generate", response_model=Graph)
def generate_graph(request: GraphGenerateRequest):
    """CREATE: Build a graph of a named family"""
    with toolkit_errors():
        return GraphFamilies.generate(request.family, request.params, request.seed, request.attachments)


@graphs_router.post("/product", response_model=Graph)
def cartesian_product(request: ProductRequest):
    """CREATE: Cartesian product of two graphs"""
    return GraphOperations.cartesian_product(request.left, request.right)


@graphs_router.post("/subdivide", response_model=Graph)
def subdivide(request: SubdivideRequest):
    """CREATE: Replace every edge by a path with k division vertices"""
    return GraphOperations.subdivide(request.graph, request.k)


@graphs_router.post("/biconnected-components", response_model=ComponentsResponse)
def biconnected_components(request: GraphRequest):
    """READ: Vertex and edge sets of the biconnected components"""
    return ComponentsResponse(
        components=GraphOperations.biconnected_components(request.graph),
        edges=GraphOperations.biconnected_component_edges(request.graph),
    )


@graphs_router.post("/vertex-cover", response_model=VertexCoverResponse)
def vertex_cover(request: GraphRequest):
    """READ: A minimum vertex cover"""
    with toolkit_errors():
        cover = GraphOperations.vertex_cover_exact(request.graph)
    return VertexCoverResponse(cover=cover, size=len(cover))
