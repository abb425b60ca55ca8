"""
Layout API Routes - Validation, Construction, Witnesses, Rendering
"""

from fastapi import APIRouter, Response

from app.engine.dispatch import LayoutDispatcher
from app.engine.layout_core import FixedOrderOptimizer, LayoutValidator
from app.engine.render import ArcDiagram
from app.models.layout_models import (
    ConstructRequest,
    ConstructResponse,
    LayoutDocument,
    LinearOrder,
    ValidateRequest,
    ValidationReport,
    Witness,
    WitnessKind,
    WitnessRequest,
)
from app.routes.common import toolkit_errors


# ==================== LAYOUTS ROUTER ====================
layouts_router = APIRouter(prefix="/layouts", tags=["Layouts"])


@layouts_router.post("/validate", response_model=ValidationReport)
def validate_layout(request: ValidateRequest):
    """READ: Check a layout against a graph and list its violations"""
    with toolkit_errors():
        return LayoutValidator.validate(request.graph, request.layout.to_layout())


@layouts_router.post("/construct", response_model=ConstructResponse)
def construct_layout(request: ConstructRequest):
    """CREATE: Run a construction algorithm"""
    with toolkit_errors():
        result = LayoutDispatcher.construct(
            request.graph,
            request.algorithm,
            root=request.root,
            boundary=request.boundary,
            order=request.order,
            mode=request.mode,
            k=request.k,
        )
    return ConstructResponse(
        layout=LayoutDocument.from_layout(result.layout),
        graph=result.graph,
        embedding=result.embedding,
        divisions=result.divisions,
    )


@layouts_router.post("/witness", response_model=Witness)
def find_witness(request: WitnessRequest):
    """READ: Largest twist or rainbow under a fixed order"""
    with toolkit_errors():
        if request.order is None:
            order = LinearOrder.identity(request.graph.n)
        else:
            order = LinearOrder(vertices=tuple(request.order))
        if request.kind == WitnessKind.RAINBOW:
            return FixedOrderOptimizer.max_rainbow(request.graph, order)[1]
        return FixedOrderOptimizer.max_twist(request.graph, order, request.mode)


@layouts_router.post("/render")
def render_layout(request: ValidateRequest):
    """READ: SVG arc diagram of a valid layout"""
    with toolkit_errors():
        svg = ArcDiagram.render_svg(request.graph, request.layout.to_layout())
    return Response(content=svg, media_type="image/svg+xml")
