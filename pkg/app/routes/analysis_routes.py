"""
Analysis API Routes - Exact Numbers, Bound Formulas, Counterexample Pipeline
"""

from typing import List

from fastapi import APIRouter, Depends, HTTPException, Query

from app.config import Settings, get_settings
from app.engine.counterexample import CounterexampleGraphs, Pipeline
from app.engine.dispatch import EXACT_KINDS, LayoutDispatcher
from app.engine.exact_bounds import BoundFormulas
from app.models.graph_models import GraphRequest
from app.models.layout_models import ExactResponse, LayoutDocument, LinearOrder
from app.models.pipeline_models import PipelineParams, PipelineRequest, ProofTrace
from app.routes.common import toolkit_errors


# ==================== EXACT ROUTER ====================
exact_router = APIRouter(prefix="/exact", tags=["Exact Solvers"])


@exact_router.post("/{kind}", response_model=ExactResponse)
def exact_number(kind: str, request: GraphRequest, settings: Settings = Depends(get_settings)):
    """READ: queue | stack | stack-components | vertex-cover-stack"""
    if kind not in EXACT_KINDS:
        raise HTTPException(status_code=404, detail=f"Unknown kind; expected one of {', '.join(EXACT_KINDS)}")
    with toolkit_errors():
        k, layout = LayoutDispatcher.exact(request.graph, kind, threads=settings.exact_threads)
    return ExactResponse(kind=kind, k=k, layout=LayoutDocument.from_layout(layout) if layout is not None else None)


# ==================== BOUNDS ROUTER ====================
bounds_router = APIRouter(prefix="/bounds", tags=["Bounds"])


@bounds_router.get("/{name}", response_model=dict)
def evaluate_bound(name: str, params: List[int] = Query(default=[])):
    """READ: Evaluate a closed-form bound or Ramsey value"""
    with toolkit_errors():
        value = BoundFormulas.evaluate(name, params)
    return {"name": name, "params": params, "value": value}


# ==================== PIPELINE ROUTER ====================
pipeline_router = APIRouter(prefix="/pipeline", tags=["Counterexample Pipeline"])


@pipeline_router.post("/run", response_model=ProofTrace)
def run_pipeline(request: PipelineRequest):
    """READ: Extract a certified twist from an order of S_a □ H_n"""
    with toolkit_errors():
        if request.custom_order is not None:
            order = LinearOrder(vertices=tuple(request.custom_order))
        else:
            order = CounterexampleGraphs.order_for(request.order, request.a, request.n)
        return Pipeline.run_pipeline(request.a, request.n, order, request.c, request.d)


@pipeline_router.get("/parameters/{s}", response_model=PipelineParams)
def pipeline_parameters(s: int):
    """READ: Parameter chain n, c, d, b and log2(a) for a target stack bound s"""
    with toolkit_errors():
        return Pipeline.parameters_for(s)


@pipeline_router.get("/counterexample", response_model=dict)
def counterexample(a: int = Query(..., ge=1), n: int = Query(..., ge=1)):
    """READ: S_a □ H_n with its 4-queue layout"""
    with toolkit_errors():
        graph, layout = CounterexampleGraphs.counterexample_graph(a, n)
    return {"graph": graph.model_dump(mode="json"), "layout": LayoutDocument.from_layout(layout).model_dump(mode="json")}
