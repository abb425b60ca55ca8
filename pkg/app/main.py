"""
Linear Layout Toolkit API
FastAPI application for stack and queue layouts of graphs
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.config import get_settings
from app.logging_config import configure_logging
from app.routes.analysis_routes import bounds_router, exact_router, pipeline_router
from app.routes.graph_routes import graphs_router
from app.routes.layout_routes import layouts_router

logger = logging.getLogger(__name__)
settings = get_settings()


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Startup and shutdown events"""
    # Startup
    configure_logging(settings.log_level)
    logger.info("=" * 50)
    logger.info("Starting up %s %s...", settings.app_name, settings.app_version)
    logger.info(
        "Exact limits: queue %d vertices, stack %d vertices, colouring %d edges",
        settings.exact_queue_vertex_limit,
        settings.exact_stack_vertex_limit,
        settings.exact_coloring_edge_limit,
    )
    logger.info("=" * 50)

    yield

    # Shutdown
    logger.info("Shutting down...")


app = FastAPI(
    title=settings.app_name,
    description="""
## Stack and Queue Layouts of Graphs

Vertex orders plus edge partitions into pages: stacks forbid crossings, queues forbid nestings.

### Features

- **Graphs**: family generators, Cartesian products, subdivisions, biconnected components, vertex cover
- **Layouts**: validation with violation reports, constructive layouts per family, twist/rainbow witnesses, SVG arc diagrams
- **Exact Solvers**: exhaustive queue and stack numbers of small graphs
- **Bounds**: closed-form bounds and small Ramsey numbers
- **Counterexample Pipeline**: S_a □ H_n with 4 queues, and certified twists for any order
    """,
    version=settings.app_version,
    lifespan=lifespan,
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Graph and layout routes
app.include_router(graphs_router, prefix=settings.api_prefix)
app.include_router(layouts_router, prefix=settings.api_prefix)

# Analysis routes
app.include_router(exact_router, prefix=settings.api_prefix)
app.include_router(bounds_router, prefix=settings.api_prefix)
app.include_router(pipeline_router, prefix=settings.api_prefix)


@app.get("/", tags=["Root"])
async def root():
    """API Root - Health Check"""
    return {
        "message": settings.app_name,
        "version": settings.app_version,
        "status": "running",
        "docs": "/docs",
        "redoc": "/redoc",
    }


@app.get("/health", tags=["Health"])
async def health_check():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "limits": {
            "exact_queue_vertices": settings.exact_queue_vertex_limit,
            "exact_stack_vertices": settings.exact_stack_vertex_limit,
        },
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("app.main:app", host=settings.host, port=settings.port, reload=True)
