import pytest
from fastapi.testclient import TestClient

from app.config import get_settings
from app.engine.graph_core import GraphFamilies
from app.models.graph_models import Graph


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings; env overrides apply per test"""
    for name in ("LAYOUT_EXACT_THREADS", "LAYOUT_VIOLATION_REPORT_CAP", "LAYOUT_RANDOM_SEED"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def client():
    from app.main import app

    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def k4() -> Graph:
    return GraphFamilies.complete(4)


@pytest.fixture
def x_tree_2() -> Graph:
    return GraphFamilies.x_tree(2)
