import json

import pytest

from app.engine.family_layouts import CompleteLayouts
from app.engine.graph_core import GraphFamilies, GraphOperations
from app.errors import GraphFormatError, MalformedLayoutError
from app.storage.graph_file import GraphFileCodec
from app.storage.layout_file import LayoutFileCodec


# ==================== GRAPH FILES ====================
def test_graph_text_format():
    assert GraphFileCodec.dumps(GraphFamilies.path(3)) == "3 2\n0 1\n1 2\n"
    graph = GraphFileCodec.loads("4 2\n\n2 3\n1 0\n")
    assert graph.n == 4 and graph.edges == ((0, 1), (2, 3))
    assert graph.labels is None


def test_labels_survive_a_file(tmp_path):
    product = GraphOperations.cartesian_product(GraphFamilies.star(2), GraphFamilies.hex_dual(2))
    divided = GraphOperations.subdivide(product, 1)
    path = tmp_path / "graph.txt"
    GraphFileCodec.write(divided, path)
    assert GraphFileCodec.read(path) == divided


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3\n0 1\n",
        "3 x\n",
        "3 2\n0 1\n",
        "3 1\n0 one\n",
        "3 1\n1 1\n",
        "3 1\n0 5\n",
        "2 1\n0 1\nL 0 {\"kind\": \"plain\", \"id\": 0}\n",
        "2 1\n0 1\nX 0 {}\nX 1 {}\n",
        "2 1\n0 1\nL 0 {\"kind\": \"plain\", \"id\": 0}\nL 1 {\"kind\": \"nope\"}\n",
        "2 1\n0 1\nL 0 {\"kind\": \"grid\", \"row\": 0, \"col\": 0}\nL 1 {\"kind\": \"grid\", \"row\": 5, \"col\": 0}\n",
    ],
    ids=[
        "empty",
        "short-header",
        "bad-count",
        "missing-edge",
        "bad-edge",
        "self-loop",
        "out-of-range",
        "partial-labels",
        "bad-label-line",
        "bad-label",
        "grid-out-of-bounds",
    ],
)
def test_bad_graph_files(text):
    with pytest.raises(GraphFormatError):
        GraphFileCodec.loads(text)


def test_missing_graph_file(tmp_path):
    with pytest.raises(GraphFormatError):
        GraphFileCodec.read(tmp_path / "absent.txt")


# ==================== LAYOUT FILES ====================
def test_layout_json_is_canonical():
    layout = CompleteLayouts.complete_queue_layout(4)
    document = json.loads(LayoutFileCodec.dumps(layout))
    assert list(document) == ["kind", "strict", "order", "k", "pages"]
    assert document["kind"] == "queue"
    assert document["pages"][0] == {"u": 0, "v": 1, "page": 1}
    assert [(item["u"], item["v"]) for item in document["pages"]] == sorted(layout.pages)


def test_layout_file_round_trip(tmp_path):
    layout = CompleteLayouts.complete_stack_layout(6)
    path = tmp_path / "layout.json"
    LayoutFileCodec.write(layout, path)
    assert LayoutFileCodec.read(path) == layout


@pytest.mark.parametrize(
    "text",
    [
        '{"kind": "stack", "order": [0, 1], "k": 1, "pages": [{"u": 0, "v": 1',
        '{"kind": "deque", "order": [0, 1], "k": 1, "pages": []}',
        '{"kind": "stack", "order": [0, 0], "k": 1, "pages": []}',
        '{"kind": "stack", "strict": true, "order": [0, 1], "k": 1, "pages": []}',
    ],
    ids=["truncated", "bad-kind", "not-a-permutation", "strict-stack"],
)
def test_bad_layout_files(text):
    with pytest.raises(MalformedLayoutError):
        LayoutFileCodec.loads(text)


def test_missing_layout_file(tmp_path):
    with pytest.raises(MalformedLayoutError):
        LayoutFileCodec.read(tmp_path / "absent.json")
