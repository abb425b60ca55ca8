import pytest

from app.engine.dispatch import FamilyRecognizer, LayoutDispatcher
from app.engine.graph_core import GraphFamilies, GraphOperations
from app.engine.layout_core import LayoutValidator
from app.errors import InvalidInputError, InvalidParameterError
from app.models.graph_models import KTreeBuild
from app.models.layout_models import LayoutAlgorithm


def test_recognizers():
    assert FamilyRecognizer.complete_size(GraphFamilies.complete(5)) == 5
    assert FamilyRecognizer.bipartite_parts(GraphFamilies.complete_bipartite(2, 3)) == [[0, 1], [2, 3, 4]]
    assert FamilyRecognizer.x_tree_depth(GraphFamilies.x_tree(3)) == 3
    assert FamilyRecognizer.hex_size(GraphFamilies.hex_dual(4)) == 4


@pytest.mark.parametrize(
    "recognize",
    [
        FamilyRecognizer.complete_size,
        FamilyRecognizer.bipartite_parts,
        FamilyRecognizer.x_tree_depth,
        FamilyRecognizer.hex_size,
    ],
)
def test_recognizers_reject_other_graphs(recognize):
    with pytest.raises(InvalidInputError):
        recognize(GraphFamilies.cycle(5))


@pytest.mark.parametrize(
    "graph,algorithm,options",
    [
        (GraphFamilies.random_tree(9, seed=1), LayoutAlgorithm.TREE_STACK, {"root": 3}),
        (GraphFamilies.random_tree(9, seed=1), LayoutAlgorithm.TREE_QUEUE, {}),
        (GraphFamilies.complete(6), LayoutAlgorithm.COMPLETE_STACK, {}),
        (GraphFamilies.complete(6), LayoutAlgorithm.COMPLETE_QUEUE, {}),
        (GraphFamilies.complete_bipartite(3, 5), LayoutAlgorithm.COMPLETE_BIPARTITE_QUEUE, {}),
        (GraphFamilies.x_tree(3), LayoutAlgorithm.X_TREE_STACK, {}),
        (GraphFamilies.x_tree(3), LayoutAlgorithm.X_TREE_QUEUE, {}),
        (GraphFamilies.random_unicyclic(9, seed=2), LayoutAlgorithm.UNICYCLIC_QUEUE, {}),
        (GraphFamilies.k_tree(KTreeBuild(k=2, attachments=[(0, 1), (1, 2), (0, 2)])), LayoutAlgorithm.K_TREE_STACK, {"k": 2}),
        (GraphFamilies.random_polygon_triangulation(8, seed=3), LayoutAlgorithm.OUTERPLANAR_STACK, {}),
        (GraphFamilies.random_polygon_triangulation(8, seed=3), LayoutAlgorithm.ONE_STACK_TWO_QUEUE, {}),
        (GraphFamilies.complete(4), LayoutAlgorithm.TWO_STACK_HAMILTONIAN, {"order": [0, 1, 2, 3]}),
        (GraphFamilies.hex_dual(3), LayoutAlgorithm.HEX_STRICT_QUEUE, {}),
        (GraphFamilies.complete(5), LayoutAlgorithm.MAX_RAINBOW, {"order": [4, 3, 2, 1, 0]}),
        (GraphFamilies.complete(5), LayoutAlgorithm.MIN_STACKS, {}),
        (GraphFamilies.cycle(5), LayoutAlgorithm.VERTEX_COVER_STACK, {}),
        (GraphFamilies.complete(5), LayoutAlgorithm.THREE_STACK_SUBDIVISION, {}),
    ],
    ids=lambda value: value.value if isinstance(value, LayoutAlgorithm) else None,
)
def test_every_algorithm_builds_a_valid_layout(graph, algorithm, options):
    result = LayoutDispatcher.construct(graph, algorithm, **options)
    target = result.graph if result.graph is not None else graph
    assert LayoutValidator.validate(target, result.layout).valid


def test_construction_extras():
    queue = LayoutDispatcher.construct(GraphFamilies.path(4), LayoutAlgorithm.TREE_QUEUE)
    assert queue.embedding is not None

    subdivided = LayoutDispatcher.construct(GraphFamilies.complete(5), LayoutAlgorithm.THREE_STACK_SUBDIVISION)
    assert subdivided.graph is not None and len(subdivided.divisions) == 10

    plain = LayoutDispatcher.construct(GraphFamilies.complete(4), LayoutAlgorithm.COMPLETE_QUEUE)
    assert plain.graph is None and plain.embedding is None


def test_inapplicable_algorithms():
    with pytest.raises(InvalidInputError):
        LayoutDispatcher.construct(GraphFamilies.cycle(4), LayoutAlgorithm.TREE_STACK)
    with pytest.raises(InvalidInputError):
        LayoutDispatcher.construct(GraphFamilies.cycle(5), LayoutAlgorithm.K_TREE_STACK, k=2)
    with pytest.raises(InvalidParameterError):
        LayoutDispatcher.construct(GraphFamilies.complete(4), LayoutAlgorithm.K_TREE_STACK)
    with pytest.raises(InvalidParameterError):
        LayoutDispatcher.construct(GraphFamilies.complete(4), LayoutAlgorithm.MAX_RAINBOW, order=[0, 1, 2])


@pytest.mark.parametrize(
    "kind,expected,has_layout",
    [("queue", 2, True), ("stack", 2, True), ("stack-components", 2, False), ("vertex-cover-stack", 3, True)],
)
def test_exact_kinds(k4, kind, expected, has_layout):
    k, layout = LayoutDispatcher.exact(k4, kind)
    assert k == expected
    assert (layout is not None) == has_layout
    if layout is not None:
        assert LayoutValidator.validate(k4, layout).valid


def test_unknown_exact_kind(k4):
    with pytest.raises(InvalidParameterError):
        LayoutDispatcher.exact(k4, "deque")


def test_stack_components_of_a_product():
    graph = GraphOperations.cartesian_product(GraphFamilies.path(2), GraphFamilies.path(3))
    k, layout = LayoutDispatcher.exact(graph, "stack-components")
    assert k == 1 and layout is None
