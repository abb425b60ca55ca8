import pytest

from app.engine.exact_bounds import BoundFormulas, ExactSolvers
from app.engine.family_layouts import (
    CompleteLayouts,
    HexLayouts,
    KTreeLayouts,
    OuterplanarLayouts,
    ProductLayouts,
    SubdivisionLayouts,
    TreeLayouts,
    UnicyclicLayouts,
    XTreeLayouts,
    order_from_sequence,
)
from app.engine.graph_core import GraphFamilies, GraphOperations
from app.engine.layout_core import LayoutValidator, LeveledEmbeddings
from app.errors import InvalidInputError, InvalidLayoutError, InvalidParameterError, NotOuterplanarError
from app.models.graph_models import DivisionLabel, Graph, KTreeBuild
from app.models.layout_models import Layout, LayoutKind, LinearOrder


def assert_valid(graph: Graph, layout: Layout) -> None:
    report = LayoutValidator.validate(graph, layout, cap=3)
    assert report.valid, report.violations


def test_order_from_sequence_rejects_non_permutations():
    with pytest.raises(InvalidParameterError):
        order_from_sequence(GraphFamilies.path(3), [0, 1, 1])


# ==================== TREES ====================
@pytest.mark.parametrize("seed", range(6))
def test_tree_layouts_use_one_page(seed):
    tree = GraphFamilies.random_tree(12, seed)
    stack = TreeLayouts.tree_stack_layout(tree, root=seed % tree.n)
    assert stack.k == 1
    assert_valid(tree, stack)

    queue, embedding = TreeLayouts.tree_queue_layout(tree)
    assert queue.k == 1
    assert_valid(tree, queue)
    assert LeveledEmbeddings.leveled_to_queue(tree, embedding).order == queue.order


def test_tree_queue_levels_are_bfs_layers():
    layout, embedding = TreeLayouts.tree_queue_layout(GraphFamilies.path(4), root=1)
    assert embedding.levels == ((1,), (0, 2), (3,))
    assert layout.order.vertices == (1, 0, 2, 3)


def test_tree_layouts_reject_non_trees():
    with pytest.raises(InvalidInputError):
        TreeLayouts.tree_stack_layout(GraphFamilies.cycle(4))
    with pytest.raises(InvalidParameterError):
        TreeLayouts.tree_queue_layout(GraphFamilies.path(3), root=5)


# ==================== COMPLETE GRAPHS ====================
@pytest.mark.parametrize("n", range(2, 11))
def test_complete_layouts_meet_the_bounds(n):
    graph = GraphFamilies.complete(n)
    stack = CompleteLayouts.complete_stack_layout(n)
    assert stack.k == BoundFormulas.complete_stack(n)
    assert_valid(graph, stack)

    queue = CompleteLayouts.complete_queue_layout(n)
    assert queue.k == n // 2
    assert_valid(graph, queue)


def test_complete_stack_page_counts():
    assert CompleteLayouts.complete_stack_layout(4).k == 2
    assert CompleteLayouts.complete_stack_layout(7).k == 4


@pytest.mark.parametrize("m,n", [(1, 4), (3, 4), (4, 3), (5, 5), (2, 7)])
def test_complete_bipartite_queue_layout(m, n):
    layout = CompleteLayouts.complete_bipartite_queue_layout(m, n)
    assert layout.k == BoundFormulas.complete_bipartite_queue(m, n)
    assert_valid(GraphFamilies.complete_bipartite(m, n), layout)


def test_bipartite_split_rejects_edges_inside_a_part():
    with pytest.raises(InvalidInputError):
        CompleteLayouts.bipartite_split_layout(GraphFamilies.cycle(3), [0, 1], [2])


# ==================== X-TREES AND THE HEX GRID ====================
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_x_tree_layouts(d):
    graph = GraphFamilies.x_tree(d)
    stack, queue = XTreeLayouts.x_tree_layouts(d)
    assert stack.k <= 2 and queue.k == 2
    assert_valid(graph, stack)
    assert_valid(graph, queue)


def test_x_tree_hamiltonian_order_is_a_path():
    order = XTreeLayouts.hamiltonian_order(3)
    graph = GraphFamilies.x_tree(3)
    sequence = order.vertices
    assert sorted(sequence) == list(range(graph.n))
    assert all(graph.has_edge(u, v) for u, v in zip(sequence, sequence[1:]))


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_hex_strict_queue_layout(n):
    layout = HexLayouts.hex_strict_queue_layout(n)
    assert layout.strict and layout.k == 3
    assert_valid(GraphFamilies.hex_dual(n), layout)


# ==================== UNICYCLIC GRAPHS ====================
@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_cycles_fit_one_queue(n):
    graph = GraphFamilies.cycle(n)
    layout, embedding = UnicyclicLayouts.unicyclic_queue_layout(graph)
    assert layout.k == 1
    assert_valid(graph, layout)
    assert len(embedding.arches) == n % 2


@pytest.mark.parametrize("seed", range(12))
def test_random_unicyclic_graphs_fit_one_queue(seed):
    graph = GraphFamilies.random_unicyclic(11, seed)
    layout, embedding = UnicyclicLayouts.unicyclic_queue_layout(graph)
    assert_valid(graph, layout)
    LeveledEmbeddings.check_embedding(graph, embedding)


def test_unicyclic_layout_rejects_trees():
    with pytest.raises(InvalidInputError):
        UnicyclicLayouts.unicyclic_queue_layout(GraphFamilies.path(5))


# ==================== K-TREES ====================
@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("seed", range(4))
def test_k_tree_stack_layout(k, seed):
    build = GraphFamilies.random_k_tree_build(k, 7, seed)
    layout = KTreeLayouts.k_tree_stack_layout(build)
    assert layout.k <= k + 1
    assert_valid(GraphFamilies.k_tree(build), layout)


def test_decomposition_order_starts_with_the_base_clique():
    build = KTreeBuild(k=2, attachments=[(0, 1), (1, 2), (0, 1)])
    assert KTreeLayouts.decomposition_order(build).vertices == (0, 1, 2, 3, 4)


def test_k_tree_stack_layout_rejects_bad_builds():
    with pytest.raises(InvalidInputError):
        KTreeLayouts.k_tree_stack_layout(KTreeBuild(k=2, attachments=[(0, 1), (0, 1), (2, 3)]))


# ==================== OUTERPLANAR GRAPHS ====================
@pytest.mark.parametrize("seed", range(6))
def test_triangulated_polygons(seed):
    graph = GraphFamilies.random_polygon_triangulation(10, seed)
    boundary = list(range(graph.n))
    stack = OuterplanarLayouts.outerplanar_stack_layout(graph, boundary)
    assert stack.k == 1
    assert_valid(graph, stack)

    queue = OuterplanarLayouts.one_stack_to_two_queue(graph, boundary)
    assert queue.k == 2
    assert_valid(graph, queue)


@pytest.mark.parametrize("n", range(3, 16))
def test_fans_fit_two_queues(n):
    graph = GraphFamilies.fan(n)
    layout = OuterplanarLayouts.one_stack_to_two_queue(graph, list(range(n)))
    assert layout.k <= 2
    assert_valid(graph, layout)


@pytest.mark.parametrize("seed", range(30))
def test_random_triangulations_fit_two_queues(seed):
    graph = GraphFamilies.random_polygon_triangulation(3 + seed % 12, seed)
    layout = OuterplanarLayouts.one_stack_to_two_queue(graph, list(range(graph.n)))
    assert layout.k <= 2
    assert_valid(graph, layout)


def test_outerplanar_reports_crossing_chords(k4):
    with pytest.raises(NotOuterplanarError) as caught:
        OuterplanarLayouts.outerplanar_stack_layout(k4, [0, 1, 2, 3])
    assert caught.value.crossing_pair == ((0, 2), (1, 3))


def test_outerplanar_boundary_must_be_a_permutation():
    with pytest.raises(InvalidParameterError):
        OuterplanarLayouts.outerplanar_stack_layout(GraphFamilies.cycle(4), [0, 1, 2])


def test_two_queue_conversion_needs_a_connected_graph():
    graph = Graph(n=4, edges=[(0, 1), (2, 3)])
    with pytest.raises(InvalidInputError):
        OuterplanarLayouts.one_stack_to_two_queue(graph, [0, 1, 2, 3])


# ==================== PRODUCTS ====================
def test_product_queue_layout():
    left = GraphFamilies.path(3)
    left_layout = Layout(
        kind=LayoutKind.QUEUE, strict=True, order=LinearOrder.identity(3), pages={(0, 1): 1, (1, 2): 1}, k=1
    )
    right = GraphFamilies.complete(4)
    right_layout = CompleteLayouts.complete_queue_layout(4)

    layout = ProductLayouts.product_queue_layout(left, left_layout, right, right_layout)
    assert layout.k == 3
    assert_valid(GraphOperations.cartesian_product(left, right), layout)


def strict_path_layout(n: int) -> Layout:
    pages = {(i, i + 1): 1 for i in range(n - 1)}
    return Layout(kind=LayoutKind.QUEUE, strict=True, order=LinearOrder.identity(n), pages=pages, k=1 if pages else 0)


def test_product_of_path_and_star():
    star = GraphFamilies.star(3)
    star_layout = Layout(kind=LayoutKind.QUEUE, order=LinearOrder.identity(4), pages={e: 1 for e in star.edges}, k=1)
    layout = ProductLayouts.product_queue_layout(GraphFamilies.path(3), strict_path_layout(3), star, star_layout)
    assert layout.k == 2
    assert_valid(GraphOperations.cartesian_product(GraphFamilies.path(3), star), layout)


@pytest.mark.parametrize("seed", range(50))
def test_product_layouts_against_the_exact_queue_number(seed):
    left = GraphFamilies.path(2)
    right = GraphFamilies.random_graph(3 + seed % 2, 0.6, seed)
    right_k, right_layout = ExactSolvers.queue_number_exact(right)

    layout = ProductLayouts.product_queue_layout(left, strict_path_layout(2), right, right_layout)
    product = GraphOperations.cartesian_product(left, right)
    assert layout.k == 1 + right_k
    assert_valid(product, layout)
    assert right_k <= ExactSolvers.queue_number_exact(product)[0] <= layout.k


def test_product_with_a_single_vertex():
    point = Graph(n=1)
    point_layout = Layout(kind=LayoutKind.QUEUE, order=LinearOrder.identity(1), pages={}, k=0)
    hex_grid = GraphFamilies.hex_dual(3)
    layout = ProductLayouts.product_queue_layout(hex_grid, HexLayouts.hex_strict_queue_layout(3), point, point_layout)
    product = GraphOperations.cartesian_product(hex_grid, point)
    assert product.edges == hex_grid.edges
    assert layout.k == 3
    assert_valid(product, layout)

    point_strict = point_layout.model_copy(update={"strict": True})
    right = GraphFamilies.complete(4)
    layout = ProductLayouts.product_queue_layout(point, point_strict, right, CompleteLayouts.complete_queue_layout(4))
    assert layout.k == 2
    assert_valid(GraphOperations.cartesian_product(point, right), layout)


def test_product_of_hex_grid_with_itself():
    hex_grid = GraphFamilies.hex_dual(2)
    strict = HexLayouts.hex_strict_queue_layout(2)
    layout = ProductLayouts.product_queue_layout(hex_grid, strict, hex_grid, strict)
    assert layout.k == 6
    assert_valid(GraphOperations.cartesian_product(hex_grid, hex_grid), layout)


def test_product_needs_a_strict_left_factor(k4):
    queue = CompleteLayouts.complete_queue_layout(4)
    with pytest.raises(InvalidLayoutError):
        ProductLayouts.product_queue_layout(k4, queue, k4, queue)

    strict_but_wrong = queue.model_copy(update={"strict": True})
    with pytest.raises(InvalidLayoutError):
        ProductLayouts.product_queue_layout(k4, strict_but_wrong, k4, queue)


# ==================== SUBDIVISIONS ====================
@pytest.mark.parametrize(
    "graph",
    [
        GraphFamilies.complete(5),
        GraphFamilies.complete(6),
        GraphFamilies.complete_bipartite(3, 3),
        GraphFamilies.hex_dual(3),
        GraphFamilies.complete(7),
    ],
    ids=["k5", "k6", "k33", "hex3", "k7"],
)
def test_three_stack_subdivision(graph):
    subdivision, layout, divisions = SubdivisionLayouts.three_stack_subdivision(graph)
    assert layout.k == 3
    assert_valid(subdivision, layout)

    assert [(item.u, item.v) for item in divisions] == list(graph.edges)
    added = sum(item.divisions for item in divisions)
    assert subdivision.n == graph.n + added
    assert subdivision.m == graph.m + added
    for v in range(graph.n, subdivision.n):
        assert isinstance(subdivision.labels[v], DivisionLabel)


def test_subdivision_without_crossings_keeps_the_graph():
    tree = GraphFamilies.random_tree(8, seed=3)
    subdivision, layout, divisions = SubdivisionLayouts.three_stack_subdivision(tree)
    assert subdivision.edges == tree.edges
    assert layout.k == 1
    assert all(item.divisions == 0 for item in divisions)


@pytest.mark.parametrize("seed", range(50))
def test_three_stack_subdivision_of_random_graphs(seed):
    graph = GraphFamilies.random_graph(4 + seed % 7, 0.5, seed)
    subdivision, layout, divisions = SubdivisionLayouts.three_stack_subdivision(graph)
    assert layout.k <= 3
    assert_valid(subdivision, layout)
    added = sum(item.divisions for item in divisions)
    assert (subdivision.n, subdivision.m) == (graph.n + added, graph.m + added)


def test_three_stack_subdivision_of_k8():
    graph = GraphFamilies.complete(8)
    subdivision, layout, divisions = SubdivisionLayouts.three_stack_subdivision(graph)
    assert layout.k == 3
    assert_valid(subdivision, layout)
    assert len(divisions) == 28
