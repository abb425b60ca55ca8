import itertools
import math
import random

import pytest

from app.engine.counterexample import CounterexampleGraphs, Pipeline, PipelineStages, RamseyNumbers
from app.engine.graph_core import GraphFamilies
from app.engine.layout_core import LayoutValidator
from app.errors import InvalidParameterError, MonotonicityViolationError, SizeLimitError
from app.models.layout_models import LinearOrder
from app.models.pipeline_models import CaseTag, GridColor, PairRelation, ProductOrderKind, RamseyMode


# ==================== COUNTEREXAMPLE GRAPH ====================
def test_counterexample_graph_has_a_four_queue_layout():
    graph, layout = CounterexampleGraphs.counterexample_graph(5, 3)
    assert (graph.n, graph.m) == (54, 141)
    assert layout.k == 4
    assert LayoutValidator.validate(graph, layout).valid


def test_larger_counterexample_graph():
    graph, layout = CounterexampleGraphs.counterexample_graph(20, 4)
    assert graph.n == 21 * 16
    assert layout.k == 4
    assert LayoutValidator.validate(graph, layout, cap=1).valid


def test_product_vertex_numbering():
    assert CounterexampleGraphs.product_vertex(3, 2, 4) == 22
    order = CounterexampleGraphs.order_for(ProductOrderKind.GRID_MAJOR, 2, 2)
    assert order.vertices[:3] == (0, 4, 8)
    assert CounterexampleGraphs.order_for(ProductOrderKind.IDENTITY, 2, 2) == LinearOrder.identity(12)


# ==================== RAMSEY NUMBERS ====================
@pytest.mark.parametrize(
    "r,s,mode,value",
    [
        (3, 3, RamseyMode.EXACT_SMALL, 6),
        (4, 3, RamseyMode.EXACT_SMALL, 9),
        (4, 4, RamseyMode.EXACT_SMALL, 18),
        (2, 7, RamseyMode.EXACT_SMALL, 7),
        (1, 5, RamseyMode.EXACT_SMALL, 1),
        (3, 3, RamseyMode.UPPER, 6),
        (4, 5, RamseyMode.UPPER, 35),
    ],
)
def test_ramsey_number(r, s, mode, value):
    assert RamseyNumbers.ramsey_number(r, s, mode) == value


def test_unknown_ramsey_number():
    with pytest.raises(SizeLimitError):
        RamseyNumbers.ramsey_number(5, 5)


def test_verify_ramsey_three_three():
    coloring = RamseyNumbers.verify_ramsey(3, 3, 5)
    assert coloring is not None
    for triangle in itertools.combinations(range(5), 3):
        colors = {coloring[edge] for edge in itertools.combinations(triangle, 2)}
        assert len(colors) == 2
    assert RamseyNumbers.verify_ramsey(3, 3, 6) is None


def test_verify_ramsey_size_limit():
    with pytest.raises(SizeLimitError):
        RamseyNumbers.verify_ramsey(3, 3, 9)


# ==================== STAGES ====================
@pytest.mark.parametrize("a,n,length", [(6, 2, 2), (16, 2, 2), (2 ** 16, 2, 4), (1, 3, 1), (10 ** 6, 1, 10 ** 6)])
def test_guaranteed_length(a, n, length):
    assert PipelineStages.guaranteed_length(a, n) == length


def test_erdos_szekeres_on_random_sequences():
    rng = random.Random(1)
    for r, s in [(2, 2), (2, 3), (3, 3), (4, 2)]:
        for _ in range(20):
            sequence = rng.sample(range(100), r * s + 1)
            assert PipelineStages.erdos_szekeres_holds(sequence, s, r)
    assert not PipelineStages.erdos_szekeres_holds([2, 4, 1, 3], 2, 2)


def test_monotone_refinement_keeps_monotone_leaves():
    order = CounterexampleGraphs.identity_order(6, 2)
    assert PipelineStages.monotone_refinement(order, 6, 2) == [1, 2, 3, 4, 5, 6]

    rng = random.Random(4)
    vertices = list(range(7 * 4))
    rng.shuffle(vertices)
    shuffled = LinearOrder(vertices=tuple(vertices))
    leaves = PipelineStages.monotone_refinement(shuffled, 6, 2)
    assert len(leaves) >= PipelineStages.guaranteed_length(6, 2)
    for p in range(4):
        positions = [shuffled.position(u * 4 + p) for u in leaves]
        assert positions == sorted(positions) or positions == sorted(positions, reverse=True)


@pytest.mark.parametrize("n", [2, 3])
def test_every_hex_coloring_has_a_monochromatic_path(n):
    grid = GraphFamilies.hex_dual(n)
    for colors in itertools.product((GridColor.RED, GridColor.BLUE), repeat=n * n):
        path, color = PipelineStages.find_mono_path(n, list(colors))
        assert len(path) == n == len(set(path))
        assert all(colors[v] == color for v in path)
        assert all(grid.has_edge(u, v) for u, v in zip(path, path[1:]))


def test_find_mono_path_checks_the_coloring_size():
    with pytest.raises(InvalidParameterError):
        PipelineStages.find_mono_path(3, [GridColor.RED] * 4)


def test_classify_path_pairs():
    order = LinearOrder.identity(4)
    matrix = PipelineStages.classify_path_pairs(order, [[0, 1], [2, 3]])
    assert matrix[0][1] == PairRelation.SEPARATED
    matrix = PipelineStages.classify_path_pairs(order, [[0, 2], [1, 3]])
    assert matrix[1][0] == PairRelation.CROSSING
    with pytest.raises(MonotonicityViolationError):
        PipelineStages.classify_path_pairs(order, [[0, 3], [1, 2]])


def test_homogeneous_paths():
    separated, crossing = PairRelation.SEPARATED, PairRelation.CROSSING
    matrix = [
        [None, separated, crossing, separated],
        [separated, None, crossing, separated],
        [crossing, crossing, None, crossing],
        [separated, separated, crossing, None],
    ]
    assert PipelineStages.homogeneous_paths(matrix, 3, 3) == (CaseTag.CASE1, [0, 1, 3])
    assert PipelineStages.homogeneous_paths(matrix, 4, 2) == (CaseTag.CASE2, [0, 2])
    assert PipelineStages.homogeneous_paths(matrix, 4, 3) == (CaseTag.INSUFFICIENT, [])


def test_homogeneous_paths_over_every_colouring():
    pairs = list(itertools.combinations(range(5), 2))
    for colouring in itertools.product((PairRelation.SEPARATED, PairRelation.CROSSING), repeat=len(pairs)):
        matrix = [[None] * 5 for _ in range(5)]
        for (i, j), relation in zip(pairs, colouring):
            matrix[i][j] = matrix[j][i] = relation

        def homogeneous(relation, size):
            return [
                subset
                for subset in itertools.combinations(range(5), size)
                if all(matrix[i][j] == relation for i, j in itertools.combinations(subset, 2))
            ]

        separated, crossing = homogeneous(PairRelation.SEPARATED, 3), homogeneous(PairRelation.CROSSING, 3)
        tag, indices = PipelineStages.homogeneous_paths(matrix, 3, 3)
        if separated:
            assert tag == CaseTag.CASE1 and tuple(indices) in separated
        elif crossing:
            assert tag == CaseTag.CASE2 and tuple(indices) in crossing
        else:
            assert (tag, indices) == (CaseTag.INSUFFICIENT, [])


# ==================== PIPELINE ====================
def test_pipeline_on_identity_order_finds_separated_copies():
    order = CounterexampleGraphs.identity_order(6, 2)
    trace = Pipeline.run_pipeline(6, 2, order)
    assert trace.case_tag == CaseTag.CASE1
    assert trace.subcase == "B"
    assert trace.homogeneous_paths == [1, 2, 3]
    assert trace.twist.edges == ((0, 12),)
    assert trace.stack_lower_bound == 1
    assert not trace.leaf_order_reversed


def test_pipeline_on_grid_major_order_finds_crossing_copies():
    order = CounterexampleGraphs.grid_major_order(6, 2)
    trace = Pipeline.run_pipeline(6, 2, order)
    assert trace.case_tag == CaseTag.CASE2
    assert trace.twist.size == 2
    assert LayoutValidator.verify_witness(trace.twist)


@pytest.mark.parametrize("seed", range(5))
def test_pipeline_twists_are_certified_on_random_orders(seed):
    rng = random.Random(seed)
    vertices = list(range(9 * 4))
    rng.shuffle(vertices)
    trace = Pipeline.run_pipeline(8, 2, LinearOrder(vertices=tuple(vertices)), c=2, d=2)
    assert trace.case_tag in (CaseTag.CASE1, CaseTag.CASE2)
    assert trace.twist is not None
    assert LayoutValidator.verify_witness(trace.twist)
    assert trace.stack_lower_bound == trace.twist.size >= 1


def test_pipeline_reports_insufficient_paths():
    trace = Pipeline.run_pipeline(1, 2, CounterexampleGraphs.identity_order(1, 2))
    assert trace.case_tag == CaseTag.INSUFFICIENT
    assert trace.twist is None
    assert "R(3, 3)" in trace.insufficiency


def test_pipeline_checks_the_order_size():
    with pytest.raises(InvalidParameterError):
        Pipeline.run_pipeline(6, 2, LinearOrder.identity(10))


def test_parameters_for_one():
    params = Pipeline.parameters_for(1)
    assert (params.n, params.c, params.d) == (3, 4, 73)
    assert params.b == math.comb(75, 3)
    assert params.exponent == 256
    assert params.log2_a == pytest.approx(256 * math.log2(params.b))
