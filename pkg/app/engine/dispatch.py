"""
Algorithm dispatch shared by the command line and the HTTP API
Recognizes the family an algorithm needs and runs the matching construction
"""

import logging
from typing import List, Optional, Tuple

import networkx as nx

from app.engine.exact_bounds import ExactSolvers
from app.engine.family_layouts import (
    CompleteLayouts,
    HexLayouts,
    KTreeLayouts,
    OuterplanarLayouts,
    SubdivisionLayouts,
    TreeLayouts,
    UnicyclicLayouts,
    XTreeLayouts,
    order_from_sequence,
)
from app.engine.graph_core import GraphFamilies, GraphOperations
from app.engine.layout_core import FixedOrderOptimizer
from app.errors import InvalidBuildError, InvalidInputError, InvalidParameterError
from app.models.graph_models import Graph
from app.models.layout_models import ConstructionResult, Layout, LayoutAlgorithm, LinearOrder, SolveMode

logger = logging.getLogger(__name__)

EXACT_KINDS = ["queue", "stack", "stack-components", "vertex-cover-stack"]


# ==================== RECOGNITION ====================
class FamilyRecognizer:

    @staticmethod
    def complete_size(graph: Graph) -> int:
        if graph.n < 2 or graph.m != graph.n * (graph.n - 1) // 2:
            raise InvalidInputError("graph is not complete")
        return graph.n

    @staticmethod
    def bipartite_parts(graph: Graph) -> List[List[int]]:
        """Both sides of a complete bipartite graph, the side holding vertex 0 first"""
        nx_graph = GraphOperations.to_networkx(graph)
        if graph.n < 2 or not nx.is_connected(nx_graph) or not nx.is_bipartite(nx_graph):
            raise InvalidInputError("graph is not complete bipartite")
        coloring = nx.bipartite.color(nx_graph)
        side = [v for v in range(graph.n) if coloring[v] == coloring[0]]
        other = [v for v in range(graph.n) if coloring[v] != coloring[0]]
        if graph.m != len(side) * len(other):
            raise InvalidInputError("graph is not complete bipartite")
        return [side, other]

    @staticmethod
    def x_tree_depth(graph: Graph) -> int:
        d = (graph.n + 1).bit_length() - 2
        if d < 1 or 2 ** (d + 1) - 1 != graph.n or GraphFamilies.x_tree(d).edges != graph.edges:
            raise InvalidInputError("graph is not a canonically numbered X-tree")
        return d

    @staticmethod
    def hex_size(graph: Graph) -> int:
        side = 1
        while side * side < graph.n:
            side += 1
        if side * side != graph.n or GraphFamilies.hex_dual(side).edges != graph.edges:
            raise InvalidInputError("graph is not a canonically numbered hexagonal-grid dual")
        return side


# ==================== DISPATCH ====================
class LayoutDispatcher:

    @staticmethod
    def _order(graph: Graph, sequence: Optional[List[int]], what: str = "order") -> LinearOrder:
        if sequence is None:
            return LinearOrder.identity(graph.n)
        return order_from_sequence(graph, sequence, what)

    @staticmethod
    def construct(
        graph: Graph,
        algorithm: LayoutAlgorithm,
        root: Optional[int] = None,
        boundary: Optional[List[int]] = None,
        order: Optional[List[int]] = None,
        mode: SolveMode = SolveMode.EXACT,
        k: Optional[int] = None,
    ) -> ConstructionResult:
        """Run `algorithm` on `graph`; inapplicable inputs raise InvalidInputError"""
        logger.info("constructing %s on %d vertices, %d edges", algorithm.value, graph.n, graph.m)
        root = 0 if root is None else root

        if algorithm == LayoutAlgorithm.TREE_STACK:
            return ConstructionResult(layout=TreeLayouts.tree_stack_layout(graph, root))
        if algorithm == LayoutAlgorithm.TREE_QUEUE:
            layout, embedding = TreeLayouts.tree_queue_layout(graph, root)
            return ConstructionResult(layout=layout, embedding=embedding)
        if algorithm == LayoutAlgorithm.COMPLETE_STACK:
            return ConstructionResult(layout=CompleteLayouts.complete_stack_layout(FamilyRecognizer.complete_size(graph)))
        if algorithm == LayoutAlgorithm.COMPLETE_QUEUE:
            return ConstructionResult(layout=CompleteLayouts.complete_queue_layout(FamilyRecognizer.complete_size(graph)))
        if algorithm == LayoutAlgorithm.COMPLETE_BIPARTITE_QUEUE:
            side, other = FamilyRecognizer.bipartite_parts(graph)
            return ConstructionResult(layout=CompleteLayouts.bipartite_split_layout(graph, side, other))
        if algorithm in (LayoutAlgorithm.X_TREE_STACK, LayoutAlgorithm.X_TREE_QUEUE):
            stack, queue = XTreeLayouts.x_tree_layouts(FamilyRecognizer.x_tree_depth(graph))
            return ConstructionResult(layout=stack if algorithm == LayoutAlgorithm.X_TREE_STACK else queue)
        if algorithm == LayoutAlgorithm.UNICYCLIC_QUEUE:
            layout, embedding = UnicyclicLayouts.unicyclic_queue_layout(graph)
            return ConstructionResult(layout=layout, embedding=embedding)
        if algorithm == LayoutAlgorithm.K_TREE_STACK:
            if k is None:
                raise InvalidParameterError("k-tree-stack needs the tree width k")
            try:
                build = GraphOperations.recover_k_tree_build(graph, k)
            except InvalidBuildError as exc:
                raise InvalidInputError(str(exc))
            return ConstructionResult(layout=KTreeLayouts.k_tree_stack_layout(build))
        if algorithm == LayoutAlgorithm.OUTERPLANAR_STACK:
            sequence = boundary if boundary is not None else list(range(graph.n))
            return ConstructionResult(layout=OuterplanarLayouts.outerplanar_stack_layout(graph, sequence))
        if algorithm == LayoutAlgorithm.ONE_STACK_TWO_QUEUE:
            sequence = boundary if boundary is not None else list(range(graph.n))
            return ConstructionResult(layout=OuterplanarLayouts.one_stack_to_two_queue(graph, sequence))
        if algorithm == LayoutAlgorithm.TWO_STACK_HAMILTONIAN:
            cycle_order = LayoutDispatcher._order(graph, order)
            return ConstructionResult(layout=FixedOrderOptimizer.two_stack_from_hamiltonian(graph, cycle_order))
        if algorithm == LayoutAlgorithm.HEX_STRICT_QUEUE:
            return ConstructionResult(layout=HexLayouts.hex_strict_queue_layout(FamilyRecognizer.hex_size(graph)))
        if algorithm == LayoutAlgorithm.MAX_RAINBOW:
            _, _, layout = FixedOrderOptimizer.max_rainbow(graph, LayoutDispatcher._order(graph, order))
            return ConstructionResult(layout=layout)
        if algorithm == LayoutAlgorithm.MIN_STACKS:
            fixed = LayoutDispatcher._order(graph, order)
            return ConstructionResult(layout=FixedOrderOptimizer.min_stacks_fixed_order(graph, fixed, mode))
        if algorithm == LayoutAlgorithm.VERTEX_COVER_STACK:
            _, layout = ExactSolvers.vc_stack_upper(graph)
            return ConstructionResult(layout=layout)
        if algorithm == LayoutAlgorithm.THREE_STACK_SUBDIVISION:
            subdivision, layout, divisions = SubdivisionLayouts.three_stack_subdivision(graph)
            return ConstructionResult(layout=layout, graph=subdivision, divisions=divisions)
        raise InvalidParameterError(f"unknown algorithm {algorithm}")

    @staticmethod
    def exact(graph: Graph, kind: str, threads: Optional[int] = None) -> Tuple[int, Optional[Layout]]:
        """(k, optional layout) for queue | stack | stack-components | vertex-cover-stack"""
        if kind == "queue":
            return ExactSolvers.queue_number_exact(graph, threads=threads)
        if kind == "stack":
            return ExactSolvers.stack_number_exact(graph, threads=threads)
        if kind == "stack-components":
            return ExactSolvers.sn_via_components(graph), None
        if kind == "vertex-cover-stack":
            return ExactSolvers.vc_stack_upper(graph)
        raise InvalidParameterError(f"unknown exact kind {kind!r}")
