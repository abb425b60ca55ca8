"""
Exact stack and queue numbers for small graphs, decomposition-based reductions
and closed-form bound calculators
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Set, Tuple

from app.config import get_settings
from app.engine.graph_core import GraphOperations
from app.engine.layout_core import FixedOrderOptimizer, exact_coloring, greedy_clique, spans_cross
from app.errors import InvalidParameterError, SizeLimitError
from app.models.graph_models import Edge, Graph
from app.models.layout_models import Layout, LayoutKind, LinearOrder, SolveMode

logger = logging.getLogger(__name__)


# ==================== ORDER SEARCH ====================
def _queue_search(
    size: int,
    adjacency: Sequence[Sequence[int]],
    best: int,
    first_vertices: Sequence[int],
    use_symmetry: bool,
    use_pruning: bool,
) -> Tuple[int, Optional[List[int]]]:
    """
    Depth-first search over orders starting with one of `first_vertices` for an order whose
    largest rainbow is below `best`. suffix_max[p] is the deepest rainbow among placed edges
    with left endpoint at position >= p.
    """
    position = [-1] * size
    prefix: List[int] = []
    found: Optional[List[int]] = None

    def extend(suffix_max: List[int], current: int) -> None:
        nonlocal best, found
        rank = len(prefix)
        if rank == size:
            if current < best:
                best, found = current, prefix[:]
            return
        for v in first_vertices if rank == 0 else range(size):
            if position[v] >= 0 or (use_symmetry and v == 1 and position[0] < 0):
                continue
            depths = [(position[u], 1 + suffix_max[position[u] + 1]) for u in adjacency[v] if position[u] >= 0]
            reached = max([current] + [d for _, d in depths])
            if use_pruning and reached >= best:
                continue
            updated = suffix_max[:]
            for left, d in depths:
                for p in range(left + 1):
                    if updated[p] < d:
                        updated[p] = d
            position[v] = rank
            prefix.append(v)
            extend(updated, reached)
            prefix.pop()
            position[v] = -1

    extend([0] * (size + 1), 0)
    return best, found


def _stack_search(
    size: int,
    adjacency: Sequence[Sequence[int]],
    best: int,
    first_vertices: Sequence[int],
    use_symmetry: bool,
    use_pruning: bool,
) -> Tuple[int, Optional[List[int]]]:
    """
    Depth-first search for an order whose crossing-conflict graph colours with fewer than `best`
    colours. Crossings are added incrementally; a greedy twist through each new edge bounds the
    prefix from below, and complete orders are coloured exactly against the incumbent.
    """
    position = [-1] * size
    prefix: List[int] = []
    spans: List[Tuple[int, int]] = []
    conflicts: List[Set[int]] = []
    found: Optional[List[int]] = None

    def extend(lower: int) -> None:
        nonlocal best, found
        rank = len(prefix)
        if rank == size:
            coloring = exact_coloring(conflicts, upper=best - 1)
            if coloring is not None:
                best, found = max(coloring, default=-1) + 1, prefix[:]
            return
        for v in first_vertices if rank == 0 else range(size):
            if position[v] >= 0 or (use_symmetry and v == 1 and position[0] < 0):
                continue
            reached = lower
            added = 0
            for u in adjacency[v]:
                if position[u] < 0:
                    continue
                a = position[u]
                crossed = {j for j, (c, d) in enumerate(spans) if spans_cross(a, rank, c, d)}
                index = len(spans)
                spans.append((a, rank))
                conflicts.append(crossed)
                for j in crossed:
                    conflicts[j].add(index)
                added += 1
                reached = max(reached, 1 + len(greedy_clique(conflicts, sorted(crossed))))
            if not (use_pruning and reached >= best):
                position[v] = rank
                prefix.append(v)
                extend(reached)
                prefix.pop()
                position[v] = -1
            for _ in range(added):
                index = len(spans) - 1
                for j in conflicts[index]:
                    conflicts[j].discard(index)
                spans.pop()
                conflicts.pop()

    extend(0)
    return best, found


_SEARCHES = {LayoutKind.QUEUE: _queue_search, LayoutKind.STACK: _stack_search}


def _run_branch(arguments: tuple) -> Tuple[int, Optional[List[int]]]:
    kind, size, adjacency, best, first, use_symmetry, use_pruning = arguments
    return _SEARCHES[kind](size, adjacency, best, [first], use_symmetry, use_pruning)


def _fixed_order_layout(kind: LayoutKind, graph: Graph, order: LinearOrder) -> Layout:
    if kind == LayoutKind.QUEUE:
        return FixedOrderOptimizer.max_rainbow(graph, order)[2]
    return FixedOrderOptimizer.min_stacks_fixed_order(graph, order, SolveMode.EXACT)


def _solve_component(
    kind: LayoutKind, graph: Graph, threads: int, use_symmetry: bool, use_pruning: bool
) -> Layout:
    """Optimal layout of a connected graph; the identity order is the first incumbent"""
    incumbent = _fixed_order_layout(kind, graph, LinearOrder.identity(graph.n))
    if incumbent.k <= 1:
        return incumbent

    adjacency = [list(graph.neighbours(v)) for v in range(graph.n)]
    firsts = [v for v in range(graph.n) if not (use_symmetry and v == 1)]
    if threads > 1 and len(firsts) > 1:
        branches = [(kind, graph.n, adjacency, incumbent.k, first, use_symmetry, use_pruning) for first in firsts]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_branch, branches))
        improving = [(k, index, order) for index, (k, order) in enumerate(results) if order is not None]
        best_k, _, found = min(improving) if improving else (incumbent.k, 0, None)
    else:
        best_k, found = _SEARCHES[kind](graph.n, adjacency, incumbent.k, firsts, use_symmetry, use_pruning)

    if found is None:
        return incumbent
    logger.debug("%s search improved %d -> %d on %d vertices", kind.value, incumbent.k, best_k, graph.n)
    return _fixed_order_layout(kind, graph, LinearOrder(vertices=tuple(found)))


# ==================== EXACT SOLVERS ====================
class ExactSolvers:

    @staticmethod
    def exact_layout(
        graph: Graph,
        kind: LayoutKind,
        limit: Optional[int] = None,
        threads: Optional[int] = None,
        use_symmetry: bool = True,
        use_pruning: bool = True,
    ) -> Tuple[int, Layout]:
        """Minimum page count over all orders; components are solved separately and concatenated"""
        settings = get_settings()
        if limit is None:
            limit = settings.exact_queue_vertex_limit if kind == LayoutKind.QUEUE else settings.exact_stack_vertex_limit
        if graph.n > limit:
            raise SizeLimitError(f"exact {kind.value} number limited to {limit} vertices, graph has {graph.n}")
        if kind == LayoutKind.STACK and graph.m > settings.exact_coloring_edge_limit:
            raise SizeLimitError(
                f"exact colouring limited to {settings.exact_coloring_edge_limit} edges, graph has {graph.m}"
            )
        threads = settings.exact_threads if threads is None else threads

        sequence: List[int] = []
        pages: Dict[Edge, int] = {}
        k = 0
        for component in GraphOperations.connected_components(graph):
            subgraph, members = GraphOperations.induced_subgraph(graph, component)
            layout = _solve_component(kind, subgraph, threads, use_symmetry, use_pruning)
            sequence.extend(members[v] for v in layout.order.vertices)
            for (u, v), page in layout.pages.items():
                pages[(members[u], members[v])] = page
            k = max(k, layout.k)

        logger.info("exact %s number of a %d-vertex graph: %d", kind.value, graph.n, k)
        order = LinearOrder(vertices=tuple(sequence))
        return k, Layout(kind=kind, order=order, pages=pages, k=k)

    @staticmethod
    def queue_number_exact(graph: Graph, **options) -> Tuple[int, Layout]:
        return ExactSolvers.exact_layout(graph, LayoutKind.QUEUE, **options)

    @staticmethod
    def stack_number_exact(graph: Graph, **options) -> Tuple[int, Layout]:
        return ExactSolvers.exact_layout(graph, LayoutKind.STACK, **options)

    @staticmethod
    def sn_via_components(graph: Graph, limit: Optional[int] = None) -> int:
        """Maximum stack number over the biconnected components"""
        best = 0
        for component in GraphOperations.biconnected_components(graph):
            subgraph, _ = GraphOperations.induced_subgraph(graph, component)
            best = max(best, ExactSolvers.stack_number_exact(subgraph, limit=limit)[0])
        return best

    @staticmethod
    def vc_stack_upper(graph: Graph, limit: Optional[int] = None) -> Tuple[int, Layout]:
        """One stack per vertex of a minimum cover; an edge goes to its earliest cover endpoint's stack"""
        cover = GraphOperations.vertex_cover_exact(graph, limit=limit)
        page_of = {v: i + 1 for i, v in enumerate(cover)}
        pages = {
            (u, v): min(page_of.get(u, len(cover) + 1), page_of.get(v, len(cover) + 1)) for u, v in graph.edges
        }
        order = LinearOrder.identity(graph.n)
        return len(cover), Layout(kind=LayoutKind.STACK, order=order, pages=pages, k=len(cover))


# ==================== BOUND FORMULAS ====================
class BoundFormulas:

    @staticmethod
    def subdivision_queue_bound(q: int, k: int) -> int:
        """Queue bound for a graph with a q-queue k-subdivision: (2q+2)^(2k) / 2 - 1"""
        return (2 * q + 2) ** (2 * k) // 2 - 1

    @staticmethod
    def treewidth_queue_bound(k: int) -> int:
        return 2 ** k - 1

    @staticmethod
    def complete_stack(n: int) -> int:
        """sn(K_n): 1 up to the triangle, then ceil(n/2) (K_5 already needs three pages)"""
        if n <= 1:
            return 0
        return 1 if n <= 3 else (n + 1) // 2

    @staticmethod
    def complete_queue(n: int) -> int:
        return n // 2

    @staticmethod
    def complete_bipartite_queue(m: int, n: int) -> int:
        return min((m + 1) // 2, (n + 1) // 2)

    @staticmethod
    def evaluate(name: str, params: Sequence[int]) -> int:
        from app.engine.counterexample import RamseyNumbers
        from app.models.pipeline_models import RamseyMode

        formulas = {
            "subdivision-queue": (BoundFormulas.subdivision_queue_bound, 2),
            "treewidth-queue": (BoundFormulas.treewidth_queue_bound, 1),
            "complete-stack": (BoundFormulas.complete_stack, 1),
            "complete-queue": (BoundFormulas.complete_queue, 1),
            "complete-bipartite-queue": (BoundFormulas.complete_bipartite_queue, 2),
            "ramsey-upper": (lambda r, s: RamseyNumbers.ramsey_number(r, s, RamseyMode.UPPER), 2),
            "ramsey-exact": (lambda r, s: RamseyNumbers.ramsey_number(r, s, RamseyMode.EXACT_SMALL), 2),
        }
        key = name.replace("_", "-")
        if key.endswith("-bound"):
            key = key[: -len("-bound")]
        if key not in formulas:
            raise InvalidParameterError(f"unknown bound {name!r}; known: {', '.join(sorted(formulas))}")
        formula, arity = formulas[key]
        if len(params) != arity:
            raise InvalidParameterError(f"{key} takes {arity} parameter(s), got {len(params)}")
        if any(p < 1 for p in params):
            raise InvalidParameterError(f"{key} parameters must be positive integers")
        return formula(*params)
