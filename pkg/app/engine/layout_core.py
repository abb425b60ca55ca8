"""
Layout core
Crossing/nesting predicates, layout validation, witnesses, fixed-order optimizers
and the arched leveled planar correspondence for 1-queue layouts
"""

import logging
from collections import deque
from typing import Deque, Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from app.config import get_settings
from app.engine.graph_core import GraphOperations
from app.errors import (
    InvalidEdgeError,
    InvalidEmbeddingError,
    InvalidInputError,
    InvalidLayoutError,
    MalformedLayoutError,
    NotTwoPageEmbeddableError,
    SizeLimitError,
)
from app.models.graph_models import Edge, Graph, normalize_edge
from app.models.layout_models import (
    Layout,
    LayoutKind,
    LeveledEmbedding,
    LinearOrder,
    SolveMode,
    ValidationReport,
    Violation,
    ViolationReason,
    Witness,
    WitnessKind,
)

logger = logging.getLogger(__name__)


# ==================== HELPER FUNCTIONS ====================
def spans_cross(a: int, b: int, c: int, d: int) -> bool:
    """Spans (a, b) and (c, d), a < b and c < d, interleave strictly"""
    return a < c < b < d or c < a < d < b


def spans_nest(a: int, b: int, c: int, d: int) -> bool:
    return (a < c and d < b) or (c < a and b < d)


def spans_strict_conflict(a: int, b: int, c: int, d: int) -> bool:
    """Shared endpoint with both other endpoints on the same side of it"""
    if a == c:
        return b != d
    if b == d:
        return a != c
    return False


def crossing_conflicts(graph: Graph, order: LinearOrder) -> Tuple[List[Edge], List[Set[int]]]:
    """Sorted edges and, per edge index, the indices of the edges it crosses"""
    edges = list(graph.edges)
    spans = [order.oriented(e) for e in edges]
    adjacency: List[Set[int]] = [set() for _ in edges]
    for i in range(len(edges)):
        a, b = spans[i]
        for j in range(i + 1, len(edges)):
            if spans_cross(a, b, *spans[j]):
                adjacency[i].add(j)
                adjacency[j].add(i)
    return edges, adjacency


def greedy_clique(adjacency: Sequence[Set[int]], candidates: Optional[Sequence[int]] = None) -> List[int]:
    """Maximal clique grown in decreasing-degree order"""
    pool = range(len(adjacency)) if candidates is None else candidates
    clique: List[int] = []
    for node in sorted(pool, key=lambda v: (-len(adjacency[v]), v)):
        if all(node in adjacency[member] for member in clique):
            clique.append(node)
    return clique


def _adjacency_to_networkx(adjacency: Sequence[Set[int]]) -> nx.Graph:
    conflict = nx.Graph()
    conflict.add_nodes_from(range(len(adjacency)))
    conflict.add_edges_from((i, j) for i, neighbours in enumerate(adjacency) for j in neighbours if i < j)
    return conflict


def greedy_coloring(adjacency: Sequence[Set[int]]) -> List[int]:
    coloring = nx.greedy_color(_adjacency_to_networkx(adjacency), strategy="saturation_largest_first")
    return [coloring[node] for node in range(len(adjacency))]


def exact_coloring(adjacency: Sequence[Set[int]], upper: Optional[int] = None) -> Optional[List[int]]:
    """
    Minimum colouring by DSATUR branch and bound with a clique lower bound.
    With `upper` set, only colourings using at most `upper` colours count; None if there is none.
    """
    size = len(adjacency)
    if size == 0:
        return []
    lower = len(greedy_clique(adjacency))
    greedy = greedy_coloring(adjacency)
    greedy_colors = max(greedy) + 1
    if upper is None or greedy_colors <= upper:
        best: Optional[List[int]] = greedy
        best_colors = greedy_colors
    else:
        best, best_colors = None, upper + 1
    if best_colors <= lower:
        return best

    colors = [-1] * size

    def pick_node() -> int:
        chosen, chosen_key = -1, None
        for node in range(size):
            if colors[node] >= 0:
                continue
            saturation = len({colors[u] for u in adjacency[node] if colors[u] >= 0})
            uncolored_degree = sum(1 for u in adjacency[node] if colors[u] < 0)
            key = (saturation, uncolored_degree)
            if chosen_key is None or key > chosen_key:
                chosen, chosen_key = node, key
        return chosen

    def branch(colored: int, used: int) -> None:
        nonlocal best, best_colors
        if colored == size:
            if used < best_colors:
                best, best_colors = colors[:], used
            return
        node = pick_node()
        forbidden = {colors[u] for u in adjacency[node]}
        for color in range(used + 1):
            if color >= best_colors - 1:
                break
            if color in forbidden:
                continue
            colors[node] = color
            branch(colored + 1, max(used, color + 1))
            colors[node] = -1
            if best_colors <= lower:
                return

    branch(0, 0)
    return best


def _check_edge(order: LinearOrder, edge: Edge, graph: Optional[Graph]) -> Tuple[int, int]:
    u, v = edge
    if u == v or not (0 <= u < order.n and 0 <= v < order.n):
        raise InvalidEdgeError(f"({u}, {v}) is not an edge over vertices 0..{order.n - 1}")
    if graph is not None and not graph.has_edge(u, v):
        raise InvalidEdgeError(f"({u}, {v}) is not an edge of the graph")
    return order.oriented(edge)


# ==================== PREDICATES ====================
class LayoutPredicates:

    @staticmethod
    def edges_cross(order: LinearOrder, e: Edge, f: Edge, graph: Optional[Graph] = None) -> bool:
        """True iff the endpoints interleave strictly; edges sharing an endpoint never cross"""
        return spans_cross(*_check_edge(order, e, graph), *_check_edge(order, f, graph))

    @staticmethod
    def edges_nest(order: LinearOrder, e: Edge, f: Edge, graph: Optional[Graph] = None) -> bool:
        """True iff one edge lies strictly inside the other; edges sharing an endpoint never nest"""
        return spans_nest(*_check_edge(order, e, graph), *_check_edge(order, f, graph))

    @staticmethod
    def conflict_graph(graph: Graph, order: LinearOrder) -> nx.Graph:
        """Crossing-conflict graph with graph edges as nodes"""
        edges, adjacency = crossing_conflicts(graph, order)
        conflict = nx.Graph()
        conflict.add_nodes_from(edges)
        conflict.add_edges_from((edges[i], edges[j]) for i in range(len(edges)) for j in adjacency[i] if i < j)
        return conflict


# ==================== VALIDATION ====================
class LayoutValidator:

    @staticmethod
    def check_well_formed(graph: Graph, layout: Layout) -> None:
        if layout.order.n != graph.n:
            raise MalformedLayoutError(f"order has {layout.order.n} vertices, graph has {graph.n}")
        assigned = set(layout.pages)
        missing = [e for e in graph.edges if e not in assigned]
        if missing:
            raise MalformedLayoutError(f"{len(missing)} edge(s) without a page, first {missing[0]}")
        unknown = sorted(assigned.difference(graph.edges))
        if unknown:
            raise MalformedLayoutError(f"page assigned to non-edge {unknown[0]}")
        bad_pages = sorted({p for p in layout.pages.values() if not 1 <= p <= layout.k})
        if bad_pages:
            raise MalformedLayoutError(f"page id {bad_pages[0]} outside 1..{layout.k}")

    @staticmethod
    def validate(graph: Graph, layout: Layout, cap: Optional[int] = None) -> ValidationReport:
        """Enumerate every offending same-page pair; the listed violations are capped, the count is exact"""
        LayoutValidator.check_well_formed(graph, layout)
        cap = get_settings().violation_report_cap if cap is None else cap
        order = layout.order
        is_stack = layout.kind == LayoutKind.STACK
        violations: List[Violation] = []
        count = 0

        for page, edges in layout.page_edges().items():
            spans = [order.oriented(e) for e in edges]
            for i in range(len(edges)):
                a, b = spans[i]
                for j in range(i + 1, len(edges)):
                    c, d = spans[j]
                    if is_stack:
                        reason = ViolationReason.CROSSING if spans_cross(a, b, c, d) else None
                    elif spans_nest(a, b, c, d):
                        reason = ViolationReason.NESTING
                    elif layout.strict and spans_strict_conflict(a, b, c, d):
                        reason = ViolationReason.STRICT
                    else:
                        reason = None
                    if reason is None:
                        continue
                    count += 1
                    if len(violations) < cap:
                        violations.append(Violation(first=edges[i], second=edges[j], page=page, reason=reason))

        if count:
            logger.debug("%s layout has %d violation(s)", layout.kind.value, count)
        return ValidationReport(
            valid=count == 0,
            kind=layout.kind,
            strict=layout.strict,
            k=layout.k,
            violation_count=count,
            violations=violations,
            truncated=count > len(violations),
        )

    @staticmethod
    def simulate_linearization(graph: Graph, layout: Layout) -> Optional[Tuple[int, Edge]]:
        """
        Sweep the order with one stack or queue per page: an edge is inserted at its left endpoint
        and removed at its right endpoint. Returns the first (page, edge) that is not at the top
        (stack) or front (queue) when it must be removed, or None.
        """
        LayoutValidator.check_well_formed(graph, layout)
        order = layout.order
        is_stack = layout.kind == LayoutKind.STACK
        opening: Dict[int, List[Tuple[int, Edge]]] = {}
        closing: Dict[int, List[Tuple[int, Edge]]] = {}
        for edge in graph.edges:
            left, right = order.oriented(edge)
            opening.setdefault(left, []).append((right, edge))
            closing.setdefault(right, []).append((left, edge))

        containers: Dict[int, Deque[Edge]] = {page: deque() for page in range(1, layout.k + 1)}
        for position in range(order.n):
            for _, edge in sorted(closing.get(position, []), reverse=is_stack):
                container = containers[layout.pages[edge]]
                if not container or (container[-1] if is_stack else container[0]) != edge:
                    return layout.pages[edge], edge
                if is_stack:
                    container.pop()
                else:
                    container.popleft()
            for _, edge in sorted(opening.get(position, []), reverse=is_stack):
                containers[layout.pages[edge]].append(edge)
        return None

    @staticmethod
    def verify_witness(witness: Witness) -> bool:
        """Pairwise check of a twist (all cross) or rainbow (all nest) with distinct endpoints"""
        endpoints = [v for edge in witness.edges for v in edge]
        if len(set(endpoints)) != len(endpoints):
            return False
        test = spans_cross if witness.kind == WitnessKind.TWIST else spans_nest
        spans = [witness.order.oriented(e) for e in witness.edges]
        return all(test(*spans[i], *spans[j]) for i in range(len(spans)) for j in range(i + 1, len(spans)))


# ==================== FIXED ORDER OPTIMIZERS ====================
class FixedOrderOptimizer:

    @staticmethod
    def max_rainbow(graph: Graph, order: LinearOrder) -> Tuple[int, Witness, Layout]:
        """Largest rainbow, a witness, and the optimal queue layout (page = rainbow depth)"""
        spans = sorted(((order.oriented(e), e) for e in graph.edges), key=lambda item: (item[0][0], -item[0][1]))
        depth: List[int] = []
        parent: List[int] = []
        for i, ((a, b), _) in enumerate(spans):
            best_depth, best_parent = 1, -1
            for j in range(i):
                c, d = spans[j][0]
                if c < a and b < d and depth[j] + 1 > best_depth:
                    best_depth, best_parent = depth[j] + 1, j
            depth.append(best_depth)
            parent.append(best_parent)

        size = max(depth, default=0)
        chain: List[Edge] = []
        if size:
            node = depth.index(size)
            while node >= 0:
                chain.append(spans[node][1])
                node = parent[node]
            chain.reverse()
        witness = Witness(kind=WitnessKind.RAINBOW, edges=chain, order=order)
        pages = {edge: depth[i] for i, (_, edge) in enumerate(spans)}
        layout = Layout(kind=LayoutKind.QUEUE, order=order, pages=pages, k=size)
        return size, witness, layout

    @staticmethod
    def min_stacks_fixed_order(
        graph: Graph, order: LinearOrder, mode: SolveMode = SolveMode.EXACT, limit: Optional[int] = None
    ) -> Layout:
        """Colour the crossing-conflict graph; page = colour + 1"""
        edges, adjacency = crossing_conflicts(graph, order)
        if mode == SolveMode.EXACT:
            limit = get_settings().exact_coloring_edge_limit if limit is None else limit
            if len(edges) > limit:
                raise SizeLimitError(f"exact colouring limited to {limit} edges, graph has {len(edges)}")
            coloring = exact_coloring(adjacency)
        else:
            coloring = greedy_coloring(adjacency)
        pages = {edge: coloring[i] + 1 for i, edge in enumerate(edges)}
        return Layout(kind=LayoutKind.STACK, order=order, pages=pages, k=max(pages.values(), default=0))

    @staticmethod
    def max_twist(
        graph: Graph, order: LinearOrder, mode: SolveMode = SolveMode.EXACT, limit: Optional[int] = None
    ) -> Witness:
        """Maximum (exact) or maximal (greedy) clique of the crossing-conflict graph"""
        edges, adjacency = crossing_conflicts(graph, order)
        if not edges:
            return Witness(kind=WitnessKind.TWIST, edges=[], order=order)
        if mode == SolveMode.EXACT:
            limit = get_settings().exact_coloring_edge_limit if limit is None else limit
            if len(edges) > limit:
                raise SizeLimitError(f"exact twist search limited to {limit} edges, graph has {len(edges)}")
            clique, _ = nx.max_weight_clique(_adjacency_to_networkx(adjacency), weight=None)
        else:
            clique = greedy_clique(adjacency)
        twist = sorted((edges[i] for i in clique), key=lambda e: order.oriented(e))
        return Witness(kind=WitnessKind.TWIST, edges=twist, order=order)

    @staticmethod
    def two_stack_from_hamiltonian(graph: Graph, cycle_order: LinearOrder) -> Layout:
        """Two-colour the chord conflict graph along the cycle order (inside/outside pages)"""
        edges, adjacency = crossing_conflicts(graph, cycle_order)
        conflict = _adjacency_to_networkx(adjacency)
        parity: Dict[int, int] = {}
        parent: Dict[int, int] = {}
        for component in sorted(sorted(c) for c in nx.connected_components(conflict)):
            source = component[0]
            parity[source] = 0
            parent[source] = -1
            for u, v in nx.bfs_edges(conflict, source):
                parity[v] = 1 - parity[u]
                parent[v] = u

        for u, v in sorted(conflict.edges()):
            if parity[u] == parity[v]:
                cycle = _odd_cycle(parent, u, v)
                odd_cycle = [edges[i] for i in cycle]
                raise NotTwoPageEmbeddableError(
                    f"chord conflicts contain an odd cycle of length {len(odd_cycle)}", odd_cycle
                )

        pages = {edge: parity[i] + 1 for i, edge in enumerate(edges)}
        return Layout(kind=LayoutKind.STACK, order=cycle_order, pages=pages, k=max(pages.values(), default=0))


def _odd_cycle(parent: Dict[int, int], u: int, v: int) -> List[int]:
    """Closed walk u .. lca .. v through the BFS tree, odd because u and v have equal parity"""
    ancestors_u = [u]
    while parent[ancestors_u[-1]] >= 0:
        ancestors_u.append(parent[ancestors_u[-1]])
    on_u_path = {node: i for i, node in enumerate(ancestors_u)}
    path_v = [v]
    while path_v[-1] not in on_u_path:
        path_v.append(parent[path_v[-1]])
    lca = path_v[-1]
    return ancestors_u[: on_u_path[lca] + 1] + list(reversed(path_v[:-1]))


# ==================== LEVELED EMBEDDINGS ====================
class LeveledEmbeddings:

    @staticmethod
    def check_embedding(graph: Graph, embedding: LeveledEmbedding) -> None:
        flat = [v for level in embedding.levels for v in level]
        if sorted(flat) != list(range(graph.n)) or any(not level for level in embedding.levels):
            raise InvalidEmbeddingError("levels must partition the vertices into non-empty parts")
        level_of = embedding.level_index()
        arches = set(embedding.arches)
        for u, v in arches:
            if not graph.has_edge(u, v):
                raise InvalidEmbeddingError(f"arch ({u}, {v}) is not a graph edge")
        for u, v in graph.edges:
            gap = abs(level_of[u] - level_of[v])
            if gap == 1:
                continue
            if gap > 1:
                raise InvalidEmbeddingError(f"edge ({u}, {v}) skips a level")
            if (u, v) not in arches:
                raise InvalidEmbeddingError(f"edge ({u}, {v}) lies inside a level but is not an arch")
            top = embedding.levels[level_of[u]][-1]
            if top not in (u, v):
                raise InvalidEmbeddingError(f"arch ({u}, {v}) does not end at the topmost vertex of its level")

    @staticmethod
    def leveled_to_queue(graph: Graph, embedding: LeveledEmbedding) -> Layout:
        """Order levels left to right, bottom to top inside a level; one queue"""
        LeveledEmbeddings.check_embedding(graph, embedding)
        order = LinearOrder(vertices=tuple(v for level in embedding.levels for v in level))
        layout = Layout(kind=LayoutKind.QUEUE, order=order, pages={e: 1 for e in graph.edges}, k=1)
        report = LayoutValidator.validate(graph, layout, cap=1)
        if not report.valid:
            first = report.violations[0]
            raise InvalidEmbeddingError(f"levels are not planar: {first.first} and {first.second} nest")
        return layout

    @staticmethod
    def queue_to_arched_leveled(graph: Graph, layout: Layout) -> LeveledEmbedding:
        """
        Level a 1-queue layout of a connected graph: V_1 is the first vertex and V_i runs up to
        the last vertex adjacent to V_{i-1}. Intra-level edges must satisfy the arch condition.
        """
        if layout.kind != LayoutKind.QUEUE:
            raise InvalidLayoutError("a queue layout is required")
        report = LayoutValidator.validate(graph, layout, cap=1)
        if not report.valid or layout.used_pages() > 1:
            raise InvalidLayoutError("a valid 1-queue layout is required")
        if not GraphOperations.is_connected(graph):
            raise InvalidInputError("graph must be connected")

        sequence = layout.order.vertices
        position = layout.order.positions
        bounds: List[Tuple[int, int]] = [(0, 0)]
        while bounds[-1][1] < graph.n - 1:
            first, last = bounds[-1]
            reach = max(position[u] for v in sequence[first : last + 1] for u in graph.neighbours(v))
            if reach <= last:
                raise InvalidLayoutError(f"no vertex after position {last} is adjacent to the current level")
            bounds.append((last + 1, reach))

        level_at = [0] * graph.n
        for index, (first, last) in enumerate(bounds):
            for p in range(first, last + 1):
                level_at[p] = index

        arches: List[Edge] = []
        for u, v in graph.edges:
            a, b = layout.order.oriented((u, v))
            if level_at[b] - level_at[a] == 1:
                continue
            if level_at[a] != level_at[b]:
                raise InvalidLayoutError(f"edge ({u}, {v}) skips a level")
            index = level_at[a]
            first, top = bounds[index]
            forward = top
            if index + 1 < len(bounds):
                next_first, next_last = bounds[index + 1]
                adjacent = [
                    p for p in range(first, top + 1)
                    if any(next_first <= position[w] <= next_last for w in graph.neighbours(sequence[p]))
                ]
                forward = adjacent[0] if adjacent else top
            if b != top or not first <= a <= min(top - 1, forward):
                raise InvalidLayoutError(f"edge ({u}, {v}) violates the arch condition of level {index + 1}")
            arches.append((u, v))

        levels = [tuple(sequence[first : last + 1]) for first, last in bounds]
        return LeveledEmbedding(levels=levels, arches=arches)
