"""
Constructive layouts for the graph families: trees, complete and complete bipartite graphs,
X-trees, unicyclic graphs, k-trees, outerplanar graphs, products, the hexagonal-grid dual
and 3-stack subdivisions
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.engine.graph_core import GraphFamilies, GraphOperations, require_at_least
from app.engine.layout_core import (
    FixedOrderOptimizer,
    LayoutValidator,
    LeveledEmbeddings,
    crossing_conflicts,
)
from app.errors import (
    InvalidBuildError,
    InvalidInputError,
    InvalidLayoutError,
    InvalidParameterError,
    NotOuterplanarError,
)
from app.models.graph_models import DivisionLabel, Edge, Graph, KTreeBuild, normalize_edge
from app.models.layout_models import EdgeDivisions, Layout, LayoutKind, LeveledEmbedding, LinearOrder

logger = logging.getLogger(__name__)


# ==================== HELPER FUNCTIONS ====================
def order_from_sequence(graph: Graph, sequence: Sequence[int], what: str = "order") -> LinearOrder:
    if sorted(sequence) != list(range(graph.n)):
        raise InvalidParameterError(f"{what} must list every vertex 0..{graph.n - 1} exactly once")
    return LinearOrder(vertices=tuple(sequence))


def _require_tree(tree: Graph, root: int) -> None:
    if not GraphOperations.is_tree(tree):
        raise InvalidInputError("graph is not a tree")
    if not 0 <= root < tree.n:
        raise InvalidParameterError(f"root {root} is not a vertex")


# ==================== TREES ====================
class TreeLayouts:

    @staticmethod
    def tree_stack_layout(tree: Graph, root: int = 0) -> Layout:
        """DFS discovery order with children by ascending id; one stack"""
        _require_tree(tree, root)
        sequence = list(nx.dfs_preorder_nodes(GraphOperations.to_networkx(tree), source=root))
        order = LinearOrder(vertices=tuple(sequence))
        return Layout(kind=LayoutKind.STACK, order=order, pages={e: 1 for e in tree.edges}, k=1)

    @staticmethod
    def tree_queue_layout(tree: Graph, root: int = 0) -> Tuple[Layout, LeveledEmbedding]:
        """BFS layer order (parent order, then id); one queue, levels are the BFS layers"""
        _require_tree(tree, root)
        depth = {root: 0}
        sequence = [root]
        for parent, child in nx.bfs_edges(GraphOperations.to_networkx(tree), source=root):
            depth[child] = depth[parent] + 1
            sequence.append(child)
        levels: List[List[int]] = [[] for _ in range(max(depth.values()) + 1)]
        for v in sequence:
            levels[depth[v]].append(v)
        embedding = LeveledEmbedding(levels=[tuple(level) for level in levels])
        order = LinearOrder(vertices=tuple(sequence))
        layout = Layout(kind=LayoutKind.QUEUE, order=order, pages={e: 1 for e in tree.edges}, k=1)
        return layout, embedding


# ==================== COMPLETE GRAPHS ====================
def _zig_zag_pages(n: int) -> Dict[Edge, int]:
    """Even n: path P_w = w, w+1, w-1, w+2, ... (mod n) on page w+1, for w < n/2"""
    pages: Dict[Edge, int] = {}
    for w in range(n // 2):
        path = [w]
        step = 1
        while len(path) < n:
            path.append((w + step) % n)
            if len(path) < n:
                path.append((w - step) % n)
            step += 1
        for u, v in zip(path, path[1:]):
            pages[normalize_edge(u, v)] = w + 1
    return pages


class CompleteLayouts:

    @staticmethod
    def complete_stack_layout(n: int) -> Layout:
        """
        Natural order. Even n >= 4 splits K_n into n/2 zig-zag Hamiltonian paths of the circle,
        one per page; odd n drops vertex n from the K_{n+1} layout; n <= 3 fits on one page.
        """
        require_at_least("n", n, 2)
        graph = GraphFamilies.complete(n)
        if n <= 3:
            pages = {e: 1 for e in graph.edges}
        else:
            even = n if n % 2 == 0 else n + 1
            pages = {e: page for e, page in _zig_zag_pages(even).items() if e[1] < n}
        return Layout(kind=LayoutKind.STACK, order=LinearOrder.identity(n), pages=pages, k=max(pages.values()))

    @staticmethod
    def complete_queue_layout(n: int) -> Layout:
        """Natural order; edges of length 2i-1 and 2i share queue i"""
        require_at_least("n", n, 2)
        graph = GraphFamilies.complete(n)
        pages = {(u, v): (v - u + 1) // 2 for u, v in graph.edges}
        return Layout(kind=LayoutKind.QUEUE, order=LinearOrder.identity(n), pages=pages, k=n // 2)

    @staticmethod
    def bipartite_split_layout(graph: Graph, part_a: Sequence[int], part_b: Sequence[int]) -> Layout:
        """
        Smaller part A split around B: a_1..a_ceil(m/2), B, the rest of A.
        Queue i holds the edges of a_i and a_(m+1-i).
        """
        side_a, side_b = sorted(part_a), sorted(part_b)
        if len(side_a) > len(side_b):
            side_a, side_b = side_b, side_a
        half = (len(side_a) + 1) // 2
        sequence = side_a[:half] + side_b + side_a[half:]
        queue_of = {a: min(i + 1, len(side_a) - i) for i, a in enumerate(side_a)}
        pages: Dict[Edge, int] = {}
        for u, v in graph.edges:
            if u in queue_of and v in queue_of:
                raise InvalidInputError(f"edge ({u}, {v}) lies inside one part")
            pages[(u, v)] = queue_of[u] if u in queue_of else queue_of[v]
        order = order_from_sequence(graph, sequence)
        return Layout(kind=LayoutKind.QUEUE, order=order, pages=pages, k=half)

    @staticmethod
    def complete_bipartite_queue_layout(m: int, n: int) -> Layout:
        graph = GraphFamilies.complete_bipartite(m, n)
        return CompleteLayouts.bipartite_split_layout(graph, range(m), range(m, m + n))


# ==================== X-TREES ====================
class XTreeLayouts:

    @staticmethod
    def hamiltonian_order(d: int) -> LinearOrder:
        """Root, then the layers alternately left to right and right to left"""
        sequence = [0]
        for layer in range(1, d + 1):
            members = list(range(2 ** layer - 1, 2 ** (layer + 1) - 1))
            sequence.extend(members if layer % 2 == 1 else reversed(members))
        return LinearOrder(vertices=tuple(sequence))

    @staticmethod
    def x_tree_layouts(d: int) -> Tuple[Layout, Layout]:
        graph = GraphFamilies.x_tree(d)
        stack = FixedOrderOptimizer.two_stack_from_hamiltonian(graph, XTreeLayouts.hamiltonian_order(d))
        pages = {(u, v): 2 if graph.labels[u].row == graph.labels[v].row else 1 for u, v in graph.edges}
        queue = Layout(kind=LayoutKind.QUEUE, order=LinearOrder.identity(graph.n), pages=pages, k=2)
        return stack, queue


# ==================== UNICYCLIC GRAPHS ====================
_BOTTOM, _TOP, _TREE = "bottom", "top", "tree"


class UnicyclicLayouts:

    @staticmethod
    def unicyclic_queue_layout(graph: Graph) -> Tuple[Layout, LeveledEmbedding]:
        """
        Level the cycle u_1..u_k in pairs {u_i, u_(k-i+2)} (even k) or {u_i, u_(k-i+1)} (odd k,
        arch u_1 u_k), then hang the pendant trees below their cycle roots level by level.
        """
        cycle = GraphOperations.unicyclic_cycle(graph)
        k = len(cycle)

        def u(i: int) -> int:
            return cycle[(i - 1) % k]

        level: Dict[int, int] = {u(1): 0}
        parent: Dict[int, Optional[int]] = {u(1): None}
        chain: Dict[int, str] = {u(1): _BOTTOM}
        arches: List[Edge] = []
        if k % 2 == 0:
            for i in range(2, k // 2 + 1):
                level[u(i)], parent[u(i)], chain[u(i)] = i - 1, u(i - 1), _BOTTOM
                mirror = k - i + 2
                level[u(mirror)], parent[u(mirror)], chain[u(mirror)] = i - 1, u(mirror + 1), _TOP
            bottom = u(k // 2 + 1)
            level[bottom], parent[bottom], chain[bottom] = k // 2, u(k // 2), _BOTTOM
        else:
            level[u(k)], parent[u(k)], chain[u(k)] = 0, None, _TOP
            for i in range(2, (k + 1) // 2):
                level[u(i)], parent[u(i)], chain[u(i)] = i - 1, u(i - 1), _BOTTOM
                mirror = k - i + 1
                level[u(mirror)], parent[u(mirror)], chain[u(mirror)] = i - 1, u(mirror + 1), _TOP
            bottom = u((k + 1) // 2)
            level[bottom], parent[bottom], chain[bottom] = (k - 1) // 2, u((k - 1) // 2), _BOTTOM
            arches.append(normalize_edge(u(1), u(k)))

        on_cycle = set(cycle)
        frontier = list(cycle)
        while frontier:
            following = []
            for x in frontier:
                for y in graph.neighbours(x):
                    if y in on_cycle or y in level:
                        continue
                    level[y], parent[y], chain[y] = level[x] + 1, x, _TREE
                    following.append(y)
            frontier = following

        def tiebreak(v: int) -> Tuple[int, int]:
            above = parent[v]
            if above is None or chain[above] == _TREE:
                return (0, v)
            if chain[above] == _BOTTOM:
                if chain[v] == _TREE:
                    return (0, v)
                return (1, 0) if chain[v] == _BOTTOM else (2, 0)
            return (0, 0) if chain[v] != _TREE else (1, v)

        levels: List[List[int]] = [[] for _ in range(max(level.values()) + 1)]
        for v in sorted(level):
            levels[level[v]].append(v)
        rank: Dict[int, int] = {}
        for index, members in enumerate(levels):
            if index == 0:
                members.sort(key=lambda v: 0 if v == u(1) else 1)
            else:
                members.sort(key=lambda v: (rank[parent[v]],) + tiebreak(v))
            rank.update((v, r) for r, v in enumerate(members))

        embedding = LeveledEmbedding(levels=[tuple(members) for members in levels], arches=arches)
        return LeveledEmbeddings.leveled_to_queue(graph, embedding), embedding


# ==================== K-TREES ====================
class KTreeLayouts:

    @staticmethod
    def decomposition_order(build: KTreeBuild) -> LinearOrder:
        """
        Bag 0 is the base clique, bag i+1 is S_i plus the new vertex, hung below the bag that
        introduced the latest member of S_i. Vertices ordered by first discovery in a DFS of the bags.
        """
        k = build.k
        bags = nx.DiGraph()
        bags.add_node(0)
        for i, attachment in enumerate(build.attachments):
            latest = max(attachment)
            bags.add_edge(0 if latest < k else latest - k + 1, i + 1)
        sequence = list(range(k)) + [k + bag - 1 for bag in nx.dfs_preorder_nodes(bags, source=0) if bag > 0]
        return LinearOrder(vertices=tuple(sequence))

    @staticmethod
    def k_tree_stack_layout(build: KTreeBuild) -> Layout:
        """Greedy colouring in build order (at most k+1 colours); an edge takes its earlier endpoint's colour"""
        try:
            graph = GraphFamilies.k_tree(build)
        except InvalidBuildError as exc:
            raise InvalidInputError(str(exc))
        order = KTreeLayouts.decomposition_order(build)
        coloring = nx.greedy_color(
            GraphOperations.to_networkx(graph),
            strategy=lambda nx_graph, colors: iter(range(nx_graph.number_of_nodes())),
        )
        pages = {}
        for u, v in graph.edges:
            earlier = u if order.position(u) < order.position(v) else v
            pages[(u, v)] = coloring[earlier] + 1
        return Layout(kind=LayoutKind.STACK, order=order, pages=pages, k=max(pages.values(), default=0))


# ==================== OUTERPLANAR GRAPHS ====================
class OuterplanarLayouts:

    @staticmethod
    def outerplanar_stack_layout(graph: Graph, boundary: Sequence[int]) -> Layout:
        """Vertices in outer-boundary order on a single page"""
        order = order_from_sequence(graph, boundary, "boundary")
        layout = Layout(kind=LayoutKind.STACK, order=order, pages={e: 1 for e in graph.edges}, k=1)
        report = LayoutValidator.validate(graph, layout, cap=1)
        if not report.valid:
            pair = (report.violations[0].first, report.violations[0].second)
            raise NotOuterplanarError(f"chords {pair[0]} and {pair[1]} cross for this boundary", pair)
        return layout

    @staticmethod
    def one_stack_to_two_queue(graph: Graph, boundary: Sequence[int]) -> Layout:
        """
        BFS layers from the first boundary vertex, each layer in boundary order.
        Edges inside a layer go to queue 1, edges between layers to queue 2.
        """
        OuterplanarLayouts.outerplanar_stack_layout(graph, boundary)
        if not GraphOperations.is_connected(graph):
            raise InvalidInputError("graph must be connected")
        distance = nx.single_source_shortest_path_length(GraphOperations.to_networkx(graph), boundary[0])
        rank = {v: i for i, v in enumerate(boundary)}
        sequence = sorted(range(graph.n), key=lambda v: (distance[v], rank[v]))
        pages = {(u, v): 1 if distance[u] == distance[v] else 2 for u, v in graph.edges}
        return Layout(kind=LayoutKind.QUEUE, order=LinearOrder(vertices=tuple(sequence)), pages=pages, k=2)


# ==================== PRODUCTS AND THE HEX GRID ====================
class ProductLayouts:

    @staticmethod
    def product_queue_layout(left: Graph, left_layout: Layout, right: Graph, right_layout: Layout) -> Layout:
        """
        Queue layout of left □ right from a strict queue layout of the left factor:
        (v, a) precedes (w, b) iff v precedes w, or v = w and a precedes b.
        Right copies keep their pages; left edges take their strict page shifted past the right pages.
        """
        if left_layout.kind != LayoutKind.QUEUE or not left_layout.strict:
            raise InvalidLayoutError("left factor needs a strict queue layout")
        if right_layout.kind != LayoutKind.QUEUE:
            raise InvalidLayoutError("right factor needs a queue layout")
        for factor, layout in ((left, left_layout), (right, right_layout)):
            if not LayoutValidator.validate(factor, layout, cap=1).valid:
                raise InvalidLayoutError("factor layout is not valid")

        width = right.n
        sequence = [v * width + a for v in left_layout.order.vertices for a in right_layout.order.vertices]
        pages: Dict[Edge, int] = {}
        for a, b in right.edges:
            for v in range(left.n):
                pages[(v * width + a, v * width + b)] = right_layout.pages[(a, b)]
        for v, w in left.edges:
            for a in range(width):
                pages[(v * width + a, w * width + a)] = left_layout.pages[(v, w)] + right_layout.k
        order = LinearOrder(vertices=tuple(sequence))
        return Layout(kind=LayoutKind.QUEUE, order=order, pages=pages, k=left_layout.k + right_layout.k)


class HexLayouts:

    @staticmethod
    def hex_strict_queue_layout(n: int) -> Layout:
        """Row-major order; horizontal, vertical and diagonal edges on strict queues 1, 2, 3"""
        graph = GraphFamilies.hex_dual(n)
        pages = {}
        for u, v in graph.edges:
            if v - u == 1:
                pages[(u, v)] = 1
            elif v - u == n:
                pages[(u, v)] = 2
            else:
                pages[(u, v)] = 3
        return Layout(kind=LayoutKind.QUEUE, strict=True, order=LinearOrder.identity(graph.n), pages=pages, k=3)


# ==================== 3-STACK SUBDIVISION ====================
@dataclass
class _Curve:
    edge: Edge
    tail: int
    page: int
    target: Tuple[int, int]
    chain: List[int] = field(default_factory=list)


class SubdivisionLayouts:

    @staticmethod
    def discovery_order(graph: Graph) -> List[int]:
        nx_graph = GraphOperations.to_networkx(graph)
        sequence: List[int] = []
        for component in GraphOperations.connected_components(graph):
            sequence.extend(nx.dfs_preorder_nodes(nx_graph, source=component[0]))
        return sequence

    @staticmethod
    def three_stack_subdivision(graph: Graph) -> Tuple[Graph, Layout, List[EdgeDivisions]]:
        """
        Subdivide G so that it fits on three stacks.

        Every original vertex is followed by one port vertex per incident edge; the star edges
        to the ports share page 1. The port matching is routed left to right on pages 2 and 3,
        kept as two stacks of open curves. When a curve must end, the curves stacked above it
        cross to the other page through a new division vertex.
        """
        sigma = SubdivisionLayouts.discovery_order(graph)
        sigma_order = LinearOrder(vertices=tuple(sigma))
        _, conflicts = crossing_conflicts(graph, sigma_order)
        if not any(conflicts):
            layout = Layout(kind=LayoutKind.STACK, order=sigma_order, pages={e: 1 for e in graph.edges}, k=1)
            report = [EdgeDivisions(u=u, v=v, divisions=0) for u, v in graph.edges]
            return Graph(n=graph.n, edges=graph.edges, labels=graph.labels), layout, report

        rank = {v: i for i, v in enumerate(sigma)}
        blocks: Dict[int, List[Tuple[Edge, int, bool]]] = {}
        for x in sigma:
            incoming = sorted((y for y in graph.neighbours(x) if rank[y] < rank[x]), key=lambda y: -rank[y])
            outgoing = sorted((y for y in graph.neighbours(x) if rank[y] > rank[x]), key=lambda y: -rank[y])
            blocks[x] = [(normalize_edge(x, y), y, True) for y in incoming]
            blocks[x] += [(normalize_edge(x, y), y, False) for y in outgoing]

        port: Dict[Tuple[int, Edge], int] = {}
        slot: Dict[Tuple[int, Edge], Tuple[int, int]] = {}
        next_id = graph.n
        for x in sigma:
            for index, (edge, _, _) in enumerate(blocks[x]):
                port[(x, edge)] = next_id
                slot[(x, edge)] = (rank[x], index)
                next_id += 1

        sequence: List[int] = []
        edges: Dict[Edge, int] = {}
        stacks: Dict[int, List[_Curve]] = {2: [], 3: []}
        open_curves: Dict[Edge, _Curve] = {}
        finished: Dict[Edge, List[int]] = {}

        def add(u: int, v: int, page: int) -> None:
            edges[normalize_edge(u, v)] = page

        for x in sigma:
            sequence.append(x)
            for edge, partner, incoming in blocks[x]:
                here = port[(x, edge)]
                if incoming:
                    curve = open_curves.pop(edge)
                    stack = stacks[curve.page]
                    while stack[-1] is not curve:
                        blocker = stack.pop()
                        division = next_id
                        next_id += 1
                        sequence.append(division)
                        add(blocker.tail, division, blocker.page)
                        blocker.chain.append(division)
                        blocker.tail = division
                        blocker.page = 5 - blocker.page
                        stacks[blocker.page].append(blocker)
                    stack.pop()
                    sequence.append(here)
                    add(curve.tail, here, curve.page)
                    add(x, here, 1)
                    finished[edge] = curve.chain + [here, x]
                else:
                    sequence.append(here)
                    add(x, here, 1)
                    target = slot[(partner, edge)]

                    def ends_after(page: int) -> Tuple[int, int]:
                        return stacks[page][-1].target if stacks[page] else (len(sigma), 0)

                    page = 2 if ends_after(2) >= ends_after(3) else 3
                    curve = _Curve(edge=edge, tail=here, page=page, target=target, chain=[x, here])
                    stacks[page].append(curve)
                    open_curves[edge] = curve

        labels = {v: graph.label_of(v) for v in range(graph.n)}
        report: List[EdgeDivisions] = []
        for edge in graph.edges:
            chain = finished[edge]
            if chain[0] != edge[0]:
                chain = list(reversed(chain))
            for index, vertex in enumerate(chain[1:-1], start=1):
                labels[vertex] = DivisionLabel(edge=edge, index=index)
            report.append(EdgeDivisions(u=edge[0], v=edge[1], divisions=len(chain) - 2))

        subdivision = Graph(n=next_id, edges=sorted(edges), labels=[labels[v] for v in range(next_id)])
        layout = Layout(
            kind=LayoutKind.STACK,
            order=LinearOrder(vertices=tuple(sequence)),
            pages={e: edges[e] for e in subdivision.edges},
            k=3,
        )
        logger.info(
            "3-stack subdivision: %d original edges, %d division vertices",
            graph.m,
            sum(item.divisions for item in report),
        )
        return subdivision, layout, report
