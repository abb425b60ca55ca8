"""
Graph families and graph operations
Canonical generators, Cartesian product, subdivision, biconnected decomposition, vertex cover
"""

import logging
import random
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx

from app.config import get_settings
from app.errors import InvalidBuildError, InvalidInputError, InvalidParameterError, SizeLimitError
from app.models.graph_models import (
    DivisionLabel,
    Edge,
    Graph,
    GraphFamily,
    GridLabel,
    KTreeBuild,
    PlainLabel,
    ProductLabel,
    normalize_edge,
)

logger = logging.getLogger(__name__)


# ==================== HELPER FUNCTIONS ====================
def require_at_least(name: str, value: int, minimum: int = 1) -> None:
    if value < minimum:
        raise InvalidParameterError(f"{name} must be at least {minimum}, got {value}")


def make_rng(seed: Optional[int]) -> random.Random:
    return random.Random(get_settings().random_seed if seed is None else seed)


# ==================== GRAPH FAMILIES ====================
class GraphFamilies:

    # BASIC FAMILIES
    @staticmethod
    def generate_basic(family: GraphFamily, *params: int) -> Graph:
        """Build complete / complete-bipartite / path / cycle / star from size parameters"""
        builders = {
            GraphFamily.COMPLETE: (GraphFamilies.complete, 1),
            GraphFamily.COMPLETE_BIPARTITE: (GraphFamilies.complete_bipartite, 2),
            GraphFamily.PATH: (GraphFamilies.path, 1),
            GraphFamily.CYCLE: (GraphFamilies.cycle, 1),
            GraphFamily.STAR: (GraphFamilies.star, 1),
        }
        if family not in builders:
            raise InvalidParameterError(f"{family.value} is not a basic family")
        builder, arity = builders[family]
        if len(params) != arity:
            raise InvalidParameterError(f"{family.value} takes {arity} size parameter(s), got {len(params)}")
        return builder(*params)

    @staticmethod
    def generate(
        family: GraphFamily, params: Sequence[int], seed: Optional[int] = None, attachments: Optional[int] = None
    ) -> Graph:
        """Any named family; ktree takes k and draws `attachments` random attachments"""
        structured = {
            GraphFamily.X_TREE: GraphFamilies.x_tree,
            GraphFamily.HEX_DUAL: GraphFamilies.hex_dual,
            GraphFamily.FAN: GraphFamilies.fan,
            GraphFamily.RANDOM_TREE: lambda n: GraphFamilies.random_tree(n, seed),
            GraphFamily.RANDOM_UNICYCLIC: lambda n: GraphFamilies.random_unicyclic(n, seed),
            GraphFamily.POLYGON_TRIANGULATION: lambda n: GraphFamilies.random_polygon_triangulation(n, seed),
            GraphFamily.K_TREE: lambda k: GraphFamilies.k_tree(
                GraphFamilies.random_k_tree_build(k, attachments or 0, seed)
            ),
        }
        if family not in structured:
            return GraphFamilies.generate_basic(family, *params)
        if len(params) != 1:
            raise InvalidParameterError(f"{family.value} takes 1 size parameter, got {len(params)}")
        return structured[family](params[0])

    @staticmethod
    def complete(n: int) -> Graph:
        require_at_least("n", n)
        return Graph(n=n, edges=list(combinations(range(n), 2)))

    @staticmethod
    def complete_bipartite(m: int, n: int) -> Graph:
        """Part A is 0..m-1, part B is m..m+n-1"""
        require_at_least("m", m)
        require_at_least("n", n)
        return Graph(n=m + n, edges=[(a, m + b) for a in range(m) for b in range(n)])

    @staticmethod
    def path(n: int) -> Graph:
        require_at_least("n", n)
        return Graph(n=n, edges=[(i, i + 1) for i in range(n - 1)])

    @staticmethod
    def cycle(n: int) -> Graph:
        require_at_least("n", n, 3)
        return Graph(n=n, edges=[(i, (i + 1) % n) for i in range(n)])

    @staticmethod
    def star(a: int) -> Graph:
        """Root 0 with leaves 1..a"""
        require_at_least("a", a)
        return Graph(n=a + 1, edges=[(0, leaf) for leaf in range(1, a + 1)])

    @staticmethod
    def fan(n: int) -> Graph:
        """Path 0..n-2 plus apex n-1 joined to every path vertex"""
        require_at_least("n", n, 3)
        apex = n - 1
        edges = [(i, i + 1) for i in range(n - 2)] + [(i, apex) for i in range(n - 1)]
        return Graph(n=n, edges=edges)

    # STRUCTURED FAMILIES
    @staticmethod
    def x_tree(d: int) -> Graph:
        """Complete binary tree of depth d in heap numbering plus a path through every layer"""
        require_at_least("d", d)
        n = 2 ** (d + 1) - 1
        edges: List[Edge] = []
        for parent in range(2 ** d - 1):
            edges.append((parent, 2 * parent + 1))
            edges.append((parent, 2 * parent + 2))
        labels = []
        for layer in range(d + 1):
            first = 2 ** layer - 1
            for index in range(2 ** layer):
                labels.append(GridLabel(row=layer, col=index))
                if index + 1 < 2 ** layer:
                    edges.append((first + index, first + index + 1))
        return Graph(n=n, edges=edges, labels=labels)

    @staticmethod
    def hex_dual(n: int) -> Graph:
        """n x n grid, Grid(r, c) 1-based in row-major ids, with the (r,c)-(r+1,c+1) diagonal"""
        require_at_least("n", n)

        def vid(r: int, c: int) -> int:
            return (r - 1) * n + (c - 1)

        edges: List[Edge] = []
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                if c < n:
                    edges.append((vid(r, c), vid(r, c + 1)))
                if r < n:
                    edges.append((vid(r, c), vid(r + 1, c)))
                if r < n and c < n:
                    edges.append((vid(r, c), vid(r + 1, c + 1)))
        labels = [GridLabel(row=r, col=c) for r in range(1, n + 1) for c in range(1, n + 1)]
        return Graph(n=n * n, edges=edges, labels=labels)

    @staticmethod
    def check_build(build: KTreeBuild) -> None:
        """Raise InvalidBuildError unless every attachment is a k-clique of the graph built so far"""
        k = build.k
        if k < 1:
            raise InvalidBuildError(f"k must be at least 1, got {k}")
        adjacency: Dict[int, Set[int]] = {v: set(range(k)) - {v} for v in range(k)}
        for i, attachment in enumerate(build.attachments):
            new_vertex = k + i
            if len(set(attachment)) != k:
                raise InvalidBuildError(f"attachment {i} has {len(set(attachment))} distinct vertices, expected {k}")
            if any(v < 0 or v >= new_vertex for v in attachment):
                raise InvalidBuildError(f"attachment {i} references a vertex outside 0..{new_vertex - 1}")
            for u, v in combinations(attachment, 2):
                if v not in adjacency[u]:
                    raise InvalidBuildError(f"attachment {i} is not a clique: ({u}, {v}) missing")
            adjacency[new_vertex] = set(attachment)
            for v in attachment:
                adjacency[v].add(new_vertex)

    @staticmethod
    def k_tree(build: KTreeBuild) -> Graph:
        GraphFamilies.check_build(build)
        k = build.k
        edges = list(combinations(range(k), 2))
        for i, attachment in enumerate(build.attachments):
            edges.extend((v, k + i) for v in attachment)
        return Graph(n=build.vertex_count, edges=edges)

    # RANDOM FAMILIES
    @staticmethod
    def random_tree(n: int, seed: Optional[int] = None) -> Graph:
        """Uniform labelled tree from a random Pruefer sequence"""
        require_at_least("n", n)
        if n <= 2:
            return GraphFamilies.path(n)
        rng = make_rng(seed)
        tree = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
        return GraphOperations.from_networkx(tree)

    @staticmethod
    def random_unicyclic(n: int, seed: Optional[int] = None) -> Graph:
        """Random tree plus one extra edge"""
        require_at_least("n", n, 3)
        rng = make_rng(seed)
        tree = GraphFamilies.random_tree(n, rng.randrange(2 ** 31))
        non_edges = [pair for pair in combinations(range(n), 2) if not tree.has_edge(*pair)]
        extra = rng.choice(non_edges)
        return Graph(n=n, edges=list(tree.edges) + [extra])

    @staticmethod
    def random_k_tree_build(k: int, attachments: int, seed: Optional[int] = None) -> KTreeBuild:
        require_at_least("k", k)
        require_at_least("attachments", attachments, 0)
        rng = make_rng(seed)
        cliques: List[Tuple[int, ...]] = [tuple(range(k))]
        chosen: List[Tuple[int, ...]] = []
        for i in range(attachments):
            clique = rng.choice(cliques)
            new_vertex = k + i
            chosen.append(clique)
            for dropped in clique:
                cliques.append(tuple(sorted((set(clique) - {dropped}) | {new_vertex})))
        return KTreeBuild(k=k, attachments=chosen)

    @staticmethod
    def random_polygon_triangulation(n: int, seed: Optional[int] = None) -> Graph:
        """Maximal outerplanar graph whose outer boundary is 0, 1, ..., n-1"""
        require_at_least("n", n, 3)
        rng = make_rng(seed)
        edges: Set[Edge] = {normalize_edge(i, (i + 1) % n) for i in range(n)}
        pending = [list(range(n))]
        while pending:
            polygon = pending.pop()
            if len(polygon) <= 3:
                continue
            apex_index = rng.randrange(1, len(polygon) - 1)
            apex = polygon[apex_index]
            edges.add(normalize_edge(polygon[0], apex))
            edges.add(normalize_edge(apex, polygon[-1]))
            pending.append(polygon[: apex_index + 1])
            pending.append(polygon[apex_index:])
        return Graph(n=n, edges=sorted(edges))

    @staticmethod
    def random_graph(n: int, p: float, seed: Optional[int] = None) -> Graph:
        require_at_least("n", n)
        rng = make_rng(seed)
        return GraphOperations.from_networkx(nx.gnp_random_graph(n, p, seed=rng.randrange(2 ** 31)))


# ==================== GRAPH OPERATIONS ====================
class GraphOperations:

    # CONVERSIONS
    @staticmethod
    def to_networkx(graph: Graph) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(graph.n))
        nx_graph.add_edges_from(graph.edges)
        return nx_graph

    @staticmethod
    def from_networkx(nx_graph: nx.Graph) -> Graph:
        """Vertices are renumbered 0..n-1 in sorted node order"""
        relabelled = nx.convert_node_labels_to_integers(nx_graph, ordering="sorted")
        return Graph(n=relabelled.number_of_nodes(), edges=list(relabelled.edges()))

    @staticmethod
    def induced_subgraph(graph: Graph, vertices: Sequence[int]) -> Tuple[Graph, List[int]]:
        """Subgraph on the given vertices renumbered by their sorted order; also returns the id map back"""
        members = sorted(vertices)
        index = {v: i for i, v in enumerate(members)}
        edges = [(index[u], index[v]) for u, v in graph.edges if u in index and v in index]
        return Graph(n=len(members), edges=edges), members

    # PRODUCT AND SUBDIVISION
    @staticmethod
    def cartesian_product(left: Graph, right: Graph) -> Graph:
        """Vertex (g, h) gets id g * |V(right)| + h and label Product(label(g), label(h))"""
        width = right.n

        def vid(g: int, h: int) -> int:
            return g * width + h

        edges: List[Edge] = []
        for u, v in left.edges:
            edges.extend((vid(u, h), vid(v, h)) for h in range(width))
        for u, v in right.edges:
            edges.extend((vid(g, u), vid(g, v)) for g in range(left.n))
        labels = [
            ProductLabel(left=left.label_of(g), right=right.label_of(h))
            for g in range(left.n)
            for h in range(width)
        ]
        return Graph(n=left.n * width, edges=edges, labels=labels)

    @staticmethod
    def subdivide(graph: Graph, k: int) -> Graph:
        """Replace every edge by a path with k internal vertices labelled Division(edge, 1..k)"""
        require_at_least("k", k, 0)
        if k == 0:
            return Graph(n=graph.n, edges=graph.edges, labels=graph.labels)
        labels = [graph.label_of(v) for v in range(graph.n)]
        edges: List[Edge] = []
        for j, (u, v) in enumerate(graph.edges):
            chain = [u] + [graph.n + j * k + i for i in range(k)] + [v]
            edges.extend(zip(chain, chain[1:]))
            labels.extend(DivisionLabel(edge=(u, v), index=i) for i in range(1, k + 1))
        return Graph(n=graph.n + k * graph.m, edges=edges, labels=labels)

    # DECOMPOSITION
    @staticmethod
    def biconnected_components(graph: Graph) -> List[List[int]]:
        """Vertex sets of the biconnected components (bridges are 2-vertex components)"""
        components = nx.biconnected_components(GraphOperations.to_networkx(graph))
        return sorted(sorted(component) for component in components)

    @staticmethod
    def biconnected_component_edges(graph: Graph) -> List[List[Edge]]:
        """Edge sets of the biconnected components, in the order of biconnected_components"""
        components = nx.biconnected_component_edges(GraphOperations.to_networkx(graph))
        blocks = [sorted(normalize_edge(u, v) for u, v in component) for component in components]
        return sorted(blocks, key=lambda block: sorted({v for edge in block for v in edge}))

    @staticmethod
    def connected_components(graph: Graph) -> List[List[int]]:
        components = nx.connected_components(GraphOperations.to_networkx(graph))
        return sorted(sorted(component) for component in components)

    # VERTEX COVER
    @staticmethod
    def vertex_cover_exact(graph: Graph, limit: Optional[int] = None) -> List[int]:
        """Minimum vertex cover by branching on a maximum-degree vertex"""
        limit = get_settings().vertex_cover_limit if limit is None else limit
        if graph.n > limit:
            raise SizeLimitError(f"vertex cover limited to {limit} vertices, graph has {graph.n}")

        best = _greedy_cover(frozenset(graph.edges))

        def branch(edges: FrozenSet[Edge], chosen: Tuple[int, ...]) -> None:
            nonlocal best
            if not edges:
                if len(chosen) < len(best):
                    best = sorted(chosen)
                return
            if len(chosen) + _matching_bound(edges) >= len(best):
                return
            degree: Dict[int, int] = {}
            for u, v in edges:
                degree[u] = degree.get(u, 0) + 1
                degree[v] = degree.get(v, 0) + 1
            pivot = min(degree, key=lambda v: (-degree[v], v))
            branch(frozenset(e for e in edges if pivot not in e), chosen + (pivot,))
            neighbours = {v if u == pivot else u for u, v in edges if pivot in (u, v)}
            remaining = frozenset(e for e in edges if e[0] not in neighbours and e[1] not in neighbours)
            branch(remaining, chosen + tuple(sorted(neighbours)))

        branch(frozenset(graph.edges), ())
        logger.debug("vertex cover of %d vertices: size %d", graph.n, len(best))
        return best

    # RECOGNITION HELPERS
    @staticmethod
    def is_tree(graph: Graph) -> bool:
        return graph.n >= 1 and nx.is_tree(GraphOperations.to_networkx(graph))

    @staticmethod
    def is_connected(graph: Graph) -> bool:
        return graph.n >= 1 and nx.is_connected(GraphOperations.to_networkx(graph))

    @staticmethod
    def unicyclic_cycle(graph: Graph) -> List[int]:
        """Cycle u_1..u_k of a connected unicyclic graph: u_1 smallest, u_2 its smaller cycle neighbour"""
        if graph.n < 3 or graph.m != graph.n or not GraphOperations.is_connected(graph):
            raise InvalidInputError("graph is not connected with exactly one cycle")
        degree = [graph.degree(v) for v in range(graph.n)]
        removed = [False] * graph.n
        leaves = [v for v in range(graph.n) if degree[v] == 1]
        while leaves:
            leaf = leaves.pop()
            removed[leaf] = True
            for neighbour in graph.neighbours(leaf):
                if not removed[neighbour]:
                    degree[neighbour] -= 1
                    if degree[neighbour] == 1:
                        leaves.append(neighbour)
        on_cycle = [v for v in range(graph.n) if not removed[v]]
        start = on_cycle[0]
        cycle = [start, min(u for u in graph.neighbours(start) if not removed[u])]
        while True:
            current, previous = cycle[-1], cycle[-2]
            following = [u for u in graph.neighbours(current) if not removed[u] and u != previous]
            if following[0] == start:
                return cycle
            cycle.append(following[0])

    @staticmethod
    def recover_k_tree_build(graph: Graph, k: int) -> KTreeBuild:
        """Build of a canonically numbered k-tree: vertex v >= k attached to its smaller neighbours"""
        if graph.n < k:
            raise InvalidBuildError(f"a {k}-tree has at least {k} vertices")
        attachments = [[u for u in graph.neighbours(v) if u < v] for v in range(k, graph.n)]
        build = KTreeBuild(k=k, attachments=attachments)
        rebuilt = GraphFamilies.k_tree(build)
        if rebuilt.edges != graph.edges:
            raise InvalidBuildError(f"graph is not a canonically numbered {k}-tree")
        return build


def _greedy_cover(edges: FrozenSet[Edge]) -> List[int]:
    cover: List[int] = []
    remaining = set(edges)
    while remaining:
        degree: Dict[int, int] = {}
        for u, v in remaining:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        pivot = min(degree, key=lambda v: (-degree[v], v))
        cover.append(pivot)
        remaining = {e for e in remaining if pivot not in e}
    return sorted(cover)


def _matching_bound(edges: FrozenSet[Edge]) -> int:
    """Size of a greedy maximal matching; every cover needs one vertex per matched edge"""
    matched: Set[int] = set()
    size = 0
    for u, v in sorted(edges):
        if u not in matched and v not in matched:
            matched.update((u, v))
            size += 1
    return size
