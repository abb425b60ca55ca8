"""
Counterexample pipeline
S_a □ H_n with a 4-queue layout, and twist extraction from any vertex order:
monotone refinement, hex colouring, path dichotomy, Ramsey split, case extraction
"""

import logging
import math
from bisect import bisect_left
from collections import defaultdict
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.engine.family_layouts import HexLayouts
from app.engine.graph_core import GraphFamilies, GraphOperations, require_at_least
from app.engine.layout_core import LayoutValidator, spans_cross
from app.errors import (
    InvalidParameterError,
    MonotonicityViolationError,
    PipelineContractError,
    SizeLimitError,
    TheoremViolationError,
)
from app.models.graph_models import Edge, Graph
from app.models.layout_models import Layout, LayoutKind, LinearOrder, Witness, WitnessKind
from app.models.pipeline_models import (
    CaseTag,
    GridColor,
    PairMatrix,
    PairRelation,
    PipelineParams,
    ProductOrderKind,
    ProofTrace,
    RamseyMode,
)

logger = logging.getLogger(__name__)


# ==================== HELPER FUNCTIONS ====================
def _longest_increasing(values: Sequence[int]) -> List[int]:
    """Indices of a longest strictly increasing subsequence (patience sorting)"""
    tails: List[int] = []
    tail_index: List[int] = []
    previous = [-1] * len(values)
    for i, value in enumerate(values):
        slot = bisect_left(tails, value)
        if slot == len(tails):
            tails.append(value)
            tail_index.append(i)
        else:
            tails[slot] = value
            tail_index[slot] = i
        previous[i] = tail_index[slot - 1] if slot else -1
    chain: List[int] = []
    node = tail_index[-1] if tail_index else -1
    while node >= 0:
        chain.append(node)
        node = previous[node]
    return chain[::-1]


def _ceil_sqrt(x: int) -> int:
    root = math.isqrt(x)
    return root if root * root == x else root + 1


# ==================== COUNTEREXAMPLE GRAPH ====================
class CounterexampleGraphs:

    @staticmethod
    def product_vertex(n: int, u: int, p: int) -> int:
        """Id of (u, p): star vertex u (0 = root), grid vertex p in row-major numbering"""
        return u * n * n + p

    @staticmethod
    def identity_order(a: int, n: int) -> LinearOrder:
        return LinearOrder.identity((a + 1) * n * n)

    @staticmethod
    def grid_major_order(a: int, n: int) -> LinearOrder:
        """(p, u) lexicographic: each grid vertex with its whole star copy"""
        cells = n * n
        return LinearOrder(vertices=tuple(u * cells + p for p in range(cells) for u in range(a + 1)))

    @staticmethod
    def order_for(kind: ProductOrderKind, a: int, n: int) -> LinearOrder:
        if kind == ProductOrderKind.GRID_MAJOR:
            return CounterexampleGraphs.grid_major_order(a, n)
        return CounterexampleGraphs.identity_order(a, n)

    @staticmethod
    def counterexample_graph(a: int, n: int) -> Tuple[Graph, Layout]:
        """S_a □ H_n, laid out grid-major: star edges on queue 1, hex edges on their strict queue + 1"""
        require_at_least("a", a, 1)
        require_at_least("n", n, 1)
        graph = GraphOperations.cartesian_product(GraphFamilies.star(a), GraphFamilies.hex_dual(n))
        hex_layout = HexLayouts.hex_strict_queue_layout(n)
        cells = n * n
        pages: Dict[Edge, int] = {}
        for p in range(cells):
            for u in range(1, a + 1):
                pages[(p, u * cells + p)] = 1
        for (p, q), page in hex_layout.pages.items():
            for u in range(a + 1):
                pages[(u * cells + p, u * cells + q)] = page + 1
        layout = Layout(
            kind=LayoutKind.QUEUE,
            order=CounterexampleGraphs.grid_major_order(a, n),
            pages=pages,
            k=1 + max(hex_layout.pages.values(), default=0),
        )
        return graph, layout


# ==================== RAMSEY NUMBERS ====================
_RAMSEY_TABLE = {(3, 3): 6, (3, 4): 9, (4, 4): 18}


class RamseyNumbers:

    @staticmethod
    def ramsey_number(r: int, s: int, mode: RamseyMode = RamseyMode.EXACT_SMALL) -> int:
        require_at_least("r", r, 1)
        require_at_least("s", s, 1)
        if mode == RamseyMode.UPPER:
            return math.comb(r + s - 2, r - 1)
        low, high = min(r, s), max(r, s)
        if low == 1:
            return 1
        if low == 2:
            return high
        if (low, high) not in _RAMSEY_TABLE:
            raise SizeLimitError(f"R({r}, {s}) is not known exactly; use the upper bound")
        return _RAMSEY_TABLE[(low, high)]

    @staticmethod
    def verify_ramsey(r: int, s: int, size: int) -> Optional[Dict[Edge, GridColor]]:
        """
        Search every 2-colouring of K_size for one with neither a blue K_r nor a red K_s.
        Returns that colouring, or None when every colouring is forced.
        """
        edges = list(combinations(range(size), 2))
        if len(edges) > 28:
            raise SizeLimitError(f"K_{size} has {len(edges)} edges; exhaustive search is limited to 28")
        bit = {edge: 1 << i for i, edge in enumerate(edges)}

        def clique_masks(t: int) -> List[int]:
            return [sum(bit[e] for e in combinations(group, 2)) for group in combinations(range(size), t)]

        blue_masks, red_masks = clique_masks(r), clique_masks(s)
        full = (1 << len(edges)) - 1
        for blue in range(full + 1):
            red = full ^ blue
            if any(blue & mask == mask for mask in blue_masks):
                continue
            if any(red & mask == mask for mask in red_masks):
                continue
            return {edge: GridColor.BLUE if blue & bit[edge] else GridColor.RED for edge in edges}
        return None


# ==================== PIPELINE STAGES ====================
class PipelineStages:

    @staticmethod
    def guaranteed_length(a: int, n: int) -> int:
        """ceil(a^(1/2^(n²-1))) as (n²-1)-fold iterated ceiling square root"""
        length = a
        for _ in range(n * n - 1):
            length = _ceil_sqrt(length)
        return length

    @staticmethod
    def erdos_szekeres_holds(sequence: Sequence[int], s: int, r: int) -> bool:
        """Increasing run of s+1 or decreasing run of r+1"""
        increasing = len(_longest_increasing(sequence))
        decreasing = len(_longest_increasing([-x for x in sequence]))
        return increasing >= s + 1 or decreasing >= r + 1

    @staticmethod
    def monotone_refinement(order: LinearOrder, a: int, n: int) -> List[int]:
        """Leaves u_1..u_b whose copies appear monotonically at every grid vertex"""
        cells = n * n
        leaves = sorted(range(1, a + 1), key=lambda u: order.position(u * cells))
        for p in range(1, cells):
            positions = [order.position(u * cells + p) for u in leaves]
            increasing = _longest_increasing(positions)
            decreasing = _longest_increasing([-x for x in positions])
            keep = increasing if len(increasing) >= len(decreasing) else decreasing
            leaves = [leaves[i] for i in keep]
        return leaves

    @staticmethod
    def grid_coloring(order: LinearOrder, leaves: Sequence[int], n: int) -> List[GridColor]:
        """Red where the leaf copies appear in increasing order, blue otherwise"""
        cells = n * n
        coloring = []
        for p in range(cells):
            positions = [order.position(u * cells + p) for u in leaves]
            ascending = all(x < y for x, y in zip(positions, positions[1:]))
            coloring.append(GridColor.RED if ascending else GridColor.BLUE)
        return coloring

    @staticmethod
    def find_mono_path(n: int, coloring: Sequence[GridColor]) -> Tuple[List[int], GridColor]:
        """Monochromatic path on n vertices of H_n, red class first, row-major starts"""
        if len(coloring) != n * n:
            raise InvalidParameterError(f"colouring has {len(coloring)} entries, H_{n} has {n * n} vertices")
        grid = GraphFamilies.hex_dual(n)

        def extend(path: List[int], seen: set, color: GridColor) -> Optional[List[int]]:
            if len(path) >= n:
                return path
            for w in grid.neighbours(path[-1]):
                if w in seen or coloring[w] != color:
                    continue
                seen.add(w)
                found = extend(path + [w], seen, color)
                if found:
                    return found
                seen.discard(w)
            return None

        for color in (GridColor.RED, GridColor.BLUE):
            for start in range(n * n):
                if coloring[start] != color:
                    continue
                found = extend([start], {start}, color)
                if found:
                    return found, color
        raise TheoremViolationError(f"no monochromatic {n}-vertex path in the hex grid colouring")

    @staticmethod
    def classify_path_pairs(order: LinearOrder, paths: Sequence[Sequence[int]]) -> PairMatrix:
        """crossing if some edges cross, separated if the vertex intervals are disjoint"""
        spans = [[order.oriented((x, y)) for x, y in zip(path, path[1:])] for path in paths]
        intervals = [(min(order.position(v) for v in path), max(order.position(v) for v in path)) for path in paths]
        matrix: PairMatrix = [[None] * len(paths) for _ in paths]
        for i, j in combinations(range(len(paths)), 2):
            if any(spans_cross(*e, *f) for e in spans[i] for f in spans[j]):
                relation = PairRelation.CROSSING
            elif intervals[i][1] < intervals[j][0] or intervals[j][1] < intervals[i][0]:
                relation = PairRelation.SEPARATED
            else:
                raise MonotonicityViolationError(f"paths {i} and {j} are nested; the order is not refined")
            matrix[i][j] = matrix[j][i] = relation
        return matrix

    @staticmethod
    def homogeneous_paths(matrix: PairMatrix, c: int, d: int) -> Tuple[CaseTag, List[int]]:
        """c pairwise separated paths (case 1), else d pairwise crossing paths (case 2)"""
        for relation, size, tag in ((PairRelation.SEPARATED, c, CaseTag.CASE1), (PairRelation.CROSSING, d, CaseTag.CASE2)):
            relation_graph = nx.Graph()
            relation_graph.add_nodes_from(range(len(matrix)))
            relation_graph.add_edges_from(
                (i, j) for i, j in combinations(range(len(matrix)), 2) if matrix[i][j] == relation
            )
            choices = [sorted(clique)[:size] for clique in nx.find_cliques(relation_graph) if len(clique) >= size]
            if choices:
                return tag, min(choices)
        return CaseTag.INSUFFICIENT, []

    @staticmethod
    def extract_twist_case1(
        order: LinearOrder, paths: Sequence[Sequence[int]], spine: Sequence[int], n: int
    ) -> Tuple[Witness, str]:
        """
        Star edges between the spine and the separated copies R_1 ≺ .. ≺ R_c.
        Subcase A (R_floor(c/2) ≺ s_ceil(n/2)): R_i to s_(ceil(n/2)+i-1).
        Subcase B: s_i to R_(ceil(c/2)+i).
        """
        c = len(paths)
        if c < 2:
            raise PipelineContractError("case 1 needs at least two separated paths")
        cells = n * n
        ranked = sorted(paths, key=lambda path: min(order.position(v) for v in path))
        stops = sorted(spine, key=order.position)
        middle = (n + 1) // 2
        size = min(c // 2, middle)

        def leaf_copy(path: Sequence[int], root_copy: int) -> int:
            p = root_copy % cells
            return next(v for v in path if v % cells == p)

        if max(order.position(v) for v in ranked[c // 2 - 1]) < order.position(stops[middle - 1]):
            subcase = "A"
            pairs = [(ranked[i], stops[middle - 1 + i]) for i in range(size)]
        else:
            subcase = "B"
            first = (c + 1) // 2
            pairs = [(ranked[first + i], stops[i]) for i in range(size)]
        edges = [(root, leaf_copy(path, root)) for path, root in pairs]
        return Witness(kind=WitnessKind.TWIST, edges=edges, order=order), subcase

    @staticmethod
    def extract_twist_case2(order: LinearOrder, paths: Sequence[Sequence[int]], n: int) -> Witness:
        """
        Fix the first path P and its most crossed edge e (one crossing edge per other path).
        Edges agreeing on inner grid vertex, outer grid vertex and side of e pairwise cross.
        """
        cells = n * n
        anchor = paths[0]
        anchor_edges = list(zip(anchor, anchor[1:]))
        crossing: List[List[Edge]] = []
        for edge in anchor_edges:
            span = order.oriented(edge)
            found = []
            for path in paths[1:]:
                hit = next((f for f in zip(path, path[1:]) if spans_cross(*span, *order.oriented(f))), None)
                if hit is not None:
                    found.append(hit)
            crossing.append(found)
        best = max(range(len(anchor_edges)), key=lambda i: (len(crossing[i]), -i))
        left, right = order.oriented(anchor_edges[best])

        buckets: Dict[Tuple[int, int, int], List[Edge]] = defaultdict(list)
        for x, y in crossing[best]:
            inner, outer = (x, y) if left < order.position(x) < right else (y, x)
            side = 0 if order.position(outer) < left else 1
            buckets[(inner % cells, outer % cells, side)].append((x, y))
        if not buckets:
            raise PipelineContractError("case 2 paths do not cross the first path")
        key = min(buckets, key=lambda k: (-len(buckets[k]), k))
        return Witness(kind=WitnessKind.TWIST, edges=buckets[key], order=order)


# ==================== PIPELINE ====================
class Pipeline:

    @staticmethod
    def parameters_for(s: int) -> PipelineParams:
        """n = 2s+1, b = upper R(2s+2, 4n²(s+1)+1), log2(a) = 2^(n²-1)·log2(b)"""
        require_at_least("s", s, 1)
        n = 2 * s + 1
        c, d = 2 * s + 2, 4 * n * n * (s + 1) + 1
        b = RamseyNumbers.ramsey_number(c, d, RamseyMode.UPPER)
        exponent = 2 ** (n * n - 1)
        return PipelineParams(
            s=s, n=n, c=c, d=d, ramsey_args=(c, d), b=b, exponent=exponent, log2_a=exponent * math.log2(b)
        )

    @staticmethod
    def run_pipeline(a: int, n: int, order: LinearOrder, c: int = 3, d: int = 3) -> ProofTrace:
        require_at_least("a", a, 1)
        require_at_least("n", n, 1)
        require_at_least("c", c, 2)
        require_at_least("d", d, 2)
        cells = n * n
        if order.n != (a + 1) * cells:
            raise InvalidParameterError(f"order has {order.n} vertices, S_{a} □ H_{n} has {(a + 1) * cells}")

        leaves = PipelineStages.monotone_refinement(order, a, n)
        guarantee = PipelineStages.guaranteed_length(a, n)
        if len(leaves) < guarantee:
            raise TheoremViolationError(f"refinement kept {len(leaves)} leaves, below the guarantee {guarantee}")
        coloring = PipelineStages.grid_coloring(order, leaves, n)
        path, color = PipelineStages.find_mono_path(n, coloring)
        reversed_leaves = color == GridColor.BLUE
        working = list(reversed(leaves)) if reversed_leaves else list(leaves)

        copies = [[u * cells + p for p in path] for u in working]
        spine = list(path)
        matrix = PipelineStages.classify_path_pairs(order, copies)
        tag, chosen = PipelineStages.homogeneous_paths(matrix, c, d)

        trace = ProofTrace(
            a=a,
            n=n,
            c=c,
            d=d,
            leaf_subsequence=leaves,
            guaranteed_length=guarantee,
            grid_coloring=coloring,
            mono_path=path,
            path_color=color,
            leaf_order_reversed=reversed_leaves,
            pair_matrix=matrix,
            case_tag=tag,
            homogeneous_paths=[working[i] for i in chosen],
        )
        if tag == CaseTag.INSUFFICIENT:
            trace.insufficiency = (
                f"{len(copies)} path(s) hold neither {c} separated nor {d} crossing paths; "
                f"R({c}, {d}) <= {RamseyNumbers.ramsey_number(c, d, RamseyMode.UPPER)} paths guarantee one"
            )
            logger.info("pipeline a=%d n=%d: insufficient paths (%d)", a, n, len(copies))
            return trace

        selected = [copies[i] for i in chosen]
        if tag == CaseTag.CASE1:
            twist, trace.subcase = PipelineStages.extract_twist_case1(order, selected, spine, n)
        else:
            twist = PipelineStages.extract_twist_case2(order, selected, n)
        if not LayoutValidator.verify_witness(twist):
            raise PipelineContractError(f"{tag.value} produced edges that do not pairwise cross")
        trace.twist = twist
        trace.stack_lower_bound = twist.size
        logger.info("pipeline a=%d n=%d: %s twist of size %d", a, n, tag.value, twist.size)
        return trace
