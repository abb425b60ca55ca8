"""
Brute-force oracles: exhaustive page assignment and order enumeration
"""

import itertools
from typing import List, Optional

from app.engine.layout_core import spans_cross, spans_nest
from app.models.graph_models import Graph
from app.models.layout_models import LayoutKind, LinearOrder


def _assignable(conflicts: List[List[int]], k: int) -> bool:
    """Whether some assignment of k pages keeps every conflicting pair apart"""
    pages: List[int] = []

    def place(i: int) -> bool:
        if i == len(conflicts):
            return True
        for page in range(k):
            if all(pages[j] != page for j in conflicts[i]):
                pages.append(page)
                if place(i + 1):
                    return True
                pages.pop()
        return False

    return place(0)


def brute_min_pages(graph: Graph, order: LinearOrder, kind: LayoutKind, cap: Optional[int] = None) -> int:
    """Fewest pages over every edge-to-page assignment for a fixed order, or `cap` if none beats it"""
    spans = [order.oriented(e) for e in graph.edges]
    if not spans:
        return 0
    conflict = spans_cross if kind == LayoutKind.STACK else spans_nest
    conflicts = [[j for j in range(i) if conflict(*spans[i], *spans[j])] for i in range(len(spans))]
    limit = len(spans) if cap is None else cap
    for k in range(1, limit):
        if _assignable(conflicts, k):
            return k
    return limit


def brute_page_number(graph: Graph, kind: LayoutKind, cap: Optional[int] = None) -> int:
    """Minimum over every vertex order of brute_min_pages"""
    if graph.m == 0:
        return 0
    best = cap if cap is not None else graph.m
    for permutation in itertools.permutations(range(graph.n)):
        best = min(best, brute_min_pages(graph, LinearOrder(vertices=permutation), kind, cap=best))
        if best == 1:
            break
    return best
