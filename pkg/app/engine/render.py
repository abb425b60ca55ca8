"""
SVG arc diagrams: vertices on a horizontal spine, one semicircular arc per edge,
coloured per page; queue arcs carry their page number
"""

import xml.etree.ElementTree as ET

from app.engine.layout_core import LayoutValidator
from app.errors import InvalidLayoutError
from app.models.graph_models import Graph
from app.models.layout_models import Layout, LayoutKind

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
SPACING = 40
MARGIN = 30
VERTEX_RADIUS = 4


class ArcDiagram:

    @staticmethod
    def page_color(page: int) -> str:
        return PALETTE[(page - 1) % len(PALETTE)]

    @staticmethod
    def render_svg(graph: Graph, layout: Layout) -> str:
        """Deterministic SVG 1.1 document for a valid layout"""
        report = LayoutValidator.validate(graph, layout, cap=1)
        if not report.valid:
            raise InvalidLayoutError(f"cannot render an invalid layout ({report.violation_count} violation(s))")

        order = layout.order
        widest = max((b - a for a, b in map(order.oriented, graph.edges)), default=0)
        width = 2 * MARGIN + max(order.n - 1, 0) * SPACING
        spine_y = MARGIN + widest * SPACING // 2
        height = spine_y + 2 * MARGIN

        svg = ET.Element(
            "svg",
            {
                "xmlns": "http://www.w3.org/2000/svg",
                "version": "1.1",
                "width": str(width),
                "height": str(height),
                "viewBox": f"0 0 {width} {height}",
            },
        )
        ET.SubElement(svg, "title").text = f"{layout.kind.value} layout, {layout.k} page(s)"
        ET.SubElement(
            svg,
            "line",
            {
                "class": "spine",
                "x1": str(MARGIN),
                "y1": str(spine_y),
                "x2": str(width - MARGIN),
                "y2": str(spine_y),
                "stroke": "#444",
            },
        )

        for edge in graph.edges:
            a, b = order.oriented(edge)
            page = layout.pages[edge]
            x1, x2 = MARGIN + a * SPACING, MARGIN + b * SPACING
            radius = (x2 - x1) // 2
            ET.SubElement(
                svg,
                "path",
                {
                    "class": "edge",
                    "data-page": str(page),
                    "d": f"M {x1} {spine_y} A {radius} {radius} 0 0 1 {x2} {spine_y}",
                    "fill": "none",
                    "stroke": ArcDiagram.page_color(page),
                },
            )
            if layout.kind == LayoutKind.QUEUE:
                label = ET.SubElement(
                    svg,
                    "text",
                    {
                        "class": "page-label",
                        "x": str((x1 + x2) // 2),
                        "y": str(spine_y - radius - 2),
                        "font-size": "9",
                        "text-anchor": "middle",
                        "fill": ArcDiagram.page_color(page),
                    },
                )
                label.text = str(page)

        for rank, v in enumerate(order.vertices):
            x = MARGIN + rank * SPACING
            ET.SubElement(svg, "circle", {"class": "vertex", "cx": str(x), "cy": str(spine_y), "r": str(VERTEX_RADIUS)})
            caption = ET.SubElement(
                svg, "text", {"x": str(x), "y": str(spine_y + 16), "font-size": "10", "text-anchor": "middle"}
            )
            caption.text = str(v)

        return ET.tostring(svg, encoding="unicode") + "\n"
