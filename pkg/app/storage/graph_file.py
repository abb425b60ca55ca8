"""
Graph text format

    n m
    u v            (m lines, sorted, u < v)
    L u <label>    (optional, one per vertex, label as compact JSON)
"""

from pathlib import Path
from typing import List, Optional, Union

from pydantic import TypeAdapter, ValidationError

from app.errors import GraphFormatError
from app.models.graph_models import Edge, Graph, Label

LABEL_ADAPTER = TypeAdapter(Label)


class GraphFileCodec:

    @staticmethod
    def dumps(graph: Graph) -> str:
        lines = [f"{graph.n} {graph.m}"]
        lines.extend(f"{u} {v}" for u, v in graph.edges)
        if graph.labels is not None:
            for v, label in enumerate(graph.labels):
                lines.append(f"L {v} {LABEL_ADAPTER.dump_json(label).decode()}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def loads(text: str) -> Graph:
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines:
            raise GraphFormatError("empty graph file")
        header = lines[0].split()
        if len(header) != 2 or not all(token.lstrip("-").isdigit() for token in header):
            raise GraphFormatError(f"bad header line: {lines[0]!r}")
        n, m = int(header[0]), int(header[1])
        if len(lines) < 1 + m:
            raise GraphFormatError(f"header announces {m} edges, file has {len(lines) - 1} lines")

        edges: List[Edge] = []
        for line in lines[1 : 1 + m]:
            tokens = line.split()
            if len(tokens) != 2 or not all(token.isdigit() for token in tokens):
                raise GraphFormatError(f"bad edge line: {line!r}")
            edges.append((int(tokens[0]), int(tokens[1])))

        labels: Optional[List] = None
        label_lines = lines[1 + m :]
        if label_lines:
            found = {}
            for line in label_lines:
                parts = line.split(maxsplit=2)
                if len(parts) != 3 or parts[0] != "L" or not parts[1].isdigit():
                    raise GraphFormatError(f"bad label line: {line!r}")
                try:
                    found[int(parts[1])] = LABEL_ADAPTER.validate_json(parts[2])
                except ValidationError as exc:
                    raise GraphFormatError(f"bad label for vertex {parts[1]}: {exc.errors()[0]['msg']}")
            if sorted(found) != list(range(n)):
                raise GraphFormatError("label lines must cover every vertex exactly once")
            labels = [found[v] for v in range(n)]

        try:
            return Graph(n=n, edges=edges, labels=labels)
        except ValidationError as exc:
            raise GraphFormatError(f"invalid graph: {exc.errors()[0]['msg']}")

    @staticmethod
    def read(path: Union[str, Path]) -> Graph:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise GraphFormatError(f"cannot read graph file {path}: {exc}")
        return GraphFileCodec.loads(text)

    @staticmethod
    def write(graph: Graph, path: Union[str, Path]) -> None:
        Path(path).write_text(GraphFileCodec.dumps(graph))
