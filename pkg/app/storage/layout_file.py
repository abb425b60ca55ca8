"""
Layout JSON format: {"kind", "strict", "order", "k", "pages": [{"u", "v", "page"}]}
"""

from pathlib import Path
from typing import Union

from pydantic import ValidationError

from app.errors import MalformedLayoutError
from app.models.layout_models import Layout, LayoutDocument


class LayoutFileCodec:

    @staticmethod
    def dumps(layout: Layout) -> str:
        return LayoutDocument.from_layout(layout).model_dump_json(indent=2) + "\n"

    @staticmethod
    def loads(text: str) -> Layout:
        try:
            return LayoutDocument.model_validate_json(text).to_layout()
        except ValidationError as exc:
            raise MalformedLayoutError(f"malformed layout: {exc.errors()[0]['msg']}")

    @staticmethod
    def read(path: Union[str, Path]) -> Layout:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise MalformedLayoutError(f"cannot read layout file {path}: {exc}")
        return LayoutFileCodec.loads(text)

    @staticmethod
    def write(layout: Layout, path: Union[str, Path]) -> None:
        Path(path).write_text(LayoutFileCodec.dumps(layout))
