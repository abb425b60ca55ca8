"""
Shared route helpers
"""

from contextlib import contextmanager

from fastapi import HTTPException
from pydantic import ValidationError

from app.errors import LayoutToolkitError


@contextmanager
def toolkit_errors():
    """Translate toolkit errors into HTTP errors with the error's status code"""
    try:
        yield
    except LayoutToolkitError as exc:
        raise HTTPException(status_code=exc.status_code, detail=f"{type(exc).__name__}: {exc}")
    except ValidationError as exc:
        raise HTTPException(status_code=422, detail=exc.errors()[0]["msg"])
