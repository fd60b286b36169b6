"""HTTP service wrapping the computation package.

The pydantic request/response models and the handler functions are the
single dispatch surface: the FastAPI endpoints and the command-line
client both go through them.
"""

from gnskit.service.app import create_app

__all__ = ["create_app"]
