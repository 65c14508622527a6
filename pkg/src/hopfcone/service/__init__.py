"""HTTP service wrapping the core algebra: pydantic request models and a
FastAPI app; the CLI is a thin client of this service."""

from .app import create_app

__all__ = ["create_app"]
