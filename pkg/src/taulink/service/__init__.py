"""HTTP facade over the library: typed request/response models and the
FastAPI application. The CLI talks to this app in-process by default."""

from .app import create_app

__all__ = ["create_app"]
