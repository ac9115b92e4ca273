"""HTTP service wrapping the measurement toolkit."""

from .app import app, create_app

__all__ = ["app", "create_app"]
