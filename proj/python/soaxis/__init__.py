"""Sentiment orientation lexicons from word embeddings."""

from ._core import *  # noqa: F401,F403
from ._core import SoaxisError

__all__ = [name for name in dir() if not name.startswith("_")]
