"""Chroma-sequence similarity measures for cover song retrieval."""

from ._simscore import *  # noqa: F401,F403
from ._simscore import SimscoreError, DistanceTable

__all__ = [name for name in dir() if not name.startswith("_")]
