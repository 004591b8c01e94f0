"""Thesaurus descriptor assignment from keyness-ranked associate lists."""

from ._core import *  # noqa: F401,F403
from ._core import KwassignError

__all__ = [name for name in dir() if not name.startswith("_")]
