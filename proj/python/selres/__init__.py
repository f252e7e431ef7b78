"""Learn class-based selectional restrictions of verbs from parsed text."""

from ._selres import *  # noqa: F401,F403
from ._selres import SelresError

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
