"""Eigenvalue product identities for mirror-symmetric Jacobi matrices."""

from ._core import *  # noqa: F401,F403
from ._core import DegeneracyError, NumericalError, __version__

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
