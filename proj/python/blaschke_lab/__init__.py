"""Finite-section computations for Toeplitz operators with finite Blaschke symbols."""

from ._core import *  # noqa: F401,F403
from ._core import BlaschkeLabError, BlaschkeProduct, run

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
