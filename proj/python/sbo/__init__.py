"""Regularized proximal-gradient solvers for simple bilevel optimization."""

from ._sbo import *  # noqa: F401,F403
from ._sbo import __doc__  # noqa: F401
