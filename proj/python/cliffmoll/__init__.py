"""Clifford-algebra mollifier toolkit: smooth approximation of Clifford-valued
fields and boundary-integral solvers for the inhomogeneous Dirac operator."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
