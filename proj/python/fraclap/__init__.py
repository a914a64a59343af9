"""Fractional Laplacian kernels and Hardy inequalities on the integer lattice."""

from ._core import *  # noqa: F401,F403
from ._core import CertificationError, ConvergenceError, DomainError  # noqa: F401

__version__ = "0.1.0"
