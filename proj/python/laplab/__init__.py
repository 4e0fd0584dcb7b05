"""Radial limiting-absorption laboratory.

Thin python layer over the C++ core: per-mode Bessel-type resolvent solves
with outgoing boundary conditions, spherical energies, conservation-identity
residuals, low/high-energy counterexample constructions, and Schrodinger or
wave mode evolution.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
