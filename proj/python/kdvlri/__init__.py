"""Filtered low-regularity integrator for the periodic KdV equation.

The compiled core exposes the spectral field type, the scheme and its
Duhamel-integral oracle, fractional Sobolev metrics, rough-data generators
and the convergence-study harness.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401
