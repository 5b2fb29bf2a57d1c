"""Simple random walk on the 2-dimensional comb.

Submodules: ``series`` (exact truncated power series), ``genfun`` (generating
functions), ``oracle`` (exact enumeration), ``simulate`` (Monte Carlo),
``asymptotics`` (power-law fits and constants), ``scaling`` (limit-law tests),
``cli``.
"""
from .series import PowerSeries

__version__ = "0.1.0"
__all__ = ["PowerSeries", "__version__"]
