"""Exact computations for rank-one Breuil modules with tame descent data,
their extension lattices, and Serre-weight partitions by principal-series
type, with independent brute-force verification throughout."""

__version__ = "0.1.0"

from . import breuil, chars, gf, oracle, verify, weights  # noqa: F401
from .breuil import Params, RankOneModule  # noqa: F401
from .chars import GaloisChar, InertialChar  # noqa: F401
from .weights import SerreWeight  # noqa: F401
