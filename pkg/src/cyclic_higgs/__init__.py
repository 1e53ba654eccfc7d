"""Exact Lie-theoretic engine for cyclic Higgs bundles, with a Toda solver on flat tori."""

from .engine import Engine, load
from .exact import ExactScalar, Tower, conj, to_float
from .rootsys import RootSystemData, build_root_system

__version__ = "0.1.0"

__all__ = ["Engine", "ExactScalar", "RootSystemData", "Tower", "build_root_system", "conj", "load",
           "to_float", "__version__"]
