"""Blocks of finite-dimensional loop algebra representations."""

from .rootsys import LieType, RootSystem, build

__all__ = ["LieType", "RootSystem", "build"]
__version__ = "0.1.0"
