"""Nilpotent orbits of theta groups of exceptional type and their closures."""
from .grading import CASES, GradedLie, graded_case
from .rootsys import RootSystem, SimpleType, build_root_system

__all__ = ["CASES", "GradedLie", "RootSystem", "SimpleType", "build_root_system", "graded_case"]
__version__ = "0.1.0"
