"""Sapovalov elements for basic classical Lie superalgebras: root data,
structure tables, PBW arithmetic, Verma modules, the inductive construction
and the type A determinant formulas."""
from __future__ import annotations

from .liealg import StructureTable, table_for
from .rootdata import DomainError, NotRepresentable, RootSystem, WeylWord, parse_algebra, parse_root
from .shap import ConsistencyError, ShapElement, VerificationError, construct, construct_at

__all__ = ["ConsistencyError", "DomainError", "NotRepresentable", "RootSystem", "ShapElement",
           "StructureTable", "VerificationError", "WeylWord", "construct", "construct_at",
           "parse_algebra", "parse_root", "table_for"]
__version__ = "0.1.0"
