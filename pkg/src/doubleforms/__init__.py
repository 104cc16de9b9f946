"""Exact computations with polynomial double forms on simplices.

The main entry points are re-exported here; see the submodules for the full
set of operators.
"""

from .double_algebra import DoubleCovector, InvalidSummand, project_summand, valid_summands
from .exterior_core import Multicovector
from .extension import (
    ExtensionUnavailable,
    SummandMismatch,
    TraceNotVanishing,
    extend,
    extension_constant,
)
from .fe_assembly import (
    SimplicialComplex,
    dim_full,
    dim_ring,
    dim_trace_free,
    dof_table,
    global_basis,
    verify_dof_sum,
)
from .poly_forms import PolyDoubleForm
from .simplex_trace import SimplexForm, vanishing_trace_basis

__version__ = "0.1.0"

__all__ = [
    "DoubleCovector", "InvalidSummand", "project_summand", "valid_summands",
    "Multicovector", "PolyDoubleForm", "SimplexForm", "vanishing_trace_basis",
    "ExtensionUnavailable", "SummandMismatch", "TraceNotVanishing", "extend", "extension_constant",
    "SimplicialComplex", "dim_full", "dim_ring", "dim_trace_free", "dof_table", "global_basis",
    "verify_dof_sum",
]
