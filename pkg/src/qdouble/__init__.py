"""Finite-scale computations for the quantum double model of a finite group.

The package builds the Hopf *-algebra D(G) and its representations, the
triangular lattice with sites, triangles and ribbons, ribbon operators and
multiplets, and verification suites that tie lattice experiments to the
anyon data of D(G).
"""
from .double_algebra import (DoubleElement, DoubleTensorElement, antipode, basis_element,
                             coproduct, counit, hopf_axiom_suite, multiply, r_matrix, star, unit)
from .double_reps import (Representation, braiding, central_projector, fusion_multiplicities,
                          irreps_of_double, irreps_suite, tensor_rep)
from .errors import (DimensionBudgetExceeded, GeometryInfeasible, NotAGroup, QDoubleError)
from .group_core import FiniteGroup, build_group, builtin_group, load_group
from .lattice_geometry import Patch, Ribbon, make_patch, random_ribbon
from .lattice_operators import ground_space, ribbon_multiplet, ribbon_op, site_rep

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DoubleElement",
    "DoubleTensorElement",
    "antipode",
    "basis_element",
    "coproduct",
    "counit",
    "hopf_axiom_suite",
    "multiply",
    "r_matrix",
    "star",
    "unit",
    "Representation",
    "braiding",
    "central_projector",
    "fusion_multiplicities",
    "irreps_of_double",
    "irreps_suite",
    "tensor_rep",
    "DimensionBudgetExceeded",
    "GeometryInfeasible",
    "NotAGroup",
    "QDoubleError",
    "FiniteGroup",
    "build_group",
    "builtin_group",
    "load_group",
    "Patch",
    "Ribbon",
    "make_patch",
    "random_ribbon",
    "ground_space",
    "ribbon_multiplet",
    "ribbon_op",
    "site_rep",
]
