"""Exact operator-valued free probability on graph path algebras.

Build the generator algebra of a finite directed graph's free semigroupoid,
evaluate the diagonal conditional expectation, and compute operator-valued
moments, cumulants and distribution classifications exactly.
"""

from .algebra import (
    AlgebraContext,
    Element,
    Letter,
    Mode,
    Monomial,
    adjoint,
    expectation,
    letter_monomial,
    mul_monomials,
    multiply,
    reduce_word,
    support_decompose,
)
from .classify import (
    ClassificationReport,
    check_even,
    check_free,
    check_rdiagonal,
    check_semicircular,
    generating_operator,
    predicted_free,
    predicted_free_supports,
)
from .cumulants import ConnectedSet, MomentFunctional
from .errors import (
    ExpressionError,
    GraphFormatError,
    NotAFourierExpansion,
    ResourceLimitError,
    UsageError,
)
from .exprparse import parse_element
from .fock import (
    FockBasis,
    SparseOperator,
    fock_basis,
    numeric_expectation,
    represent,
    represent_word,
    vacuum_diagonal,
)
from .graphs import (
    Graph,
    Path,
    concat,
    diagram_distinct,
    graph_from_dict,
    graph_from_json,
    primitive_root,
)
from .kernel import BACKEND as KERNEL_BACKEND
from .latticepaths import (
    LatticePath,
    ends_on_axis,
    has_star_axis_property,
    lattice_path,
)
from .noncrossing import (
    Partition,
    catalan,
    enumerate_nc,
    enumerate_nc2,
    enumerate_nc_even,
    leq,
    mobius_to_top,
)
from .scalars import GaussianRational, scalar

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "ClassificationReport",
    "ConnectedSet",
    "Element",
    "ExpressionError",
    "FockBasis",
    "GaussianRational",
    "Graph",
    "GraphFormatError",
    "KERNEL_BACKEND",
    "LatticePath",
    "Letter",
    "Mode",
    "MomentFunctional",
    "Monomial",
    "NotAFourierExpansion",
    "Partition",
    "Path",
    "ResourceLimitError",
    "SparseOperator",
    "UsageError",
    "adjoint",
    "catalan",
    "check_even",
    "check_free",
    "check_rdiagonal",
    "check_semicircular",
    "concat",
    "diagram_distinct",
    "ends_on_axis",
    "enumerate_nc",
    "enumerate_nc2",
    "enumerate_nc_even",
    "expectation",
    "fock_basis",
    "generating_operator",
    "graph_from_dict",
    "graph_from_json",
    "has_star_axis_property",
    "lattice_path",
    "leq",
    "letter_monomial",
    "mobius_to_top",
    "mul_monomials",
    "multiply",
    "numeric_expectation",
    "parse_element",
    "predicted_free",
    "predicted_free_supports",
    "primitive_root",
    "reduce_word",
    "represent",
    "represent_word",
    "scalar",
    "support_decompose",
    "vacuum_diagonal",
]
