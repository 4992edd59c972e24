"""Exact computations around the splitting formula for rational clovers.

Jacobi diagrams and the space ``A_n`` modulo AS and IHX, the splitting
formula for ``Z_n`` of a clover, the degree-one Casson-Walker check,
classification of linking forms, and lens-space realisation of linking
matrices.
"""

__version__ = "0.1.0"

from .algebra import BasisPresentation, DiagramVector, compute_basis, from_coordinates, ihx_relations, reduce
from .casson import ComplementaryClover, lambda_closed_form, lambda_via_theta, walker_conversions
from .clover import CloverData, FramingBook, TrilinearForm, alternating_sum, p1_of_subset, validate
from .diagrams import (
    EMPTY,
    THETA,
    DiagramClass,
    JacobiDiagram,
    automorphism_count,
    canonicalize,
    enumerate_diagrams,
    flip_orientation,
)
from .errors import (
    ConsistencyError,
    KKTError,
    NotApplicableError,
    ResourceLimitError,
    UndecidedError,
    ValidationError,
)
from .lens import LinkingRealization, lens_block_form, linking_matrix_of, m_block_pair, realize_linking_matrix
from .linking_forms import (
    CyclicBlock,
    LinkingForm,
    classify_odd,
    classify_two,
    isomorphic,
    nondegenerate,
    orthogonal_sum,
    primary_decompose,
)
from .modular import n_of_p
from .splitting import contract, linking_number_diagram, z_n
