"""Hilbert function bounds for fat point schemes in the projective plane.

Combinatorial lower/upper bounds from reduction vectors, a coincidence
criterion that pins the Hilbert function exactly, graded Betti number
bounds, configuration generators, and an exact linear-algebra oracle over
the rationals or any prime field.
"""

from ._kernels import BACKEND
from .betti import (
    BettiBounds,
    alpha_reg,
    betti_table,
    delta,
    ideal_hilbert,
    improved_nu_bounds,
    is_betti_determining,
    j_index,
    naive_nu_bounds,
)
from .bounds import (
    F_recursive,
    F_upper,
    F_value,
    HilbertSequence,
    StandardConfiguration,
    binom,
    diag,
    f_lower,
    f_recursive,
    f_value,
    gms_by_delta,
    gms_by_pattern,
    gms_witness,
    is_gms,
    pn_lower_bound,
    standard_config,
    sum_op,
)
from .configs import (
    GeneratorSpec,
    arrangement_scheme,
    circ,
    dual_hesse_scheme,
    gen,
    greedy_reduce,
    grid_scheme,
    intersections_scheme,
    line_count_scheme,
    pi,
    projective_plane_scheme,
    star,
    star_multiplicity_vectors,
    star_schedule,
    star_scheme,
    zach_scheme,
)
from .errors import FatPointsError, PreconditionError, SchemeFormatError, StructureError
from .linalg import ExactMatrix, nullspace, rank
from .oracle import (
    condition_matrix,
    hilbert_oracle,
    ideal_basis,
    ideal_hilbert_oracle,
    nu_oracle,
    oracle_regularity,
)
from .scheme import (
    FatPointScheme,
    FieldSpec,
    NamedLine,
    ReductionTrace,
    Violation,
    dump_scheme,
    load_scheme,
    scheme_from_dict,
    scheme_to_dict,
)

__version__ = "0.1.0"
