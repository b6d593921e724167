"""
wittgrass: exact Witt-vector lattice combinatorics at desk scale.

Truncated Witt arithmetic over finite fields, lattice point counts
(Schubert cells, semi-infinite intersections, chains and convolution
fibers), Kazhdan-Lusztig and twisted-involution polynomials on affine
Weyl groups, the spherical-transform identities, twisted-Frobenius
(sigma-conjugacy) point counts with the dimension formula, and the
explicit rank-2 degree-2 chart verification.
"""

__version__ = "0.1.0"

from .fq import GF, Fq, FqElem
from .witt import (
    PadicWindow,
    PrecisionError,
    WittVector,
    det_components,
    frobenius_sigma,
    teichmuller,
    verify_famous_identity,
    witt_add,
    witt_mul,
    witt_ring,
)
from .rings import EqualCharRing, MixedRing, make_ring
from .lattice import (
    Lattice,
    count_cell,
    count_chains,
    count_leq,
    count_mv,
    count_mv_leq,
    convolution_fiber_count,
    enumerate_chains,
    enumerate_lattices_leq,
    iwasawa_type,
    kottwitz_index,
    relative_position,
)
from .weyl import (
    CoxeterMatrixGroup,
    ExtendedAffineWeyl,
    KLTable,
    LVTable,
    affine_weyl_gl,
    bruhat_leq,
    d_of_coweight,
    double_coset_longest,
    schubert_poincare,
    verify_minus_q,
)
from .satake import (
    RootDatum,
    commutativity_sign,
    kostka_foulkes,
    lusztig_kato_expand,
    mv_leading_check,
    satake_transform,
    semismall_report,
    tensor_multiplicity,
    weight_multiplicity,
)
from .adlv import (
    SigmaClass,
    convolution_count,
    count_points,
    defect,
    estimate_dimension,
    mazur_admissible,
    newton_point,
    norm_reduce,
    rapoport_dimension,
)
from .gl2_chart import (
    b3_suite,
    chart_matrix,
    equal_char_compare,
    factor_check,
    quotient_count_check,
    solve_xyz,
    v23_membership,
)
