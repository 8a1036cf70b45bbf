"""Orthogonal polynomials on the unit circle built from basic hypergeometric functions."""

from .chainseq import ChainData, c_coeff, d_coeff, maximal_params, minimal_params, modified_minimal_params
from .cpoly import CPoly, ZeroSet, check_interlacing, evaluate, roots, star
from .estimators import OPUCFeatures
from .exceptions import (
    DegenerateLowerParameter,
    DegenerateParameters,
    DegreeOverflow,
    DivisionByNearZero,
    IllConditioned,
    InvalidParameters,
    NoConvergence,
    NonExactDivision,
    QOPUCError,
    SizeMismatch,
)
from .families import (
    BFamilyParams,
    L_moment,
    bcd_poly,
    bcd_poly_by_recurrence,
    n_moment,
    p_poly,
    pastro_poly,
    q_poly,
    r_asymptotic_limit,
    r_poly,
)
from .opuc import (
    MeasureSpec,
    OPUCSequence,
    cd_identity_check,
    check_opuc,
    hat_opuc,
    norm_constant,
    pastro_opuc,
    szego_function,
    weight_density,
)
from .qcore import QBParams, phi21_series, phi21_terminating, qpoch_finite, qpoch_infinite, qpow
from .quadlab import QuadGrid, auto_refine, gram_matrix, integrate

__version__ = "0.1.0"
