"""Operator-valued Jacobi-Szego distributions: non-crossing partition
combinatorics, B-valued moments, free/Boolean convolution operations, and
the scalar counting machinery behind the two-color pairing table."""

from .algebra import Algebra, LinMap, flip_map
from .jacobi import (
    JacobiParams,
    boolean_power,
    cf_approximant,
    cf_series,
    fock_moment,
    free_binomial_moment,
    make_named,
    meixner_convolve,
    moment,
    moment_sequence,
    phi_transform,
    poisson_limit_check,
    scalar_jacobi,
    arcsine,
    bernoulli,
    free_poisson,
    meixner,
    point_mass,
    semicircular,
    two_point,
    shift_by_delta,
    strip,
    truncate,
)
from .joint import (
    ColoredWord,
    JointModel,
    colored_word,
    e_pi,
    free_convolve_moments,
    free_convolve_word,
    joint_moment,
    joint_moment_free_recursion,
    two_by_two_model_check,
    verify_jacobi_consistency,
)
from .partitions import (
    ColoredPartition,
    Partition12,
    count_family,
    enumerate_nc12,
    enumerate_tcnc,
)
from .scalar import (
    AtomicMeasure,
    chebyshev_u,
    free_convolve_scalar,
    moments_to_cumulants,
    cumulants_to_moments,
    nu_k,
    nu_moments,
    tcnc_recursion,
    tcnc_table,
    tridiagonal_moment,
)

__version__ = "0.1.0"
