"""Finite-dimensional quantum mechanics on a periodic lattice and the
agreement probability of coarse position-momentum-position measurement
chains, evaluated by brute-force linear algebra, by closed forms, and by
continuum/perturbation/bound approximations that cross-validate each other.
"""

__version__ = "0.1.0"

from .analytic import (
    BoundPair,
    CurvePoint,
    bound_pair,
    closed_form,
    continuum_form,
    curve_limit_integral,
    curve_value,
    digamma,
    harmonic_sum_identities,
    lower_bound,
    perturbation_exact,
    perturbation_from_ratio,
    perturbation_integral,
    trigamma,
    upper_bound,
)
from .brute import (
    BRUTE_CAP,
    AgreeResult,
    SequenceOutcome,
    lambda_agree,
    p_agree_average_brute,
    p_agree_average_gram,
    p_agree_state,
    sample_haar_states,
    sequence_distribution,
)
from .coarse import (
    CoarseProjector,
    TruncatedMomentumState,
    coarse_observable,
    dirichlet_delta,
    projector,
    truncated_momentum_state,
    truncated_overlap,
)
from .errors import NumericCheckError, ResourceLimitError
from .lattice import (
    LatticeConfig,
    QuantumState,
    dft_matrix,
    momentum_basis_state,
    position_basis_state,
    translation_matrix,
)
from .units import (
    CoarseScales,
    PhysicalUnits,
    coarse_to_units,
    derive_units,
    perturbation_in_units,
)
