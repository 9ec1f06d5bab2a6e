"""Brill-Noether feasibility of Segre embeddings containing canonical curves."""

from .bn_core import BNIndex, PreconditionError, min_degree, rho, rr_residual_sections, wrd_nonempty_general
from .feasibility import (
    BoundViolated,
    ConsistencyError,
    DegreeInfeasible,
    NonpositiveDenominator,
    ProductMismatch,
    ProductMismatchError,
    SplitSpec,
    TooManyFactors,
    TwoFactorWitness,
    Verdict,
    Witness,
    canonical_segre_verdict,
    classify_triples,
    n_cutoff,
    prop4_bound_for,
    prop4_lower_bound,
    prop4_sharp_lower_bound,
    segre_product_check,
    splitting_feasible,
    theorem2_bound,
    theorem2_shape,
    two_factor_splittings,
    two_factor_witness,
)
from .oracle import (
    Discrepancy,
    SearchSpaceTooLarge,
    SweepConfig,
    least_feasible_genus,
    oracle_splitting_feasible,
    verify_sweep,
)

__version__ = "0.1.0"
