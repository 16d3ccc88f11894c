"""Maximal orthogonal exponential sets for Cantor measures with contraction p^-alpha.

The measure is the self-similar probability measure for the maps
x -> (x + d) / N, N = p^alpha, d in a digit set D with distinct residues
mod N.  Integer frequency sets whose exponentials are mutually orthogonal
are organized by their base-N digits; under cyclotomic hypotheses on the
digit polynomial they correspond to labelings of the |D|-homogeneous tree.
"""
from .errors import (
    CantorSpectraError,
    DomainError,
    InexactDivisionError,
    InstanceTooLargeError,
    InvalidDigitSetError,
    MalformedTreeError,
    PreconditionError,
    UnsupportedSystemError,
    ValidationError,
)
from .expansion import DigitExpansion, FrequencySet, Tail, collapse, digit_at, expand, prefix_subset
from .numeric import (
    grid_to_csv,
    mask_eval,
    mask_eval_normalized,
    mu_hat_grid,
    mu_hat_truncated,
    mu_hat_values,
    tail_bound,
    truncation_level,
)
from .orthogonality import (
    BranchingProfile,
    HadamardCandidate,
    are_orthogonal,
    branching_profile,
    enumerate_hadamard_L,
    greedy_maximal_completion,
    hadamard_triple_check,
    is_orthogonal_family,
    max_ratio_closed_subset_size,
    mu_hat_is_zero,
)
from .polyarith import IntPolynomial, cyclotomic, divides, exact_div, poly_from_digit_set, self_reciprocal_part
from .system import CantorSystem, admissible_label_difference, build_system
from .trees import (
    SpectralLabeling,
    canonical_labeling,
    check_branching_exactness,
    enumerate_labelings,
    lambda_of_labeling,
    labeling_from_child_sets,
    validate_labeling,
)

__version__ = "0.1.0"
