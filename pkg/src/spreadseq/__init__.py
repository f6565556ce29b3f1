"""Non-orthogonal spreading sequence sets from quadratic extended Boolean functions over F_p."""

from .errors import (
    CapacityError,
    ConditionViolation,
    InsufficientFamilyError,
    ParseError,
    ShapeError,
    SpreadSeqError,
)
from .fpcore import (
    PrimeModulus,
    bracket_mod,
    cyclic_shift_perm,
    digit_table,
    digits_of,
    int_of_digits,
    rank_fp,
)
from .quadform import (
    MatrixFamily,
    PsiSpec,
    QuadMatrix,
    SymplecticMatrix,
    psi,
    r_min,
    rank_table,
    symplectic_q,
    verify_rank_lower_bound,
)
from .ebf import (
    Ebf,
    LinearFormQ,
    PhaseSequence,
    QuadraticEbfSpec,
    cs_family_pary,
    cs_family_qary,
    evaluate,
    quadratic_ebf,
    sequence_of,
)
from .spreading import SpreadingMatrix, build_spreading_matrix
from .analysis import (
    CoherenceReport,
    ExponentHistogram,
    aperiodic_correlation,
    coherence_bruteforce,
    coherence_by_rank,
    coherence_naive,
    cs_check,
    inner_product_exact,
    is_zero_sum,
    overloading_factor,
    papr_dft,
    papr_estimate,
    papr_set,
    papr_set_dft,
)
from .constructions import (
    IndexSetU,
    Variant,
    build_thm_2p_diff,
    build_thm_2p_shift,
    build_thm_lp,
    build_thm_p3_any,
    build_thm_p3_even,
    compute_index_set_u,
    count_configs,
    lift_family_q,
    materialize_phi,
    random_parameters,
)

__version__ = "0.1.0"
