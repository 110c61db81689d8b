"""Certified norm brackets and heat-multiplier approximation on group rings.

The package models a few concrete groups with word lengths, certifies
conditional negativity of those lengths, and uses the resulting heat
multipliers, truncated to balls and rescaled by a certified bound, to
approximate the identity on finitely supported convolution operators with
finite-rank contractions.  Every reported quantity is a two-sided or
one-sided certified bound, never a heuristic estimate.
"""

from .groups import (
    DEFAULT_BALL_CAP,
    BallCapError,
    CyclicGroup,
    FreeAbelianGroup,
    FreeGroup,
    Group,
    GroupMismatchError,
)
from .harness import (
    ConvergenceRow,
    GridSchedule,
    RdSampleReport,
    default_n_rule,
    default_schedule,
    rd_sample_report,
    rows_to_csv,
    rows_to_json,
    run_grid,
    select_epsilon,
)
from .kernels import (
    CnVerdict,
    DecayCertificate,
    KernelMatrix,
    PsdVerdict,
    cn_check,
    cn_check_matrix,
    decay_certificate,
    length_kernel,
    psd_check,
    schoenberg_kernel,
)
from .multipliers import (
    Multiplier,
    MultiplierNormBound,
    apply,
    certified_scale,
    heat_multiplier,
    lemma_norm_bound,
    map_defect,
    pointwise_defect_bound,
    scaled_multiplier,
    table_multiplier,
    tail_bound,
    truncated_heat_multiplier,
)
from .operators import (
    CompressionMatrix,
    GroupRingElement,
    NormBracket,
    RdParams,
    builtin_rd_params,
    compression_matrix,
    convolve,
    delta,
    l1_norm,
    l2_norm,
    opnorm_bracket,
    opnorm_lower,
    opnorm_upper,
    random_element,
    sobolev_norm,
    zero_element,
)

__version__ = "0.1.0"

__all__ = [
    "BallCapError",
    "CnVerdict",
    "CompressionMatrix",
    "ConvergenceRow",
    "CyclicGroup",
    "DEFAULT_BALL_CAP",
    "DecayCertificate",
    "FreeAbelianGroup",
    "FreeGroup",
    "GridSchedule",
    "Group",
    "GroupMismatchError",
    "GroupRingElement",
    "KernelMatrix",
    "Multiplier",
    "MultiplierNormBound",
    "NormBracket",
    "PsdVerdict",
    "RdParams",
    "RdSampleReport",
    "apply",
    "builtin_rd_params",
    "certified_scale",
    "cn_check",
    "cn_check_matrix",
    "compression_matrix",
    "convolve",
    "decay_certificate",
    "default_n_rule",
    "default_schedule",
    "delta",
    "heat_multiplier",
    "l1_norm",
    "l2_norm",
    "lemma_norm_bound",
    "length_kernel",
    "map_defect",
    "opnorm_bracket",
    "opnorm_lower",
    "opnorm_upper",
    "pointwise_defect_bound",
    "psd_check",
    "random_element",
    "rd_sample_report",
    "rows_to_csv",
    "rows_to_json",
    "run_grid",
    "scaled_multiplier",
    "schoenberg_kernel",
    "select_epsilon",
    "sobolev_norm",
    "table_multiplier",
    "tail_bound",
    "truncated_heat_multiplier",
    "zero_element",
]
