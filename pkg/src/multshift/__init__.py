"""Hausdorff and Minkowski dimensions of multiplicative subshifts of finite type."""

__version__ = "0.1.0"

from .dimension import (
    DimensionReport,
    TVector,
    dimension_report,
    dims_equal_verdict,
    hausdorff_dimension,
    minkowski_dimension,
    minkowski_partial_sums,
    solve_golden_p,
    solve_t_system,
)
from .errors import *  # noqa: F401,F403
from .markov import (
    EntropySeries,
    MarkovMeasure,
    SampleBatch,
    bernoulli_measure,
    cylinder_measure_multiplicative,
    cylinder_measure_sigma,
    golden_measure,
    local_dimension_stats,
    optimize_markov,
    partition_entropy,
    s_mu,
    s_mu_closed_form_golden,
    sample_sequence,
    t_vector_measure,
    telescoping_average,
    uniform_measure,
)
from .subshift import (
    GOLDEN,
    ChainDecomposition,
    CylinderWord,
    TransferMatrix,
    chain_decomposition,
    count_admissible_words,
    count_multiplicative_prefixes,
    enumerate_admissible_words,
    full_shift,
    is_multiplicatively_admissible,
    restrict_word,
    validate_primitive,
)
