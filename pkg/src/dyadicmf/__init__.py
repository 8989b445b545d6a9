"""Riesz-product measures, multiple ergodic averages and fractal
dimension formulas on the binary symbolic space, with exact combinatorial
counting and brute-force cross-checks throughout.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .averages import (
    AverageTrace,
    LlnReport,
    empirical_spectrum,
    enumerate_level_set_counts,
    level_set_count,
    lln_experiment,
    local_dimension_estimate,
    multiple_average,
)
from .counting import (
    ChainDecomposition,
    chain_decomposition,
    count_brute_force,
    count_exact,
    normalized_log_count,
)
from .dimensions import (
    DimensionValue,
    box_dimension_X0,
    entropy,
    fibonacci,
    hausdorff_dimension_B,
)
from .measure import (
    Expectation,
    NullCylinderError,
    PowerSeriesCoeffs,
    RieszParams,
    conditional_prob_next,
    cylinder_mass,
    cylinder_mass_table,
    exact_fourier_table,
    expectation_g,
    fourier_coefficient,
    log2_cylinder_mass,
    sample,
    sample_batch,
    walsh_transform,
)
from .words import (
    Cylinder,
    DyadicCharacter,
    SignWord,
    as_word,
    walsh,
    xi,
    xi_character_index,
    xi_sequence,
)

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "AverageTrace",
    "ChainDecomposition",
    "Cylinder",
    "as_word",
    "DimensionValue",
    "DyadicCharacter",
    "Expectation",
    "LlnReport",
    "NullCylinderError",
    "PowerSeriesCoeffs",
    "RieszParams",
    "SignWord",
    "box_dimension_X0",
    "chain_decomposition",
    "conditional_prob_next",
    "count_brute_force",
    "count_exact",
    "cylinder_mass",
    "cylinder_mass_table",
    "empirical_spectrum",
    "entropy",
    "enumerate_level_set_counts",
    "exact_fourier_table",
    "expectation_g",
    "fibonacci",
    "fourier_coefficient",
    "hausdorff_dimension_B",
    "level_set_count",
    "lln_experiment",
    "local_dimension_estimate",
    "log2_cylinder_mass",
    "multiple_average",
    "normalized_log_count",
    "sample",
    "sample_batch",
    "walsh",
    "walsh_transform",
    "xi",
    "xi_character_index",
    "xi_sequence",
]
