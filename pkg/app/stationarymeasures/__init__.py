"""
Stationary and reversible measures, the dynamic height measure and its
closed forms.
"""

from .height_measure import (
    BLOCK_EVENTS, step_probability, path_probability, dyn_height_measure, block_weight,
    block_distribution, block_conditional,
)
from .measures import (
    Measure, pi_ms, pi_fused, sep_product_measure, check_stationary, check_detailed_balance,
)
from .factors import (
    factors_pmf, factors_sector, boundary_conditionals, down_step_law, z_normalizer,
    check_factors_pmf, check_factors_sector, check_boundary_conditionals, check_factors_ratios,
    check_shift,
)
from .dynamic_stationarity import (
    conditioned_height_measure, check_dyn_stationarity, check_all_up_absorbing,
)
