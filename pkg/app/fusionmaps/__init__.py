"""
The fusion map, the fission kernel and the intertwining checks that turn
multi-species processes on unit sites into fused processes.
"""

from .kernels import (
    Kernel, phi_kernel, lambda_kernel, block_arrangements, coinversions, fiber_sizes,
    configuration_from_coset,
)
from .rogers_pitman import (
    check_rogers_pitman, rogers_pitman_asep, rogers_pitman_sep, proportionality_constant, check_rp_inter,
)
from .exchangeability import (
    species_coinversions, cross_coinversions, check_q_exchangeability, check_preservation,
    exchangeable_weights,
)
