"""
Duality functions and their exact verification against the generators,
including the dualities produced by intertwiners, the open-boundary
dualities and the dynamic ones.
"""

from .functions import DUALITY_FUNCTIONS, evaluate, site_counts, tail_counts, dual_positions
from .matrices import CLOSED, INTERIOR, HALFLINE, DualityMatrix, regime_mask, state_in_regime
from .checks import check_duality, check_duality_sectors, check_stationary_dual, check_central_closure
from .known import (
    dual_asep, schutz_duality, multi_species_transport, bcs_duality, kua_duality, kua_qm_duality,
    cgrs_duality, gkrv_duality, spi_duality, fused_schutz, fused_spitzer, known_suite,
)
from .intertwiners import (
    q_kernel, p_diagonal, charge_reversal, check_q_intertwining, check_p_intertwining, check_newdual,
    check_charge_reversal_involution,
)
from .open_boundary import (
    HalfLineAsepProcess, half_line, check_open_asep, check_open_sep, check_open_sep_multi, need_cases,
    open_boundary_suite,
)
from .schutz import (
    schutz_sum, schutz_closed_form, nodep_ratio, check_S_independence, check_shift_step,
    check_stationary_schutz,
)
from .dynamic_duality import (
    check_dynamic_duality_BC, check_bc_limits, check_dynamic_ssep_duality, check_ssep_limit,
    check_qboson_propositions, check_asep_qm_proposition, ansatz_F, ansatz_sum, check_ansatz,
    dynamic_suite, report_only_suite,
)
