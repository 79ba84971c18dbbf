"""
Fused dynamical vertex weights, their q-Jackson specialization and the
dynamical q-Boson limit of the q-Hahn rates.
"""

from .fused_weights import (
    theta, alpha_weight, beta_weight, alpha_beta, alpha_product, beta_product, path_words, R, weight_table, row_sums,
    check_stochasticity, check_telescoping, export_weight_table,
)
from .q_jackson import (
    PARAMETER_POINTS, q_jackson_phi, specialized_w, jackson_parameters, specialized_R, specialization_table,
    check_specialization, q_jackson_suite, conjugation_ratios, conjugation_report,
)
from .q_hahn import (
    hahn_phi, qhahn_rates, qboson_limit, check_rates_derivative, check_qboson_limit, check_dynamic_mismatch,
)
