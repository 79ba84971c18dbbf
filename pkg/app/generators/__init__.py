"""
Exact generators of the particle processes on finite lattices.
"""

from .base_generator import BaseProcess, Generator
from .graphs import GraphRates, path_graph, complete_graph, with_reservoirs, unfuse_graph
from .exclusion import (
    AsepProcess, AsepQmProcess, QBosonProcess, asep, asep_qm, qboson, single_species_qm_rates,
)
from .symmetric import SepProcess, SinkSepProcess, sep, sink_sep, sink_space
from .dynamic import (
    dynamic_asep, dynamic_asep_infinite, dynamic_asep_qm, dynamic_asep_qm_infinite,
    dynamic_qboson, dynamic_ssep, dynamic_ssep_qm, ssep_qm_dynamic_rates,
    unit_up_rate, unit_down_rate, qboson_limit_down_rate,
)
from .transforms import (
    transport, space_reverse, heights_to_configs, projection_kernel, unit_word, as_unfused,
    consecutive_partitions, check_projection,
)
