"""
State spaces: fused and unfused configurations, their enumeration and
text encoding, and the height-function encoding of dynamic processes.
"""

from .configurations import (
    Capacities, encode_config, decode_config, decode_word, split_blocks, block_offsets,
    phi, project, species_map, site_totals, species_totals, tail_count, fused_tail_count,
    m_offset, count_at_least, count_above, window_count, config_stats, ConfigStats,
    particle_positions, word_from_positions,
)
from .enumeration import (
    StateSpace, FUSED, UNFUSED, enumerate_space, enumerate_fused, enumerate_unfused,
    enumerate_lattice, particle_sector, fused_particle_sector,
)
from .heights import (
    validate_height_path, height_config_bridge, config_to_heights, down_steps,
    word_of_path, path_of_word, enumerate_height_paths,
)
