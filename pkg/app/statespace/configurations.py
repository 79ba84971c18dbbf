"""
Configurations in occupation and word form, the text encoding shared by
the CLI and the fixtures, and the structural maps between species counts.

A fused configuration is a tuple with one entry per site, each entry the
species counts ``(k^(1), ..., k^(n))``. An unfused configuration is a flat
word over ``{0, ..., n}`` of length ``sum(m)``.
"""

import logging
from dataclasses import dataclass, field

from app.utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Capacities:
    """
    Bulk site capacities plus optional reservoir sites.

    Reservoir sites are indexed after the bulk sites, in insertion order of
    ``reservoirs``; each carries one density per species.
    """
    m: tuple
    reservoirs: dict = field(default_factory=dict)

    def __post_init__(self):
        m = tuple(int(v) for v in self.m)
        if not m:
            raise DomainError("A lattice needs at least one bulk site")
        if any(v < 1 for v in m):
            raise DomainError(f"Capacities must be positive, got {m}")
        object.__setattr__(self, "m", m)
        for site, densities in self.reservoirs.items():
            densities = tuple(densities)
            if any(d < 0 or d > 1 for d in densities) or sum(densities) > 1:
                raise DomainError(f"Reservoir {site} has invalid densities {densities}")

    @property
    def bulk_sites(self):
        return len(self.m)

    @property
    def total(self):
        return sum(self.m)

    def reservoir_index(self, name):
        """Site index used for a reservoir in graph rate matrices"""
        names = list(self.reservoirs)
        if name not in names:
            raise DomainError(f"Unknown reservoir {name!r}")
        return self.bulk_sites + names.index(name)


def encode_config(config, m=None):
    """
    Text form of a configuration: comma-separated entries per site, sites
    separated by '|'.

    Fused configurations are encoded site by site. Unfused words are
    encoded block by block when ``m`` is given, otherwise one letter per
    site.
    """
    if config and isinstance(config[0], tuple):
        return "|".join(",".join(str(c) for c in site) for site in config)
    if m is None:
        return "|".join(str(c) for c in config)
    return "|".join(",".join(str(c) for c in block) for block in split_blocks(config, m))


def decode_config(text):
    """Inverse of encode_config; always returns a tuple of per-site tuples"""
    text = text.strip()
    if not text:
        raise DomainError("Empty configuration text")
    try:
        return tuple(tuple(int(c) for c in site.split(",")) for site in text.split("|"))
    except ValueError as e:
        raise DomainError(f"Malformed configuration text {text!r}") from e


def decode_word(text):
    """Decode the text form of an unfused word, flattening the blocks"""
    return tuple(c for block in decode_config(text) for c in block)


def split_blocks(word, m):
    word = tuple(word)
    if len(word) != sum(m):
        raise DomainError(f"Word of length {len(word)} does not fit capacities {tuple(m)}")
    blocks = []
    start = 0
    for size in m:
        blocks.append(word[start:start + size])
        start += size
    return blocks


def block_offsets(m):
    """First unfused index of every block"""
    offsets = []
    start = 0
    for size in m:
        offsets.append(start)
        start += size
    return offsets


def phi(word, m, n):
    """
    The fusion map: count the letters of each species inside every block.

    Returns:
        tuple of per-site species counts
    """
    fused = []
    for block in split_blocks(word, m):
        if any(c < 0 or c > n for c in block):
            raise DomainError(f"Letters must lie in 0..{n}, got {block}")
        fused.append(tuple(sum(1 for c in block if c == j) for j in range(1, n + 1)))
    return tuple(fused)


def site_totals(config):
    """Total particle count at every site of a fused configuration"""
    return tuple(sum(site) for site in config)


def species_totals(config, n):
    """Per-species particle totals of a fused configuration or a word"""
    if config and isinstance(config[0], tuple):
        return tuple(sum(site[j] for site in config) for j in range(n))
    return tuple(sum(1 for c in config if c == j) for j in range(1, n + 1))


def _validate_partition(partition, n):
    blocks = [tuple(b) for b in partition]
    flat = [i for b in blocks for i in b]
    if flat != list(range(n + 1)):
        raise DomainError(f"Partition {blocks} is not a run of consecutive blocks covering 0..{n}")
    if any(not b for b in blocks):
        raise DomainError("Partition blocks must be nonempty")
    return blocks


def species_map(partition, n):
    """Letter -> block index for a consecutive partition of {0..n}"""
    blocks = _validate_partition(partition, n)
    return {i: b for b, block in enumerate(blocks) for i in block}


def project(config, partition, n):
    """
    Relabel species by the block of ``partition`` that contains them.

    Words map letter by letter. Fused counts are summed within each block;
    species in the block of 0 become holes.
    """
    mapping = species_map(partition, n)
    p = len(partition) - 1
    if config and isinstance(config[0], tuple):
        projected = []
        for site in config:
            counts = [0] * p
            for j, k in enumerate(site, start=1):
                if mapping[j] > 0:
                    counts[mapping[j] - 1] += k
            projected.append(tuple(counts))
        return tuple(projected)
    return tuple(mapping[c] for c in config)


def tail_count(word, x, species=1, at_least=False):
    """
    N_x: number of sites z >= x whose letter is ``species`` (or at least
    ``species`` when ``at_least`` is set)
    """
    if at_least:
        return sum(1 for c in word[x:] if c >= species)
    return sum(1 for c in word[x:] if c == species)


def fused_tail_count(config, x, species=None):
    """Particles at sites z >= x of a fused configuration (one species or all)"""
    if species is None:
        return sum(sum(site) for site in config[x:])
    return sum(site[species - 1] for site in config[x:])


def m_offset(m, z, origin=0):
    """
    m^(z): the first unfused index of block z when block ``origin`` starts
    at unfused index 0. Negative blocks count backwards.
    """
    rel = z - origin
    if rel > 0:
        return sum(m[origin:z])
    if rel == 0:
        return 0
    return -sum(m[z:origin])


def count_at_least(values, u):
    return sum(1 for v in values if v >= u)


def count_above(values, u):
    return sum(1 for v in values if v > u)


def window_count(values, a, b):
    """omega_V(a, b): number of v with a < v <= b"""
    return sum(1 for v in values if a < v <= b)


@dataclass(frozen=True)
class ConfigStats:
    tail: int
    species_tail: int
    offset: int


def config_stats(word, x, j=1, m=None, block=None):
    """
    Counting statistics of a word at site x.

    Returns:
        ConfigStats with N_x (letters >= 1 at z >= x), N_x^(j) and, when
        capacities are given, the block offset m^(block)
    """
    offset = m_offset(m, block if block is not None else 0) if m is not None else 0
    return ConfigStats(tail=tail_count(word, x, 1, at_least=True),
                       species_tail=tail_count(word, x, j), offset=offset)


def particle_positions(word, species=None):
    """Occupied sites in decreasing order, x_1 > x_2 > ..."""
    if species is None:
        return tuple(x for x in range(len(word) - 1, -1, -1) if word[x] > 0)
    return tuple(x for x in range(len(word) - 1, -1, -1) if word[x] == species)


def word_from_positions(positions, length):
    word = [0] * length
    for x in positions:
        if not 0 <= x < length:
            raise DomainError(f"Position {x} outside 0..{length - 1}")
        word[x] = 1
    return tuple(word)
