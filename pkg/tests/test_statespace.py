from collections import Counter
from fractions import Fraction
from math import factorial

import pytest

from app.statespace import (
    Capacities, encode_config, decode_config, decode_word, phi, project, tail_count,
    m_offset, window_count, config_stats, particle_positions, enumerate_fused,
    enumerate_unfused, enumerate_lattice, height_config_bridge, config_to_heights,
    down_steps, word_of_path, path_of_word, enumerate_height_paths, validate_height_path,
)
from app.utils.errors import DomainError


def test_unfused_enumeration_order():
    space = enumerate_unfused((1, 1), 1)
    assert space.states == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert space.index((1, 0)) == 2


def test_fused_enumeration_size():
    space = enumerate_fused((2, 1), 1)
    assert len(space) == 6
    assert space[0] == ((0,), (0,))


def test_sector_enumeration():
    space = enumerate_unfused((1, 1, 1), 2, sector=(1, 1))
    assert len(space) == 6
    assert all(sorted(s) == [0, 1, 2] for s in space)


def test_infeasible_sector_is_empty():
    space = enumerate_fused((1, 1), 1, sector=(3,))
    assert len(space) == 0
    assert not space.feasible


def test_unknown_state_lookup():
    space = enumerate_lattice(2)
    with pytest.raises(DomainError):
        space.index((2, 0))
    assert space.get((2, 0)) is None


def test_phi_counts_blocks():
    assert phi((0, 0, 0), (2, 1), 1) == ((0,), (0,))
    assert phi((1, 2, 2), (2, 1), 2) == ((1, 1), (0, 1))
    # red is species 1, black species 2, blocks of sizes 2, 3, 2
    assert phi((0, 2, 1, 0, 2, 2, 0), (2, 3, 2), 2) == ((0, 1), (1, 1), (0, 1))


def test_phi_fiber_sizes_are_multinomials():
    m = (2, 3)
    fibers = Counter(phi(w, m, 2) for w in enumerate_unfused(m, 2))
    assert set(fibers) == set(enumerate_fused(m, 2))
    for fused, size in fibers.items():
        expected = 1
        for cap, counts in zip(m, fused):
            rest = cap - sum(counts)
            expected *= factorial(cap) // (factorial(rest) * factorial(counts[0]) * factorial(counts[1]))
        assert size == expected


def test_project_word():
    partition = [[0], [1, 2], [3, 4, 5], [6, 7, 8, 9]]
    assert project((8, 6, 7, 5, 3, 0, 9), partition, 9) == (3, 3, 3, 2, 2, 0, 3)


def test_project_identity_and_merge():
    identity_partition = [[0], [1], [2]]
    assert project((2, 0, 1), identity_partition, 2) == (2, 0, 1)
    assert project(((1, 2), (0, 1)), [[0], [1, 2]], 2) == ((3,), (1,))
    assert project(((1, 2), (0, 1)), [[0, 1], [2]], 2) == ((2,), (1,))


def test_project_rejects_gaps():
    with pytest.raises(DomainError):
        project((1, 2), [[0, 2], [1]], 2)


def test_project_commutes_with_phi():
    m = (2, 1)
    partition = [[0], [1, 2], [3]]
    for word in enumerate_unfused(m, 3):
        assert project(phi(word, m, 3), partition, 3) == phi(project(word, partition, 3), m, 2)


def test_tail_counts():
    word = (0, 1, 1, 0, 0, 1, 0)
    assert tail_count(word, 0) == 3
    assert tail_count(word, 3) == 1
    assert particle_positions(word) == (5, 2, 1)
    for x in range(len(word) - 1):
        assert tail_count(word, x) - tail_count(word, x + 1) == (1 if word[x] == 1 else 0)
    assert all(tail_count((0,) * 4, x) == 0 for x in range(4))


def test_config_stats_multi_species():
    stats = config_stats((2, 0, 1, 2), 1, j=2, m=(1, 3), block=1)
    assert stats.tail == 2
    assert stats.species_tail == 1
    assert stats.offset == 1


def test_m_offset():
    m = (2, 2, 2, 2)
    assert [m_offset(m, z) for z in range(4)] == [0, 2, 4, 6]
    assert m_offset(m, 1, origin=3) == -4
    assert m_offset((1, 3, 2), 2) == 4


def test_window_count():
    assert window_count([5, 3, 1], 1, 5) == 2
    assert window_count([], 0, 10) == 0


def test_text_encoding():
    assert encode_config(((1, 1), (0, 1))) == "1,1|0,1"
    assert decode_config("1,1|0,1") == ((1, 1), (0, 1))
    assert decode_word("1,2|2") == (1, 2, 2)
    assert encode_config((1, 2, 2), (2, 1)) == "1,2|2"
    with pytest.raises(DomainError):
        decode_config("1,x")


def test_capacities():
    caps = Capacities((2, 1), reservoirs={"left": (Fraction(1, 2),)})
    assert caps.total == 3
    assert caps.reservoir_index("left") == 2
    with pytest.raises(DomainError):
        Capacities(())
    with pytest.raises(DomainError):
        Capacities((1,), reservoirs={"left": (Fraction(3, 4), Fraction(1, 2))})


def test_height_bridge_example_path():
    m = (1, 3, 1, 2, 2, 3, 1)
    s = (2, 3, 2, 1, 1, 3, 0, 1)
    k = height_config_bridge(s, m)
    assert k == (0, 2, 1, 1, 0, 3, 0)
    assert config_to_heights(k, m, 2) == s


def test_height_bridge_flat_max_and_unit_steps():
    m = (2, 1, 3)
    s = config_to_heights((0, 0, 0), m, 0)
    assert s == (0, 2, 3, 6)
    assert height_config_bridge(s, m) == (0, 0, 0)
    path = (2, 3, 2, 1, 2, 3, 2, 3)
    assert down_steps(path) == (1, 2, 5)
    assert word_of_path(path) == (0, 1, 1, 0, 0, 1, 0)
    assert path_of_word(word_of_path(path), 2) == path


def test_height_parity_violation():
    with pytest.raises(DomainError):
        validate_height_path((0, 1), (2,))
    with pytest.raises(DomainError):
        validate_height_path((0, 4), (2,))


def test_height_path_enumeration():
    paths = enumerate_height_paths((1, 1), 0, 0)
    assert paths.states == [(0, -1, 0), (0, 1, 0)]
    assert len(enumerate_height_paths((2, 1), 0)) == 6
