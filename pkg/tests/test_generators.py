from fractions import Fraction

import pytest
from numpy.testing import assert_allclose

from app.generators import (
    AsepProcess, GraphRates, asep, asep_qm, qboson, sep, path_graph, with_reservoirs,
    unfuse_graph, single_species_qm_rates, dynamic_asep, dynamic_asep_infinite,
    dynamic_asep_qm, dynamic_asep_qm_infinite, dynamic_qboson, dynamic_ssep, dynamic_ssep_qm,
    qboson_limit_down_rate, transport, space_reverse, heights_to_configs, projection_kernel,
    consecutive_partitions, check_projection,
)
from app.statespace import enumerate_fused, enumerate_lattice
from app.utils.errors import DomainError, ParameterError

Q = Fraction(1, 2)
ALPHA = Fraction(2)


def _word_of(config):
    return tuple(next((j for j, c in enumerate(site, start=1) if c), 0) for site in config)


def test_asep_two_sites():
    gen = asep(2, 1, Q)
    assert gen.rate((1, 0), (0, 1)) == Q
    assert gen.rate((0, 1), (1, 0)) == 1
    assert gen.is_conservative()


def test_asep_empty_row_closed():
    gen = asep(3, 1, Q)
    assert gen.jumps((0, 0, 0)) == []


def test_asep_multi_species_swaps():
    gen = asep(2, 2, Q)
    assert gen.rate((2, 1), (1, 2)) == Q
    assert gen.rate((1, 2), (2, 1)) == 1
    assert gen.rate((2, 0), (0, 2)) == Q


@pytest.mark.parametrize("partition", [[[0], [1, 2]], [[0, 1], [2]]])
def test_asep_projection_is_markov(partition):
    big = asep(3, 2, Q)
    small = asep(3, 1, Q)
    P = projection_kernel(big.space, small.space, partition, 2)
    assert big.matrix @ P == P @ small.matrix


def test_asep_open_boundary():
    gen = asep(2, 1, Q, boundary=("enter_right", "exit_right"), rates=(Fraction(1, 3), Fraction(1, 5)))
    assert gen.rate((0, 0), (0, 1)) == Fraction(1, 3)
    assert gen.rate((1, 1), (1, 0)) == Fraction(1, 5)
    assert gen.is_conservative()
    with pytest.raises(DomainError):
        asep(2, 2, Q, boundary="enter_left")


def test_open_process_leaves_sector():
    with pytest.raises(DomainError):
        AsepProcess(2, 1, Q, "enter_left").build(enumerate_lattice(2, 1, sector=(0,)))


def test_asep_qm_unit_capacities_is_asep():
    for n in (1, 2):
        fused = asep_qm((1, 1, 1), n, Q)
        moved = transport(fused, _word_of, "unfused", (1, 1, 1), n)
        plain = asep(3, n, Q)
        assert moved.space.states == plain.space.states
        assert moved.matrix == plain.matrix


def test_asep_qm_symmetric_rates():
    gen = asep_qm((2, 3), 1, 1)
    assert gen.rate(((2,), (1,)), ((1,), (2,))) == Fraction(2, 3)
    assert gen.rate(((1,), (1,)), ((0,), (2,))) == Fraction(1, 3)
    assert gen.rate(((1,), (1,)), ((2,), (0,))) == Fraction(1, 6)


def test_asep_qm_large_capacity_proxy():
    right, left = single_species_qm_rates(2, 3, 10**6, 10**6, 0.5)
    assert_allclose(right, 0.0, atol=1e-12)
    assert_allclose(left, 1 - 0.5 ** 3)


@pytest.mark.parametrize("partition", [[[0], [1, 2]], [[0, 1], [2]]])
def test_asep_qm_projection_is_markov(partition):
    m = (2, 1)
    big = asep_qm(m, 2, Q)
    small = asep_qm(m, 1, Q)
    P = projection_kernel(big.space, small.space, partition, 2)
    assert big.matrix @ P == P @ small.matrix


def test_sep_unit_capacities():
    gen = sep(path_graph(3), (1, 1, 1))
    assert gen.rate(((1,), (0,), (0,)), ((0,), (1,), (0,))) == 1
    assert gen.rate(((1,), (0,), (0,)), ((0,), (0,), (1,))) == 0
    assert gen.is_conservative()


def test_sep_normalization_flag():
    graph = path_graph(2)
    assert sep(graph, (2, 2)).rate(((2,), (0,)), ((1,), (1,))) == 1
    assert sep(graph, (2, 2), normalize=False).rate(((2,), (0,)), ((1,), (1,))) == 4


def test_sep_reservoir_rates():
    graph = with_reservoirs(path_graph(2), [{0: 1}])
    gen = sep(graph, (1, 1), reservoirs=[(Fraction(1, 3),)])
    assert gen.rate(((0,), (0,)), ((1,), (0,))) == Fraction(1, 3)
    assert gen.rate(((1,), (0,)), ((0,), (0,))) == Fraction(2, 3)

    sink = sep(graph, (1, 1), reservoirs=[(0,)])
    assert sink.jumps(((0,), (0,))) == []
    assert sink.rate(((1,), (0,)), ((0,), (0,))) == 1


def test_sep_reservoir_breaks_sector():
    graph = with_reservoirs(path_graph(2), [{0: 1}])
    gen = sep(graph, (1, 1), reservoirs=[(Fraction(1, 2),)])
    with pytest.raises(DomainError):
        gen.restrict(enumerate_fused((1, 1), 1, sector=(1,)))


def test_sep_closed_restricts_to_sector():
    gen = sep(path_graph(3), (2, 1, 1))
    sector = enumerate_fused((2, 1, 1), 1, sector=(2,))
    restricted = gen.restrict(sector)
    assert restricted.is_conservative()
    assert len(restricted.space) == len(sector)


@pytest.mark.parametrize("partition", [[[0], [1, 2]], [[0, 1], [2]]])
def test_sep_projection_is_markov(partition):
    m = (2, 1, 1)
    big = sep(path_graph(3), m, 2)
    small = sep(path_graph(3), m, 1)
    P = projection_kernel(big.space, small.space, partition, 2)
    assert big.matrix @ P == P @ small.matrix


def test_asymmetric_kernel_rejected():
    with pytest.raises(ParameterError):
        GraphRates(2, {(0, 1): 1, (1, 0): 2})


def test_unfused_kernel():
    graph = unfuse_graph(path_graph(2), (2, 1))
    assert graph(0, 2) == Fraction(1, 2)
    assert graph(0, 1) == 0


def test_qboson_rates():
    gen = qboson(2, Q, cap=2)
    assert gen.rate(((0,), (1,)), ((1,), (0,))) == 1 - Q
    assert gen.rate(((0,), (2,)), ((1,), (1,))) == 1 - Q ** 2
    assert gen.jumps(((0,), (0,))) == []
    mirrored = qboson(2, Q, cap=2, orientation="right")
    assert mirrored.rate(((1,), (0,)), ((0,), (1,))) == 1 - Q


def test_qboson_multi_species_telescopes():
    gen = qboson(2, Q, n=2, cap=3)
    state = ((0, 0), (1, 2))
    assert gen.rate(state, ((1, 0), (0, 2))) == Q ** 2 * (1 - Q)
    assert gen.rate(state, ((0, 1), (1, 1))) == 1 - Q ** 2
    assert sum(rate for _, rate in gen.jumps(state)) == 1 - Q ** 3


@pytest.mark.parametrize("partition, small_sector", [([[0], [1, 2]], (2,)), ([[0, 1], [2]], (1,))])
def test_qboson_projection_is_markov(partition, small_sector):
    big = qboson(3, Q, n=2, cap=2, sector=(1, 1))
    small = qboson(3, Q, n=1, cap=2, sector=small_sector)
    P = projection_kernel(big.space, small.space, partition, 2)
    assert big.matrix @ P == P @ small.matrix


def test_dynamic_asep_local_moves():
    gen = dynamic_asep(2, Q, ALPHA, 0, 0)
    down = Q * (1 + ALPHA / Q) / (1 + ALPHA)
    up = (1 + ALPHA * Q) / (1 + ALPHA)
    assert gen.rate((0, 1, 0), (0, -1, 0)) == down
    assert gen.rate((0, -1, 0), (0, 1, 0)) == up


def test_dynamic_asep_no_move_without_flat_neighbours():
    gen = dynamic_asep(2, Q, ALPHA, 0)
    assert gen.jumps((0, 1, 2)) == []


def test_dynamic_asep_degenerations():
    zero = heights_to_configs(dynamic_asep(3, Q, 0, 0, 1))
    reversed_asep = space_reverse(asep_qm((1, 1, 1), 1, Q, sector=(1,)))
    assert zero.space.states == reversed_asep.space.states
    assert zero.matrix == reversed_asep.matrix

    infinite = heights_to_configs(dynamic_asep_infinite(3, Q, 0, 1))
    assert infinite.matrix == asep_qm((1, 1, 1), 1, Q, sector=(1,)).matrix


def test_dynamic_asep_qm_unit_capacities():
    assert dynamic_asep_qm((1, 1, 1), Q, ALPHA, 0).matrix == dynamic_asep(3, Q, ALPHA, 0).matrix


def test_dynamic_asep_qm_degenerations():
    m = (2, 1)
    zero = heights_to_configs(dynamic_asep_qm(m, Q, 0, 0))
    mirrored = space_reverse(asep_qm((1, 2), 1, Q))
    assert zero.space.states == mirrored.space.states
    assert zero.matrix == mirrored.matrix

    infinite = heights_to_configs(dynamic_asep_qm_infinite(m, Q, 0))
    assert infinite.matrix == asep_qm(m, 1, Q).matrix


def test_dynamic_asep_qm_boundary_rate():
    # k = (1, 0) on m = (2, 1): the particle sits at the far end of block 0 with weight 1/(1+q)
    gen = dynamic_asep_qm((2, 1), Q, 0, 0)
    assert gen.rate((0, 0, 1), (0, 2, 1)) == 1 / (1 + Q)


def test_dynamic_qboson_only_moves_down():
    gen = dynamic_qboson((2, 2, 2), Q, ALPHA, 0)
    for state in gen.space:
        for target, rate in gen.jumps(state):
            x = next(i for i in range(len(state)) if state[i] != target[i])
            assert target[x] == state[x] - 2
            assert rate == qboson_limit_down_rate(Q, ALPHA, state[x])


def test_dynamic_ssep_rates():
    gen = dynamic_ssep(2, -3, 0, 0)
    assert gen.rate((0, 1, 0), (0, -1, 0)) == Fraction(4, 3)
    assert gen.rate((0, -1, 0), (0, 1, 0)) == Fraction(2, 3)


def test_dynamic_ssep_negative_rate():
    with pytest.raises(ParameterError):
        dynamic_ssep(2, Fraction(-1, 2), 0, 0)


@pytest.mark.parametrize("form", ["shifted", "negative_alpha"])
def test_dynamic_ssep_qm_unit_capacities(form):
    assert dynamic_ssep_qm((1, 1, 1), -5, form).matrix == dynamic_ssep(3, -5).matrix


def test_dynamic_ssep_qm_far_lambda_is_ssep():
    m = (2, 1)
    dynamic = heights_to_configs(dynamic_ssep_qm(m, -10**6))
    plain = sep(path_graph(2), m)
    assert dynamic.space.states == plain.space.states
    assert_allclose(dynamic.to_numpy(), plain.to_numpy(), atol=1e-5)


def test_triplet_export():
    lines = asep(2, 1, Q).to_triplets().splitlines()
    assert "2 1 1/2" in lines
    assert "1 2 1" in lines
    assert "2 2 -1/2" in lines


def test_consecutive_partitions():
    assert consecutive_partitions(2, 1) == [[[0], [1, 2]], [[0, 1], [2]]]
    assert len(consecutive_partitions(3, 1)) == 3
    assert consecutive_partitions(3, 3) == [[[0], [1], [2], [3]]]
    with pytest.raises(DomainError):
        consecutive_partitions(2, 3)


def test_three_species_projections():
    big = asep(3, 3, Q)
    for p in (1, 2):
        small = asep(3, p, Q)
        for partition in consecutive_partitions(3, p):
            assert check_projection(big, small, partition, 3).passed
