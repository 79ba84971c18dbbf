from fractions import Fraction

import pytest

from app.fusionmaps import (
    phi_kernel, lambda_kernel, fiber_sizes, configuration_from_coset, rogers_pitman_asep,
    rogers_pitman_sep, check_rogers_pitman, check_rp_inter, proportionality_constant,
    check_q_exchangeability, check_preservation, exchangeable_weights, species_coinversions,
)
from app.generators import asep, asep_qm, sep, path_graph, unfuse_graph, as_unfused
from app.statespace import enumerate_unfused
from app.stationarymeasures import Measure, pi_ms, pi_fused
from app.utils.errors import DomainError

Q = Fraction(1, 2)


def test_lambda_splits_a_two_site_block():
    lam = lambda_kernel((2,), 1, Q)
    row = lam.row(((1,),))
    assert row == {(1, 0): 1 / (1 + Q), (0, 1): Q / (1 + Q)}


def test_lambda_full_block_is_deterministic():
    lam = lambda_kernel((3,), 1, Q, sector=(3,))
    assert lam.row(((3,),)) == {(1, 1, 1): 1}


@pytest.mark.parametrize("m, n, q", [((2, 1), 1, Q), ((2, 2), 2, Fraction(2, 3)), ((3, 1), 2, Fraction(3))])
def test_lambda_is_stochastic_and_inverts_phi(m, n, q):
    lam = lambda_kernel(m, n, q)
    phi_k = phi_kernel(m, n)
    assert lam.is_stochastic()
    assert phi_k.is_stochastic()
    product = lam @ phi_k
    assert product.row_sums() == [1] * len(lam.row_space)
    assert all(i == j for i, j, _ in product.entries())


def test_phi_rows_and_fiber_sizes():
    phi_k = phi_kernel((2, 1), 1)
    assert all(len(phi_k.matrix.row(i)) == 1 for i in range(len(phi_k.row_space)))
    sizes = dict(zip(phi_k.col_space, fiber_sizes(phi_k)))
    assert sizes[((1,), (0,))] == 2
    assert sizes[((2,), (1,))] == 1
    assert sum(sizes.values()) == 8


def test_fiber_sizes_on_two_species_blocks():
    phi_k = phi_kernel((2, 3), 2, sector=(2, 1))
    sizes = dict(zip(phi_k.col_space, fiber_sizes(phi_k)))
    assert sizes[((0, 0), (2, 1))] == 3
    assert sizes[((1, 0), (1, 1))] == 12


def test_configuration_from_coset():
    assert configuration_from_coset((1, 1, 0), (2, 1, 3), (1, 2), (1, 2)) == ((0, 1), (1, 1))
    with pytest.raises(DomainError):
        configuration_from_coset((1, 1, 0), (2, 1, 3), (1, 2), (1, 1))


def test_rogers_pitman_single_species():
    report = rogers_pitman_asep((2, 1), 1, Q)
    assert report.passed
    assert report.details["parts"] == ["lambda_phi", "lift_stationary", "lumped_rates", "stationary", "idempotent"]


def test_rogers_pitman_two_species_sector():
    assert rogers_pitman_asep((2, 2), 2, Fraction(2, 3), sector=(1, 1)).passed


def test_rogers_pitman_three_species():
    assert rogers_pitman_asep((2, 1, 1), 3, Fraction(3, 2), sector=(1, 1, 1)).passed


@pytest.mark.parametrize("n, sector", [(1, (2,)), (2, (1, 1))])
def test_rogers_pitman_symmetric(n, sector):
    assert rogers_pitman_sep(path_graph(3), (2, 1, 2), n, sector).passed


def test_rogers_pitman_reports_wrong_fused_generator():
    m = (2, 1)
    report = check_rogers_pitman(asep(3, 1, Q), asep_qm(m, 1, Fraction(1, 3)), lambda_kernel(m, 1, Q),
                                 phi_kernel(m, 1), pi_fused(m, 1, Q))
    assert not report.passed
    assert "lumped_rates" in report.details["failed_parts"]
    assert report.witnesses


def test_q_exchangeability_of_reversible_measures():
    assert check_q_exchangeability(pi_ms(3, 2, 1, sector=(1, 1)), 1).passed
    assert check_q_exchangeability(pi_ms(4, 2, Q, sector=(1, 2)), Q).passed
    assert check_q_exchangeability(pi_fused((2, 1, 2), 2, Q, sector=(1, 2)), Q).passed


def test_q_exchangeability_detects_plain_uniform():
    assert not check_q_exchangeability(pi_ms(3, 2, 1, sector=(1, 1)), Q).passed


def test_species_coinversions_ignore_holes():
    assert species_coinversions((1, 0, 2)) == 1
    assert species_coinversions((2, 0, 1)) == 0
    assert species_coinversions((0, 1, 1)) == 0


def test_asep_preserves_exchangeability():
    space = enumerate_unfused((1, 1, 1), 2, sector=(1, 1))
    weights = exchangeable_weights(space, Q, lambda x: 1 + sum(x) ** 2)
    measure = Measure(space, weights, "exchangeable")
    assert check_preservation(asep(3, 2, Q, sector=(1, 1)), measure, Q).passed


def test_fusion_maps_preserve_exchangeability():
    m = (2, 1)
    space = enumerate_unfused(m, 2, sector=(1, 1))
    words = Measure(space, exchangeable_weights(space, Q, lambda x: 1 + 3 * x[0]), "words")
    phi_k = phi_kernel(m, 2, sector=(1, 1))
    fused = Measure(phi_k.col_space, phi_k.apply(words.probabilities), "fused")
    assert check_q_exchangeability(fused, Q).passed
    lam = lambda_kernel(m, 2, Q, sector=(1, 1))
    lifted = Measure(lam.col_space, lam.apply(fused.probabilities), "lifted")
    assert check_q_exchangeability(lifted, Q).passed


def _unit_sep(graph, m, n, sector):
    return as_unfused(sep(unfuse_graph(graph, m), (1,) * sum(m), n, sector=sector), m)


def test_rp_inter_interchange_sector():
    m, sector = (2, 1), (1, 1, 1)
    L = _unit_sep(path_graph(2), m, 3, sector)
    lam, phi_k = lambda_kernel(m, 3, 1, sector), phi_kernel(m, 3, sector)
    assert proportionality_constant(lam, phi_k) == Fraction(1, 2)
    identity = lam.matrix.identity(len(L.space))
    report = check_rp_inter(L, lam, phi_k, [1] * len(L.space), identity, pi_fused(m, 3, 1, sector))
    assert report.passed
    assert report.details["stage"] == "conclusion"


def test_rp_inter_single_species_fails_on_constant():
    m, sector = (2, 3), (2,)
    L = _unit_sep(path_graph(2), m, 1, sector)
    lam, phi_k = lambda_kernel(m, 1, 1, sector), phi_kernel(m, 1, sector)
    assert proportionality_constant(lam, phi_k) is None
    identity = lam.matrix.identity(len(L.space))
    report = check_rp_inter(L, lam, phi_k, [1] * len(L.space), identity, pi_fused(m, 1, 1, sector),
                            expect_fail=True)
    assert not report.passed
    assert report.details["stage"] == "hypotheses"
    assert report.details["failed_parts"] == ["lambda_multiple_of_phi_T"]
    assert report.ok
