from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.utils.errors import DomainError, SingularityError
from app.vertexweights import (
    alpha_beta, alpha_product, alpha_weight, beta_weight, path_words, R, weight_table, row_sums,
    check_telescoping, export_weight_table, qhahn_rates, qboson_limit, check_rates_derivative,
    check_qboson_limit, check_dynamic_mismatch, q_jackson_phi, beta_product, specialized_w, specialized_R,
    check_specialization, q_jackson_suite, specialization_table, conjugation_ratios, conjugation_report,
)

LAM, W, ETA = 0.23, 0.37, 0.11


def test_alpha_beta_conventions():
    assert alpha_beta(LAM, W, ETA, 0) == (1, 0)
    alpha, beta = alpha_beta(LAM, W, ETA, 1)
    assert_allclose(alpha, alpha_weight(LAM, W, ETA))
    assert_allclose(beta, beta_weight(LAM, W, ETA))


def test_alpha_plus_beta_is_one():
    assert_allclose(alpha_weight(LAM, W, ETA) + beta_weight(LAM, W, ETA), 1, rtol=1e-12)


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_alpha_telescopes(r):
    assert_allclose(alpha_beta(LAM, W, ETA, r)[0], alpha_product(LAM, W, ETA, r), rtol=1e-12)


def test_telescoping_report():
    assert check_telescoping(r_max=3, points=4, seed=7).passed


def test_singular_parameters_are_rejected():
    with pytest.raises(SingularityError):
        alpha_beta(0.0, W, ETA, 1)


def test_path_words():
    assert path_words(3, 1) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    with pytest.raises(DomainError):
        path_words(13, 2)


def test_conservation():
    assert R(2, 2, 1, 1, 2, 1, LAM, W, ETA) == 0
    with pytest.raises(DomainError):
        R(2, 2, 3, 0, 0, 3, LAM, W, ETA)


def test_r22_worked_example():
    expected = alpha_beta(LAM, W, ETA, 1)[1] * alpha_beta(-(LAM + 2 * ETA), W - 2 * ETA, ETA, 2)[0]
    assert_allclose(R(2, 2, 1, 1, 2, 0, LAM, W, ETA), expected, rtol=1e-12)
    expected = alpha_beta(LAM, W, ETA, 1)[0] * alpha_beta(-(LAM - 2 * ETA), W - 2 * ETA, ETA, 1)[1]
    assert_allclose(R(2, 2, 1, 1, 0, 2, LAM, W, ETA), expected, rtol=1e-12)


def test_r22_row_sums_to_one():
    total = sum(R(2, 2, 1, 1, j, 2 - j, LAM, W, ETA) for j in range(3))
    assert_allclose(total, 1, rtol=1e-10)


def test_unit_weights_are_stochastic():
    sums = row_sums(weight_table(1, 1, LAM, W, ETA))
    assert len(sums) == 4
    assert_allclose(np.array(list(sums.values())), 1, rtol=1e-10)


def test_weight_table_export(tmp_path):
    rows = export_weight_table(str(tmp_path / "r11.csv"), 1, 1, LAM, W, ETA)
    assert len(rows) == 6
    text = (tmp_path / "r11.csv").read_text().splitlines()
    assert text[0].startswith("l,m,j_in")
    assert len(text) == 7


def test_phi_vanishes_above_the_input():
    assert q_jackson_phi(0.5, 0.3, 0.2, 0.1, 3, 2) == 0
    assert_allclose(q_jackson_phi(0.5, 0.3, 0.2, 0.1, 0, 0), 1)


def test_qhahn_empty_rates():
    assert qhahn_rates(0.5, 0.3, 0.2, 0, 0) == 0
    assert qboson_limit(0.5, 0.2, 0) == (0, 0)
    with pytest.raises(DomainError):
        qhahn_rates(0.5, 0.3, 0.2, 1, 2)


def test_psi_special_values():
    q = 0.5
    for i in range(4):
        assert_allclose(qboson_limit(q, 0.0, i)[1], (1 - q ** i) / (1 - q))
    assert_allclose(qboson_limit(q, 0.4, 1)[1], 1 - q * 0.4)


def test_rates_are_lambda_derivatives():
    assert check_rates_derivative(0.5, 0.3, 0.2).passed


def test_small_mu_limit():
    assert check_qboson_limit(0.5, 0.2).passed


def test_dynamic_qboson_rate_differs_from_psi():
    report = check_dynamic_mismatch(Fraction(1, 2), Fraction(1, 2), 0)
    assert not report.passed
    assert report.ok


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_beta_telescopes(r):
    assert_allclose(alpha_beta(LAM, W, ETA, r)[1], beta_product(LAM, W, ETA, r), rtol=1e-12, atol=1e-12)


def test_closed_forms_sum_to_one():
    for r in range(1, 5):
        assert_allclose(sum(alpha_beta(LAM, W, ETA, r)), 1, rtol=1e-12)


def test_telescoping_report_covers_both_weights():
    report = check_telescoping(r_max=2, points=1, seed=0)
    assert report.passed
    assert report.details["parts"] == ["alpha_telescoping(r=1)", "beta_telescoping(r=1)",
                                      "alpha_telescoping(r=2)", "beta_telescoping(r=2)"]


def test_phi_is_zero_below_the_diagonal():
    assert q_jackson_phi(0.5, 0.3, 0.2, 0.1, -1, 0) == 0


@pytest.mark.parametrize("eta, lam", [(0.11, 0.23), (0.07, 0.31), (0.13, 0.17)])
def test_complemented_q_jackson_match(eta, lam):
    report = check_specialization(1, 2, eta, lam, complement=True)
    assert report.passed, report.witnesses
    assert report.details["entries"] == 10


def test_stated_q_jackson_match_fails_at_unit_spins():
    report = check_specialization(1, 1, ETA, LAM, expect_fail=True)
    assert not report.passed
    assert report.ok
    witness = next(w for w in report.witnesses if w.row == "(0, 1, 1, 0)")
    assert_allclose(complex(witness.lhs), beta_weight(LAM, specialized_w(1, 1, ETA), ETA), rtol=1e-8)


def test_singular_specialization_uses_the_limit():
    w = specialized_w(2, 2, ETA)
    with pytest.raises(SingularityError):
        R(2, 2, 2, 0, 2, 0, LAM, w, ETA)
    value, residue = specialized_R(2, 2, 2, 0, 2, 0, LAM, ETA)
    assert residue > 1e-6
    assert specialized_R(2, 2, 0, 0, 0, 0, LAM, ETA) == (1, 0.0)


def test_q_jackson_suite_is_all_ok():
    reports = q_jackson_suite()
    assert len(reports) == 15
    assert all(report.ok for report in reports)
    assert sum(not report.expect_fail for report in reports) == 3


def test_conjugation_ratios_skip_poles_and_zeros():
    ratios = conjugation_ratios(1, 1, 0.11, 0.23)
    table = specialization_table(1, 1, 0.11, 0.23)
    assert ratios
    assert set(ratios) <= set(table)
    for key, ratio in ratios.items():
        value, closed, _ = table[key]
        assert ratio * closed == pytest.approx(value)
    report = conjugation_report(2, 2, 0.11, 0.23)
    assert report.passed
    assert isinstance(report.details["ratios"], dict)
