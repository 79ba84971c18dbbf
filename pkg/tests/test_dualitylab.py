from fractions import Fraction

import pytest

from app.dualitylab import (
    CLOSED, INTERIOR, DualityMatrix, evaluate, tail_counts, dual_positions, schutz_duality,
    multi_species_transport, bcs_duality, kua_duality, kua_qm_duality, cgrs_duality, gkrv_duality,
    spi_duality, fused_schutz, fused_spitzer, q_kernel, check_q_intertwining, check_p_intertwining,
    check_newdual, check_charge_reversal_involution, check_open_asep, check_open_sep, need_cases,
    schutz_sum, schutz_closed_form, check_S_independence, check_shift_step, check_stationary_schutz,
    check_dynamic_duality_BC, check_bc_limits, check_dynamic_ssep_duality, check_ssep_limit, ansatz_F,
    check_central_closure, check_open_sep_multi, HalfLineAsepProcess,
)
from app.dualitylab.dynamic_duality import ansatz_measure
from app.dualitylab.functions import d_open_sep, d_open_sep_multi, d_sch
from app.generators import asep, path_graph, sink_space
from app.qcomb.qnumbers import q_binomial
from app.statespace import enumerate_fused, enumerate_lattice
from app.utils.errors import DomainError
from app.utils.sparse import SparseMatrix

Q = Fraction(1, 2)


def test_tail_counts_and_dual_positions():
    assert tail_counts((1, 0, 1, 1)) == [3, 2, 2, 1]
    assert dual_positions((0, 1, 0, 1)) == [3, 1]
    assert dual_positions(((2,), (0,), (1,))) == [2, 0, 0]


def test_schutz_function_value():
    assert d_sch((1, 0, 1), (0, 0, 1), Q) == 8
    assert d_sch((1, 0, 1), (0, 1, 0), Q) == 0
    assert evaluate("D_Sch", (1, 0, 1), (1, 0, 0), q=Q) == 2 ** 2


def test_evaluate_rejects_unknown_names():
    with pytest.raises(DomainError):
        evaluate("D_nowhere", (1,), (1,))


def test_duality_matrix_shape_is_checked():
    words = enumerate_lattice(2)
    with pytest.raises(DomainError):
        DualityMatrix(words, words, SparseMatrix(3, 4), "bad")
    with pytest.raises(DomainError):
        DualityMatrix(words, words, SparseMatrix(4, 4), "bad", regime="sideways")


@pytest.mark.parametrize("q", [Q, Fraction(2, 3)])
def test_schutz_self_duality(q):
    assert schutz_duality(4, q).passed
    assert schutz_duality(3, q, max_dual=2, n=2).passed


def test_multi_species_transport():
    report = multi_species_transport(3, 2, Q, max_dual=2)
    assert report.passed, report.details


def test_bcs_holds_inside_and_fails_on_the_closed_segment():
    assert bcs_duality(8, Q, max_dual=2, regime=INTERIOR, margin=2).passed
    closed = bcs_duality(3, Q, max_dual=1, regime=CLOSED)
    assert not closed.passed
    assert closed.ok
    assert closed.witnesses


def test_kua_dualities():
    assert kua_duality(4, Q).passed
    assert kua_qm_duality(2, 3, Q, max_dual=2).passed
    inclusive = kua_qm_duality(2, 2, Q, max_dual=1, inclusive=True)
    assert not inclusive.passed
    assert inclusive.ok


def test_cgrs_and_gkrv():
    assert cgrs_duality(2, 3, Q, max_dual=2).passed
    assert gkrv_duality(path_graph(3), (2, 2, 2), max_dual=2).passed
    assert gkrv_duality(path_graph(3), (1, 2, 3), max_dual=2).passed


def test_spitzer_multi_species():
    assert spi_duality(3, 2).passed


def test_fused_functions_from_lambda():
    assert fused_schutz((2, 1), Q).passed
    assert fused_spitzer((2, 1, 2)).passed


def test_q_kernel_keeps_subsets():
    Q_kernel = q_kernel(3, 2, 1, Q)
    row = Q_kernel.matrix.row(Q_kernel.row_space.index((1, 0, 1)))
    cols = Q_kernel.col_space
    assert {cols[j]: v for j, v in row.items()} == {(0, 0, 1): 2, (1, 0, 0): 4}
    with pytest.raises(DomainError):
        q_kernel(3, 1, 2, Q)


def test_intertwiners():
    assert check_q_intertwining(4, 2, 1, Q).passed
    assert check_p_intertwining(6, Q, 2).passed
    assert check_charge_reversal_involution(3).passed


def test_newdual_families():
    report = check_newdual(6, Q, 2, 1)
    assert report.passed, report.details["failed_parts"]


def test_central_closure_with_identity():
    L = asep(3, 1, Q)
    dual = asep(3, 1, Q, sector=(1,))
    D = DualityMatrix.from_function(d_sch, L.space, dual.space, q=Q)
    assert check_central_closure(L, D, dual, SparseMatrix.identity(len(dual.space))).passed


def test_open_asep_half_line():
    reports = {r.name: r for r in check_open_asep(6, Q)}
    for name in ("charge_reversal(1,1/2)", "charge_reversal(1/2,1)", "p_exit_intertwining", "case_two"):
        assert reports[name].passed, name
    for name in ("open_C", "open_D", "open_E", "open_F"):
        assert not reports[name].passed
        assert reports[name].ok


def test_open_asep_coupled_exit_variant():
    reports = {r.name: r for r in check_open_asep(6, Q, coupled=True)}
    assert reports["p_exit_intertwining"].passed
    assert all(reports[name].ok for name in ("open_C", "open_D", "open_E", "open_F"))


def test_half_line_boundary_rates_default_to_one():
    process = HalfLineAsepProcess(3, Q, 1, enter=True, exit=True)
    assert dict(process.transitions((0, 0, 0)))[(0, 0, 1)] == 1
    assert dict(process.transitions((0, 0, 1)))[(0, 0, 0)] == 1
    coupled = HalfLineAsepProcess(3, 1, Q, exit=True, exit_rate=Q)
    assert dict(coupled.transitions((0, 0, 1)))[(0, 0, 0)] == Q


def test_open_asep_needs_room():
    with pytest.raises(DomainError):
        check_open_asep(4, Q)


def test_open_sep_half_line_and_two_reservoirs():
    assert check_open_sep(2, (Q,), n_bulk=3).passed
    two_sided = check_open_sep(1, (Q, Fraction(1, 3)), n_bulk=3, links=[{0: Fraction(2)}, {2: Fraction(1, 3)}],
                               bulk_rate=Q)
    assert two_sided.passed


@pytest.mark.parametrize("m", [1, 2, 3])
def test_one_site_identity_cases(m):
    assert all(r.passed for r in need_cases(m, Fraction(1, 3)))


def test_multi_species_open_function_is_not_a_duality():
    report = check_open_sep_multi(2, (Q, Fraction(1, 3)))
    assert not report.passed
    assert report.expect_fail and report.ok
    assert check_open_sep_multi(2, (Q, Fraction(1, 3)), exchange=True).passed


def test_single_species_reservoir_function_matches_open_sep():
    bulk = enumerate_fused((1, 1, 1))
    duals = sink_space((1, 1, 1), 1, 2)
    for s in bulk:
        for t in duals:
            assert d_open_sep_multi(s, t, ((Q,),)) == d_open_sep(s, t, 1, (Q,))


def test_schutz_sum_over_empty_set():
    for m, k in ((3, 2), (4, 2)):
        assert schutz_sum((), k, m, Q) == Q ** (k * (k - 1) // 2) * q_binomial(m, k, Q)


@pytest.mark.parametrize("k", [1, 2])
def test_schutz_sum_independence(k):
    assert check_S_independence(2, k, Q).passed
    assert check_shift_step(2, k, Q).passed


def test_schutz_closed_form_at_full_overlap():
    assert schutz_sum((1,), 1, 2, Q) == schutz_closed_form(1, 1, 2, Q)


def test_schutz_sum_validates_positions():
    with pytest.raises(DomainError):
        schutz_sum((0, 1), 2, 3, Q)
    with pytest.raises(DomainError):
        schutz_sum((5,), 1, 3, Q)


def test_stationary_schutz_is_constant():
    assert check_stationary_schutz(3, 2, 1, Q).passed


def test_dynamic_asep_duality():
    report = check_dynamic_duality_BC(6, Q, Fraction(1, 2), 3)
    assert report.passed, report.witnesses


def test_dynamic_limits_of_the_duality():
    report = check_bc_limits(6, Q, 3)
    assert report.passed, report.details["failed_parts"]


def test_dynamic_ssep_duality_and_limit():
    assert check_dynamic_ssep_duality(6, Fraction(-7, 2), 3).passed
    report = check_ssep_limit(6, 3)
    assert report.passed, report.details["failed_parts"]


def test_ansatz_without_dual_points_is_the_measure():
    for X in ((3, 1), (2, 0), (4,)):
        assert ansatz_F(X, (), Q, Q) == ansatz_measure(X, Q, Q)
    assert ansatz_F((3, 1), (2,), Q, Q) == 0


def test_ansatz_rejects_unordered_points():
    with pytest.raises(DomainError):
        ansatz_F((1, 3), (), Q, Q)
