from fractions import Fraction

import pytest

from app.qcomb import (
    q_int, q_factorial, q_binomial, q_binomial0, q_multinomial, q_pochhammer,
    q_pochhammer_std, as_rational, Q_POINTS, ALPHA_POINTS,
    YoungSubgroup, inversions, reduced_word, coset_reps, double_coset_reps,
    coset_decomposition, coset_configuration, parse_permutation, from_word,
    check_pascal, check_qbin, check_qbin2, check_qbin3, check_qaBin, check_prev_lemmas,
)
from app.qcomb.permutations import compose, identity
from app.utils.errors import DomainError, SingularityError

HALF = Fraction(1, 2)


def test_q_int_and_factorial():
    assert q_int(0, HALF) == 0
    assert q_int(3, HALF) == Fraction(7, 4)
    assert q_factorial(3, HALF) == 1 * Fraction(3, 2) * Fraction(7, 4)
    # q=1 gives the ordinary integers
    assert q_int(5, Fraction(1)) == 5
    assert q_factorial(4, Fraction(1)) == 24


def test_q_binomial_small_values():
    for n in range(6):
        assert q_binomial(n, 0, HALF) == 1
        assert q_binomial(n, n, HALF) == 1
    assert q_binomial(2, 1, HALF) == 1 + HALF


def test_q_binomial_matches_subset_sum():
    brute = sum(2 ** (a + b) for a in range(4) for b in range(a))
    assert q_binomial(4, 2, 2) * 2 == brute
    assert q_binomial(4, 2, 2) == 35


def test_q_binomial_domain():
    with pytest.raises(DomainError):
        q_binomial(2, 3, HALF)
    with pytest.raises(DomainError):
        q_binomial(2, -1, HALF)
    assert q_binomial0(2, 3, HALF) == 0


def test_q_multinomial():
    q = Fraction(2, 3)
    assert q_multinomial(4, (2, 1), q) == q_binomial(4, 2, q) * q_binomial(2, 1, q)
    with pytest.raises(DomainError):
        q_multinomial(3, (2, 2), q)


def test_q_pochhammer():
    a = Fraction(1, 3)
    assert q_pochhammer(a, HALF, 0) == 1
    assert q_pochhammer(HALF, HALF, 2) == Fraction(3, 8)
    assert q_pochhammer(a, HALF, -1) == 1 / (1 - a * HALF)
    assert q_pochhammer_std(a, HALF, -1) == 1 / (1 - a / HALF)
    with pytest.raises(SingularityError):
        q_pochhammer(Fraction(2), HALF, -1)


def test_as_rational():
    assert as_rational("1/2") == HALF
    assert as_rational(" -5/7 ") == Fraction(-5, 7)
    assert as_rational(3) == 3
    with pytest.raises(DomainError):
        as_rational("half")


def test_inversions_of_known_permutations():
    assert inversions(identity(5)) == 0
    assert inversions(parse_permutation("21467358")) == 6
    assert inversions(parse_permutation("21476358")) == 7


def test_word_factorization():
    sigma = parse_permutation("21467358")
    # one-line products act right to left
    assert from_word([5, 6, 1, 3, 4, 5], 8) == sigma
    assert compose(from_word([6], 8), sigma) == parse_permutation("21476358")


@pytest.mark.parametrize("text", ["1", "21", "312", "4132", "35142", "21467358"])
def test_reduced_word_length_is_inversions(text):
    sigma = parse_permutation(text)
    word = reduced_word(sigma)
    assert len(word) == inversions(sigma)
    assert from_word(word, len(sigma)) == sigma


def test_invalid_permutation():
    with pytest.raises(DomainError):
        parse_permutation("1223")


def test_full_young_subgroup_has_trivial_cosets():
    assert coset_reps(YoungSubgroup([4])) == [identity(4)]
    assert len(coset_reps(YoungSubgroup([1, 1, 1]))) == 6


def test_double_coset_representative():
    H = YoungSubgroup([1, 2, 2, 3])
    H_left = YoungSubgroup([1, 2, 2, 2, 1])
    reps = double_coset_reps(H_left, H)
    assert parse_permutation("21467358") in reps
    assert parse_permutation("21476358") not in reps


def test_coset_decomposition_is_additive():
    H = YoungSubgroup([2, 3])
    for sigma in [parse_permutation("52143"), parse_permutation("34512"), identity(5)]:
        sigma0, sigma_bar = coset_decomposition(sigma, H)
        assert compose(sigma0, sigma_bar) == sigma
        assert inversions(sigma) == inversions(sigma0) + inversions(sigma_bar)
        assert sigma0 in coset_reps(H)


def test_coset_configuration():
    config = coset_configuration([3, 3, 1], (3, 1, 2), (1, 2))
    assert config == {3: (1, 1), 1: (0, 1)}
    with pytest.raises(DomainError):
        coset_configuration([1, 3], (1, 2), (2,))


@pytest.mark.parametrize("q", Q_POINTS)
def test_pascal_rules(q):
    for m in range(1, 8):
        for k in range(1, m + 1):
            assert check_pascal(m, k, q).passed


@pytest.mark.parametrize("q", Q_POINTS)
def test_qbin_subset_form(q):
    for m in range(0, 8):
        for k in range(0, m + 1):
            report = check_qbin(m, k, q)
            assert report.passed, report.details


@pytest.mark.parametrize("blocks", [(1, 1), (2, 1), (1, 2, 1), (2, 2), (3, 2, 1)])
def test_qbin2_coset_sum(blocks):
    assert check_qbin2(blocks, Fraction(2, 3)).passed


@pytest.mark.parametrize("L,species", [(3, (1,)), (4, (1, 1)), (5, (2, 1)), (4, (0, 2)), (6, (1, 1, 1)), (3, (0, 0))])
def test_qbin3_triple_product(L, species):
    assert check_qbin3(L, species, Fraction(3, 5)).passed


def test_qbin3_overfull_lattice():
    with pytest.raises(DomainError):
        check_qbin3(2, (2, 1), HALF)


@pytest.mark.parametrize("q", Q_POINTS)
@pytest.mark.parametrize("alpha", ALPHA_POINTS)
def test_qabin_theorem(q, alpha):
    for m in range(1, 7):
        for k in range(1, m + 1):
            report = check_qaBin(m, k, q, alpha)
            assert report.passed, (m, k, report.details)


def test_qabin_single_term():
    q, alpha = HALF, Fraction(1, 3)
    report = check_qaBin(1, 1, q, alpha)
    assert report.passed
    assert report.details["residual"] == "0"


def test_qabin_domain():
    with pytest.raises(DomainError):
        check_qaBin(2, 3, HALF, Fraction(1, 3))
    with pytest.raises(SingularityError):
        check_qaBin(1, 1, HALF, Fraction(-1))


@pytest.mark.parametrize("q", Q_POINTS)
@pytest.mark.parametrize("alpha", ALPHA_POINTS)
def test_prev_lemmas(q, alpha):
    for m in range(1, 6):
        for k in range(1, m + 1):
            report = check_prev_lemmas(m, k, m, q, alpha)
            assert report.passed, (m, k, report.details)
    assert check_prev_lemmas(1, 1, 0, q, alpha).passed
