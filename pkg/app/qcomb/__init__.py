"""
Exact q-combinatorics: q-numbers, permutations and cosets, and the
q-identities behind the fusion construction.
"""

from .qnumbers import (
    as_rational, q_int, q_factorial, q_binomial, q_binomial0, q_multinomial,
    q_pochhammer, q_pochhammer_std, Q_POINTS, ALPHA_POINTS,
)
from .permutations import (
    YoungSubgroup, inversions, reduced_word, coset_reps, double_coset_reps,
    coset_decomposition, coset_configuration, parse_permutation, from_word,
)
from .identities import (
    check_pascal, check_qbin, check_qbin2, check_qbin3, check_qaBin, check_prev_lemmas,
)
