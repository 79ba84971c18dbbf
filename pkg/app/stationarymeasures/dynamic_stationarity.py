"""
Stationarity of the height measure for dynamic ASEP on a closed interval
"""

import logging

from app.qcomb.qnumbers import as_rational
from app.statespace.configurations import word_from_positions
from app.statespace.heights import enumerate_height_paths, path_of_word
from app.utils.errors import DomainError
from app.utils.reports import combine
from .height_measure import block_distribution
from .measures import Measure, check_detailed_balance, check_stationary

logger = logging.getLogger(__name__)


def conditioned_height_measure(q, alpha, m, s_start, s_end):
    """
    The height measure with right endpoint s_end, conditioned on
    s(0) = s_start. ``alpha=None`` is the alpha -> infinity limit.

    Returns:
        Measure on the paths between the two endpoints, in the order of
        enumerate_height_paths
    """
    if (s_start + m - s_end) % 2 or abs(s_end - s_start) > m:
        raise DomainError(f"No path of length {m} joins {s_start} to {s_end}")
    k = (s_start + m - s_end) // 2
    law = block_distribution(q, alpha, s_end, m, k)
    by_path = {path_of_word(word_from_positions(positions, m), s_start): p for positions, p in law.items()}
    space = enumerate_height_paths((1,) * m, s_start, s_end)
    return Measure(space, [by_path[s] for s in space], f"height(m={m}, {s_start}->{s_end})")


def check_dyn_stationarity(q, alpha, m, s_start=0, s_end=None):
    """
    pi L = 0 and detailed balance for dynamic ASEP on paths of length m
    between fixed endpoints, pi the conditioned height measure.

    Args:
        s_end: right endpoint; defaults to s_start (a half-filled interval
            when m is even)
    """
    from app.generators.dynamic import dynamic_asep

    q = as_rational(q)
    alpha = None if alpha is None else as_rational(alpha)
    if s_end is None:
        s_end = s_start + m % 2
    measure = conditioned_height_measure(q, alpha, m, s_start, s_end)
    generator = dynamic_asep(m, q, alpha, s_start, s_end)
    params = {"q": q, "alpha": "inf" if alpha is None else alpha, "m": m, "s_start": s_start, "s_end": s_end}
    parts = [check_stationary(measure, generator, "dyn_stationary", params=params),
             check_detailed_balance(measure, generator, "dyn_detailed_balance", params=params)]
    report = combine("dyn_stationarity", parts, anchor="stationary measures of dynamic ASEP",
                     regime="closed", params=params)
    logger.info(f"Dynamic stationarity m={m}, alpha={params['alpha']}: passed={report.passed}")
    return report


def check_all_up_absorbing(q, alpha, m):
    """The deterministic all-up path s(x) = x is stationary on free-end paths"""
    from app.generators.dynamic import dynamic_asep

    generator = dynamic_asep(m, q, alpha, 0)
    top = tuple(range(m + 1))
    weights = [1 if s == top else 0 for s in generator.space]
    measure = Measure(generator.space, weights, "all-up")
    return check_stationary(measure, generator, "dyn_all_up",
                            params={"q": as_rational(q), "alpha": as_rational(alpha), "m": m})
