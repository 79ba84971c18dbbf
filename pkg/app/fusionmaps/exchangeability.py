"""
q-exchangeability of measures on words and on fused configurations, and
its preservation by a generator
"""

import logging
from fractions import Fraction

from app.qcomb.qnumbers import as_rational, q_multinomial
from app.statespace.enumeration import FUSED
from app.utils.errors import DomainError
from app.utils.reports import CheckReport, Witness, combine
from app.utils.sparse import fstr

logger = logging.getLogger(__name__)


def species_coinversions(word):
    """Pairs y < x of particles with word[y] < word[x]; holes are ignored"""
    return sum(1 for x in range(len(word)) for y in range(x) if 0 < word[y] < word[x])


def cross_coinversions(config):
    """Pairs of particles at sites z < w with the lighter one at z"""
    total = 0
    for z in range(len(config)):
        for w in range(z + 1, len(config)):
            total += sum(config[z][a] * config[w][b]
                         for a in range(len(config[z])) for b in range(a + 1, len(config[w])))
    return total


def _class_and_factor(state, kind, q):
    """
    The pseudo-factorization class of a state and the factor its weight
    is divided by before comparison within the class
    """
    if kind == FUSED:
        totals = tuple(sum(site) for site in state)
        factor = q ** cross_coinversions(state)
        for site in state:
            factor *= q_multinomial(sum(site), site[:-1], q)
        species = tuple(sum(site[j] for site in state) for j in range(len(state[0])))
        return (totals, species), factor
    occupied = tuple(x for x, c in enumerate(state) if c)
    species = tuple(sorted(c for c in state if c))
    return (occupied, species), q ** species_coinversions(state)


def _ratio_report(name, space, values, q, params):
    reference = {}
    witnesses = []
    failed = 0
    for state, value in zip(space, values):
        key, factor = _class_and_factor(state, space.kind, q)
        reduced = value / factor
        if key not in reference:
            reference[key] = (state, reduced)
        elif reference[key][1] != reduced:
            failed += 1
            if len(witnesses) < 5:
                witnesses.append(Witness(str(state), str(reference[key][0]), fstr(reduced),
                                         fstr(reference[key][1])))
    return CheckReport(name=name, passed=failed == 0, anchor="q-exchangeability", params=params,
                       witnesses=witnesses, details={"classes": len(reference), "entries_failed": failed})


def check_q_exchangeability(measure, q, name="q_exchangeable"):
    """
    Ratio test for q-exchangeability.

    On words, mu(w) q^{-inv(w)} may depend only on the occupied sites,
    with inv counting lighter-before-heavier particle pairs. On fused
    configurations, mu(k) divided by q^{cross pairs} and the per-site
    multinomials of the particles may depend only on the site totals.

    Returns:
        CheckReport; a witness pairs a state with the first state of its
        class and shows both reduced weights
    """
    q = as_rational(q)
    return _ratio_report(name, measure.space, measure.probabilities, q, {"q": q, "measure": measure.name})


def check_preservation(generator, measure, q, step=None):
    """
    The generator preserves q-exchangeability at ``measure``: the
    derivative mu L satisfies the same ratio condition, and so does one
    explicit Euler step mu + h mu L.

    Args:
        step: Euler step size; defaults to half the inverse of the
            largest exit rate, which keeps the step a probability measure
    """
    if measure.space.states != generator.space.states:
        raise DomainError("Measure and generator live on different state spaces")
    q = as_rational(q)
    params = {"q": q, "generator": generator.name}
    derivative = generator.matrix.vec_mat(measure.probabilities)
    if step is None:
        largest = max((-v for i, j, v in generator.matrix.entries() if i == j), default=0)
        step = Fraction(1, 2) / largest if largest else Fraction(1)
    stepped = [p + step * d for p, d in zip(measure.probabilities, derivative)]
    parts = [
        check_q_exchangeability(measure, q, "initial_exchangeable"),
        _ratio_report("derivative_exchangeable", measure.space, derivative, q, params),
        _ratio_report("euler_step_exchangeable", measure.space, stepped, q, params),
    ]
    report = combine("q_preservation", parts, anchor="q-exchangeability", params=params)
    logger.debug(f"Preservation under {generator.name}: passed={report.passed}")
    return report


def exchangeable_weights(space, q, position_weight):
    """
    Weights position_weight(x) q^{inv(w)} on a space of words, x the
    occupied sites of w
    """
    q = as_rational(q)
    if space.kind == FUSED:
        raise DomainError("exchangeable_weights builds measures on words")
    return [position_weight(tuple(x for x, c in enumerate(w) if c)) * q ** species_coinversions(w)
            for w in space]
