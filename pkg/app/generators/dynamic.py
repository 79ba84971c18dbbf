"""
Dynamic processes on height paths with fixed endpoints.

A state is a height vector s(0), ..., s(L). Only interior points move: an
up-move s(x) -> s(x) + 2 carries a particle from site x-1 to site x, a
down-move s(x) -> s(x) - 2 carries it back.
"""

import logging
from fractions import Fraction

from app.qcomb.qnumbers import as_rational
from app.statespace.heights import enumerate_height_paths, height_config_bridge
from app.stationarymeasures.height_measure import block_conditional
from app.utils.errors import DomainError, SingularityError
from .base_generator import BaseProcess

logger = logging.getLogger(__name__)


def _ratio(numerator, denominator, what):
    if denominator == 0:
        raise SingularityError(f"Vanishing denominator in the {what} rate")
    return numerator / denominator


def unit_up_rate(q, alpha, s):
    """Rate of s -> s + 2 at a local minimum of height s; alpha=None is the infinite limit"""
    if alpha is None:
        return q
    return _ratio(1 + alpha * q ** (-s), 1 + alpha * q ** (-s - 1), "up-move")


def unit_down_rate(q, alpha, s):
    """Rate of s -> s - 2 at a local maximum of height s; alpha=None is the infinite limit"""
    if alpha is None:
        return Fraction(1)
    return _ratio(q * (1 + alpha * q ** (-s)), 1 + alpha * q ** (-s + 1), "down-move")


def _shift(s, x, delta):
    return s[:x] + (s[x] + delta,) + s[x + 1:]


class DynamicAsepProcess(BaseProcess):
    """Dynamic ASEP with unit capacities"""

    def __init__(self, L, q, alpha):
        self.L = L
        self.q = as_rational(q)
        self.alpha = None if alpha is None else as_rational(alpha)

    def params(self):
        return {"L": self.L, "q": self.q, "alpha": "inf" if self.alpha is None else self.alpha}

    def transitions(self, state):
        for x in range(1, self.L):
            if state[x - 1] != state[x + 1]:
                continue
            if state[x] > state[x - 1]:
                yield _shift(state, x, -2), unit_down_rate(self.q, self.alpha, state[x])
            else:
                yield _shift(state, x, 2), unit_up_rate(self.q, self.alpha, state[x])


def dynamic_asep(L, q, alpha, s_start=0, s_end=None):
    """
    Dynamic ASEP on the paths of length L between fixed endpoints.

    Args:
        alpha: dynamic parameter; None builds the alpha -> infinity limit
    """
    space = enumerate_height_paths((1,) * L, s_start, s_end)
    return DynamicAsepProcess(L, q, alpha).build(space)


def dynamic_asep_infinite(L, q, s_start=0, s_end=None):
    return dynamic_asep(L, q, None, s_start, s_end)


class DynamicAsepQmProcess(BaseProcess):
    """
    Dynamic ASEP(q, m). The move across the boundary point x has the unit
    rate at height s(x) times the conditional probabilities, under the
    height measure of each adjacent block, that the two positions touching
    x hold the right particle and hole.
    """

    def __init__(self, m, q, alpha):
        self.m = tuple(m)
        self.q = as_rational(q)
        self.alpha = None if alpha is None else as_rational(alpha)

    def params(self):
        return {"m": self.m, "q": self.q, "alpha": "inf" if self.alpha is None else self.alpha}

    def transitions(self, state):
        counts = height_config_bridge(state, self.m)
        q, alpha = self.q, self.alpha
        for x in range(1, len(self.m)):
            left_block = (q, alpha, state[x], self.m[x - 1], counts[x - 1])
            right_block = (q, alpha, state[x + 1], self.m[x], counts[x])
            if counts[x - 1] > 0 and counts[x] < self.m[x]:
                rate = unit_up_rate(q, alpha, state[x]) \
                    * block_conditional(*left_block, "last_occupied") \
                    * block_conditional(*right_block, "first_empty")
                yield _shift(state, x, 2), rate
            if counts[x - 1] < self.m[x - 1] and counts[x] > 0:
                rate = unit_down_rate(q, alpha, state[x]) \
                    * block_conditional(*left_block, "last_empty") \
                    * block_conditional(*right_block, "first_occupied")
                yield _shift(state, x, -2), rate


def dynamic_asep_qm(m, q, alpha, s_start=0, s_end=None):
    space = enumerate_height_paths(m, s_start, s_end)
    return DynamicAsepQmProcess(m, q, alpha).build(space)


def dynamic_asep_qm_infinite(m, q, s_start=0, s_end=None):
    return dynamic_asep_qm(m, q, None, s_start, s_end)


def qboson_limit_down_rate(q, alpha, s):
    """Down-move rate of dynamic ASEP(q, m) as the capacities grow"""
    base = alpha * q ** (-s)
    return unit_down_rate(q, alpha, s) * _ratio(base, base + 1 / q, "q-Boson limit")


class DynamicQBosonProcess(BaseProcess):
    """
    The large-capacity limit of dynamic ASEP(q, m): down-moves at
    ``qboson_limit_down_rate``, no up-moves. Paths leaving the bounded
    capacities are dropped.
    """

    truncate = True

    def __init__(self, m, q, alpha):
        self.m = tuple(m)
        self.q = as_rational(q)
        self.alpha = as_rational(alpha)

    def params(self):
        return {"m": self.m, "q": self.q, "alpha": self.alpha}

    def transitions(self, state):
        counts = height_config_bridge(state, self.m)
        for x in range(1, len(self.m)):
            if counts[x] > 0:
                yield _shift(state, x, -2), qboson_limit_down_rate(self.q, self.alpha, state[x])


def dynamic_qboson(m, q, alpha, s_start=0, s_end=None):
    space = enumerate_height_paths(m, s_start, s_end)
    return DynamicQBosonProcess(m, q, alpha).build(space)


class DynamicSsepProcess(BaseProcess):
    """Dynamic SSEP: both moves at rate (s(x) - lambda) / (s(x +- 1) - lambda)"""

    def __init__(self, L, lam):
        self.L = L
        self.lam = as_rational(lam)

    def params(self):
        return {"L": self.L, "lambda": self.lam}

    def transitions(self, state):
        for x in range(1, self.L):
            if state[x - 1] != state[x + 1]:
                continue
            rate = _ratio(state[x] - self.lam, state[x - 1] - self.lam, "dynamic SSEP")
            delta = -2 if state[x] > state[x - 1] else 2
            yield _shift(state, x, delta), rate


def dynamic_ssep(L, lam, s_start=0, s_end=None):
    space = enumerate_height_paths((1,) * L, s_start, s_end)
    return DynamicSsepProcess(L, lam).build(space)


def ssep_qm_dynamic_rates(k_left, k_right, m_left, m_right, s, lam, form="shifted"):
    """
    Up and down rates across the boundary point of height s in dynamic
    SSEP(m).

    ``form`` "shifted" is the symmetric limit in the shifted height
    s - lambda; "negative_alpha" is the limit taken along alpha = -q^lambda
    and carries one extra factor per move.

    Returns:
        (up rate, down rate)
    """
    if form not in ("shifted", "negative_alpha"):
        raise DomainError(f"Unknown dynamic SSEP(m) form {form!r}")
    what = "dynamic SSEP(m)"
    up = Fraction(k_left, m_left) * Fraction(m_right - k_right, m_right)
    if up:
        up *= _ratio(s - lam, s + 1 - lam, what) * _ratio(s - lam - 1 - m_left + k_left, s - lam - 1, what)
        if form == "negative_alpha":
            up *= _ratio(-m_right + 2 * k_right - lam - 1, -m_right + 3 * k_right - lam - 1, what)
    down = Fraction(m_left - k_left, m_left) * Fraction(k_right, m_right)
    if down:
        down *= _ratio(s - lam, s - 1 - lam, what) * _ratio(s - lam - 1 + k_left, s - lam - 1, what)
        if form == "negative_alpha":
            down *= _ratio(2 * k_right - lam - 1, 3 * k_right - m_right - lam - 1, what)
    return up, down


class DynamicSsepQmProcess(BaseProcess):
    def __init__(self, m, lam, form="shifted"):
        self.m = tuple(m)
        self.lam = as_rational(lam)
        self.form = form

    def params(self):
        return {"m": self.m, "lambda": self.lam, "form": self.form}

    def transitions(self, state):
        counts = height_config_bridge(state, self.m)
        for x in range(1, len(self.m)):
            up, down = ssep_qm_dynamic_rates(counts[x - 1], counts[x], self.m[x - 1], self.m[x],
                                             state[x], self.lam, self.form)
            if up:
                yield _shift(state, x, 2), up
            if down:
                yield _shift(state, x, -2), down


def dynamic_ssep_qm(m, lam, form="shifted", s_start=0, s_end=None):
    space = enumerate_height_paths(m, s_start, s_end)
    return DynamicSsepQmProcess(m, lam, form).build(space)
