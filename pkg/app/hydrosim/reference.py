"""
Limit profiles of the open processes and checks of the equations they solve.

The SSEP(m/2) profile is alpha erfc(chi / sqrt(2 tau)) with integrated
density N(chi, tau). The open ASEP Hopf-Cole limit h(zeta, tau) is the
integral over |zeta| of the probability that W_t = sigma B_t + c t reaches
the level before tau, with sigma^2 = 3q - q^2 and c = 1 - q.
"""

import logging

import numpy as np
from scipy import integrate, special, stats

from app.utils.errors import DomainError

logger = logging.getLogger(__name__)

QUAD_TOL = 1e-13


def density_profile(alpha, chi, tau):
    """alpha erfc(chi / sqrt(2 tau)); at tau = 0 the empty start"""
    if tau <= 0:
        return alpha if chi <= 0 else 0.0
    return alpha * special.erfc(chi / np.sqrt(2 * tau))


def integrated_density(alpha, chi, tau):
    """N(chi, tau) = alpha sqrt(2 tau / pi) exp(-chi^2 / 2 tau) - alpha chi erfc(chi / sqrt(2 tau))"""
    if tau <= 0:
        return 0.0
    return (alpha * np.sqrt(2 * tau) / np.sqrt(np.pi) * np.exp(-chi ** 2 / (2 * tau))
            - alpha * chi * special.erfc(chi / np.sqrt(2 * tau)))


def drift_and_variance(q):
    if not 0 < q <= 1:
        raise DomainError(f"Need 0 < q <= 1, got {q}")
    return 1 - q, 3 * q - q ** 2


def first_passage_density(t, xi, q):
    c, sigma2 = drift_and_variance(q)
    if t <= 0:
        return 0.0
    sigma = np.sqrt(sigma2)
    return xi / (sigma * np.sqrt(2 * np.pi * t ** 3)) * np.exp(-(xi - c * t) ** 2 / (2 * sigma2 * t))


def passage_probability(xi, tau, q):
    """
    P(sup_{[0, tau]} W >= xi) in closed form:
    Phi((c tau - xi) / sigma sqrt(tau)) + exp(2 c xi / sigma^2) Phi((-xi - c tau) / sigma sqrt(tau))
    """
    c, sigma2 = drift_and_variance(q)
    if xi <= 0:
        return 1.0
    if tau <= 0:
        return 0.0
    spread = np.sqrt(sigma2 * tau)
    return (stats.norm.cdf((c * tau - xi) / spread)
            + np.exp(2 * c * xi / sigma2 + stats.norm.logcdf((-xi - c * tau) / spread)))


def passage_quadrature(xi, tau, q):
    """The same probability as the time integral of the first-passage density"""
    if tau <= 0:
        return 0.0
    value, _ = integrate.quad(first_passage_density, 0, tau, args=(xi, q), epsabs=QUAD_TOL, epsrel=1e-10)
    return value


def passage_complement(xi, tau, q):
    """1 - int_tau^inf of the first-passage density; exact as xi -> 0"""
    tail, _ = integrate.quad(first_passage_density, tau, np.inf, args=(xi, q), epsabs=QUAD_TOL)
    return 1 - tail


def hopf_cole_reference(zeta, tau, q):
    """
    h(zeta, tau) by adaptive quadrature of the double integral. The inner
    time integral is taken through its complementary tail, which stays
    smooth as the level goes to zero.
    """
    if tau <= 0 or zeta == 0 or q == 1:
        return 0.0
    value, error = integrate.quad(passage_complement, 0, abs(zeta), args=(tau, q), epsabs=1e-11, epsrel=1e-9)
    logger.debug(f"h({zeta}, {tau}) at q={q}: {value} +- {error}")
    return (1 - q) * value


def hopf_cole_ballistic(zeta, tau, q):
    """(1 - q) min(|zeta|, c tau): the law-of-large-numbers value of the same sum"""
    c, _ = drift_and_variance(q)
    return (1 - q) * min(abs(zeta), c * max(tau, 0))


def _tail_cutoff(tau, q):
    c, sigma2 = drift_and_variance(q)
    return c * tau + 14 * np.sqrt(sigma2 * tau) + 1


def hopf_cole_tail(x, tau, q):
    """(1 - q) int_x^inf P(sup W >= xi) d xi, the complementary-tail form of h"""
    if tau <= 0:
        return 0.0
    upper = _tail_cutoff(tau, q)
    if x >= upper:
        return 0.0
    value, _ = integrate.quad(passage_probability, max(x, 0.0), upper, args=(tau, q),
                              epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
    return (1 - q) * value


def _residual(f, x, tau, step, diffusion, drift):
    f_t = (f(x, tau + step) - f(x, tau - step)) / (2 * step)
    f_x = (f(x + step, tau) - f(x - step, tau)) / (2 * step)
    f_xx = (f(x + step, tau) - 2 * f(x, tau) + f(x - step, tau)) / step ** 2
    return f_t - diffusion * f_xx + drift * f_x


def pde_residual(curve, xs, taus, step=1e-3, alpha=0.5, q=0.5):
    """
    Largest centered finite-difference residual over the grid.

    Args:
        curve: "integrated_density" for N_t = N_xx / 2, or "hopf_cole_tail"
            for g_t = (sigma^2 / 2) g_xx - c g_x
        xs, taus: grid away from tau = 0

    Returns:
        float
    """
    if curve == "integrated_density":
        f = lambda x, tau: integrated_density(alpha, x, tau)
        diffusion, drift = 0.5, 0.0
    elif curve == "hopf_cole_tail":
        c, sigma2 = drift_and_variance(q)
        f = lambda x, tau: hopf_cole_tail(x, tau, q)
        diffusion, drift = sigma2 / 2, c
    else:
        raise DomainError(f"Unknown curve {curve!r}")
    residual = max(abs(_residual(f, x, tau, step, diffusion, drift)) for x in xs for tau in taus)
    logger.info(f"{curve} residual on {len(xs)}x{len(taus)} grid: {residual:.3g}")
    return residual


def density_slope(alpha, tau, step=1e-3):
    """d/dchi N at chi = 0"""
    return (integrated_density(alpha, step, tau) - integrated_density(alpha, -step, tau)) / (2 * step)


def passage_limit(tau, q, xi=1e-6):
    """The first-passage probability at vanishing level, through the complementary tail"""
    return passage_complement(xi, tau, q)


def hopf_cole_slope(tau, q, step=1e-4):
    """d/dzeta h at zeta = 0 from the left, on the double integral"""
    return (hopf_cole_reference(-step, tau, q) - hopf_cole_reference(-2 * step, tau, q)) / step
