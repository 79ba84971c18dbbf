"""
SVG line plots of simulated profiles against their limits
"""

import logging

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .reference import density_profile

logger = logging.getLogger(__name__)

plt.rcParams["font.size"] = 9
plt.rcParams["axes.linewidth"] = 0.5


def plot_density_profile(path, result):
    """
    Simulated SSEP(m/2) density over chi = x / sqrt(L) with the erfc limit
    and the exact finite-lattice curve.
    """
    spec = result.spec
    L = spec.L
    alpha = spec.params["alpha"]
    tau_eff = result.details["tau_eff"]
    sites = np.arange(1, len(result.profile) + 1)
    chi = sites / np.sqrt(L)

    fig, ax = plt.subplots(figsize=(5, 3))
    ax.plot(chi, result.profile, ".", markersize=3, label="simulated")
    ax.plot(chi, result.details["exact"], "-", linewidth=0.8, label="finite lattice")
    ax.plot(chi, [density_profile(alpha, c, tau_eff) for c in chi], "--", linewidth=0.8, label="limit")
    ax.set_xlabel("chi")
    ax.set_ylabel("density")
    ax.set_xlim(0, chi[-1])
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    ax.legend(frameon=False)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    logger.info(f"Wrote plot {path}")
    return path
