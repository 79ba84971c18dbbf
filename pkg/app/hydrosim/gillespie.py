"""
Event-driven exact simulation of continuous-time Markov chains.

Lattice processes expose a vector of channel rates and a ``fire`` method;
finite generators from app.generators can be sampled directly. Every trial
of an ensemble owns a generator spawned from one SeedSequence, so results
do not depend on the worker count.
"""

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

import config
from app.utils.errors import DomainError, ParameterError

logger = logging.getLogger(__name__)

MAX_TOTAL_RATE = 1e12


class LatticeProcess(ABC):
    """
    Abstract base class for the simulated lattice processes.
    A state is a numpy integer array that ``fire`` updates in place.
    """

    @abstractmethod
    def initial_state(self):
        pass

    @abstractmethod
    def propensities(self, state):
        """
        Rates of all event channels in ``state``

        Returns:
            1-d float array, zero for disabled channels
        """
        pass

    @abstractmethod
    def fire(self, state, channel):
        """
        Apply one event

        Returns:
            int: change of the particle count (nonzero only at boundaries)
        """
        pass

    @property
    def name(self) -> str:
        return self.__class__.__name__


@dataclass
class Run:
    """Final state of one trajectory with its event audit"""
    state: np.ndarray
    time: float
    events: int
    inflow: int = 0


@dataclass
class EnsembleStats:
    mean: np.ndarray
    stderr: np.ndarray
    trials: int
    samples: np.ndarray = None


def _total_rate(rates, name):
    total = float(np.sum(rates))
    if not np.isfinite(total) or total > MAX_TOTAL_RATE:
        raise ParameterError(f"{name}: total rate {total} overflows")
    if total < 0 or (len(rates) and np.min(rates) < 0):
        raise ParameterError(f"{name}: negative rate")
    return total


def _waiting_time(rng, total):
    # inverse CDF of Exp(total)
    return -np.log1p(-rng.random()) / total


def _pick(rng, rates, total):
    channel = int(np.searchsorted(np.cumsum(rates), rng.random() * total, side="right"))
    return min(channel, len(rates) - 1)


def gillespie(process, horizon, rng, state=None, max_events=None):
    """
    Run ``process`` up to time ``horizon``.

    Args:
        process: a LatticeProcess
        horizon: final time
        rng: numpy Generator
        state: optional start state, copied; defaults to process.initial_state()
        max_events: optional cap on the number of events

    Returns:
        Run

    Raises:
        ParameterError: on a negative or overflowing total rate
    """
    state = process.initial_state() if state is None else np.array(state, copy=True)
    t = 0.0
    events = 0
    inflow = 0
    while True:
        rates = process.propensities(state)
        total = _total_rate(rates, process.name)
        if total == 0:
            break
        t += _waiting_time(rng, total)
        if t > horizon:
            break
        inflow += process.fire(state, _pick(rng, rates, total))
        events += 1
        if max_events is not None and events >= max_events:
            logger.warning(f"{process.name}: stopped after {events} events at t={t:.4g}")
            break
    return Run(state=state, time=min(t, horizon), events=events, inflow=inflow)


def simulate_generator(generator, state, horizon, rng):
    """
    Sample the chain of an exact Generator from ``state`` up to ``horizon``.

    Returns:
        the state at time ``horizon``
    """
    t = 0.0
    while True:
        jumps = generator.jumps(state)
        if not jumps:
            return state
        rates = np.array([float(rate) for _, rate in jumps])
        total = _total_rate(rates, generator.name)
        if total == 0:
            return state
        t += _waiting_time(rng, total)
        if t > horizon:
            return state
        state = jumps[_pick(rng, rates, total)][0]


def trial_generators(seed, trials):
    """One independent numpy Generator per trial index"""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(trials)]


def run_ensemble(trial, trials, seed, workers=None, keep_samples=False):
    """
    Run ``trial(rng)`` for every trial index and average the returned
    observable arrays.

    Args:
        trial: callable taking a numpy Generator and returning an array
        trials: number of trials
        seed: root seed
        workers: thread count, defaults to config.get_thread_count()

    Returns:
        EnsembleStats; samples are kept in trial order when requested
    """
    if trials < 1:
        raise DomainError(f"Need at least one trial, got {trials}")
    workers = workers or config.get_thread_count()
    rngs = trial_generators(seed, trials)
    logger.info(f"Running {trials} trials on {workers} worker(s), seed={seed}")
    if workers == 1:
        results = [trial(rng) for rng in rngs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(trial, rngs))
    samples = np.array([np.asarray(r, dtype=float) for r in results])
    mean = samples.mean(axis=0)
    if trials > 1:
        stderr = samples.std(axis=0, ddof=1) / np.sqrt(trials)
    else:
        stderr = np.full_like(mean, np.nan)
    return EnsembleStats(mean=mean, stderr=stderr, trials=trials, samples=samples if keep_samples else None)
