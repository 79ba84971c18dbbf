"""
Height functions and their particle configurations.

The step from s(x) to s(x+1) is site x. With capacity m(x) the step lies in
{-m(x), -m(x)+2, ..., m(x)} and k_s(x) = (s(x) + m(x) - s(x+1)) / 2 particles
sit at x. For unit capacities a down-step is a particle.
"""

from itertools import product

from app.utils.errors import DomainError
from .enumeration import StateSpace


def validate_height_path(s, m):
    s = tuple(s)
    m = tuple(m)
    if len(s) != len(m) + 1:
        raise DomainError(f"A path over {len(m)} sites needs {len(m) + 1} heights, got {len(s)}")
    for x, cap in enumerate(m):
        step = s[x + 1] - s[x]
        if abs(step) > cap or (step - cap) % 2:
            raise DomainError(f"Step {step} at site {x} is not admissible for capacity {cap}")
    return s


def height_config_bridge(s, m):
    """Per-site particle counts k_s(x) of a height path"""
    s = validate_height_path(s, m)
    return tuple((s[x] + m[x] - s[x + 1]) // 2 for x in range(len(m)))


def config_to_heights(k, m, s0):
    """Rebuild the path with s(0) = s0 from per-site counts"""
    if len(k) != len(m):
        raise DomainError("Counts and capacities differ in length")
    s = [s0]
    for x, (kx, cap) in enumerate(zip(k, m)):
        if not 0 <= kx <= cap:
            raise DomainError(f"Count {kx} at site {x} exceeds capacity {cap}")
        s.append(s[-1] + cap - 2 * kx)
    return tuple(s)


def down_steps(s):
    """X_s: sites x with s(x+1) = s(x) - 1, as an increasing tuple"""
    return tuple(x for x in range(len(s) - 1) if s[x + 1] == s[x] - 1)


def word_of_path(s):
    """Occupation word of a unit-step path"""
    return tuple(1 if s[x + 1] < s[x] else 0 for x in range(len(s) - 1))


def path_of_word(word, s0):
    return config_to_heights(word, (1,) * len(word), s0)


def enumerate_height_paths(m, s_start, s_end=None):
    """
    All paths over capacities ``m`` starting at ``s_start`` (and ending at
    ``s_end`` if given), in lexicographic order of the height vector.
    """
    m = tuple(m)
    paths = []
    for k in product(*[range(cap + 1) for cap in m]):
        s = config_to_heights(k, m, s_start)
        if s_end is None or s[-1] == s_end:
            paths.append(s)
    paths.sort()
    return StateSpace("height", m, 1, paths)
