"""
Permutations in one-line notation, Young subgroups and their
distinguished (double) coset representatives.

A permutation of {1..N} is a tuple ``sigma`` with ``sigma[i-1] = sigma(i)``.
Products compose right to left: ``compose(a, b)(i) = a(b(i))``.
"""

from itertools import permutations as _all_perms

from app.utils.errors import DomainError


def validate_permutation(sigma):
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise DomainError(f"Not a permutation of 1..{len(sigma)}: {sigma}")
    return sigma


def parse_permutation(text):
    """Parse compact one-line notation such as '21467358' (N <= 9)"""
    return validate_permutation(int(c) for c in text.strip())


def identity(n):
    return tuple(range(1, n + 1))


def compose(a, b):
    return tuple(a[b[i] - 1] for i in range(len(b)))


def inverse(sigma):
    inv = [0] * len(sigma)
    for i, v in enumerate(sigma, start=1):
        inv[v - 1] = i
    return tuple(inv)


def transposition(i, n):
    """The adjacent transposition s_i = (i i+1) in S(n)"""
    if not 1 <= i < n:
        raise DomainError(f"s_{i} is not a generator of S({n})")
    perm = list(range(1, n + 1))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def from_word(word, n):
    """Product s_{w_1} s_{w_2} ... of adjacent transpositions"""
    result = identity(n)
    for i in word:
        result = compose(result, transposition(i, n))
    return result


def inversions(sigma):
    """Number of pairs i < j with sigma(i) > sigma(j)"""
    sigma = validate_permutation(sigma)
    n = len(sigma)
    return sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])


def reduced_word(sigma):
    """
    A reduced word for sigma obtained by bubble sort.

    Returns a list ``w`` with ``from_word(w, N) == sigma``; its length is
    ``inversions(sigma)``.
    """
    work = list(validate_permutation(sigma))
    swaps = []
    n = len(work)
    for end in range(n - 1, 0, -1):
        for i in range(end):
            if work[i] > work[i + 1]:
                work[i], work[i + 1] = work[i + 1], work[i]
                swaps.append(i + 1)
    # sorting applied sigma * s_{i1} * s_{i2} ... = id, so sigma is the reversed product
    return list(reversed(swaps))


class YoungSubgroup:
    """S(N_1) x ... x S(N_r) acting on consecutive runs of {1..N}"""

    def __init__(self, blocks):
        blocks = tuple(int(b) for b in blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise DomainError(f"Young subgroup blocks must be positive, got {blocks}")
        self.blocks = blocks

    @property
    def N(self):
        return sum(self.blocks)

    def block_of(self):
        """List mapping each position 1..N (index i-1) to its block index"""
        labels = []
        for b, size in enumerate(self.blocks):
            labels.extend([b] * size)
        return labels

    def generators(self):
        """Indices i such that s_i lies in the subgroup"""
        labels = self.block_of()
        return [i for i in range(1, self.N) if labels[i - 1] == labels[i]]

    def elements(self):
        labels = self.block_of()
        for sigma in _all_perms(range(1, self.N + 1)):
            if all(labels[i] == labels[v - 1] for i, v in enumerate(sigma)):
                yield tuple(sigma)

    def __repr__(self):
        return "x".join(f"S({b})" for b in self.blocks)


def is_min_coset_rep(sigma, H):
    """True iff sigma has the fewest inversions in its coset sigma*H"""
    labels = H.block_of()
    return all(sigma[i] < sigma[i + 1] for i in range(len(sigma) - 1) if labels[i] == labels[i + 1])


def coset_reps(H, N=None):
    """The distinguished representatives D_H, by filtering S(N)"""
    N = H.N if N is None else N
    if N != H.N:
        raise DomainError(f"{H} is not a subgroup of S({N})")
    return [tuple(s) for s in _all_perms(range(1, N + 1)) if is_min_coset_rep(s, H)]


def double_coset_reps(H_left, H_right, N=None):
    """D_{H',H} = D_{H'}^{-1} intersected with D_H"""
    N = H_right.N if N is None else N
    if H_left.N != N or H_right.N != N:
        raise DomainError(f"{H_left} and {H_right} must both live in S({N})")
    return [s for s in coset_reps(H_right, N) if is_min_coset_rep(inverse(s), H_left)]


def coset_decomposition(sigma, H):
    """
    Split sigma = sigma0 * sigma_bar with sigma0 in D_H and sigma_bar in H.

    sigma0 sorts the values of sigma increasingly inside every block.
    """
    sigma = validate_permutation(sigma)
    sigma0 = list(sigma)
    start = 0
    for size in H.blocks:
        sigma0[start:start + size] = sorted(sigma[start:start + size])
        start += size
    sigma0 = tuple(sigma0)
    sigma_bar = compose(inverse(sigma0), sigma)
    return sigma0, sigma_bar


def coset_configuration(positions, sigma, species_blocks):
    """
    The multi-species configuration M(x, sigma).

    Args:
        positions: weakly decreasing sites x_1 >= ... >= x_N
        sigma: permutation of 1..N
        species_blocks: (N_1, ..., N_n); values N_{j-1}+1..N_j carry species j

    Returns:
        dict site -> tuple of species counts (k^(1), ..., k^(n))
    """
    positions = list(positions)
    if any(positions[i] < positions[i + 1] for i in range(len(positions) - 1)):
        raise DomainError(f"Positions must be weakly decreasing: {positions}")
    sigma = validate_permutation(sigma)
    species_of = YoungSubgroup(species_blocks).block_of()
    n = len(species_blocks)
    config = {}
    for idx, x in enumerate(positions):
        counts = list(config.get(x, (0,) * n))
        counts[species_of[sigma[idx] - 1]] += 1
        config[x] = tuple(counts)
    return config
