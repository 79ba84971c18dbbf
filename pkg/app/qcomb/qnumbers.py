"""
Exact q-deformed integers, factorials, binomials, multinomials and
q-Pochhammer symbols.

The convention is (n)_q = 1 + q + ... + q^{n-1}, not the symmetric [n]_q.
"""

from fractions import Fraction
from functools import lru_cache

from app.utils.errors import DomainError, SingularityError

# Seeded parameter points shared by the identity suites
Q_POINTS = (Fraction(1, 2), Fraction(2, 3), Fraction(3, 5))
ALPHA_POINTS = (Fraction(1, 3), Fraction(2), Fraction(5, 7))


def as_rational(value):
    """
    Parse a scalar into a Fraction

    Args:
        value: int, Fraction, or a string such as "3", "1/2" or "-5/7"

    Returns:
        Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise DomainError(f"Not a rational number: {value!r}") from e
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    raise DomainError(f"Cannot interpret {value!r} as a rational number")


def q_int(n, q):
    """(n)_q = 1 + q + ... + q^{n-1}"""
    if n < 0:
        raise DomainError(f"q_int needs n >= 0, got {n}")
    return sum((q ** i for i in range(n)), Fraction(0) if isinstance(q, Fraction) else 0)


def q_factorial(n, q):
    """(n)_q! = (1)_q (2)_q ... (n)_q"""
    if n < 0:
        raise DomainError(f"q_factorial needs n >= 0, got {n}")
    result = Fraction(1) if isinstance(q, Fraction) else 1
    for i in range(1, n + 1):
        result *= q_int(i, q)
    return result


@lru_cache(maxsize=None)
def _binomial_table(n, q):
    # Pascal rule: C(n,k) = C(n-1,k-1) + q^k C(n-1,k)
    row = [Fraction(1) if isinstance(q, Fraction) else 1]
    for size in range(1, n + 1):
        new = [row[0]]
        for k in range(1, size):
            new.append(row[k - 1] + q ** k * row[k])
        new.append(row[-1])
        row = new
    return tuple(row)


def q_binomial(n, k, q):
    """
    Gaussian binomial (n choose k)_q

    Raises:
        DomainError: if k < 0 or k > n
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    return _binomial_table(n, q)[k]


def q_binomial0(n, k, q):
    """(n choose k)_q extended by zero outside 0 <= k <= n"""
    if n < 0 or k < 0 or k > n:
        return 0
    return q_binomial(n, k, q)


def q_multinomial(n, ks, q):
    """
    q-multinomial (n; k_1, ..., k_r, n - sum k)_q

    The remainder n - sum(ks) is the implicit last block.
    """
    ks = tuple(ks)
    if any(k < 0 for k in ks) or sum(ks) > n:
        raise DomainError(f"q_multinomial needs nonnegative parts with sum <= {n}, got {ks}")
    result = Fraction(1) if isinstance(q, Fraction) else 1
    remaining = n
    for k in ks:
        result *= q_binomial(remaining, k, q)
        remaining -= k
    return result


def q_pochhammer(a, q, r):
    """
    q-Pochhammer symbol (a; q)_r

    For r > 0 the product (1 - a)(1 - aq)...(1 - aq^{r-1}); for r < 0 the
    reciprocal product prod_{j=1}^{-r} (1 - a q^j)^{-1}; 1 for r = 0.

    Raises:
        SingularityError: if a factor of the reciprocal product vanishes
    """
    one = Fraction(1) if isinstance(a, Fraction) or isinstance(q, Fraction) else 1
    if r >= 0:
        result = one
        for j in range(r):
            result *= 1 - a * q ** j
        return result
    result = one
    for j in range(1, -r + 1):
        factor = 1 - a * q ** j
        if factor == 0:
            raise SingularityError(f"(a; q)_{r} has a vanishing factor at j={j}")
        result /= factor
    return result


def q_pochhammer_std(a, q, r):
    """
    q-Pochhammer symbol with the reflection convention for negative index,
    (a; q)_{-n} = prod_{j=1}^{n} (1 - a q^{-j})^{-1}
    """
    if r >= 0:
        return q_pochhammer(a, q, r)
    return q_pochhammer(a, 1 / q, r)
