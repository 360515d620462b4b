"""Exact q-integers, Gaussian binomials and Galois numbers.

Everything here is plain arbitrary-precision integer arithmetic: the
q-binomials involved grow fast and the rest of the package leans on them
for dimension counts, so silent overflow is not an option.  Gaussian
binomials are computed by the q-Pascal recurrence (division free) with
memoization rather than by the product formula.
"""

from __future__ import annotations

from functools import lru_cache

from .reporting import Check, Report


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for the small q used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def q_int(k: int, q: int) -> int:
    """The q-integer [k]_q = 1 + q + ... + q^(k-1), with [0]_q = 0."""
    if k < 0:
        raise ValueError(f"q_int: k must be >= 0, got {k}")
    _check_q(q)
    s = 0
    for _ in range(k):
        s = s * q + 1
    return s


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError(f"base q must be >= 2, got {q}")


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int, q: int) -> int:
    """Gaussian binomial [n choose k]_q, the number of k-subspaces of F_q^n.

    Out-of-range arguments (n < 0, k < 0 or k > n) give 0, matching the
    usual convention for the recurrences below.
    """
    _check_q(q)
    if n < 0 or k < 0 or k > n:
        return 0
    if k == 0:
        return 1
    return q_binomial(n - 1, k - 1, q) + q**k * q_binomial(n - 1, k, q)


def galois_number(n: int, q: int) -> int:
    """Total number of subspaces of F_q^n."""
    if n < 0:
        raise ValueError(f"galois_number: n must be >= 0, got {n}")
    return sum(q_binomial(n, k, q) for k in range(n + 1))


def verify_identities(n_max: int, q: int) -> Report:
    """Check the Goldman-Rota recurrence, its rank-refined form and
    q-Pascal's triangle for all 1 <= n <= n_max.

    A failing check signals a bug in this module, not bad input.
    """
    if n_max < 1:
        raise ValueError(f"verify_identities: n_max must be >= 1, got {n_max}")
    _check_q(q)
    checks = []
    for n in range(1, n_max + 1):
        lhs = galois_number(n + 1, q)
        rhs = 2 * galois_number(n, q) + (q**n - 1) * galois_number(n - 1, q)
        checks.append(
            Check(
                f"goldman-rota n={n}",
                lhs == rhs,
                "" if lhs == rhs else f"G({n + 1}) = {lhs} != {rhs}",
            )
        )

        bad = ""
        for k in range(1, n + 2):
            lhs = q_binomial(n + 1, k, q)
            rhs = (
                q_binomial(n, k, q)
                + q_binomial(n, k - 1, q)
                + (q**n - 1) * q_binomial(n - 1, k - 1, q)
            )
            if lhs != rhs:
                bad = f"k={k}: {lhs} != {rhs}"
                break
        checks.append(Check(f"refined-recursion n={n}", not bad, bad))

        bad = ""
        for k in range(1, n + 1):
            lhs = q_binomial(n, k - 1, q)
            rhs = q_binomial(n - 1, k - 2, q) + q ** (k - 1) * q_binomial(n - 1, k - 1, q)
            if lhs != rhs:
                bad = f"k={k}: {lhs} != {rhs}"
                break
        checks.append(Check(f"q-pascal n={n}", not bad, bad))
    return Report(tuple(checks))
