"""q-integers, Gaussian binomials and Galois numbers against brute force."""

from itertools import product

import pytest

from qjordan import galois_number, is_prime, q_binomial, q_int, verify_identities
from qjordan.lattice import enumerate_rank


def all_vectors(n, q):
    return list(product(range(q), repeat=n))


def span_set(vectors, q):
    """All linear combinations of the given vectors, as a frozenset: an
    SNF-free way to identify a subspace."""
    n = len(vectors[0]) if vectors else 0
    span = set()
    for coeffs in product(range(q), repeat=len(vectors)):
        total = (0,) * n
        for c, v in zip(coeffs, vectors):
            total = tuple((t + c * x) % q for t, x in zip(total, v))
        span.add(total)
    return frozenset(span)


def count_subspaces_bruteforce(n, k, q):
    """Number of k-dim subspaces of F_q^n by collecting distinct span sets."""
    vecs = [v for v in all_vectors(n, q) if any(v)]
    seen = set()
    if k == 0:
        return 1

    def rec(chosen, start):
        if len(chosen) == k:
            s = span_set(chosen, q)
            if len(s) == q**k:
                seen.add(s)
            return
        for i in range(start, len(vecs)):
            rec(chosen + [vecs[i]], i + 1)

    rec([], 0)
    return len(seen)


def test_q_int_values():
    assert q_int(0, 2) == 0
    assert q_int(3, 2) == 1 + 2 + 4
    assert q_int(2, 3) == 1 + 3
    assert q_int(5, 5) == sum(5**j for j in range(5))


def test_q_int_rejects_negative():
    with pytest.raises(ValueError):
        q_int(-1, 2)
    with pytest.raises(ValueError):
        q_int(2, 1)


def test_q_binomial_edge_conventions():
    for n in range(6):
        assert q_binomial(n, 0, 2) == 1
    assert q_binomial(3, -1, 2) == 0
    assert q_binomial(-1, 0, 2) == 0
    assert q_binomial(2, 5, 3) == 0


def test_q_binomial_against_bruteforce():
    assert q_binomial(4, 2, 2) == count_subspaces_bruteforce(4, 2, 2) == 35
    for q in (2, 3):
        for n in range(5 if q == 2 else 4):
            for k in range(n + 1):
                assert q_binomial(n, k, q) == count_subspaces_bruteforce(n, k, q)


def test_q_binomial_matches_enumeration():
    for q in (2, 3):
        for n in range(5):
            for k in range(n + 1):
                assert q_binomial(n, k, q) == len(enumerate_rank(n, k, q))


def test_q_pascal_recurrence():
    for q in (2, 3, 5):
        for n in range(1, 13):
            for k in range(1, n + 1):
                assert q_binomial(n, k - 1, q) == q_binomial(n - 1, k - 2, q) + q ** (
                    k - 1
                ) * q_binomial(n - 1, k - 1, q)


def test_galois_numbers():
    for q in (2, 3, 5):
        assert galois_number(0, q) == 1
        assert galois_number(1, q) == 2
    assert galois_number(2, 2) == count_subspaces_total_bruteforce(2, 2) == 5
    for n in range(5):
        assert galois_number(n, 2) == count_subspaces_total_bruteforce(n, 2)
    assert galois_number(5, 2) == 374


def count_subspaces_total_bruteforce(n, q):
    return sum(count_subspaces_bruteforce(n, k, q) for k in range(n + 1))


def test_goldman_rota_recurrence():
    for q in (2, 3, 5):
        for n in range(1, 13):
            assert galois_number(n + 1, q) == 2 * galois_number(n, q) + (
                q**n - 1
            ) * galois_number(n - 1, q)


def test_verify_identities_reports():
    for n_max, q in [(5, 2), (1, 3), (4, 3)]:
        report = verify_identities(n_max, q)
        assert report.ok, report.summary()
    with pytest.raises(ValueError):
        verify_identities(0, 2)


def test_is_prime():
    primes = {2, 3, 5, 7, 11, 13, 97}
    for n in range(100):
        assert is_prime(n) == (n in primes or (n > 13 and all(n % d for d in range(2, n))))
