"""Construction and verification of the symmetric Jordan bases."""

import copy
import json

import numpy as np
import pytest

from qjordan import (
    LatticeVector,
    Subspace,
    construct_sjb,
    cyc_matrix_rank,
    enumerate_rank,
    galois_number,
    inner,
    norm_sq,
    q_binomial,
    q_int,
    singular_value_sq,
    sjb_from_json,
    sjb_to_json,
    theta,
    up_apply,
    verify_sjb,
)
from qjordan import _kernels

MODULUS = 2_013_265_921  # prime; 2, 3 and 5 all divide MODULUS - 1


def root_of_unity(p):
    zeta = pow(31, (MODULUS - 1) // p, MODULUS)
    assert pow(zeta, p, MODULUS) == 1 and zeta != 1
    return zeta


def slice_spans_mod(basis, m):
    """Spanning certificate: full rank after specializing w to a root of
    unity in a prime field (specialization can only drop rank, so full
    modular rank proves full rank over the cyclotomic field)."""
    verts = enumerate_rank(basis.n, m, basis.q)
    index = {s: i for i, s in enumerate(verts)}
    vectors = basis.rank_slice(m)
    if len(vectors) != len(verts):
        return False
    zeta = root_of_unity(basis.q)
    mat = np.zeros((len(vectors), len(verts)), dtype=np.int64)
    for r, vec in enumerate(vectors):
        for sub, coeff in vec.items():
            mat[r, index[sub]] = coeff.reduce_mod(MODULUS, zeta)
    return int(_kernels.modp_rank(mat, MODULUS)) == len(verts)


def slice_spans_exact(basis, m):
    """Spanning by exact rank over the cyclotomic field (Bareiss)."""
    verts = enumerate_rank(basis.n, m, basis.q)
    vectors = basis.rank_slice(m)
    if len(vectors) != len(verts):
        return False
    rows = [[vec.coeff(s) for s in verts] for vec in vectors]
    return cyc_matrix_rank(rows) == len(verts)


def test_base_cases():
    j0 = construct_sjb(0, 2)
    assert len(j0.chains) == 1 and j0.chains[0].start_rank == 0
    assert j0.vector_count == 1

    j1 = construct_sjb(1, 3)
    (chain,) = j1.chains
    assert chain.start_rank == 0
    assert chain.vectors[0] == LatticeVector.basis(Subspace.zero(3, 1))
    assert chain.vectors[1] == LatticeVector.basis(Subspace.full(3, 1))


def test_frozen_level_two_basis():
    basis = construct_sjb(2, 2)
    e1 = Subspace.span(2, 2, [(1, 0)])
    e2 = Subspace.span(2, 2, [(0, 1)])
    e12 = Subspace.span(2, 2, [(1, 1)])
    zero = Subspace.zero(2, 2)
    full = Subspace.full(2, 2)

    long_chain = basis.chains_starting_at(0)
    assert len(long_chain) == 1
    x0, x1, x2 = long_chain[0].vectors
    assert x0 == LatticeVector.basis(zero)
    assert x1 == LatticeVector(2, 2, {e1: 1, e2: 1, e12: 1})
    assert x2 == LatticeVector(2, 2, {full: 3})

    singles = basis.chains_starting_at(1)
    assert len(singles) == 2
    vectors = [c.vectors[0] for c in singles]
    assert LatticeVector(2, 2, {e1: -2, e2: 1, e12: 1}) in vectors
    assert LatticeVector(2, 2, {e2: 1, e12: -1}) in vectors


def test_chain_count_profile():
    basis = construct_sjb(3, 2)
    assert len(basis.chains_starting_at(0)) == 1
    assert len(basis.chains_starting_at(1)) == 6
    for q, n in [(2, 4), (3, 3), (5, 2)]:
        basis = construct_sjb(n, q)
        for k in range(n // 2 + 1):
            assert len(basis.chains_starting_at(k)) == q_binomial(n, k, q) - q_binomial(
                n, k - 1, q
            )


def test_singular_value_sq():
    assert singular_value_sq(2, 2, 0, 0) == 3
    assert singular_value_sq(2, 2, 0, 1) == 3
    assert singular_value_sq(2, 3, 1, 1) == 2
    assert singular_value_sq(3, 2, 0, 0) == 4
    for bad in [(2, 2, 1, 1), (2, 2, 0, 2), (2, 4, 2, 1), (2, 3, -1, 0)]:
        with pytest.raises(ValueError):
            singular_value_sq(*bad)


def test_verify_passes_small():
    for q, n in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        report = verify_sjb(construct_sjb(n, q))
        assert report.ok, f"({q},{n}): {report.summary()}"


def test_ratio_table_q3_level2():
    basis = construct_sjb(2, 3)
    report = verify_sjb(basis)
    assert report.ok
    (chain,) = basis.chains_starting_at(0)
    norms = [norm_sq(v) for v in chain.vectors]
    assert norms[1] == 4 * norms[0]
    assert norms[2] == 4 * norms[1]


def test_auxiliary_up_and_bar_identities():
    """The three identities the chain splice is built on, on real data:
    U(xbar_u) = q xbar_(u+1); |xbar_u|^2 = q^(n-u) |x_u|^2;
    U(x_u) = x_(u+1) + xbar_u."""
    for q, n in [(2, 2), (2, 3), (3, 2)]:
        basis = construct_sjb(n, q)
        for chain in basis.chains:
            k = chain.start_rank
            xs = list(chain.vectors)
            bars = [theta(v) for v in xs]
            for u_idx, u in enumerate(range(k, n - k + 1)):
                assert norm_sq(bars[u_idx]) == q ** (n - u) * norm_sq(xs[u_idx])
                up_bar = up_apply(bars[u_idx])
                if u < n - k:
                    assert up_bar == bars[u_idx + 1] * q
                else:
                    assert up_bar.is_zero
                up_x = up_apply(xs[u_idx].embed(n + 1))
                nxt = (
                    xs[u_idx + 1].embed(n + 1)
                    if u < n - k
                    else LatticeVector.zero(q, n + 1)
                )
                assert up_x == nxt + bars[u_idx]


def test_splice_supports_disjoint_and_yz_orthogonal():
    for q, n in [(2, 2), (2, 3), (3, 2)]:
        basis = construct_sjb(n, q)
        for chain in basis.chains:
            k = chain.start_rank
            if 2 * k == n:
                continue
            xs = [v.embed(n + 1) for v in chain.vectors]
            bars = [theta(v) for v in chain.vectors]
            zero = LatticeVector.zero(q, n + 1)
            x_at = lambda l: xs[l - k] if l <= n - k else zero
            bar_at = lambda l: bars[l - k] if l >= k else zero
            for l in range(k, n + 2 - k):
                assert not set(x_at(l).support()) & set(bar_at(l - 1).support())
            for l in range(k + 1, n - k + 1):
                y_l = x_at(l) + q_int(l - k, q) * bar_at(l - 1)
                z_l = -(q**n) * x_at(l) + q ** (l + k - 1) * q_int(
                    n - l - k + 1, q
                ) * bar_at(l - 1)
                assert inner(y_l, z_l).is_zero


def test_rank_slices_span_exact_small():
    for q, n in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        basis = construct_sjb(n, q)
        for m in range(n + 1):
            assert slice_spans_exact(basis, m), f"(q={q}, n={n}, m={m})"


def test_rank_slices_span_certificate_large(basis_for):
    for q, n in [(2, 5), (3, 4)]:
        basis = basis_for(q, n)
        for m in range(n + 1):
            assert slice_spans_mod(basis, m), f"(q={q}, n={n}, m={m})"


def test_vector_count_is_galois_number():
    for q, n in [(2, 4), (3, 3), (5, 2)]:
        assert construct_sjb(n, q).vector_count == galois_number(n, q)


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        construct_sjb(2, 4)
    with pytest.raises(ValueError):
        construct_sjb(2, 6)
    with pytest.raises(ValueError):
        construct_sjb(-1, 2)
    with pytest.raises(ValueError):
        verify_sjb(construct_sjb(1, 2), mode="loose")


def test_json_roundtrip_and_determinism():
    basis = construct_sjb(3, 2)
    payload = sjb_to_json(basis)
    text = json.dumps(payload)
    again = json.dumps(sjb_to_json(construct_sjb(3, 2)))
    assert text == again
    loaded = sjb_from_json(json.loads(text))
    assert loaded.q == basis.q and loaded.n == basis.n
    assert len(loaded.chains) == len(basis.chains)
    for a, b in zip(loaded.chains, basis.chains):
        assert a.start_rank == b.start_rank
        assert a.vectors == b.vectors
    assert verify_sjb(loaded).ok


def tamper(payload, chain_idx=0, vector_idx=0, term_idx=0):
    """Bump one serialized coefficient by 1."""
    out = copy.deepcopy(payload)
    term = out["chains"][chain_idx]["vectors"][vector_idx]["terms"][term_idx]
    coeff = term["coeff"]
    if "m" in coeff:
        coeff["m"] += 1
    else:
        coeff["coeffs"][0] += 1
    return out


def test_single_coefficient_tamper_is_caught():
    basis = construct_sjb(3, 2)
    payload = sjb_to_json(basis)
    named = {
        "chain-condition",
        "orthogonality",
        "singular-values",
        "monomial-coefficients",
        "chain-shape",
    }
    for chain_idx, vector_idx in [(0, 1), (0, 2), (1, 0), (3, 1)]:
        bad = sjb_from_json(tamper(payload, chain_idx, vector_idx))
        report = verify_sjb(bad)
        assert not report.ok
        failing = {c.name for c in report.failures()}
        assert failing & named, f"unexpected failure set {failing}"
        assert any(c.detail for c in report.failures())


def test_spot_mode_runs_and_passes():
    report = verify_sjb(construct_sjb(4, 2), mode="spot")
    assert report.ok
    names = {c.name for c in report.checks}
    assert "chain-condition (sampled)" in names
    assert "orthogonality (sampled)" in names
