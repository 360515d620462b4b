"""Group action, characters, projections and the lattice decomposition."""

import pytest

from qjordan import (
    Character,
    LatticeVector,
    Subspace,
    act,
    characters,
    enumerate_all,
    enumerate_rank,
    eq_class,
    find_hyperplane,
    gamma,
    h_map,
    inner,
    norm_sq,
    p_chi,
    perm_character,
    q_binomial,
    theta,
    up_apply,
    verify_decomposition,
)
from qjordan.haction import character_multiplicity, group_vectors, orbit_table


def A_elements(ambient, q, k=None):
    """Subspaces of F_q^ambient outside the standard hyperplane."""
    out = []
    ranks = range(ambient + 1) if k is None else [k]
    for kk in ranks:
        for x in enumerate_rank(ambient, kk, q):
            if x.matrix[ambient - 1 :].any():
                out.append(x)
    return out


def test_group_vector_enumeration_alignment():
    # orbit tables pair histogram indices with group_vectors positions, so
    # the numpy enumeration must match the tuple enumeration exactly
    from qjordan.lattice import all_coordinate_vectors

    for q, n in [(2, 3), (3, 2), (5, 1), (2, 0)]:
        rows = [tuple(int(x) for x in r) for r in all_coordinate_vectors(n, q)]
        assert rows == list(group_vectors(n, q))


def test_act_identity_and_example():
    e2 = Subspace.span(2, 2, [(0, 1)])
    assert act((0,), e2) is e2
    assert act((1,), e2) == Subspace.span(2, 2, [(1, 1)])
    inside = Subspace.span(2, 2, [(1, 0)])
    with pytest.raises(ValueError):
        act((1,), inside)


def test_act_is_group_action():
    for q, ambient in [(2, 3), (3, 2)]:
        n = ambient - 1
        for x in A_elements(ambient, q):
            for a in group_vectors(n, q):
                for b in group_vectors(n, q):
                    ab = tuple((ai + bi) % q for ai, bi in zip(a, b))
                    assert act(a, act(b, x)) == act(ab, x)


def test_orbit_sizes():
    # orbit of hat(X) has size q^(n-k) for X of dimension k in F_q^n
    for q, n in [(2, 2), (3, 2), (2, 3)]:
        for x in enumerate_all(n, q):
            assert len(eq_class(x.hat())) == q ** (n - x.k)


def test_h_map_and_eq_class():
    for q, n in [(2, 2), (3, 2)]:
        for z in enumerate_all(n, q):
            assert h_map(z.hat()) is z
    # ambient 3, q=2: classes of lines outside the plane have size 4
    for line in A_elements(3, 2, k=1):
        assert len(eq_class(line)) == 4
    # the class is simultaneously the group orbit and the h_map fiber
    for q, ambient in [(2, 3), (3, 3)]:
        n = ambient - 1
        for x in A_elements(ambient, q):
            cls = set(eq_class(x))
            assert cls == {act(a, x) for a in group_vectors(n, q)}
            assert cls == {
                y for y in A_elements(ambient, q, k=x.k) if h_map(y) == h_map(x)
            }
            assert len(cls) == q ** (ambient - x.k)


def test_orbit_stabilizer():
    for q, ambient in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        n = ambient - 1
        for x in A_elements(ambient, q):
            table = orbit_table(x)
            assert len(table.orbit) * len(table.stabilizer) == q**n


def test_p_chi_trivial_character_sums_orbit():
    for q, ambient in [(2, 3), (3, 2)]:
        n = ambient - 1
        trivial = Character(q, (0,) * n)
        for x in A_elements(ambient, q):
            v = p_chi(trivial, x)
            stab = len(orbit_table(x).stabilizer)
            assert set(v.support()) == set(eq_class(x))
            assert all(c.to_int() == stab for _, c in v.items())


def test_p_chi_worked_example_q3():
    chi = Character(3, (1, 2))
    spans = {
        1: Subspace.span(3, 2, [(1, 0)]),
        2: Subspace.span(3, 2, [(0, 1)]),
        3: Subspace.span(3, 2, [(1, 1)]),
        4: Subspace.span(3, 2, [(2, 1)]),
    }
    for idx in (1, 2, 4):
        assert p_chi(chi, spans[idx].hat()).is_zero
    survivor = p_chi(chi, spans[3].hat())
    assert not survivor.is_zero
    assert norm_sq(survivor) == 27  # q^(n+k) = 3^(2+1)
    assert find_hyperplane(chi, 2) == spans[3]


def test_p_chi_vanishing_matches_stabilizer_criterion():
    for q, ambient in [(2, 3), (3, 3)]:
        n = ambient - 1
        vectors = group_vectors(n, q)
        for chi in characters(n, q, include_trivial=True):
            for x in A_elements(ambient, q):
                stab = orbit_table(x).stabilizer
                trivial_on_stab = all(chi.exponent(vectors[g]) == 0 for g in stab)
                assert p_chi(chi, x).is_zero != trivial_on_stab


def test_theta_examples():
    zero1 = LatticeVector.basis(Subspace.zero(2, 1))
    img = theta(zero1)
    e2 = Subspace.span(2, 2, [(0, 1)])
    e12 = Subspace.span(2, 2, [(1, 1)])
    assert img == LatticeVector(2, 2, {e2: 1, e12: 1})
    assert norm_sq(img) == 2  # q^(n-k) = 2^(1-0)

    full1 = LatticeVector.basis(Subspace.full(2, 1))
    assert theta(full1) == LatticeVector.basis(Subspace.full(2, 2))


def test_theta_scaling_and_intertwining():
    for q, n in [(2, 2), (2, 3), (3, 2)]:
        for x in enumerate_all(n, q):
            vx = LatticeVector.basis(x)
            assert norm_sq(theta(vx)) == q ** (n - x.k)
            assert theta(up_apply(vx) * q) == up_apply(theta(vx))
            for y in enumerate_all(n, q):
                if y is not x:
                    assert inner(theta(vx), theta(LatticeVector.basis(y))).is_zero


def test_find_hyperplane_examples_and_kernel_characterization():
    assert find_hyperplane(Character(2, (1,)), 1) == Subspace.zero(2, 1)
    assert find_hyperplane(Character(2, (1, 0)), 2) == Subspace.span(2, 2, [(0, 1)])
    with pytest.raises(ValueError):
        find_hyperplane(Character(2, (0, 0)), 2)
    for q, n in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]:
        for chi in characters(n, q):
            hyper = find_hyperplane(chi, n)
            kernel = [
                v
                for v in group_vectors(n, q)
                if chi.exponent(v) == 0
            ]
            kernel_sub = Subspace.span(q, n, kernel)
            assert hyper == kernel_sub


def test_characters_per_hyperplane():
    for q, n in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        for hyper in enumerate_rank(n, n - 1, q):
            hits = [chi for chi in characters(n, q) if find_hyperplane(chi, n) == hyper]
            assert len(hits) == q - 1


def test_gamma_example_q2():
    chi = Character(2, (1,))
    v = LatticeVector.basis(Subspace.zero(2, 0))
    img = gamma(chi, v)
    e2 = Subspace.span(2, 2, [(0, 1)])
    e12 = Subspace.span(2, 2, [(1, 1)])
    assert img == LatticeVector(2, 2, {e2: 1, e12: -1})
    assert norm_sq(img) == 2  # q^(n+k) = 2^(1+0)
    assert up_apply(img).is_zero


def test_gamma_scaling_and_intertwining():
    for q, n in [(2, 2), (2, 3), (3, 2)]:
        for chi in characters(n, q):
            for y in enumerate_all(n - 1, q):
                vy = LatticeVector.basis(y)
                img = gamma(chi, vy)
                assert norm_sq(img) == q ** (n + y.k)
                assert gamma(chi, up_apply(vy)) == up_apply(img)
                for z in enumerate_all(n - 1, q):
                    if z is not y:
                        assert inner(img, gamma(chi, LatticeVector.basis(z))).is_zero


def test_perm_character_counts():
    # a = 0 fixes everything: |A_q(n+1)_k| = q^(n-k+1) [n, k-1]_q
    for q, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        for k in range(1, n + 2):
            expect = q ** (n - k + 1) * q_binomial(n, k - 1, q)
            assert perm_character(n, k, (0,) * n, q) == expect
    assert perm_character(1, 1, (1,), 2) == 0
    for a in [(1, 0), (0, 1), (1, 1)]:
        assert perm_character(2, 2, a, 2) == 2


def test_perm_character_closed_forms():
    for q in (2, 3):
        for n in range(1, 4):
            for k in range(1, n + 2):
                for a in group_vectors(n, q):
                    got = perm_character(n, k, a, q)
                    if any(a):
                        expect = q ** (n - k + 1) * q_binomial(n - 1, k - 2, q)
                    else:
                        expect = q ** (n - k + 1) * q_binomial(n, k - 1, q)
                    assert got == expect
    with pytest.raises(ValueError):
        perm_character(2, 0, (0, 0), 2)


def test_character_multiplicities():
    for q in (2, 3):
        for n in range(1, 4):
            trivial = Character(q, (0,) * n)
            nontrivial = next(iter(characters(n, q)))
            for k in range(1, n + 2):
                assert character_multiplicity(trivial, n, k) == q_binomial(n, k - 1, q)
                assert character_multiplicity(nontrivial, n, k) == q_binomial(
                    n - 1, k - 1, q
                )


def test_verify_decomposition_small():
    for q, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        report = verify_decomposition(n, q)
        assert report.ok, report.summary()
    with pytest.raises(ValueError):
        verify_decomposition(0, 2)
