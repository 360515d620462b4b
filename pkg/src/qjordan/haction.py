"""The translation group on subspaces outside a hyperplane, and its characters.

F_q^n acts on F_q^(n+1) through the unitriangular matrices fixing the
embedded F_q^n pointwise: the vector a sends (b, c) to (b + c*a, c).  The
action permutes the subspaces NOT contained in F_q^n; its orbits are the
fibers of X -> X intersect F_q^n.  Characters are indexed by vectors c with
chi_c(a) = w^(c.a), and the associated (unnormalized) isotypic projections
p(chi) decompose the span of those subspaces.  The maps built here (theta,
the character projections, and the rank-raising gamma) realize the
Goldman-Rota recurrence at the level of vector spaces and drive the Jordan
basis construction in :mod:`qjordan.sjb`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .cyclotomic import CycInt
from .gflinalg import Subspace, mu_apply, subspaces_from_matrix_batch
from .lattice import (
    LatticeVector,
    all_coordinate_vectors,
    enumerate_all,
    enumerate_rank,
    inner,
    up_apply,
)
from .qcombinatorics import galois_number, q_binomial
from .reporting import Check, Report


@lru_cache(maxsize=None)
def group_vectors(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    """All of F_q^n in lexicographic order; the group underlying the action."""
    return tuple(product(range(q), repeat=n))


@dataclass(frozen=True)
class Character:
    """The character a -> w^(c.a) of the additive group F_q^n."""

    q: int
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        if any(x < 0 or x >= self.q for x in self.c):
            raise ValueError(f"character vector entries must lie in 0..{self.q - 1}")

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def is_trivial(self) -> bool:
        return not any(self.c)

    def exponent(self, a: tuple[int, ...]) -> int:
        return sum(ci * ai for ci, ai in zip(self.c, a)) % self.q

    def value(self, a: tuple[int, ...]) -> CycInt:
        return CycInt.omega(self.q, self.exponent(a))

    def conj_value(self, a: tuple[int, ...]) -> CycInt:
        return CycInt.omega(self.q, (-self.exponent(a)) % self.q)


def characters(n: int, q: int, include_trivial: bool = False):
    """The characters of F_q^n in lexicographic order of their index vectors."""
    for c in group_vectors(n, q):
        if include_trivial or any(c):
            yield Character(q, c)


def act(a: tuple[int, ...], x: Subspace) -> Subspace:
    """Image of x under the group element indexed by a.

    x must be a subspace of F_q^(n+1) not contained in the embedded F_q^n.
    """
    n = x.n - 1
    if len(a) != n:
        raise ValueError(f"group vector length {len(a)} != {n}")
    _require_outside(x)
    m = x.matrix.astype(np.int64)
    shifted = m.copy()
    shifted[:n, :] = (m[:n, :] + np.outer(np.asarray(a, dtype=np.int64), m[n, :])) % x.q
    return Subspace.from_matrix(x.q, shifted)


def _require_outside(x: Subspace) -> None:
    if x.n < 1 or not np.any(x.matrix[x.n - 1]):
        raise ValueError(f"{x!r} is contained in the fixed hyperplane")


@dataclass(frozen=True)
class OrbitTable:
    """Orbit of one subspace with the full action table.

    orbit        -- the distinct images, sorted canonically
    self_index   -- position of the base subspace in ``orbit``
    group_index  -- group_index[g] = position of (g . base) for the g-th
                    group vector in lexicographic order
    stabilizer   -- indices g with (g . base) = base
    """

    orbit: tuple[Subspace, ...]
    self_index: int
    group_index: tuple[int, ...]
    stabilizer: tuple[int, ...]


_ORBIT_CACHE: dict[Subspace, OrbitTable] = {}


def orbit_table(x: Subspace) -> OrbitTable:
    hit = _ORBIT_CACHE.get(x)
    if hit is not None:
        return hit
    _require_outside(x)
    n = x.n - 1
    q = x.q
    m = x.matrix.astype(np.int64)
    shifts = all_coordinate_vectors(n, q)  # one row per group vector, lex order
    mats = np.empty((len(shifts), x.n, x.k), dtype=np.int64)
    mats[:, :n, :] = (m[:n, :][None, :, :] + shifts[:, :, None] * m[n, :][None, None, :]) % q
    mats[:, n, :] = m[n, :]
    images = subspaces_from_matrix_batch(q, mats)
    orbit = tuple(sorted(set(images), key=Subspace.sort_key))
    position = {s: i for i, s in enumerate(orbit)}
    group_index = tuple(position[img] for img in images)
    self_index = position[x]
    stabilizer = tuple(g for g, idx in enumerate(group_index) if idx == self_index)
    table = OrbitTable(orbit, self_index, group_index, stabilizer)
    _ORBIT_CACHE[x] = table
    return table


def h_map(x: Subspace) -> Subspace:
    """x intersect F_q^n, returned in its own ambient F_q^n."""
    _require_outside(x)
    hyper = Subspace.full(x.q, x.n - 1).embed(x.n)
    return x.intersect(hyper).restrict(x.n - 1)


def eq_class(x: Subspace) -> tuple[Subspace, ...]:
    """All subspaces with the same hyperplane intersection as x.

    By the orbit description this is exactly the orbit of x under the group.
    """
    return orbit_table(x).orbit


@lru_cache(maxsize=None)
def _char_exponents(q: int, c: tuple[int, ...]) -> tuple[int, ...]:
    """c . a mod q for every group vector a, aligned with group_vectors."""
    vecs = all_coordinate_vectors(len(c), q)
    return tuple(int(e) for e in vecs @ np.asarray(c, dtype=np.int64) % q)


def p_chi(chi: Character, x: Subspace) -> LatticeVector:
    """The projection sum over the group: sum_a conj(chi(a)) * (a . x).

    Kept unnormalized so every coefficient stays in Z[w]; the result is zero
    exactly when chi is nontrivial on the stabilizer of x.  Each orbit
    coefficient is accumulated as a histogram of root-of-unity exponents.
    """
    if x.n != chi.n + 1:
        raise ValueError(f"x lives in ambient {x.n}, character wants {chi.n + 1}")
    table = orbit_table(x)
    q = x.q
    exps = _char_exponents(q, chi.c)
    hist = [[0] * q for _ in table.orbit]
    for g, idx in enumerate(table.group_index):
        hist[idx][-exps[g] % q] += 1
    terms = {}
    for sub, counts in zip(table.orbit, hist):
        coeff = CycInt.from_root_counts(q, counts)
        if not coeff.is_zero:
            terms[sub] = coeff
    return LatticeVector(q, x.n, terms)


def theta(v: LatticeVector) -> LatticeVector:
    """Sum each support subspace's class over the raised ambient space.

    Sends the basis element X of B_q(n) to the sum of the subspaces of
    F_q^(n+1) whose hyperplane intersection is X; raises rank by one and
    intertwines q*U_n with U_(n+1).
    """
    out: dict[Subspace, CycInt] = {}
    for sub, coeff in v.items():
        for img in orbit_table(sub.hat()).orbit:
            cur = out.get(img)
            out[img] = coeff if cur is None else cur + coeff
    return LatticeVector(v.q, v.n + 1, out)


@lru_cache(maxsize=None)
def _find_hyperplane_cached(q: int, c: tuple[int, ...], n: int) -> Subspace:
    chi = Character(q, c)
    vectors = group_vectors(n, q)
    found = []
    for x in enumerate_rank(n, n - 1, q):
        table = orbit_table(x.hat())
        # stabilizer criterion: the projection survives iff chi is trivial
        # on the stabilizer of x-hat
        if all(chi.exponent(vectors[g]) == 0 for g in table.stabilizer):
            if not p_chi(chi, x.hat()).is_zero:
                found.append(x)
    if len(found) != 1:
        raise RuntimeError(
            f"expected exactly one surviving hyperplane for c={c}, found {len(found)}"
        )
    return found[0]


def find_hyperplane(chi: Character, n: int) -> Subspace:
    """The unique hyperplane of F_q^n whose raised class survives p(chi)."""
    if chi.is_trivial:
        raise ValueError("find_hyperplane requires a nontrivial character")
    if chi.n != n:
        raise ValueError(f"character indexed by F_{chi.q}^{chi.n}, asked for n={n}")
    return _find_hyperplane_cached(chi.q, chi.c, n)


@lru_cache(maxsize=None)
def _mu_hat(hyper: Subspace, sub: Subspace) -> Subspace:
    return mu_apply(hyper, sub).hat()


def gamma(chi: Character, v: LatticeVector) -> LatticeVector:
    """Rank-raising map from B_q(n-1) vectors into the chi-isotypic block.

    Composition of the hyperplane reparametrization with Y -> p(chi)(Y-hat);
    commutes with the up operators and scales inner products of rank-k
    vectors by q^(n+k).
    """
    if chi.is_trivial:
        raise ValueError("gamma requires a nontrivial character")
    n = chi.n
    if v.n != n - 1:
        raise ValueError(f"gamma input must live in ambient {n - 1}, got {v.n}")
    hyper = find_hyperplane(chi, n)
    out = LatticeVector.zero(v.q, n + 1)
    for sub, coeff in v.items():
        out = out + coeff * p_chi(chi, _mu_hat(hyper, sub))
    return out


@lru_cache(maxsize=None)
def _fixed_point_counts(n: int, k: int, q: int) -> tuple[int, ...]:
    """counts[g] = number of dim-k subspaces outside the hyperplane fixed by
    the g-th group vector; one orbit-table pass over all of them."""
    counts = [0] * q**n
    for x in enumerate_rank(n + 1, k, q):
        if not np.any(x.matrix[n]):
            continue  # inside the hyperplane: not acted on
        table = orbit_table(x)
        for g, idx in enumerate(table.group_index):
            if idx == table.self_index:
                counts[g] += 1
    return tuple(counts)


def perm_character(n: int, k: int, a: tuple[int, ...], q: int) -> int:
    """Number of dim-k subspaces outside the hyperplane fixed by the group
    element a (a in F_q^n, subspaces in F_q^(n+1)), counted directly."""
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must lie in 1..{n + 1}, got {k}")
    g = group_vectors(n, q).index(tuple(x % q for x in a))
    return _fixed_point_counts(n, k, q)[g]


def character_multiplicity(chi: Character, n: int, k: int) -> int:
    """Multiplicity of chi in the permutation action on dim-k subspaces,
    computed as an exact character inner product of fixed-point counts."""
    q = chi.q
    counts = _fixed_point_counts(n, k, q)
    total = CycInt.zero(q)
    for g, a in enumerate(group_vectors(n, q)):
        total = total + chi.conj_value(a) * counts[g]
    value = total.to_int()
    mult, rem = divmod(value, q**n)
    if rem:
        raise RuntimeError(f"character inner product {value} not divisible by {q**n}")
    return mult


def verify_decomposition(n: int, q: int) -> Report:
    """Check the orthogonal decomposition of V(B_q(n+1)) induced by the
    group action: dimension counts, ranksets, the up-operator splitting,
    both inner-product scalings, intertwining, block orthogonality and the
    q-1 count of surviving characters per hyperplane."""
    if n < 1:
        raise ValueError(f"verify_decomposition needs n >= 1, got {n}")
    checks: list[Check] = []

    basis_n = [LatticeVector.basis(x) for x in _all_subspaces(n, q)]
    theta_images = [(x, theta(LatticeVector.basis(x))) for x in _all_subspaces(n, q)]
    chars = list(characters(n, q))
    gamma_images = {
        chi: [(y, gamma(chi, LatticeVector.basis(y))) for y in _all_subspaces(n - 1, q)]
        for chi in chars
    }

    # dimension counts: G(n+1) = G(n) + G(n) + (q^n - 1) G(n-1)
    produced = len(basis_n) + len(theta_images) + sum(len(v) for v in gamma_images.values())
    expected = galois_number(n + 1, q)
    recurrence = 2 * galois_number(n, q) + (q**n - 1) * galois_number(n - 1, q)
    all_nonzero = all(not img.is_zero for _, img in theta_images) and all(
        not img.is_zero for imgs in gamma_images.values() for _, img in imgs
    )
    ok = produced == expected == recurrence and all_nonzero
    checks.append(
        Check(
            "dimension-count",
            ok,
            "" if ok else f"produced {produced}, lattice dim {expected}, recurrence {recurrence}",
        )
    )

    # ranksets: theta raises rank k -> k+1 for k = 0..n, gamma for k = 0..n-1
    bad = ""
    ranks0 = set()
    for x, img in theta_images:
        if not img.is_homogeneous() or img.rank() != x.k + 1:
            bad = f"theta image of {x!r} is not homogeneous of rank {x.k + 1}"
            break
        ranks0.add(img.rank())
    if not bad and ranks0 != set(range(1, n + 2)):
        bad = f"rankset of the trivial block is {sorted(ranks0)}"
    checks.append(Check("rankset-trivial-block", not bad, bad))

    bad = ""
    for chi, imgs in gamma_images.items():
        ranks = set()
        for y, img in imgs:
            if not img.is_homogeneous() or img.rank() != y.k + 1:
                bad = f"gamma image of {y!r} under c={chi.c} has wrong rank"
                break
            ranks.add(img.rank())
        if bad:
            break
        if ranks != set(range(1, n + 1)):
            bad = f"rankset of block c={chi.c} is {sorted(ranks)}"
    checks.append(Check("rankset-character-blocks", not bad, bad))

    # up-operator splitting: U_(n+1) x = U_n x + theta x on basis elements
    bad = ""
    for x in _all_subspaces(n, q):
        v = LatticeVector.basis(x)
        lhs = up_apply(v.embed(n + 1))
        rhs = up_apply(v).embed(n + 1) + theta(v)
        if lhs != rhs:
            bad = f"splitting fails on {x!r}"
            break
    checks.append(Check("up-splitting", not bad, bad))

    # inner-product scalings on all basis pairs
    bad = ""
    for i, (x, ix) in enumerate(theta_images):
        for y, iy in theta_images[i:]:
            expect = q ** (n - x.k) if x is y else 0
            if x.k == y.k and inner(ix, iy).to_int() != expect:
                bad = f"<theta {x!r}, theta {y!r}> != {expect}"
                break
            if x.k != y.k and not inner(ix, iy).is_zero:
                bad = f"theta images of {x!r}, {y!r} not orthogonal"
                break
        if bad:
            break
    checks.append(Check("theta-scaling", not bad, bad))

    bad = ""
    for chi, imgs in gamma_images.items():
        for i, (y, iy) in enumerate(imgs):
            for z, iz in imgs[i:]:
                expect = q ** (n + y.k) if y is z else 0
                got = inner(iy, iz)
                if y.k == z.k and got.to_int() != expect:
                    bad = f"c={chi.c}: <gamma {y!r}, gamma {z!r}> != {expect}"
                    break
                if y.k != z.k and not got.is_zero:
                    bad = f"c={chi.c}: gamma images of {y!r}, {z!r} not orthogonal"
                    break
            if bad:
                break
        if bad:
            break
    checks.append(Check("gamma-scaling", not bad, bad))

    # intertwining: theta(q U v) = U theta(v), gamma(U v) = U gamma(v)
    bad = ""
    for x in _all_subspaces(n, q):
        v = LatticeVector.basis(x)
        if theta(up_apply(v) * q) != up_apply(theta(v)):
            bad = f"theta intertwining fails on {x!r}"
            break
    checks.append(Check("theta-intertwining", not bad, bad))

    bad = ""
    for chi in chars:
        for y in _all_subspaces(n - 1, q):
            v = LatticeVector.basis(y)
            if gamma(chi, up_apply(v)) != up_apply(gamma(chi, v)):
                bad = f"gamma intertwining fails on {y!r} for c={chi.c}"
                break
        if bad:
            break
    checks.append(Check("gamma-intertwining", not bad, bad))

    # orthogonality across blocks
    bad = ""
    flat_gamma = [
        (chi, y, img) for chi, imgs in gamma_images.items() for y, img in imgs
    ]
    for x, ix in theta_images:
        if bad:
            break
        emb = LatticeVector.basis(x).embed(n + 1)
        if not inner(ix, emb).is_zero:
            bad = f"theta image of {x!r} meets the embedded lattice"
            break
        for chi, y, iy in flat_gamma:
            if not inner(ix, iy).is_zero:
                bad = f"theta {x!r} not orthogonal to gamma {y!r} (c={chi.c})"
                break
    if not bad:
        for i, (chi, y, iy) in enumerate(flat_gamma):
            emb_ok = all(
                inner(iy, LatticeVector.basis(x).embed(n + 1)).is_zero
                for x in _all_subspaces(n, q)
            )
            if not emb_ok:
                bad = f"gamma {y!r} (c={chi.c}) meets the embedded lattice"
                break
            for chj, z, iz in flat_gamma[i + 1 :]:
                if chj is chi:
                    continue  # same block handled by gamma-scaling
                if not inner(iy, iz).is_zero:
                    bad = (
                        f"gamma blocks c={chi.c} and c={chj.c} not orthogonal "
                        f"({y!r} vs {z!r})"
                    )
                    break
            if bad:
                break
    checks.append(Check("block-orthogonality", not bad, bad))

    # each hyperplane is hit by exactly q-1 characters
    bad = ""
    for x in enumerate_rank(n, n - 1, q):
        hits = sum(1 for chi in chars if not p_chi(chi, x.hat()).is_zero)
        if hits != q - 1:
            bad = f"{x!r} survives for {hits} characters, expected {q - 1}"
            break
    checks.append(Check("characters-per-hyperplane", not bad, bad))

    return Report(tuple(checks))


def _all_subspaces(n: int, q: int) -> tuple[Subspace, ...]:
    return enumerate_all(n, q)
