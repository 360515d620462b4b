"""The subspace lattice B_q(n): enumeration, the up operator, inner products.

Vectors of the lattice space are sparse formal sums of subspaces with
cyclotomic-integer coefficients.  The inner product makes the subspaces an
orthonormal basis and is conjugate-linear in its second argument.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .cyclotomic import CycInt
from .gflinalg import Subspace, inv_table, subspaces_from_matrix_batch
from .qcombinatorics import q_binomial

_ENUM_CACHE: dict[tuple[int, int, int], tuple[Subspace, ...]] = {}
_COVERS_CACHE: dict[Subspace, tuple[Subspace, ...]] = {}


def enumerate_rank(n: int, k: int, q: int) -> tuple[Subspace, ...]:
    """All k-dimensional subspaces of F_q^n, each exactly once.

    Order: pivot-row sets lexicographically, then free entries read
    column-major as ascending base-q digit strings.  Out-of-range k gives
    the empty sequence.
    """
    inv_table(q)
    if k < 0 or k > n:
        return ()
    key = (n, k, q)
    hit = _ENUM_CACHE.get(key)
    if hit is not None:
        return hit

    out = []
    for pivots in combinations(range(n), k):
        template = np.zeros((n, k), dtype=np.int64)
        for j, r in enumerate(pivots):
            template[r, j] = 1
        pivot_set = set(pivots)
        free = [
            (i, j)
            for j in range(k)
            for i in range(pivots[j] + 1, n)
            if i not in pivot_set
        ]
        if not free:
            out.append(Subspace._trusted_snf(q, n, template))
            continue
        for code in range(q ** len(free)):
            mat = template.copy()
            for t in range(len(free) - 1, -1, -1):
                code, digit = divmod(code, q)
                mat[free[t]] = digit
            out.append(Subspace._trusted_snf(q, n, mat))
    result = tuple(out)
    assert len(result) == q_binomial(n, k, q)
    _ENUM_CACHE[key] = result
    return result


def enumerate_all(n: int, q: int) -> tuple[Subspace, ...]:
    """All subspaces of F_q^n, by increasing dimension."""
    out: list[Subspace] = []
    for k in range(n + 1):
        out.extend(enumerate_rank(n, k, q))
    return tuple(out)


def all_coordinate_vectors(n: int, q: int) -> np.ndarray:
    """All q^n coordinate vectors as an (q^n, n) int64 array, lexicographic."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids.astype(np.int64))


def covers_of(x: Subspace) -> tuple[Subspace, ...]:
    """The subspaces covering x in B_q(n), i.e. x plus one new line.

    Computed by adjoining every ambient vector and canonicalizing the whole
    batch at once; results are cached per subspace since the up operator
    revisits them constantly.
    """
    hit = _COVERS_CACHE.get(x)
    if hit is not None:
        return hit
    q, n, k = x.q, x.n, x.k
    if k == n:
        _COVERS_CACHE[x] = ()
        return ()
    vecs = all_coordinate_vectors(n, q)
    mats = np.empty((len(vecs), n, k + 1), dtype=np.int64)
    mats[:, :, :k] = x.matrix.astype(np.int64)
    mats[:, :, k] = vecs
    seen = {}
    for cand in subspaces_from_matrix_batch(q, mats):
        if cand.k == k + 1:
            seen.setdefault(cand, None)
    result = tuple(sorted(seen, key=Subspace.sort_key))
    assert len(result) == q_binomial(n - k, 1, q)
    _COVERS_CACHE[x] = result
    return result


class LatticeVector:
    """Sparse formal sum of same-ambient subspaces with CycInt coefficients."""

    __slots__ = ("q", "n", "_terms")

    def __init__(self, q: int, n: int, terms: dict[Subspace, CycInt] | None = None):
        self.q = q
        self.n = n
        clean: dict[Subspace, CycInt] = {}
        for sub, coeff in (terms or {}).items():
            coeff = self._as_coeff(coeff)
            if sub.q != q or sub.n != n:
                raise ValueError(f"term {sub!r} does not live in B_{q}({n})")
            if not coeff.is_zero:
                clean[sub] = coeff
        self._terms = clean

    def _as_coeff(self, value) -> CycInt:
        if isinstance(value, CycInt):
            if value.p != self.q:
                raise ValueError(f"coefficient prime {value.p} != lattice prime {self.q}")
            return value
        if isinstance(value, int):
            return CycInt.from_int(self.q, value)
        raise TypeError(f"coefficient must be CycInt or int, got {type(value).__name__}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, q: int, n: int) -> LatticeVector:
        return cls(q, n, {})

    @classmethod
    def basis(cls, sub: Subspace) -> LatticeVector:
        return cls(sub.q, sub.n, {sub: CycInt.one(sub.q)})

    # -- linear structure -----------------------------------------------------

    def _check_compatible(self, other: LatticeVector) -> None:
        if self.q != other.q or self.n != other.n:
            raise ValueError(
                f"mixed spaces: B_{self.q}({self.n}) vs B_{other.q}({other.n})"
            )

    def __add__(self, other: LatticeVector) -> LatticeVector:
        self._check_compatible(other)
        terms = dict(self._terms)
        for sub, coeff in other._terms.items():
            cur = terms.get(sub)
            new = coeff if cur is None else cur + coeff
            if new.is_zero:
                terms.pop(sub, None)
            else:
                terms[sub] = new
        return self._wrap(terms)

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        return self + (-other)

    def __neg__(self) -> LatticeVector:
        return self._wrap({s: -c for s, c in self._terms.items()})

    def __mul__(self, scalar) -> LatticeVector:
        coeff = self._as_coeff(scalar)
        if coeff.is_zero:
            return LatticeVector.zero(self.q, self.n)
        return self._wrap({s: c * coeff for s, c in self._terms.items()})

    __rmul__ = __mul__

    def _wrap(self, terms: dict[Subspace, CycInt]) -> LatticeVector:
        v = object.__new__(LatticeVector)
        v.q, v.n, v._terms = self.q, self.n, terms
        return v

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LatticeVector)
            and self.q == other.q
            and self.n == other.n
            and self._terms == other._terms
        )

    def __hash__(self):
        raise TypeError("LatticeVector is not hashable")

    # -- inspection ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, sub: Subspace) -> CycInt:
        return self._terms.get(sub, CycInt.zero(self.q))

    def support(self) -> tuple[Subspace, ...]:
        return tuple(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self) -> list[tuple[Subspace, CycInt]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def is_homogeneous(self) -> bool:
        dims = {s.k for s in self._terms}
        return len(dims) <= 1

    def rank(self) -> int:
        """Common dimension of the support; only defined for nonzero
        homogeneous vectors."""
        dims = {s.k for s in self._terms}
        if len(dims) != 1:
            raise ValueError("rank is defined only for nonzero homogeneous vectors")
        return dims.pop()

    def embed(self, ambient: int) -> LatticeVector:
        if ambient == self.n:
            return self
        return LatticeVector(
            self.q, ambient, {s.embed(ambient): c for s, c in self._terms.items()}
        )

    def __repr__(self) -> str:
        parts = [f"({c})*{s!r}" for s, c in list(self._terms.items())[:4]]
        more = "" if len(self._terms) <= 4 else f" ... ({len(self._terms)} terms)"
        return f"LatticeVector(q={self.q}, n={self.n}, {' + '.join(parts) or '0'}{more})"

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "terms": [
                {"subspace": s.to_json(), "coeff": c.to_json()}
                for s, c in self.sorted_items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> LatticeVector:
        q, n = int(obj["q"]), int(obj["n"])
        terms: dict[Subspace, CycInt] = {}
        for item in obj["terms"]:
            sub = Subspace.from_json(q, item["subspace"])
            coeff = CycInt.from_json(q, item["coeff"])
            if sub in terms:
                raise ValueError(f"duplicate subspace in serialized vector: {sub!r}")
            terms[sub] = coeff
        return cls(q, n, terms)


def up_apply(v: LatticeVector) -> LatticeVector:
    """Linear extension of x -> sum of the subspaces covering x."""
    acc: dict[Subspace, CycInt] = {}
    for sub, coeff in v.items():
        for cover in covers_of(sub):
            cur = acc.get(cover)
            new = coeff if cur is None else cur + coeff
            if new.is_zero:
                acc.pop(cover, None)
            else:
                acc[cover] = new
    return LatticeVector(v.q, v.n, acc)


def inner(v: LatticeVector, w: LatticeVector) -> CycInt:
    """Standard inner product; conjugate-linear in the second argument."""
    v._check_compatible(w)
    total = CycInt.zero(v.q)
    if len(w) < len(v):
        for sub, wc in w.items():
            vc = v._terms.get(sub)
            if vc is not None:
                total = total + vc * wc.conj()
    else:
        for sub, vc in v.items():
            wc = w._terms.get(sub)
            if wc is not None:
                total = total + vc * wc.conj()
    return total


def norm_sq(v: LatticeVector) -> int:
    """<v, v> as a plain nonnegative integer."""
    value = inner(v, v).to_int()
    assert value >= 0
    return value
