"""Linear algebra over F_q (q prime) and canonical subspace representatives.

A subspace of F_q^n is represented by the unique n x k matrix in Schubert
normal form (column reduced echelon form) whose column space it is:

  (i)   every column is nonzero,
  (ii)  the first nonzero entry of column j is a 1, in row r_j,
  (iii) r_1 < r_2 < ... < r_k and the submatrix on those rows is the identity.

Canonical matrices make subspace equality a byte comparison, so all maps and
sets elsewhere in the package key directly on ``Subspace`` values.  Distinct
``Subspace`` objects are interned: one object per (q, ambient, matrix).
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .qcombinatorics import is_prime

_INV_TABLES: dict[int, np.ndarray] = {}


def inv_table(q: int) -> np.ndarray:
    tab = _INV_TABLES.get(q)
    if tab is None:
        if not is_prime(q):
            raise ValueError(f"field order must be prime, got {q}")
        tab = _kernels.inverse_table(q)
        _INV_TABLES[q] = tab
    return tab


def as_fq_matrix(q: int, data, rows: int | None = None) -> np.ndarray:
    """Validate and normalize a matrix over F_q to an int8 array."""
    mat = np.asarray(data, dtype=np.int64)
    if mat.ndim != 2:
        raise ValueError(f"matrix must be 2-dimensional, got shape {mat.shape}")
    if rows is not None and mat.shape[0] != rows:
        raise ValueError(f"expected {rows} rows, got {mat.shape[0]}")
    if mat.size and (mat.min() < 0 or mat.max() >= q):
        mat = np.mod(mat, q)
    return mat.astype(np.int8)


def rref_in_place(mat: np.ndarray, q: int) -> int:
    """Reduce an int64 matrix to RREF mod q in place; returns the rank."""
    if mat.size == 0:
        return 0
    ranks = _kernels.rref_batch(mat.reshape((1,) + mat.shape), q, inv_table(q))
    return int(ranks[0])


def fq_rank(mat, q: int) -> int:
    m = np.array(mat, dtype=np.int64)
    if m.size == 0:
        return 0
    return int(_kernels.rank_batch(m.reshape((1,) + m.shape), q, inv_table(q))[0])


def fq_matmul(a, b, q: int) -> np.ndarray:
    """Exact matrix product mod q (int64 accumulation is safe at our sizes)."""
    prod = np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)
    return np.mod(prod, q)


def fq_nullspace(mat, q: int) -> np.ndarray:
    """Columns spanning the right kernel of ``mat`` over F_q."""
    m = np.array(mat, dtype=np.int64)
    nr, nc = m.shape
    rank = rref_in_place(m, q) if m.size else 0
    pivots = []
    for i in range(rank):
        nz = np.flatnonzero(m[i])
        pivots.append(int(nz[0]))
    free = [j for j in range(nc) if j not in set(pivots)]
    basis = np.zeros((nc, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        basis[f, t] = 1
        for i, pcol in enumerate(pivots):
            basis[pcol, t] = (-m[i, f]) % q
    return basis


def snf_matrix(mat, q: int) -> np.ndarray:
    """Schubert normal form of the column space of ``mat`` (zero columns dropped).

    Computed as the transposed RREF of the transpose: RREF pivots become the
    topmost nonzero entries of the columns, increasing left to right.
    """
    m = np.asarray(mat, dtype=np.int64)
    n = m.shape[0]
    if m.size == 0:
        return np.zeros((n, 0), dtype=np.int64)
    t = np.ascontiguousarray(m.T % q)
    rank = rref_in_place(t, q)
    return np.ascontiguousarray(t[:rank].T)


def subspaces_from_matrix_batch(q: int, mats: np.ndarray) -> list["Subspace"]:
    """Canonicalize a whole (B, n, c) batch with one kernel dispatch.

    This is the fast path behind orbit tables and cover enumeration, where
    thousands of tiny matrices get reduced at once.
    """
    inv_table(q)
    nb, n, c = mats.shape
    if c == 0:
        return [Subspace.zero(q, n)] * nb
    t = np.ascontiguousarray(np.transpose(mats, (0, 2, 1)) % q)
    ranks = _kernels.rref_batch(t, q, inv_table(q))
    return [
        Subspace._make(q, n, np.ascontiguousarray(t[b, : ranks[b]].T))
        for b in range(nb)
    ]


class Subspace:
    """A subspace of F_q^n, canonically represented and interned."""

    __slots__ = ("q", "n", "k", "_mat", "_key", "_hash", "_skey")

    _interned: dict[tuple, "Subspace"] = {}

    def __init__(self, *_args, **_kwargs):
        raise TypeError("use Subspace.from_matrix / zero / full / span")

    @classmethod
    def _make(cls, q: int, n: int, snf: np.ndarray) -> Subspace:
        mat8 = np.ascontiguousarray(snf, dtype=np.int8)
        key = (q, n, mat8.shape[1], mat8.tobytes())
        hit = cls._interned.get(key)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        mat8.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", mat8.shape[1])
        object.__setattr__(self, "_mat", mat8)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))
        object.__setattr__(self, "_skey", None)
        cls._interned[key] = self
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_matrix(cls, q: int, mat) -> Subspace:
        """Canonicalize the column space of an arbitrary matrix over F_q."""
        inv_table(q)  # validates primality
        m = np.asarray(mat, dtype=np.int64)
        if m.ndim != 2:
            raise ValueError(f"matrix must be 2-dimensional, got shape {m.shape}")
        return cls._make(q, m.shape[0], snf_matrix(m % q, q))

    @classmethod
    def zero(cls, q: int, n: int) -> Subspace:
        inv_table(q)
        return cls._make(q, n, np.zeros((n, 0), dtype=np.int64))

    @classmethod
    def full(cls, q: int, n: int) -> Subspace:
        inv_table(q)
        return cls._make(q, n, np.eye(n, dtype=np.int64))

    @classmethod
    def span(cls, q: int, n: int, vectors) -> Subspace:
        """Span of a sequence of length-n coordinate vectors."""
        vecs = np.asarray(list(vectors), dtype=np.int64)
        if vecs.size == 0:
            return cls.zero(q, n)
        return cls.from_matrix(q, vecs.T)

    @classmethod
    def _trusted_snf(cls, q: int, n: int, snf: np.ndarray) -> Subspace:
        """Wrap a matrix already known to be in Schubert normal form."""
        return cls._make(q, n, snf)

    # -- basic structure -----------------------------------------------------

    @property
    def matrix(self) -> np.ndarray:
        """The canonical n x k matrix (read-only)."""
        return self._mat

    @property
    def dim(self) -> int:
        return self.k

    def pivot_rows(self) -> tuple[int, ...]:
        return self.sort_key()[1]

    def free_entries(self) -> tuple[int, ...]:
        """Non-pivot entries read column-major, the tiebreak of sort_key."""
        return self.sort_key()[2]

    def sort_key(self) -> tuple:
        """Total order on subspaces of one ambient space: dimension, then
        pivot-row set lexicographically, then free entries column-major.

        Memoized per interned object; sorting leans on it heavily.
        """
        key = self._skey
        if key is None:
            rows = self._mat.tolist()
            pivots = []
            for j in range(self.k):
                for i in range(self.n):
                    if rows[i][j]:
                        pivots.append(i)
                        break
            pivot_set = set(pivots)
            free = tuple(
                rows[i][j]
                for j in range(self.k)
                for i in range(pivots[j] + 1, self.n)
                if i not in pivot_set
            )
            key = (self.k, tuple(pivots), free)
            object.__setattr__(self, "_skey", key)
        return key

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, Subspace) and self._key == other._key
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        cols = [list(map(int, self._mat[:, j])) for j in range(self.k)]
        return f"Subspace(q={self.q}, n={self.n}, cols={cols})"

    # -- predicates and lattice operations ------------------------------------

    def contains_vector(self, v) -> bool:
        vec = np.asarray(v, dtype=np.int64).reshape(-1, 1) % self.q
        if vec.shape[0] != self.n:
            raise ValueError(f"vector length {vec.shape[0]} != ambient {self.n}")
        if not vec.any():
            return True
        stacked = np.hstack([self._mat.astype(np.int64), vec])
        return fq_rank(stacked, self.q) == self.k

    def contains(self, other: Subspace) -> bool:
        self._check_compatible(other)
        if other.k > self.k:
            return False
        if other.k == 0:
            return True
        stacked = np.hstack([self._mat, other._mat]).astype(np.int64)
        return fq_rank(stacked, self.q) == self.k

    def covers(self, other: Subspace) -> bool:
        """True iff other < self with dim(self) = dim(other) + 1."""
        return self.k == other.k + 1 and self.contains(other)

    def intersect(self, other: Subspace) -> Subspace:
        self._check_compatible(other)
        if self.k == 0 or other.k == 0:
            return Subspace.zero(self.q, self.n)
        stacked = np.hstack([self._mat, other._mat]).astype(np.int64)
        null = fq_nullspace(stacked, self.q)
        gens = fq_matmul(self._mat, null[: self.k, :], self.q)
        return Subspace.from_matrix(self.q, gens)

    def _check_compatible(self, other: Subspace) -> None:
        if self.q != other.q:
            raise ValueError(f"mixed fields: q={self.q} vs q={other.q}")
        if self.n != other.n:
            raise ValueError(f"mixed ambients: n={self.n} vs n={other.n}")

    # -- ambient coercions -----------------------------------------------------

    def hat(self) -> Subspace:
        """Span of self and the new last coordinate vector, in F_q^(n+1)."""
        m = np.zeros((self.n + 1, self.k + 1), dtype=np.int64)
        m[: self.n, : self.k] = self._mat
        m[self.n, self.k] = 1
        # appending a zero row and the column e_{n+1} preserves normal form
        return Subspace._trusted_snf(self.q, self.n + 1, m)

    def embed(self, ambient: int) -> Subspace:
        """The same subspace inside F_q^ambient (appended coordinates zero)."""
        if ambient < self.n:
            raise ValueError(f"cannot embed ambient {self.n} into {ambient}")
        if ambient == self.n:
            return self
        m = np.zeros((ambient, self.k), dtype=np.int64)
        m[: self.n] = self._mat
        return Subspace._trusted_snf(self.q, ambient, m)

    def restrict(self, ambient: int) -> Subspace:
        """Inverse of embed; requires the trailing coordinates to vanish."""
        if ambient > self.n:
            raise ValueError(f"cannot restrict ambient {self.n} to {ambient}")
        if np.any(self._mat[ambient:]):
            raise ValueError(f"{self!r} is not contained in the first {ambient} coordinates")
        return Subspace._trusted_snf(self.q, ambient, self._mat[:ambient].astype(np.int64))

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "cols": [[int(x) for x in self._mat[:, j]] for j in range(self.k)],
        }

    @classmethod
    def from_json(cls, q: int, obj: dict) -> Subspace:
        n, k = int(obj["n"]), int(obj["k"])
        cols = obj["cols"]
        if len(cols) != k:
            raise ValueError(f"expected {k} columns, got {len(cols)}")
        m = np.zeros((n, k), dtype=np.int64)
        for j, col in enumerate(cols):
            if len(col) != n:
                raise ValueError(f"column {j} has length {len(col)}, ambient is {n}")
            m[:, j] = col
        # re-canonicalize: imported data is never trusted to be normal form
        return cls.from_matrix(q, m)


def schubert_normal_form(q: int, mat) -> Subspace:
    """Canonical representative of the column space of ``mat``."""
    return Subspace.from_matrix(q, mat)


def mu_apply(x: Subspace, y: Subspace) -> Subspace:
    """Image of y under the map sending e_j to column j of x's matrix.

    For x of dimension n-1 in F_q^n this is the canonical order isomorphism
    from subspaces of F_q^(n-1) onto subspaces of x.
    """
    if x.k != x.n - 1:
        raise ValueError(f"mu_apply: x must be a hyperplane, got dim {x.k} in ambient {x.n}")
    if y.n != x.n - 1:
        raise ValueError(f"mu_apply: y must live in ambient {x.n - 1}, got {y.n}")
    if x.q != y.q:
        raise ValueError(f"mixed fields: q={x.q} vs q={y.q}")
    if y.k == 0:
        return Subspace.zero(x.q, x.n)
    gens = fq_matmul(x.matrix, y.matrix, x.q)
    return Subspace.from_matrix(x.q, gens)
