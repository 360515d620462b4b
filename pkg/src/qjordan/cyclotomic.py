"""Exact arithmetic in Z[w], w a primitive p-th root of unity for prime p.

Elements are stored on the power basis 1, w, ..., w^(p-2) of
Z[x]/(1 + x + ... + x^(p-1)), which gives unique normal forms: equality and
zero tests are plain tuple comparisons.  For p = 2 the ring degenerates to
the integers (w = -1, basis of length one).

Only prime p is supported.  The characters showing up elsewhere in this
package take values in p-th roots of unity for prime p, so a single
cyclotomic field per p covers every exact computation we need.
"""

from __future__ import annotations

from .qcombinatorics import is_prime


_KNOWN_PRIMES: set[int] = set()


class CycInt:
    """An element of Z[w] with w = exp(2*pi*i/p), p prime."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: tuple[int, ...]):
        if p not in _KNOWN_PRIMES:
            if not is_prime(p):
                raise ValueError(f"CycInt requires prime p, got {p}")
            _KNOWN_PRIMES.add(p)
        if len(coeffs) != p - 1:
            raise ValueError(f"need exactly {p - 1} coefficients for p={p}, got {len(coeffs)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(int(a) for a in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CycInt is immutable")

    @classmethod
    def _raw(cls, p: int, coeffs: tuple[int, ...]) -> CycInt:
        """Internal constructor for arithmetic results whose invariants hold
        by construction; skips the validation of the public one."""
        self = object.__new__(cls)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", coeffs)
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, m: int) -> CycInt:
        return cls(p, (m,) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> CycInt:
        return cls.from_int(p, 0)

    @classmethod
    def one(cls, p: int) -> CycInt:
        return cls.from_int(p, 1)

    @classmethod
    def monomial(cls, p: int, m: int, j: int) -> CycInt:
        """The element m * w^j."""
        j %= p
        if j < p - 1:
            coeffs = [0] * (p - 1)
            coeffs[j] = m
            return cls(p, tuple(coeffs))
        # w^(p-1) = -(1 + w + ... + w^(p-2))
        return cls(p, (-m,) * (p - 1))

    @classmethod
    def omega(cls, p: int, j: int = 1) -> CycInt:
        return cls.monomial(p, 1, j)

    @classmethod
    def from_root_counts(cls, p: int, counts) -> CycInt:
        """sum over j of counts[j] * w^j, for a length-p sequence of ints.

        The hot path of the character projections: the w^(p-1) slot folds
        into the power basis without any intermediate ring elements.
        """
        if p not in _KNOWN_PRIMES and not is_prime(p):
            raise ValueError(f"CycInt requires prime p, got {p}")
        if len(counts) != p:
            raise ValueError(f"need {p} counts, got {len(counts)}")
        top = counts[p - 1]
        return cls._raw(p, tuple(int(counts[j]) - top for j in range(p - 1)))

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "CycInt | None":
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise ValueError(f"mixed primes: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt._raw(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycInt._raw(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> CycInt:
        return CycInt._raw(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        # accumulate with exponents folded mod p (w^p = 1), then eliminate
        # the w^(p-1) slot via w^(p-1) = -(1 + w + ... + w^(p-2))
        acc = [0] * p
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    acc[(i + j) % p] += a * b
        top = acc[p - 1]
        if top:
            return CycInt._raw(p, tuple(acc[j] - top for j in range(p - 1)))
        return CycInt._raw(p, tuple(acc[: p - 1]))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycInt:
        if e < 0:
            raise ValueError("negative powers are not defined in Z[w]")
        result = CycInt.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycInt.from_int(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- Galois action -----------------------------------------------------

    def galois(self, s: int) -> CycInt:
        """Apply the field automorphism w -> w^s (s not divisible by p)."""
        p = self.p
        s %= p
        if s == 0:
            raise ValueError("w -> w^0 is not an automorphism")
        acc = [0] * p
        for j, a in enumerate(self.coeffs):
            if a:
                acc[(j * s) % p] += a
        top = acc[p - 1]
        if top:
            return CycInt._raw(p, tuple(acc[j] - top for j in range(p - 1)))
        return CycInt._raw(p, tuple(acc[: p - 1]))

    def conj(self) -> CycInt:
        """Complex conjugation, w -> w^(p-1)."""
        return self.galois(self.p - 1)

    # -- recognition and exact division -------------------------------------

    def as_monomial(self) -> tuple[int, int] | None:
        """Write self as m * w^j if possible, preferring the smallest j.

        Returns (0, 0) for zero and None when self is not an integral
        multiple of a root of unity.
        """
        p = self.p
        nz = [j for j, a in enumerate(self.coeffs) if a]
        if not nz:
            return (0, 0)
        if len(nz) == 1:
            j = nz[0]
            return (self.coeffs[j], j)
        if len(nz) == p - 1 and len(set(self.coeffs)) == 1:
            # all coefficients equal to c: this is (-c) * w^(p-1)
            return (-self.coeffs[0], p - 1)
        return None

    def to_int(self) -> int:
        """The value as a rational integer; raises if self is not one."""
        if any(self.coeffs[1:]):
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def divexact_int(self, m: int) -> CycInt:
        """Divide by a nonzero integer, raising unless every coefficient divides."""
        if m == 0:
            raise ZeroDivisionError("division by zero")
        out = []
        for a in self.coeffs:
            d, r = divmod(a, m)
            if r:
                raise ValueError(f"{self!r} is not divisible by {m}")
            out.append(d)
        return CycInt(self.p, tuple(out))

    def divexact(self, other: "CycInt | int") -> CycInt:
        """Exact division in Z[w]; raises unless the quotient lies in the ring.

        Multiplies by the remaining conjugates of the divisor and divides by
        its (rational integer) norm.
        """
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot divide CycInt by {type(other).__name__}")
        if o.is_zero:
            raise ZeroDivisionError("division by zero")
        num = self
        nrm = o
        for s in range(2, self.p):
            g = o.galois(s)
            num = num * g
            nrm = nrm * g
        return num.divexact_int(nrm.to_int())

    # -- serialization and display -------------------------------------------

    def to_json(self) -> dict:
        mono = self.as_monomial()
        if mono is not None:
            return {"m": mono[0], "j": mono[1]}
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, p: int, obj: dict) -> CycInt:
        if "coeffs" in obj:
            return cls(p, tuple(int(a) for a in obj["coeffs"]))
        return cls.monomial(p, int(obj["m"]), int(obj["j"]))

    def reduce_mod(self, modulus: int, zeta: int) -> int:
        """Image under Z[w] -> Z/modulus sending w to zeta (of order p)."""
        return sum(a * pow(zeta, j, modulus) for j, a in enumerate(self.coeffs)) % modulus

    def to_complex(self) -> complex:
        """Floating approximation, for debugging output only."""
        import cmath

        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(a * w**j for j, a in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt(p={self.p}, {self.coeffs})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for j, a in enumerate(self.coeffs):
            if a == 0:
                continue
            unit = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
            if not unit:
                parts.append(f"{a:+d}")
            elif a == 1:
                parts.append(f"+{unit}")
            elif a == -1:
                parts.append(f"-{unit}")
            else:
                parts.append(f"{a:+d}{unit}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def cyc_matrix_rank(rows: list[list[CycInt]]) -> int:
    """Exact rank of a matrix over the fraction field of Z[w].

    Fraction-free Bareiss elimination; the intermediate exact divisions stay
    in Z[w] by the Sylvester determinant identity.
    """
    if not rows:
        return 0
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    rank = 0
    prev = None
    for _step in range(min(nr, nc)):
        # find a nonzero pivot anywhere in the remaining block
        pr = pc = -1
        for i in range(rank, nr):
            for j in range(rank, nc):
                if not m[i][j].is_zero:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        if pr != rank:
            m[rank], m[pr] = m[pr], m[rank]
        if pc != rank:
            for r in m:
                r[rank], r[pc] = r[pc], r[rank]
        piv = m[rank][rank]
        for i in range(rank + 1, nr):
            for j in range(rank + 1, nc):
                t = m[i][j] * piv - m[i][rank] * m[rank][j]
                m[i][j] = t if prev is None else t.divexact(prev)
            m[i][rank] = CycInt.zero(piv.p)
        prev = piv
        rank += 1
    return rank
