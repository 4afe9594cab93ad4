"""Exact arithmetic over F_2: packed vectors, GF(2^t) fields and GF(2) row reduction.

Bit order is shared by every module in the package: coordinate ``i`` of a vector
in F_2^n is bit ``i`` (LSB first) of the packed integer.  String forms are written
most-significant coordinate first, i.e. ``format(value, f"0{n}b")``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_N = 24

# x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x+1, x^8+x^4+x^3+x^2+1
DEFAULT_MODULI = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
}


def parity(value: int) -> int:
    return value.bit_count() & 1


@dataclass(frozen=True)
class BitVector:
    """An element of F_2^n packed into an integer."""

    value: int
    n: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise ValueError(f"dimension {self.n} outside 0..{MAX_N}")
        if self.value < 0 or self.value >> self.n:
            raise ValueError(f"value {self.value:#x} does not fit in {self.n} bits")

    @classmethod
    def from_string(cls, bits: str) -> "BitVector":
        bits = bits.strip()
        if bits and set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(int(bits, 2) if bits else 0, len(bits))

    @classmethod
    def unit(cls, i: int, n: int) -> "BitVector":
        return cls(1 << i, n)

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b") if self.n else ""

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.value >> i) & 1

    def __add__(self, other: "BitVector") -> "BitVector":
        _check_same_n(self, other)
        return BitVector(self.value ^ other.value, self.n)

    __xor__ = __add__

    @property
    def weight(self) -> int:
        return self.value.bit_count()


def _check_same_n(x: BitVector, y: BitVector) -> None:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} != {y.n}")


def dot(x: BitVector, y: BitVector) -> int:
    """Standard inner product over F_2."""
    _check_same_n(x, y)
    return parity(x.value & y.value)


# ---------------------------------------------------------------------------
# GF(2)[x] polynomials packed as integers, and GF(2^t)


def clmul(a: int, b: int) -> int:
    """Carry-less product of two polynomials over F_2."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if poly_mod(poly, q) == 0:
                return False
    return True


def gf2t_mul(a: int, b: int, modulus: int) -> int:
    """Multiply two field elements and reduce modulo ``modulus``."""
    t = modulus.bit_length() - 1
    if a >> t or b >> t:
        raise ValueError("operand is not reduced modulo the field polynomial")
    return poly_mod(clmul(a, b), modulus)


class GF2t:
    """The field GF(2^t) = F_2[x]/(modulus); elements are ints below 2^t."""

    def __init__(self, t: int, modulus: int | None = None):
        if modulus is None:
            if t not in DEFAULT_MODULI:
                raise ValueError(f"no default modulus for t={t}")
            modulus = DEFAULT_MODULI[t]
        if modulus.bit_length() - 1 != t:
            raise ValueError(f"modulus {modulus:#x} does not have degree {t}")
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#x} is reducible")
        self.t = t
        self.modulus = modulus
        self.order = 1 << t

    def __repr__(self) -> str:
        return f"GF2t(t={self.t}, modulus={self.modulus:#x})"

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return gf2t_mul(a, b, self.modulus)

    def pow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)


# ---------------------------------------------------------------------------
# GF(2) matrices with packed rows


@dataclass(frozen=True)
class GF2Matrix:
    """Rows packed as ints; bit j of a row is the entry in column j."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError(f"row {r:#x} wider than {self.ncols} columns")

    @classmethod
    def from_vectors(cls, vectors: Iterable[BitVector], ncols: int) -> "GF2Matrix":
        rows = []
        for v in vectors:
            if v.n != ncols:
                raise ValueError(f"dimension mismatch: {v.n} != {ncols}")
            rows.append(v.value)
        return cls(tuple(rows), ncols)

    @classmethod
    def from_array(cls, array) -> "GF2Matrix":
        a = np.asarray(array, dtype=np.uint8) & 1
        weights = 1 << np.arange(a.shape[1], dtype=object)
        return cls(tuple(int((row.astype(object) * weights).sum()) for row in a), a.shape[1])

    @classmethod
    def identity(cls, k: int) -> "GF2Matrix":
        return cls(tuple(1 << i for i in range(k)), k)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = (r >> j) & 1
        return out

    def vectors(self) -> list[BitVector]:
        return [BitVector(r, self.ncols) for r in self.rows]

    def span(self) -> np.ndarray:
        """All 2^rows combinations (with repeats if rows are dependent)."""
        out = np.zeros(1, dtype=np.int64)
        for r in self.rows:
            out = np.concatenate((out, out ^ r))
        return out

    def contains(self, v: int) -> bool:
        return rank(GF2Matrix(self.rows + (v,), self.ncols)) == rank(self)


def row_reduce(m: GF2Matrix) -> tuple[list[int], list[int]]:
    """Reduced row echelon form: returns (nonzero rows, pivot columns)."""
    rows = list(m.rows)
    pivots: list[int] = []
    r = 0
    for col in range(m.ncols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: GF2Matrix) -> int:
    return len(row_reduce(m)[1])


def independent_rows(rows: Sequence[int]) -> list[int]:
    """Greedy maximal independent subset, keeping the original order."""
    basis: dict[int, int] = {}  # leading bit -> reduced row
    kept = []
    for r in rows:
        v = r
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                kept.append(r)
                break
            v ^= basis[top]
    return kept


def dual_basis(basis: GF2Matrix) -> GF2Matrix:
    """Basis of {w : dot(w, b) = 0 for every row b}."""
    reduced, pivots = row_reduce(basis)
    if len(pivots) != basis.nrows:
        raise ValueError("basis rows are linearly dependent")
    free = [c for c in range(basis.ncols) if c not in set(pivots)]
    out = []
    for f in free:
        w = 1 << f
        for row, p in zip(reduced, pivots):
            if (row >> f) & 1:
                w |= 1 << p
        out.append(w)
    return GF2Matrix(tuple(out), basis.ncols)
