"""Boolean functions on F_2^n as truth tables, and their Walsh transforms."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .gf2core import MAX_N, BitVector


class BooleanFunction:
    """Truth table of f: F_2^n -> F_2; ``table[x]`` is f(x) under the shared bit order."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table):
        if not 0 <= n <= MAX_N:
            raise ValueError(f"dimension {n} outside 0..{MAX_N}")
        arr = np.array(table, dtype=np.uint8).reshape(-1)
        if arr.size != 1 << n:
            raise ValueError(f"truth table has {arr.size} entries, expected {1 << n}")
        if arr.max(initial=0) > 1:
            raise ValueError("truth table entries must be 0 or 1")
        arr.setflags(write=False)
        self.n = n
        self.table = arr

    @classmethod
    def zero(cls, n: int) -> "BooleanFunction":
        return cls(n, np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def linear(cls, v: int | BitVector, n: int) -> "BooleanFunction":
        """The map x -> v.x."""
        v = v.value if isinstance(v, BitVector) else v
        xs = np.arange(1 << n, dtype=np.int64)
        return cls(n, np.bitwise_count(xs & v) & 1)

    @classmethod
    def from_string(cls, bits: str) -> "BooleanFunction":
        bits = bits.strip()
        n = max(len(bits).bit_length() - 1, 0)
        if set(bits) - {"0", "1"}:
            raise ValueError("truth table must contain only '0' and '1'")
        return cls(n, np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0"))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, vanish_at_zero: bool = True):
        table = rng.integers(0, 2, size=1 << n, dtype=np.uint8)
        if vanish_at_zero:
            table[0] = 0
        return cls(n, table)

    def __call__(self, x: int | BitVector) -> int:
        x = x.value if isinstance(x, BitVector) else x
        return int(self.table[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __add__(self, other: "BooleanFunction") -> "BooleanFunction":
        return add(self, other)

    def __and__(self, other: "BooleanFunction") -> "BooleanFunction":
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} != {other.n}")
        return BooleanFunction(self.n, self.table & other.table)

    def __repr__(self) -> str:
        return f"BooleanFunction(n={self.n}, weight={self.weight})"

    def __str__(self) -> str:
        return self.to_string()

    @property
    def weight(self) -> int:
        return int(self.table.sum(dtype=np.int64))

    def is_zero(self) -> bool:
        return not self.table.any()

    def to_string(self) -> str:
        return (self.table + ord("0")).tobytes().decode()


def add(f: BooleanFunction, g: BooleanFunction) -> BooleanFunction:
    """Pointwise sum over F_2."""
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} != {g.n}")
    return BooleanFunction(f.n, f.table ^ g.table)


def fwht(values) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis (length 2^k).

    Operates on an int64 copy; the input is left untouched.
    """
    a = np.array(values, dtype=np.int64)
    size = a.shape[-1]
    if size & (size - 1):
        raise ValueError("length must be a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        a = a.reshape(*lead, -1, 2, h)
        lo = a[..., 0, :]
        hi = a[..., 1, :]
        a = np.stack((lo + hi, lo - hi), axis=-2)
        h <<= 1
    return a.reshape(*lead, size)


def walsh_hat(f: BooleanFunction) -> np.ndarray:
    """Signed spectrum: entry w is sum_x (-1)^(f(x) + w.x)."""
    signs = 1 - 2 * f.table.astype(np.int64)
    return fwht(signs).astype(np.int32)


def walsh_tilde(f: BooleanFunction) -> np.ndarray:
    """0/1 spectrum: entry w is sum_x f(x) (-1)^(w.x)."""
    return fwht(f.table).astype(np.int32)


def walsh_relation_holds(f: BooleanFunction, hat: np.ndarray | None = None) -> bool:
    """Check hat(0) = 2^n - 2 tilde(0) and hat(w) = -2 tilde(w) for w != 0.

    ``hat`` defaults to the computed signed spectrum; pass a stored spectrum to
    audit it against the truth table.
    """
    if hat is None:
        hat = walsh_hat(f)
    hat = np.asarray(hat, dtype=np.int64)
    if hat.shape != (1 << f.n,):
        return False
    expected = -2 * walsh_tilde(f).astype(np.int64)
    expected[0] += 1 << f.n
    return bool(np.array_equal(hat, expected))


def is_affine_equivalent_linear(f: BooleanFunction) -> BitVector | None:
    """Return v if f(x) = v.x for all x, otherwise None."""
    if f.table[0]:
        return None
    hat = walsh_hat(f)
    hits = np.flatnonzero(hat == (1 << f.n))
    if hits.size == 0:
        return None
    return BitVector(int(hits[0]), f.n)


# ---------------------------------------------------------------------------
# file formats


def read_truth_table(path: str | Path) -> BooleanFunction:
    """Read the two-line format ``n=<int>`` followed by 2^n characters of 0/1."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if len(lines) != 2 or not lines[0].startswith("n="):
        raise ValueError(f"{path}: expected 'n=<int>' then one line of bits")
    n = int(lines[0][2:])
    bits = lines[1]
    if len(bits) != 1 << n:
        raise ValueError(f"{path}: expected {1 << n} bits, got {len(bits)}")
    f = BooleanFunction.from_string(bits)
    return f


def write_truth_table(f: BooleanFunction, path: str | Path) -> None:
    Path(path).write_text(f"n={f.n}\n{f.to_string()}\n")


def spectrum_to_csv(values) -> str:
    lines = ["w,value"]
    lines += [f"{w},{int(v)}" for w, v in enumerate(values)]
    return "\n".join(lines) + "\n"


def read_spectrum_csv(path: str | Path) -> np.ndarray:
    lines = Path(path).read_text().split()
    if not lines or lines[0] != "w,value":
        raise ValueError(f"{path}: missing 'w,value' header")
    pairs = [tuple(int(tok) for tok in ln.split(",")) for ln in lines[1:]]
    if [w for w, _ in pairs] != list(range(len(pairs))):
        raise ValueError(f"{path}: w column is not 0..len-1 in order")
    return np.array([v for _, v in pairs], dtype=np.int64)
