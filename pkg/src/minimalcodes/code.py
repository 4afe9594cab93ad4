"""The codes C_f and C_{f,g,h}: generator matrices, exhaustive weight enumeration,
and closed-form predictions of weights and Walsh spectra for spread families."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .boolfn import BooleanFunction
from .gf2core import GF2Matrix, independent_rows, rank
from .spread import LABELS, FunctionFamily, PartialSpread, PreconditionError, SetSystem

ENUMERATION_CAP = 16


def table_to_word(table: np.ndarray) -> int:
    """Pack (phi(x))_{x != 0}: codeword bit x-1 holds phi(x)."""
    packed = np.packbits(np.asarray(table[1:], dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def simplex_rows(n: int) -> list[int]:
    """Codewords (e_i . x)_{x != 0} for i = 0..n-1."""
    xs = np.arange(1 << n, dtype=np.int64)
    return [table_to_word((xs >> i) & 1) for i in range(n)]


@dataclass(frozen=True)
class LinearCode:
    n: int
    generator: GF2Matrix

    @property
    def length(self) -> int:
        return (1 << self.n) - 1

    @property
    def dimension(self) -> int:
        return rank(self.generator)

    def basis(self) -> list[int]:
        return independent_rows(self.generator.rows)

    def params(self) -> tuple[int, int]:
        return self.length, self.dimension


def construct_code(fam: FunctionFamily) -> LinearCode:
    """n simplex rows (w = e_i) followed by the rows of f, g and h (w = 0)."""
    fam.validate()
    n = fam.n
    rows = simplex_rows(n) + [table_to_word(p.table) for p in (fam.f, fam.g, fam.h)]
    return LinearCode(n, GF2Matrix(tuple(rows), (1 << n) - 1))


def construct_generic_code(f: BooleanFunction) -> LinearCode:
    """The single-function code {(a f(x) + w.x)_{x != 0}}."""
    if f.table[0]:
        raise ValueError("f must vanish at 0")
    n = f.n
    rows = simplex_rows(n) + [table_to_word(f.table)]
    return LinearCode(n, GF2Matrix(tuple(rows), (1 << n) - 1))


# ---------------------------------------------------------------------------
# enumeration


def _words(length: int) -> int:
    return max(1, -(-length // 64))


def to_words(value: int, nwords: int) -> np.ndarray:
    mask = (1 << 64) - 1
    return np.array([(value >> (64 * i)) & mask for i in range(nwords)], dtype=np.uint64)


def from_words(words: np.ndarray) -> int:
    return sum(int(w) << (64 * i) for i, w in enumerate(words))


def span_words(rows: np.ndarray) -> np.ndarray:
    """All XOR combinations of ``rows`` (shape (k, words)) in message order.

    Message m maps to the XOR of rows j with bit j of m set; each doubling step
    costs one XOR per new codeword.
    """
    out = np.zeros((1, rows.shape[1]), dtype=np.uint64)
    for r in rows:
        out = np.concatenate((out, out ^ r))
    return out


def enumerate_codewords(code: LinearCode, cap: int = ENUMERATION_CAP) -> np.ndarray:
    basis = code.basis()
    if len(basis) > cap:
        raise ValueError(f"dimension {len(basis)} exceeds enumeration cap {cap}")
    nw = _words(code.length)
    rows = np.array([to_words(r, nw) for r in basis], dtype=np.uint64).reshape(len(basis), nw)
    return span_words(rows)


def codeword_weights(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


@dataclass(frozen=True)
class WeightDistribution:
    entries: dict[int, int]

    def __post_init__(self):
        object.__setattr__(self, "entries",
                           {int(w): int(m) for w, m in sorted(self.entries.items()) if m})

    @classmethod
    def from_weights(cls, weights) -> "WeightDistribution":
        vals, counts = np.unique(np.asarray(weights, dtype=np.int64), return_counts=True)
        return cls(dict(zip(vals.tolist(), counts.tolist())))

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def nonzero_weights(self) -> list[int]:
        return [w for w in self.entries if w]

    @property
    def wt_min(self) -> int:
        return min(self.nonzero_weights())

    @property
    def wt_max(self) -> int:
        return max(self.nonzero_weights())

    def to_csv(self) -> str:
        return "weight,multiplicity\n" + "".join(f"{w},{m}\n" for w, m in self.entries.items())

    def diff(self, other: "WeightDistribution") -> dict[int, tuple[int, int]]:
        keys = sorted(set(self.entries) | set(other.entries))
        return {k: (self.entries.get(k, 0), other.entries.get(k, 0)) for k in keys
                if self.entries.get(k, 0) != other.entries.get(k, 0)}


def enumerate_weights(code: LinearCode, cap: int = ENUMERATION_CAP) -> WeightDistribution:
    return WeightDistribution.from_weights(codeword_weights(enumerate_codewords(code, cap)))


def batch_spread_weights(spread: PartialSpread, systems: list[SetSystem]) -> np.ndarray:
    """Enumerated codeword weights for many spread families at once.

    Rows of f, g, h are XORs of per-subspace indicator words, so a batch of set
    systems becomes a (batch, 2^(n+3)) weight array by the same doubling scheme
    as ``span_words``.  Returns int64 weights in message order.
    """
    n = spread.n
    nw = _words((1 << n) - 1)
    sub = np.zeros((len(spread) + 1, nw), dtype=np.uint64)
    for i in range(1, len(spread) + 1):
        table = spread.subspace(i).members.astype(np.uint8)
        table[0] = 0
        sub[i] = to_words(table_to_word(table), nw)
    simplex = np.array([to_words(r, nw) for r in simplex_rows(n)], dtype=np.uint64)
    base = span_words(simplex)  # (2^n, nw)

    fgh = np.zeros((len(systems), 3, nw), dtype=np.uint64)
    for b, sys in enumerate(systems):
        for k, a in enumerate(sys.sets):
            for i in a:
                fgh[b, k] ^= sub[i]
    out = base[None, :, :].repeat(len(systems), axis=0)
    for k in range(3):
        out = np.concatenate((out, out ^ fgh[:, k][:, None, :]), axis=1)
    return codeword_weights(out)


# ---------------------------------------------------------------------------
# predictions


@dataclass(frozen=True)
class TableRow:
    weight: int
    multiplicity: int
    source: str


def _check_spread_system(sys: SetSystem, n: int | None) -> int:
    if n is not None and n != 2 * sys.t:
        raise PreconditionError(f"n={n} but the spread needs n = 2t = {2 * sys.t}")
    for label, size in sys.sizes().items():
        if not 1 <= size <= sys.nu:
            raise PreconditionError(f"member {label} selects {size} subspaces")
    for a in sys.sets:
        if min(a) < 1 or max(a) > sys.nu:
            raise PreconditionError(f"indices must lie in 1..{sys.nu}")
    return 2 * sys.t


def weight_rows(sys: SetSystem, n: int | None = None) -> list[TableRow]:
    """Unaggregated weight rows for a spread family: one per (member, case)."""
    n = _check_spread_system(sys, n)
    q = (1 << sys.t) - 1
    half = 1 << (n - 1)
    rows = [TableRow(0, 1, "zero"), TableRow(half, (1 << n) - 1, "simplex")]
    for label, s in sys.sizes().items():
        rows.append(TableRow(s * q, 1, f"{label}: w=0"))
        rows.append(TableRow(half - s, ((1 << sys.t) + 1 - s) * q, f"{label}: w outside perps"))
        rows.append(TableRow(half + (1 << sys.t) - s, s * q, f"{label}: w in a perp"))
    return rows


def predict_weights(sys: SetSystem, n: int | None = None) -> WeightDistribution:
    agg: Counter[int] = Counter()
    for row in weight_rows(sys, n):
        agg[row.weight] += row.multiplicity
    return WeightDistribution(dict(agg))


def perp_tables(spread: PartialSpread) -> np.ndarray:
    """Row i-1: membership of the orthogonal complement of subspace i."""
    return np.array([s.perp_members() for s in spread.subspaces])


def predict_walsh(sys: SetSystem, member: str, spread: PartialSpread) -> np.ndarray:
    """Closed-form signed spectrum of a family member, classified by perp membership."""
    if member not in LABELS:
        raise ValueError(f"unknown member {member!r}")
    _check_spread_system(sys, spread.n)
    idx = sorted(sys.member_sets()[member])
    s = len(idx)
    n, t = spread.n, spread.t
    perps = perp_tables(spread)
    in_perp = perps[[i - 1 for i in idx]].any(axis=0)
    out = np.full(1 << n, 2 * s, dtype=np.int64)
    out[in_perp] = -(1 << (t + 1)) + 2 * s
    out[0] = (1 << n) - 2 * s * ((1 << t) - 1)
    return out.astype(np.int32)


def weights_from_spectra(spectra: np.ndarray, n: int) -> WeightDistribution:
    """Weight multiset of C_{f,g,h} from the seven member spectra.

    Each member contributes (2^n - hat(w)) / 2 for every w; the simplex part adds
    2^(n-1) for each nonzero w, and the zero codeword adds 0.
    """
    spectra = np.asarray(spectra, dtype=np.int64)
    weights = ((1 << n) - spectra.reshape(-1)) // 2
    agg = Counter(weights.tolist())
    agg[1 << (n - 1)] += (1 << n) - 1
    agg[0] += 1
    return WeightDistribution(dict(agg))


def wt_max_candidate(sys: SetSystem) -> int:
    """2^(n-1) + 2^t - epsilon, the largest weight among the perp rows."""
    return (1 << (2 * sys.t - 1)) + (1 << sys.t) - sys.epsilon


def balanced_weight_sum(length: int, dimension: int) -> int:
    return length * (1 << (dimension - 1))
