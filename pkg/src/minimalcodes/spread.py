"""Desarguesian spreads of F_2^(2t), indicator sums over index sets, and the
admissibility conditions on a triple of index sets (A1, A2, A3)."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .boolfn import BooleanFunction
from .gf2core import GF2Matrix, GF2t, dual_basis, rank

LABELS = ("f", "g", "h", "f+g", "f+h", "g+h", "f+g+h")
COEFFICIENTS = {
    "f": (1, 0, 0),
    "g": (0, 1, 0),
    "h": (0, 0, 1),
    "f+g": (1, 1, 0),
    "f+h": (1, 0, 1),
    "g+h": (0, 1, 1),
    "f+g+h": (1, 1, 1),
}


class FamilyError(ValueError):
    """A family of functions violating one of the nonzero / vanishing / distinct rules."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Subspace:
    basis: GF2Matrix
    dual_basis: GF2Matrix
    members: np.ndarray  # bool table over F_2^n

    def perp_members(self) -> np.ndarray:
        """Membership table of the orthogonal complement, from the dual basis."""
        table = np.zeros(1 << self.basis.ncols, dtype=bool)
        table[self.dual_basis.span()] = True
        return table


@dataclass(frozen=True)
class PartialSpread:
    t: int
    modulus: int
    subspaces: tuple[Subspace, ...]

    @property
    def n(self) -> int:
        return 2 * self.t

    def __len__(self) -> int:
        return len(self.subspaces)

    def subspace(self, i: int) -> Subspace:
        """1-based access, matching the index sets A1, A2, A3."""
        if not 1 <= i <= len(self.subspaces):
            raise IndexError(f"subspace index {i} outside 1..{len(self.subspaces)}")
        return self.subspaces[i - 1]


def _subspace_from_basis(rows: list[int], n: int) -> Subspace:
    basis = GF2Matrix(tuple(rows), n)
    members = np.zeros(1 << n, dtype=bool)
    members[basis.span()] = True
    return Subspace(basis, dual_basis(basis), members)


def build_desarguesian_spread(t: int, modulus: int | None = None) -> PartialSpread:
    """The 2^t + 1 lines {(x, a x)} and {(0, y)} over GF(2^t).

    A pair (x, y) is embedded as ``x | y << t``.  Indices 1..2^t correspond to
    a = 0, 1, 2, ... in integer order; index 2^t + 1 is the vertical line.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    field = GF2t(t, modulus)
    n = 2 * t
    subspaces = []
    for a in field.elements():
        rows = [(1 << k) | (field.mul(a, 1 << k) << t) for k in range(t)]
        subspaces.append(_subspace_from_basis(rows, n))
    subspaces.append(_subspace_from_basis([1 << (t + k) for k in range(t)], n))
    for s in subspaces:
        assert rank(s.basis) == t
    return PartialSpread(t, field.modulus, tuple(subspaces))


def indicator(spread: PartialSpread, i: int) -> BooleanFunction:
    """f_i(x) = 1 iff x is a nonzero vector of the i-th subspace."""
    table = spread.subspace(i).members.astype(np.uint8)
    table[0] = 0
    return BooleanFunction(spread.n, table)


def indicator_sum(spread: PartialSpread, indices: Iterable[int]) -> BooleanFunction:
    table = np.zeros(1 << spread.n, dtype=np.uint8)
    for i in indices:
        table ^= indicator(spread, i).table
    return BooleanFunction(spread.n, table)


# ---------------------------------------------------------------------------
# set systems


@dataclass(frozen=True)
class SetSystem:
    t: int
    A1: frozenset[int]
    A2: frozenset[int]
    A3: frozenset[int]

    def __post_init__(self):
        for name in ("A1", "A2", "A3"):
            object.__setattr__(self, name, frozenset(int(i) for i in getattr(self, name)))

    @property
    def nu(self) -> int:
        return (1 << self.t) + 1

    @property
    def sets(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        return (self.A1, self.A2, self.A3)

    @property
    def s1(self): return len(self.A1)
    @property
    def s2(self): return len(self.A2)
    @property
    def s3(self): return len(self.A3)
    @property
    def s12(self): return len(self.A1 & self.A2)
    @property
    def s13(self): return len(self.A1 & self.A3)
    @property
    def s23(self): return len(self.A2 & self.A3)
    @property
    def s123(self): return len(self.A1 & self.A2 & self.A3)

    @property
    def chi12(self): return self.s1 + self.s2 - 2 * self.s12
    @property
    def chi13(self): return self.s1 + self.s3 - 2 * self.s13
    @property
    def chi23(self): return self.s2 + self.s3 - 2 * self.s23

    @property
    def chi123(self):
        return (self.s1 + self.s2 + self.s3
                - 2 * (self.s12 + self.s13 + self.s23) + 4 * self.s123)

    def sizes(self) -> dict[str, int]:
        """Index-set size of every family member, keyed by label."""
        return {"f": self.s1, "g": self.s2, "h": self.s3, "f+g": self.chi12,
                "f+h": self.chi13, "g+h": self.chi23, "f+g+h": self.chi123}

    @property
    def epsilon(self) -> int:
        return min(self.sizes().values())

    @property
    def mu(self) -> int:
        return max(self.sizes().values())

    def member_sets(self) -> dict[str, frozenset[int]]:
        """Index set selecting each member, by symmetric difference."""
        out = {}
        for label, coeffs in COEFFICIENTS.items():
            acc: frozenset[int] = frozenset()
            for c, a in zip(coeffs, self.sets):
                if c:
                    acc = acc ^ a
            out[label] = acc
        return out

    def stats(self) -> dict[str, int]:
        keys = ("s1", "s2", "s3", "s12", "s13", "s23", "s123",
                "chi12", "chi13", "chi23", "chi123", "epsilon", "mu")
        return {k: getattr(self, k) for k in keys}

    def to_json(self) -> str:
        return json.dumps({"t": self.t, "A1": sorted(self.A1), "A2": sorted(self.A2),
                           "A3": sorted(self.A3)})

    @classmethod
    def from_json(cls, text: str | dict) -> "SetSystem":
        d = json.loads(text) if isinstance(text, str) else text
        return cls(d["t"], d["A1"], d["A2"], d["A3"])

    def sort_key(self):
        return (sorted(self.A1), sorted(self.A2), sorted(self.A3))


@dataclass
class ConditionReport:
    cond1: bool
    cond2: bool
    cond3: bool
    cond1_witnesses: list[str] = field(default_factory=list)
    triple_nonempty: bool = True
    pairs_differing: int = 0  # pairwise intersections differing from the triple one
    cond3_failures: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.cond1 and self.cond2 and self.cond3

    def failed(self) -> list[str]:
        return [f"condition {k}" for k, ok in
                ((1, self.cond1), (2, self.cond2), (3, self.cond3)) if not ok]

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "condition1": {"pass": self.cond1, "witnesses": self.cond1_witnesses},
            "condition2": {"pass": self.cond2, "triple_intersection_nonempty": self.triple_nonempty,
                           "pairs_differing_from_triple": self.pairs_differing},
            "condition3": {"pass": self.cond3, "failures": self.cond3_failures},
        }


def _fmt(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def check_conditions(sys: SetSystem) -> ConditionReport:
    sets = sys.sets
    witnesses = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        d = sets[i] ^ sets[j]
        for k in range(3):
            if sets[k] <= d:
                witnesses.append(f"A{k + 1}={_fmt(sets[k])} within A{i + 1}^A{j + 1}={_fmt(d)}")
            if d <= sets[k]:
                witnesses.append(f"A{i + 1}^A{j + 1}={_fmt(d)} within A{k + 1}={_fmt(sets[k])}")
    triple = sys.A1 & sys.A2 & sys.A3
    pairs = (sys.A1 & sys.A2, sys.A1 & sys.A3, sys.A2 & sys.A3)
    differing = sum(p != triple for p in pairs)
    chi = {"chi12": sys.chi12, "chi13": sys.chi13, "chi23": sys.chi23, "chi123": sys.chi123}
    too_small = {k: v for k, v in chi.items() if v < 2}
    return ConditionReport(
        cond1=not witnesses,
        cond2=bool(triple) and differing >= 2,
        cond3=not too_small,
        cond1_witnesses=witnesses,
        triple_nonempty=bool(triple),
        pairs_differing=differing,
        cond3_failures=too_small,
    )


def _check_sizes(sys: SetSystem) -> None:
    hi = 1 << (sys.t - 1)
    for name, s in (("s1", sys.s1), ("s2", sys.s2), ("s3", sys.s3)):
        if not 2 <= s <= hi:
            raise PreconditionError(f"{name}={s} outside 2..{hi}")
    for a in sys.sets:
        if a and not (min(a) >= 1 and max(a) <= sys.nu):
            raise PreconditionError(f"indices must lie in 1..{sys.nu}")


def check_set_consequences(sys: SetSystem) -> bool:
    """Consequences of the admissibility conditions that must always hold.

    Pairwise non-containment with nonempty intersections,
    (Ai & Aj) ^ (Ai & Ak) a proper subset of Aj ^ Ak, and every chi <= 2^t - 2.
    Raises PreconditionError on inputs outside the hypotheses.
    """
    _check_sizes(sys)
    report = check_conditions(sys)
    if not report.passed:
        raise PreconditionError(f"set system fails {', '.join(report.failed())}")
    sets = sys.sets
    for i, j in itertools.permutations(range(3), 2):
        if sets[i] <= sets[j] or not (sets[i] & sets[j]):
            return False
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        lhs = (sets[i] & sets[j]) ^ (sets[i] & sets[k])
        if not lhs < (sets[j] ^ sets[k]):
            return False
    cap = (1 << sys.t) - 2
    return max(sys.chi12, sys.chi13, sys.chi23, sys.chi123) <= cap


# ---------------------------------------------------------------------------
# families


@dataclass
class FunctionFamily:
    f: BooleanFunction
    g: BooleanFunction
    h: BooleanFunction
    members: dict[str, BooleanFunction]
    index_sets: dict[str, frozenset[int]] | None = None

    @classmethod
    def from_functions(cls, f, g, h, index_sets=None) -> "FunctionFamily":
        if not f.n == g.n == h.n:
            raise ValueError("f, g, h must share a dimension")
        members = {}
        for label, (a, b, c) in COEFFICIENTS.items():
            table = (a * f.table) ^ (b * g.table) ^ (c * h.table)
            members[label] = BooleanFunction(f.n, table)
        fam = cls(f, g, h, members, index_sets)
        fam.validate()
        return fam

    @property
    def n(self) -> int:
        return self.f.n

    def validate(self) -> None:
        for label, m in self.members.items():
            if m.is_zero():
                raise FamilyError(f"member {label} is the zero function (nonzero rule)")
            if m.table[0]:
                raise FamilyError(f"member {label} does not vanish at 0 (vanishing rule)")
        for a, b in itertools.combinations(LABELS, 2):
            if self.members[a] == self.members[b]:
                raise FamilyError(f"members {a} and {b} coincide (distinctness rule)")

    def weights(self) -> dict[str, int]:
        return {k: m.weight for k, m in self.members.items()}


def build_family(spread: PartialSpread, sys: SetSystem) -> FunctionFamily:
    if sys.t != spread.t:
        raise ValueError(f"set system t={sys.t} but spread t={spread.t}")
    for a in sys.sets:
        if not a:
            raise PreconditionError("index sets must be nonempty")
        if min(a) < 1 or max(a) > len(spread):
            raise PreconditionError(f"indices must lie in 1..{len(spread)}")
    f, g, h = (indicator_sum(spread, a) for a in sys.sets)
    index_sets = sys.member_sets()
    fam = FunctionFamily.from_functions(f, g, h, index_sets)
    for label, idx in index_sets.items():
        if fam.members[label] != indicator_sum(spread, idx):
            raise AssertionError(f"member {label} differs from its indicator sum")
    q = (1 << spread.t) - 1
    for label, m in fam.members.items():
        if m.weight != len(index_sets[label]) * q:
            raise AssertionError(f"member {label} has weight {m.weight}")
    return fam


# ---------------------------------------------------------------------------
# search


def _candidate_masks(m: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    out = []
    for s in range(lo, hi + 1):
        out.extend(itertools.combinations(range(1, m + 1), s))
    out.sort()
    return out


def _to_mask(idx: Iterable[int]) -> int:
    return sum(1 << (i - 1) for i in idx)


def _admissible_mask(a, b, c):
    """Vectorised conditions 1-3 on bitmask arrays (broadcasting)."""
    def sub(x, y):
        return (x & ~y) == 0

    ok = np.ones(np.broadcast(a, b, c).shape, dtype=bool)
    for d in (a ^ b, a ^ c, b ^ c):
        for k in (a, b, c):
            ok &= ~sub(k, d) & ~sub(d, k)
    triple = a & b & c
    ok &= triple != 0
    differing = (((a & b) != triple).astype(np.int8) + ((a & c) != triple)
                 + ((b & c) != triple))
    ok &= differing >= 2
    for d in (a ^ b, a ^ c, b ^ c, a ^ b ^ c):
        ok &= np.bitwise_count(d) >= 2
    return ok


def _epsilon_masks(a, b, c):
    counts = np.broadcast_arrays(*(np.bitwise_count(x) for x in
                                   (a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c)))
    return np.minimum.reduce(counts)


def search_admissible(t: int, require_ab_violation: bool = False, *, seed: int = 0,
                      limit: int = 64, max_draws: int = 2_000_000,
                      max_indices: int = 12) -> list[SetSystem]:
    """Admissible triples A1 < A2 < A3 (lexicographic) with 2 <= |Ai| <= 2^(t-1).

    t = 3 is exhaustive over all unordered triples of distinct sets.  For larger t
    the indices are restricted to 1..min(2^t+1, max_indices) and triples are drawn
    at random from ``seed`` until ``limit`` distinct hits or ``max_draws`` draws.
    With ``require_ab_violation`` only triples with epsilon <= 2^(t-2) are kept.
    """
    if t not in (3, 4, 5):
        raise ValueError("search supports t in {3, 4, 5}")
    hi = 1 << (t - 1)
    eps_cap = 1 << (t - 2)
    if t == 3:
        cands = _candidate_masks((1 << t) + 1, 2, hi)
        masks = np.array([_to_mask(c) for c in cands], dtype=np.int64)
        found = []
        nc = len(masks)
        for i in range(nc):
            b = masks[i + 1:, None]
            c = masks[None, i + 1:]
            ok = _admissible_mask(masks[i], b, c)
            ok &= np.triu(np.ones((nc - i - 1,) * 2, dtype=bool), k=1)
            if require_ab_violation:
                ok &= _epsilon_masks(masks[i], b, c) <= eps_cap
            for j, k in zip(*np.nonzero(ok)):
                found.append((cands[i], cands[i + 1 + j], cands[i + 1 + k]))
        found.sort()
        return [SetSystem(t, *trip) for trip in found]

    m = min((1 << t) + 1, max_indices)
    top = min(hi, m)
    rng = np.random.default_rng(seed)
    hits: set[tuple[tuple[int, ...], ...]] = set()
    batch = 20_000
    drawn = 0
    while len(hits) < limit and drawn < max_draws:
        sizes = rng.integers(2, top + 1, size=(batch, 3))
        keys = rng.random((batch, 3, m)).argsort(axis=2)
        pos = np.arange(m)[None, None, :]
        chosen = keys < sizes[:, :, None]  # random subset of the requested size
        masks = (chosen.astype(np.int64) << pos).sum(axis=2)
        a, b, c = masks[:, 0], masks[:, 1], masks[:, 2]
        ok = _admissible_mask(a, b, c) & (a != b) & (a != c) & (b != c)
        if require_ab_violation:
            ok &= _epsilon_masks(a, b, c) <= eps_cap
        for row in masks[ok]:
            trip = sorted(tuple(i + 1 for i in range(m) if (int(x) >> i) & 1) for x in row)
            hits.add(tuple(trip))
        drawn += batch
    return [SetSystem(t, *trip) for trip in sorted(hits)[:limit]]
