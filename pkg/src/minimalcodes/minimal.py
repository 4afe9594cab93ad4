"""Minimality of C_{f,g,h}, decided by exhaustive cover search and by a Walsh
spectrum criterion, plus the Ashikhmin-Barg weight ratio."""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .boolfn import BooleanFunction, is_affine_equivalent_linear, walsh_hat
from .code import LinearCode, WeightDistribution, enumerate_codewords, codeword_weights, \
    from_words, weights_from_spectra
from .spread import (COEFFICIENTS, LABELS, FamilyError, FunctionFamily, PreconditionError,
                     SetSystem, _check_sizes, check_conditions)

BRUTE_FORCE_CAP = 14


def _as_int(c) -> int:
    return int(c) if not hasattr(c, "value") else c.value


def covers(x, y) -> bool:
    """True iff Supp(y) is contained in Supp(x).

    Accepts packed ints or BitVectors; BitVectors must share a length.
    """
    if hasattr(x, "n") and hasattr(y, "n") and x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} != {y.n}")
    return (_as_int(y) & ~_as_int(x)) == 0


def cover_weight_identity_holds(x, y) -> bool:
    """covers(x, y) agrees with wt(x + y) == wt(x) - wt(y)."""
    a, b = _as_int(x), _as_int(y)
    by_weight = (a ^ b).bit_count() == a.bit_count() - b.bit_count()
    return covers(x, y) == by_weight


@dataclass
class CoverWitness:
    covering_message: int
    covered_message: int
    covering: int
    covered: int
    independent: bool = True

    def as_dict(self) -> dict:
        return {"covering_message": self.covering_message,
                "covered_message": self.covered_message,
                "covering": format(self.covering, "x"), "covered": format(self.covered, "x"),
                "independent": self.independent}


@dataclass
class CriterionViolation:
    phi1: str
    phi2: str
    x: int
    y: int
    inequality: str

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class MinimalityReport:
    is_minimal: bool
    method: str
    wt_min: int
    wt_max: int
    ab_ratio: Fraction
    ab_violating: bool
    witness: CoverWitness | CriterionViolation | None = None
    covering_pairs: int | None = None  # filled in exhaustive mode

    def __post_init__(self):
        if not self.is_minimal and self.witness is None:
            raise ValueError("a non-minimal verdict needs a witness")

    def as_dict(self) -> dict:
        out = {
            "is_minimal": self.is_minimal,
            "method": self.method,
            "wt_min": self.wt_min,
            "wt_max": self.wt_max,
            "ab_ratio": f"{self.ab_ratio.numerator}/{self.ab_ratio.denominator}",
            "ab_violating": self.ab_violating,
        }
        if self.witness is not None:
            out["witness"] = self.witness.as_dict()
        if self.covering_pairs is not None:
            out["covering_pairs"] = self.covering_pairs
        return out


def ab_ratio(dist: WeightDistribution) -> tuple[Fraction, bool]:
    """wt_min / wt_max over nonzero weights, and whether it is at most 1/2."""
    if not dist.nonzero_weights():
        raise ValueError("distribution has no nonzero weight")
    r = Fraction(dist.wt_min, dist.wt_max)
    return r, r <= Fraction(1, 2)


def is_minimal_bruteforce(code: LinearCode, exhaustive: bool = False,
                          cap: int = BRUTE_FORCE_CAP) -> MinimalityReport:
    """Scan ordered pairs of distinct nonzero codewords for a cover.

    Over F_2 two distinct nonzero codewords are always linearly independent, so
    any cover among them is a witness.  The first witness in (covering, covered)
    message order is reported; ``exhaustive`` also counts every covering pair.
    """
    if len(code.basis()) > cap:
        raise ValueError(f"dimension exceeds brute-force cap {cap}")
    words = enumerate_codewords(code, cap)
    wts = codeword_weights(words)
    dist = WeightDistribution.from_weights(wts)
    ratio, violating = ab_ratio(dist)

    # a proper cover needs strictly smaller weight: equal weight + cover means equal
    order = np.argsort(wts, kind="stable")
    sorted_w = wts[order]
    witness = None
    count = 0
    for i in range(1, len(words)):
        if wts[i] == 0:
            continue
        lighter = order[np.searchsorted(sorted_w, 1):np.searchsorted(sorted_w, wts[i])]
        if lighter.size == 0:
            continue
        inside = ~np.any(words[lighter] & ~words[i], axis=1)
        hits = lighter[inside]
        if hits.size == 0:
            continue
        if witness is None:
            j = int(hits.min())
            witness = CoverWitness(i, j, from_words(words[i]), from_words(words[j]))
            if not exhaustive:
                break
        count += int(hits.size)
    return MinimalityReport(
        is_minimal=witness is None, method="brute_force", wt_min=dist.wt_min,
        wt_max=dist.wt_max, ab_ratio=ratio, ab_violating=violating, witness=witness,
        covering_pairs=count if exhaustive else None)


def member_spectra(fam: FunctionFamily) -> np.ndarray:
    """Signed spectra of the seven members, rows in LABELS order."""
    return np.stack([walsh_hat(fam.members[k]) for k in LABELS]).astype(np.int64)


def random_family(n: int, rng: np.random.Generator, densities=(0.5,)) -> FunctionFamily:
    """A random valid family whose seven members are all non-linear.

    Each of f, g, h takes the value 1 at x != 0 with a probability drawn from
    ``densities``; the default is a uniform truth table.
    """
    while True:
        fs = []
        for _ in range(3):
            table = (rng.random(1 << n) < rng.choice(densities)).astype(np.uint8)
            table[0] = 0
            fs.append(BooleanFunction(n, table))
        try:
            fam = FunctionFamily.from_functions(*fs)
        except FamilyError:
            continue
        if all(is_affine_equivalent_linear(m) is None for m in fam.members.values()):
            return fam


_BY_COEFFS = {v: k for k, v in COEFFICIENTS.items()}


def _sum_label(a: str, b: str) -> str:
    return _BY_COEFFS[tuple(x ^ y for x, y in zip(COEFFICIENTS[a], COEFFICIENTS[b]))]


# (i, j) -> row of phi_i + phi_j, for distinct members
_SUM_INDEX = {(i, j): LABELS.index(_sum_label(LABELS[i], LABELS[j]))
              for i, j in itertools.permutations(range(7), 2)}


def _first_hit(mask: np.ndarray):
    idx = np.flatnonzero(mask)
    return None if idx.size == 0 else np.unravel_index(idx[0], mask.shape)


def walsh_minimality_criterion(fam: FunctionFamily, reading: str = "proof") -> MinimalityReport:
    """Decide minimality from the seven member spectra.

    Condition (1): hat1(x) + hat2(y) != 2^n and hat1(x) - hat2(y) != 2^n for x != y.
    Condition (2): hat1(x+y) + hat2(x) - (phi1+phi2)^(y) != 2^n for phi1 != phi2
    and every x, y.

    ``reading="proof"`` applies condition (1) to phi1 = phi2 only, the pairs
    that actually arise when one codeword covers another; ``reading="literal"``
    applies it to every ordered pair phi1, phi2.
    """
    if reading not in ("proof", "literal"):
        raise ValueError(f"unknown reading {reading!r}")
    n = fam.n
    top = 1 << n
    spec = member_spectra(fam)
    size = spec.shape[1]
    off_diag = ~np.eye(size, dtype=bool)
    xs = np.arange(size)
    xor = xs[:, None] ^ xs[None, :]

    witness = None
    pairs1 = ([(a, a) for a in range(7)] if reading == "proof"
              else list(itertools.product(range(7), repeat=2)))
    for a, b in pairs1:
        plus = (spec[a][:, None] + spec[b][None, :] == top) & off_diag
        minus = (spec[a][:, None] - spec[b][None, :] == top) & off_diag
        for name, mask in (("cond1_plus", plus), ("cond1_minus", minus)):
            hit = _first_hit(mask)
            if hit is not None:
                witness = CriterionViolation(LABELS[a], LABELS[b], int(hit[0]), int(hit[1]), name)
                break
        if witness:
            break
    if witness is None:
        for a, b in itertools.permutations(range(7), 2):
            c = _SUM_INDEX[(a, b)]
            # rows x, cols y
            val = spec[a][xor] + spec[b][:, None] - spec[c][None, :]
            hit = _first_hit(val == top)
            if hit is not None:
                witness = CriterionViolation(LABELS[a], LABELS[b], int(hit[0]), int(hit[1]),
                                             "cond2")
                break

    dist = weights_from_spectra(spec, n)
    ratio, violating = ab_ratio(dist)
    return MinimalityReport(is_minimal=witness is None, method="walsh_criterion",
                            wt_min=dist.wt_min, wt_max=dist.wt_max, ab_ratio=ratio,
                            ab_violating=violating, witness=witness)


@dataclass
class InequalityResult:
    name: str
    evaluated: int
    violations: int
    witness: CriterionViolation | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0


@dataclass
class InequalitySuiteReport:
    results: list[InequalityResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> dict:
        return {r.name: {"evaluated": r.evaluated, "violations": r.violations,
                         "witness": r.witness.as_dict() if r.witness else None}
                for r in self.results}


def walsh_inequality_suite(sys: SetSystem, fam: FunctionFamily) -> InequalitySuiteReport:
    """Evaluate the five spectral inequalities behind minimality of spread families.

    sum_xy:     hat1(x) + hat2(y) != 2^n,                  all phi1, phi2, x != y
    diff_xy:    hat1(x) - hat2(y) != 2^n,                  all phi1, phi2, x != y
    zero_x:     hat1(0) + hat2(x) - (phi1+phi2)^(x) != 2^n, phi1 != phi2, all x
    x_zero:     hat1(x) + hat2(x) - (phi1+phi2)^(0) != 2^n, phi1 != phi2, x != 0
    shifted:    hat1(x+y) + hat2(x) - (phi1+phi2)^(y) != 2^n,
                phi1 != phi2, x, y nonzero and distinct
    """
    _check_sizes(sys)
    if not check_conditions(sys).passed:
        raise PreconditionError("set system fails the admissibility conditions")
    if 2 * sys.t < 6 or fam.n != 2 * sys.t:
        raise PreconditionError("needs n = 2t >= 6")
    n = fam.n
    top = 1 << n
    spec = member_spectra(fam)
    size = spec.shape[1]
    xs = np.arange(size)
    off_diag = ~np.eye(size, dtype=bool)
    nz_distinct = off_diag.copy()
    nz_distinct[0, :] = False
    nz_distinct[:, 0] = False

    def run(name, pairs, make, domain):
        evaluated = violations = 0
        witness = None
        for a, b in pairs:
            val = make(a, b)
            bad = (val == top) & domain
            evaluated += int(domain.sum())
            violations += int(bad.sum())
            if witness is None:
                hit = _first_hit(bad)
                if hit is not None:
                    x, y = (int(hit[0]), int(hit[1])) if bad.ndim == 2 else (int(hit[0]), 0)
                    witness = CriterionViolation(LABELS[a], LABELS[b], x, y, name)
        return InequalityResult(name, evaluated, violations, witness)

    all_pairs = list(itertools.product(range(7), repeat=2))
    distinct = list(itertools.permutations(range(7), 2))
    xor = xs[:, None] ^ xs[None, :]
    every = np.ones(size, dtype=bool)
    nonzero = xs != 0
    results = [
        run("sum_xy", all_pairs, lambda a, b: spec[a][:, None] + spec[b][None, :], off_diag),
        run("diff_xy", all_pairs, lambda a, b: spec[a][:, None] - spec[b][None, :], off_diag),
        run("zero_x", distinct,
            lambda a, b: spec[a][0] + spec[b] - spec[_SUM_INDEX[(a, b)]], every),
        run("x_zero", distinct,
            lambda a, b: spec[a] + spec[b] - spec[_SUM_INDEX[(a, b)]][0], nonzero),
        run("shifted", distinct,
            lambda a, b: spec[a][xor] + spec[b][:, None] - spec[_SUM_INDEX[(a, b)]][None, :],
            nz_distinct),
    ]
    return InequalitySuiteReport(results)
