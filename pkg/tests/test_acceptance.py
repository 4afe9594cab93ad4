"""Acceptance criteria, each at its stated tolerance and time limit.

Every criterion records one ``PASS``/``FAIL`` line; pytest prints them in an
"acceptance criteria" section, and ``python tests/test_acceptance.py`` prints
them directly.
"""
from __future__ import annotations

import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, INSTANCE  # noqa: E402
from minimalcodes.boolfn import BooleanFunction, fwht, walsh_hat, walsh_relation_holds  # noqa: E402
from minimalcodes.code import (WeightDistribution, batch_spread_weights, construct_code,  # noqa: E402
                               enumerate_weights, predict_walsh, predict_weights)
from minimalcodes.gf2core import rank  # noqa: E402
from minimalcodes.minimal import (ab_ratio, cover_weight_identity_holds,  # noqa: E402
                                  is_minimal_bruteforce, random_family, walsh_inequality_suite,
                                  walsh_minimality_criterion)
from minimalcodes.spread import (LABELS, build_desarguesian_spread, build_family,  # noqa: E402
                                 search_admissible)

SPREAD3 = build_desarguesian_spread(3)
SPREAD4 = build_desarguesian_spread(4)


def record(k: int, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def criterion_1() -> bool:
    t0 = time.perf_counter()
    code = construct_code(build_family(SPREAD3, INSTANCE))
    length, r = code.length, rank(code.generator)
    dt = time.perf_counter() - t0
    ok = length == 63 and r == 9 and dt < 0.1
    return record(1, ok, f"length={length} rank={r} in {dt:.3f}s (want 63, 9, <0.1s)")


def criterion_2() -> bool:
    t0 = time.perf_counter()
    code = construct_code(build_family(SPREAD3, INSTANCE))
    dist = enumerate_weights(code)
    predicted = predict_weights(INSTANCE)
    dt = time.perf_counter() - t0
    q = 7
    ok = (dist == predicted and dist.total == 512 and dist.entries.get(32) == 63
          and dist.wt_min == INSTANCE.epsilon * q == 14 and dist.wt_max == 38 and dt < 0.5)
    return record(2, ok, f"distribution {'==' if dist == predicted else '!='} prediction, "
                         f"total={dist.total} A_32={dist.entries.get(32)} "
                         f"wt_min={dist.wt_min} wt_max={dist.wt_max} in {dt:.3f}s")


def criterion_3() -> bool:
    fam = build_family(SPREAD3, INSTANCE)
    t0 = time.perf_counter()
    mismatches = sum(int((predict_walsh(INSTANCE, k, SPREAD3) != walsh_hat(fam.members[k])).sum())
                     for k in LABELS)
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 0.1
    return record(3, ok, f"{mismatches} mismatching (member, w) entries over 7x64 in {dt:.3f}s")


def criterion_4() -> bool:
    fam = build_family(SPREAD3, INSTANCE)
    t0 = time.perf_counter()
    brute = is_minimal_bruteforce(construct_code(fam))
    crit = walsh_minimality_criterion(fam)
    dt = time.perf_counter() - t0
    ok = brute.is_minimal and crit.is_minimal and dt < 2
    detail = (f"brute_force minimal={brute.is_minimal}, criterion minimal={crit.is_minimal}, "
              f"agree={brute.is_minimal == crit.is_minimal} in {dt:.3f}s")
    if not brute.is_minimal:
        w = brute.witness
        detail += (f"; codeword of message {w.covering_message} covers message "
                   f"{w.covered_message} (supp(f+g) within supp(g+h))")
    return record(4, ok, detail)


def criterion_5() -> bool:
    dist = enumerate_weights(construct_code(build_family(SPREAD3, INSTANCE)))
    ratio, violating = ab_ratio(dist)
    t0 = time.perf_counter()
    systems = search_admissible(3, require_ab_violation=True)
    worst = Fraction(0)
    bad = 0
    for start in range(0, len(systems), 2048):
        chunk = systems[start:start + 2048]
        for row in batch_spread_weights(SPREAD3, chunk):
            r, v = ab_ratio(WeightDistribution.from_weights(row))
            worst = max(worst, r)
            bad += not v
    dt = time.perf_counter() - t0
    ok = ratio == Fraction(14, 38) and violating and bad == 0 and len(systems) > 0 and dt < 60
    return record(5, ok, f"instance ratio {ratio} <= 1/2: {violating}; {len(systems)} "
                         f"AB-violating t=3 triples, {bad} with ratio > 1/2, largest {worst}, "
                         f"in {dt:.1f}s")


def criterion_6() -> bool:
    t0 = time.perf_counter()
    counts = {}
    disagreements = 0
    literal_off = 0
    for n in (4, 5):
        rng = np.random.default_rng(6000 + n)
        minimal = 0
        for _ in range(200):
            fam = random_family(n, rng)
            b = is_minimal_bruteforce(construct_code(fam)).is_minimal
            minimal += b
            disagreements += walsh_minimality_criterion(fam).is_minimal != b
            literal_off += walsh_minimality_criterion(fam, "literal").is_minimal != b
        counts[n] = minimal
    dt = time.perf_counter() - t0
    ok = disagreements == 0 and dt < 120
    return record(6, ok, f"400 random families (minimal: n=4 {counts[4]}, n=5 {counts[5]}), "
                         f"{disagreements} disagreements ({literal_off} under the literal "
                         f"all-pairs reading) in {dt:.1f}s")


def criterion_7() -> bool:
    t0 = time.perf_counter()
    failures = {"walsh_relation": 0, "cover_identity": 0, "parseval": 0, "involution": 0}
    trials = 10_000
    for n in (4, 6, 8):
        rng = np.random.default_rng(7000 + n)
        tables = rng.integers(0, 2, size=(trials, 1 << n), dtype=np.uint8)
        signs = 1 - 2 * tables.astype(np.int64)
        hats = fwht(signs)
        failures["parseval"] += int(((hats ** 2).sum(axis=1) != 1 << (2 * n)).sum())
        failures["involution"] += int((fwht(hats) != (1 << n) * signs).any(axis=1).sum())
        for i in range(trials):
            f = BooleanFunction(n, tables[i])
            failures["walsh_relation"] += not walsh_relation_holds(f, hats[i])
        length = (1 << n) - 1
        nbytes = -(-length // 8)
        mask = (1 << length) - 1
        for i in range(trials):
            x = int.from_bytes(rng.bytes(nbytes), "little") & mask
            y = int.from_bytes(rng.bytes(nbytes), "little") & mask
            if i % 2:
                y &= x
            failures["cover_identity"] += not cover_weight_identity_holds(x, y)
    dt = time.perf_counter() - t0
    ok = not any(failures.values()) and dt < 30
    return record(7, ok, f"3 x 10^4 samples per check, failures {failures} in {dt:.1f}s")


def criterion_8() -> bool:
    fam6 = build_family(SPREAD3, INSTANCE)
    rep6 = walsh_inequality_suite(INSTANCE, fam6)
    sys8 = search_admissible(4)[0]
    t0 = time.perf_counter()
    rep8 = walsh_inequality_suite(sys8, build_family(SPREAD4, sys8))
    dt = time.perf_counter() - t0
    v6 = {r.name: r.violations for r in rep6.results if r.violations}
    v8 = {r.name: r.violations for r in rep8.results if r.violations}
    ok = rep6.passed and rep8.passed and dt < 60
    return record(8, ok, f"n=6 violations {v6 or 'none'}; n=8 {sys8.to_json()} violations "
                         f"{v8 or 'none'} in {dt:.2f}s")


def criterion_9() -> bool:
    sys8 = search_admissible(4)[0]
    fam = build_family(SPREAD4, sys8)
    t0 = time.perf_counter()
    code = construct_code(fam)
    dist = enumerate_weights(code)
    brute = is_minimal_bruteforce(code)
    dt = time.perf_counter() - t0
    match = dist == predict_weights(sys8)
    ok = code.params() == (255, 11) and dist.total == 2048 and match and dt < 10
    return record(9, ok, f"{sys8.to_json()} -> {list(code.params())}, {dist.total} codewords, "
                         f"prediction match={match}, minimal={brute.is_minimal} in {dt:.2f}s")


def test_criterion_1_parameters():
    assert criterion_1()


def test_criterion_2_weight_distribution():
    assert criterion_2()


def test_criterion_3_walsh_values():
    assert criterion_3()


def test_criterion_4_minimality():
    assert criterion_4()


def test_criterion_5_ab_violation():
    assert criterion_5()


def test_criterion_6_criterion_equivalence():
    assert criterion_6()


def test_criterion_7_identities():
    assert criterion_7()


def test_criterion_8_inequality_suite():
    assert criterion_8()


def test_criterion_9_scale_n8():
    assert criterion_9()


if __name__ == "__main__":
    results = [globals()[f"criterion_{k}"]() for k in range(1, 10)]
    sys.exit(0 if all(results) else 1)
